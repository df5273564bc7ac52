//! Intersection forms up to isomorphism and homeomorphism fingerprints.
//!
//! Indefinite unimodular forms are determined by rank, signature and
//! parity: odd ones are `p⟨1⟩ ⊕ q⟨−1⟩`, even ones `a·E8 ⊕ b·H`. Definite
//! forms are left unclassified.

use alloc::string::String;

use crate::sums::{invariants, ManifoldExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnimodularFormClass {
    pub rank: i128,
    pub signature: i128,
    pub parity: Parity,
}

impl UnimodularFormClass {
    /// Checks `|σ| ≤ rank`, `rank ≡ σ (mod 2)` and `σ ≡ 0 (mod 8)` for even forms.
    pub fn is_consistent(&self) -> bool {
        self.rank >= 0
            && self.signature.abs() <= self.rank
            && (self.rank - self.signature).rem_euclid(2) == 0
            && (self.parity == Parity::Odd || self.signature.rem_euclid(8) == 0)
    }

    pub fn is_indefinite(&self) -> bool {
        self.signature.abs() < self.rank
    }

    /// Orthogonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        UnimodularFormClass {
            rank: self.rank + other.rank,
            signature: self.signature + other.signature,
            parity: if self.parity == Parity::Even && other.parity == Parity::Even {
                Parity::Even
            } else {
                Parity::Odd
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StandardDecomposition {
    /// `p⟨1⟩ ⊕ q⟨−1⟩`.
    OddDiag { p: i128, q: i128 },
    /// `e8_count·E8 ⊕ hyperbolic_count·H`; a negative count means copies of `−E8`.
    EvenSplit { e8_count: i128, hyperbolic_count: i128 },
    Unclassified(String),
}

impl StandardDecomposition {
    /// Rank, signature and parity of the decomposed form.
    pub fn reassemble(&self) -> Option<UnimodularFormClass> {
        match *self {
            StandardDecomposition::OddDiag { p, q } => Some(UnimodularFormClass {
                rank: p + q,
                signature: p - q,
                parity: Parity::Odd,
            }),
            StandardDecomposition::EvenSplit { e8_count, hyperbolic_count } => {
                Some(UnimodularFormClass {
                    rank: 8 * e8_count.abs() + 2 * hyperbolic_count,
                    signature: 8 * e8_count,
                    parity: Parity::Even,
                })
            }
            StandardDecomposition::Unclassified(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Grade {
    /// Simply connected: the form class determines the homeomorphism type.
    Exact,
    /// No classification claim.
    Heuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HomeoFingerprint {
    pub form: UnimodularFormClass,
    pub b1: i128,
    pub spin: bool,
    pub grade: Grade,
}

/// `(b⁺ + b⁻, τ, Even iff spin)`.
pub fn form_of(e: &ManifoldExpr) -> UnimodularFormClass {
    let s = invariants(e);
    UnimodularFormClass {
        rank: s.b_plus + s.b_minus,
        signature: s.tau,
        parity: if s.spin { Parity::Even } else { Parity::Odd },
    }
}

pub fn standard_decomposition(f: &UnimodularFormClass) -> StandardDecomposition {
    if !f.is_consistent() {
        return StandardDecomposition::Unclassified(String::from("inconsistent"));
    }
    if f.rank != 0 && !f.is_indefinite() {
        return StandardDecomposition::Unclassified(String::from("definite"));
    }
    match f.parity {
        Parity::Odd => StandardDecomposition::OddDiag {
            p: (f.rank + f.signature) / 2,
            q: (f.rank - f.signature) / 2,
        },
        Parity::Even => StandardDecomposition::EvenSplit {
            e8_count: f.signature / 8,
            hyperbolic_count: (f.rank - f.signature.abs()) / 2,
        },
    }
}

/// Homeomorphism fingerprint. Exact only for simply connected expressions,
/// where all blocks are smooth (Kirby–Siebenmann vanishes) and Freedman's
/// classification applies.
pub fn fingerprint(e: &ManifoldExpr) -> HomeoFingerprint {
    let s = invariants(e);
    HomeoFingerprint {
        form: form_of(e),
        b1: s.b1,
        spin: s.spin,
        grade: if s.simply_connected && s.b1 == 0 { Grade::Exact } else { Grade::Heuristic },
    }
}
