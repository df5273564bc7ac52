//! Catalogue of building-block 4-manifolds.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::Rational;

/// Largest accepted catalogue parameter (and summand multiplicity).
pub const MAX_PARAM: u64 = u32::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlockError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invariant violation: {0:?}")]
    InvariantViolation(Vec<Violation>),
}

/// Characteristic numbers and provenance flags of a closed oriented 4-manifold.
///
/// `symplectic` and `nonessential` are asserted, never computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvariantVector {
    pub chi: i128,
    pub tau: i128,
    pub b1: i128,
    pub b_plus: i128,
    pub b_minus: i128,
    pub spin: bool,
    pub simply_connected: bool,
    pub symplectic: bool,
    pub nonessential: bool,
    pub orientable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Violation {
    NegativeBetti,
    BettiInconsistency,
    SignatureMismatch,
    SimplyConnectedWithB1,
    SimplyConnectedEssential,
    RokhlinViolation,
    NotOrientable,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::NegativeBetti => "negative Betti number",
            Violation::BettiInconsistency => "b+ + b- != chi - 2 + 2*b1",
            Violation::SignatureMismatch => "tau != b+ - b-",
            Violation::SimplyConnectedWithB1 => "simply connected but b1 != 0",
            Violation::SimplyConnectedEssential => "simply connected but flagged essential",
            Violation::RokhlinViolation => "spin and simply connected but tau not divisible by 16",
            Violation::NotOrientable => "not orientable",
        })
    }
}

impl InvariantVector {
    /// All violated invariants, in a fixed order. Empty means valid.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.b1 < 0 || self.b_plus < 0 || self.b_minus < 0 {
            out.push(Violation::NegativeBetti);
        }
        if self.b_plus + self.b_minus != self.chi - 2 + 2 * self.b1 {
            out.push(Violation::BettiInconsistency);
        }
        if self.tau != self.b_plus - self.b_minus {
            out.push(Violation::SignatureMismatch);
        }
        if self.simply_connected && self.b1 != 0 {
            out.push(Violation::SimplyConnectedWithB1);
        }
        if self.simply_connected && !self.nonessential {
            out.push(Violation::SimplyConnectedEssential);
        }
        if self.spin && self.simply_connected && self.tau.rem_euclid(16) != 0 {
            out.push(Violation::RokhlinViolation);
        }
        if !self.orientable {
            out.push(Violation::NotOrientable);
        }
        out
    }
}

/// A user-defined block: the invariants plus an optional declared simplicial volume.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CustomBlock {
    pub name: String,
    pub iv: InvariantVector,
    pub simplicial_volume: Option<Rational>,
}

/// Block kinds. Variant order is the canonical summand order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockKind {
    /// Gompf's simply connected symplectic spin manifold `X_{m,n}`.
    Gompf { m: u64, n: u64 },
    /// Homotopy K3 `Y_ℓ` from a logarithmic transform of order `2ℓ+1`.
    HomotopyK3 { ell: u64 },
    K3,
    /// `Σ_g × Σ_h`.
    SurfaceProduct { g: u64, h: u64 },
    S1xS3,
    CP2bar,
    Custom(CustomBlock),
}

/// A block together with its derived invariants.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockSpec {
    kind: BlockKind,
    iv: InvariantVector,
}

impl BlockSpec {
    pub fn kind(&self) -> &BlockKind {
        &self.kind
    }

    pub fn invariants(&self) -> &InvariantVector {
        &self.iv
    }

    pub fn is_custom(&self) -> bool {
        matches!(self.kind, BlockKind::Custom(_))
    }

    pub fn gompf(m: u64, n: u64) -> Result<Self, BlockError> {
        make_block(BlockKind::Gompf { m, n })
    }

    pub fn homotopy_k3(ell: u64) -> Result<Self, BlockError> {
        make_block(BlockKind::HomotopyK3 { ell })
    }

    pub fn k3() -> Self {
        make_block(BlockKind::K3).expect("catalogue block")
    }

    pub fn surface_product(g: u64, h: u64) -> Result<Self, BlockError> {
        make_block(BlockKind::SurfaceProduct { g, h })
    }

    pub fn s1xs3() -> Self {
        make_block(BlockKind::S1xS3).expect("catalogue block")
    }

    pub fn cp2bar() -> Self {
        make_block(BlockKind::CP2bar).expect("catalogue block")
    }
}

fn check_range(what: &str, v: u64, min: u64) -> Result<i128, BlockError> {
    if v < min {
        return Err(BlockError::InvalidParameter(alloc::format!(
            "{what} must be at least {min}, got {v}"
        )));
    }
    if v > MAX_PARAM {
        return Err(BlockError::InvalidParameter(alloc::format!(
            "{what} = {v} exceeds the supported maximum {MAX_PARAM}"
        )));
    }
    Ok(v as i128)
}

/// Whether `name` is usable as a custom block name in the textual syntax.
pub fn is_valid_block_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(name, "true" | "false")
}

const K3_IV: InvariantVector = InvariantVector {
    chi: 24,
    tau: -16,
    b1: 0,
    b_plus: 3,
    b_minus: 19,
    spin: true,
    simply_connected: true,
    symplectic: true,
    nonessential: true,
    orientable: true,
};

/// Derives the invariant vector of a block, validating parameters.
pub fn make_block(kind: BlockKind) -> Result<BlockSpec, BlockError> {
    let iv = match &kind {
        BlockKind::Gompf { m, n } => {
            let m = check_range("Gompf m", *m, 2)?;
            let n = check_range("Gompf n", *n, 1)?;
            InvariantVector {
                chi: 24 * m + 4 * n,
                tau: -16 * m,
                b1: 0,
                b_plus: 4 * m + 2 * n - 1,
                b_minus: 20 * m + 2 * n - 1,
                ..K3_IV
            }
        }
        BlockKind::HomotopyK3 { ell } => {
            check_range("homotopy K3 index", *ell, 0)?;
            K3_IV
        }
        BlockKind::K3 => K3_IV,
        BlockKind::SurfaceProduct { g, h } => {
            let g = check_range("surface genus g", *g, 1)?;
            let h = check_range("surface genus h", *h, 1)?;
            InvariantVector {
                chi: 4 * (g - 1) * (h - 1),
                tau: 0,
                b1: 2 * g + 2 * h,
                b_plus: 2 * g * h + 1,
                b_minus: 2 * g * h + 1,
                spin: true,
                simply_connected: false,
                symplectic: true,
                nonessential: false,
                orientable: true,
            }
        }
        BlockKind::S1xS3 => InvariantVector {
            chi: 0,
            tau: 0,
            b1: 1,
            b_plus: 0,
            b_minus: 0,
            spin: true,
            simply_connected: false,
            symplectic: false,
            nonessential: true,
            orientable: true,
        },
        BlockKind::CP2bar => InvariantVector {
            chi: 3,
            tau: -1,
            b1: 0,
            b_plus: 0,
            b_minus: 1,
            spin: false,
            simply_connected: true,
            symplectic: false,
            nonessential: true,
            orientable: true,
        },
        BlockKind::Custom(c) => {
            if !is_valid_block_name(&c.name) {
                return Err(BlockError::InvalidParameter(alloc::format!(
                    "custom block name {:?} is not an identifier",
                    c.name
                )));
            }
            if let Some(v) = &c.simplicial_volume {
                if v < &Rational::from_integer(0.into()) {
                    return Err(BlockError::InvalidParameter(String::from(
                        "simplicial volume must be nonnegative",
                    )));
                }
            }
            let iv = &c.iv;
            let fields = [iv.chi, iv.tau, iv.b1, iv.b_plus, iv.b_minus];
            if fields.iter().any(|v| *v < i64::MIN as i128 || *v > i64::MAX as i128) {
                return Err(BlockError::InvalidParameter(String::from(
                    "custom invariants must fit in 64 bits",
                )));
            }
            let violations = c.iv.violations();
            if !violations.is_empty() {
                return Err(BlockError::InvariantViolation(violations));
            }
            c.iv
        }
    };
    Ok(BlockSpec { kind, iv })
}

/// Violated invariants of `b`'s vector; empty iff valid.
pub fn validate_block(b: &BlockSpec) -> Vec<Violation> {
    b.iv.violations()
}
