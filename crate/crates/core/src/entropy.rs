//! Bounds on the fourth power of the minimal volume entropy.
//!
//! Adding an orientable nonessential summand does not change the minimal
//! volume entropy, so an expression reduces to its essential summands. For
//! a single essential `Σ_g×Σ_h` the value is pinned between the
//! Besson–Courtois–Gallot lower bound (through the simplicial volume
//! `24(g−1)(h−1)`) and Babenko's product bound `256π²(g−1)(h−1)`. All
//! bounds are for `λ⁴`, which keeps them in `ℚ[π, π⁻¹]`.

use alloc::vec;
use alloc::vec::Vec;

use crate::blocks::BlockKind;
use crate::exactnum::{rat, rat_int, ExactError, ExactReal, Rational, Sign};
pub use crate::facts::ExternalFact;
use crate::sums::{essential_decomposition, ManifoldExpr};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EntropyError {
    #[error("surface genus must be at least 1, got {0}")]
    InvalidGenus(i128),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Upper {
    Bounded(ExactReal),
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntropyStatus {
    Exact,
    IntervalOnly,
    LowerOnly,
    Unknown,
}

impl EntropyStatus {
    pub fn name(&self) -> &'static str {
        match self {
            EntropyStatus::Exact => "exact",
            EntropyStatus::IntervalOnly => "interval_only",
            EntropyStatus::LowerOnly => "lower_only",
            EntropyStatus::Unknown => "unknown",
        }
    }
}

/// Bounds on `λ(M)⁴`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EntropyBounds {
    pub lower: ExactReal,
    pub upper: Upper,
    pub exact_zero: bool,
    pub status: EntropyStatus,
    pub external_facts: Vec<ExternalFact>,
}

impl EntropyBounds {
    fn zero(facts: Vec<ExternalFact>) -> Self {
        EntropyBounds {
            lower: ExactReal::zero(),
            upper: Upper::Bounded(ExactReal::zero()),
            exact_zero: true,
            status: EntropyStatus::Exact,
            external_facts: facts,
        }
    }

    fn unknown() -> Self {
        EntropyBounds {
            lower: ExactReal::zero(),
            upper: Upper::Unbounded,
            exact_zero: false,
            status: EntropyStatus::Unknown,
            external_facts: vec![ExternalFact::NonessentialSummandInvariance],
        }
    }

    /// `lower ≥ 0`, `lower ≤ upper`, and `exact_zero ⟹ lower = upper = 0`.
    pub fn is_consistent(&self) -> Result<bool, ExactError> {
        if self.lower.sign()? == Sign::Negative {
            return Ok(false);
        }
        if let Upper::Bounded(u) = &self.upper {
            if !u.ge(&self.lower)? {
                return Ok(false);
            }
        }
        if self.exact_zero
            && !(self.lower.is_zero() && self.upper == Upper::Bounded(ExactReal::zero()))
        {
            return Ok(false);
        }
        Ok(true)
    }
}

/// `λ(Σ_g)² = 4π(g−1)`.
pub fn surface_entropy_sq(g: i128) -> Result<ExactReal, EntropyError> {
    if g < 1 {
        return Err(EntropyError::InvalidGenus(g));
    }
    Ok(ExactReal::monomial(rat_int(4 * (g - 1)), 1))
}

/// Babenko's bound `λ(X×Y)⁴ ≤ 256·(λ(X)²/4)·(λ(Y)²/4)` from the squared
/// entropies of the factors.
pub fn product_upper_bound(lx: &ExactReal, ly: &ExactReal) -> ExactReal {
    (lx * ly).scale(&rat_int(16))
}

/// `‖e‖`, assuming additivity under connected sum and vanishing on the
/// nonessential catalogue blocks. `None` when a custom block has no
/// declared value.
pub fn simplicial_volume(e: &ManifoldExpr) -> Option<Rational> {
    let mut total = Rational::from_integer(0.into());
    for (block, k) in e.summands() {
        let k = rat_int(k as i128);
        match block.kind() {
            BlockKind::SurfaceProduct { g, h } => {
                total += k * rat_int(24 * (*g as i128 - 1) * (*h as i128 - 1));
            }
            BlockKind::Custom(c) => total += k * c.simplicial_volume.clone()?,
            _ => {}
        }
    }
    Some(total)
}

/// Case analysis on the essential summands of `e`.
pub fn entropy_bounds(e: &ManifoldExpr) -> EntropyBounds {
    use ExternalFact::*;

    let split = essential_decomposition(e);
    if split.essential.iter().any(|(b, _)| b.is_custom()) {
        return EntropyBounds::unknown();
    }
    match split.essential_count() {
        0 => EntropyBounds::zero(vec![NonessentialSummandInvariance, NonessentialZeroEntropy]),
        1 => {
            let (g, h) = match split.essential[0].0.kind() {
                BlockKind::SurfaceProduct { g, h } => (*g as i128, *h as i128),
                _ => return EntropyBounds::unknown(),
            };
            let facts = vec![
                NonessentialSummandInvariance,
                SurfaceEntropy,
                BabenkoProductBound,
                BcgLowerBound,
                BucherKarlssonVolume,
            ];
            let p = (g - 1) * (h - 1);
            if p == 0 {
                return EntropyBounds::zero(facts);
            }
            let upper = product_upper_bound(
                &surface_entropy_sq(g).expect("catalogue genus"),
                &surface_entropy_sq(h).expect("catalogue genus"),
            );
            EntropyBounds {
                lower: ExactReal::from_int(16 * p),
                upper: Upper::Bounded(upper),
                exact_zero: false,
                status: EntropyStatus::IntervalOnly,
                external_facts: facts,
            }
        }
        _ => {
            let all_products = split
                .essential
                .iter()
                .all(|(b, _)| matches!(b.kind(), BlockKind::SurfaceProduct { .. }));
            let volume = match simplicial_volume(e) {
                Some(v) if all_products => v,
                _ => return EntropyBounds::unknown(),
            };
            EntropyBounds {
                // n^{n/2}/n! at n = 4
                lower: ExactReal::from_rational(volume * rat(2, 3)),
                upper: Upper::Unbounded,
                exact_zero: false,
                status: EntropyStatus::LowerOnly,
                external_facts: vec![
                    NonessentialSummandInvariance,
                    BcgLowerBound,
                    BucherKarlssonVolume,
                    GromovConnectedSumAdditivity,
                ],
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{make_block, BlockSpec, CustomBlock, InvariantVector};

    fn family(g: u64, h: u64, ell1: u64) -> ManifoldExpr {
        ManifoldExpr::single(BlockSpec::gompf(2, 4).unwrap())
            .with(BlockSpec::homotopy_k3(2).unwrap(), 1)
            .with(BlockSpec::surface_product(g, h).unwrap(), 1)
            .with(BlockSpec::s1xs3(), ell1)
    }

    fn torus4() -> BlockSpec {
        make_block(BlockKind::Custom(CustomBlock {
            name: "T4".into(),
            iv: InvariantVector {
                chi: 0,
                tau: 0,
                b1: 4,
                b_plus: 3,
                b_minus: 3,
                spin: true,
                simply_connected: false,
                symplectic: true,
                nonessential: false,
                orientable: true,
            },
            simplicial_volume: None,
        }))
        .unwrap()
    }

    #[test]
    fn surface_entropy() {
        assert!(surface_entropy_sq(1).unwrap().is_zero());
        assert_eq!(surface_entropy_sq(3).unwrap(), ExactReal::monomial(rat_int(8), 1));
        assert_eq!(surface_entropy_sq(2).unwrap(), ExactReal::monomial(rat_int(4), 1));
        assert_eq!(surface_entropy_sq(0), Err(EntropyError::InvalidGenus(0)));
    }

    #[test]
    fn product_bound() {
        let e8 = ExactReal::monomial(rat_int(8), 1);
        assert_eq!(product_upper_bound(&e8, &e8), ExactReal::monomial(rat_int(1024), 2));
        assert!(product_upper_bound(&ExactReal::zero(), &e8).is_zero());
        let e4 = ExactReal::monomial(rat_int(4), 1);
        assert_eq!(product_upper_bound(&e4, &e8), ExactReal::monomial(rat_int(512), 2));
        for g in 1..10 {
            for h in 1..10 {
                let b = product_upper_bound(
                    &surface_entropy_sq(g).unwrap(),
                    &surface_entropy_sq(h).unwrap(),
                );
                assert_eq!(b, ExactReal::monomial(rat_int(256 * (g - 1) * (h - 1)), 2));
            }
        }
    }

    #[test]
    fn simplicial_volumes() {
        let s33 = ManifoldExpr::single(BlockSpec::surface_product(3, 3).unwrap());
        assert_eq!(simplicial_volume(&s33), Some(rat_int(96)));
        let k3 = ManifoldExpr::single(BlockSpec::k3()).with(BlockSpec::s1xs3(), 3);
        assert_eq!(simplicial_volume(&k3), Some(rat_int(0)));
        let two = ManifoldExpr::single(BlockSpec::gompf(2, 4).unwrap())
            .with(BlockSpec::surface_product(3, 3).unwrap(), 1)
            .with(BlockSpec::surface_product(3, 5).unwrap(), 1);
        assert_eq!(simplicial_volume(&two), Some(rat_int(288)));
        assert_eq!(simplicial_volume(&ManifoldExpr::single(torus4())), None);
    }

    #[test]
    fn single_core_interval() {
        let b = entropy_bounds(&family(3, 3, 1));
        assert_eq!(b.lower, ExactReal::from_int(64));
        assert_eq!(b.upper, Upper::Bounded(ExactReal::monomial(rat_int(1024), 2)));
        assert_eq!(b.status, EntropyStatus::IntervalOnly);
        assert!(!b.exact_zero);
        assert!(b.is_consistent().unwrap());
    }

    #[test]
    fn nonessential_only_is_zero() {
        let e = ManifoldExpr::single(BlockSpec::k3()).with(BlockSpec::s1xs3(), 2);
        let b = entropy_bounds(&e);
        assert!(b.exact_zero);
        assert_eq!(b.status, EntropyStatus::Exact);
        assert!(b.is_consistent().unwrap());
    }

    #[test]
    fn genus_one_collapses() {
        let e = ManifoldExpr::single(BlockSpec::surface_product(1, 5).unwrap())
            .with(BlockSpec::k3(), 1);
        let b = entropy_bounds(&e);
        assert!(b.exact_zero);
        assert_eq!(b.lower, ExactReal::zero());
        assert_eq!(b.upper, Upper::Bounded(ExactReal::zero()));
    }

    #[test]
    fn two_cores_lower_only() {
        let s = BlockSpec::surface_product(3, 3).unwrap();
        let e = ManifoldExpr::single(s.clone()).with(s, 1);
        let b = entropy_bounds(&e);
        assert_eq!(b.status, EntropyStatus::LowerOnly);
        assert_eq!(b.upper, Upper::Unbounded);
        assert_eq!(b.lower, ExactReal::from_int(128));
        assert!(b.external_facts.contains(&ExternalFact::GromovConnectedSumAdditivity));
    }

    #[test]
    fn essential_custom_is_unknown() {
        let e = ManifoldExpr::single(torus4()).with(BlockSpec::k3(), 1);
        assert_eq!(entropy_bounds(&e).status, EntropyStatus::Unknown);
    }

    #[test]
    fn appending_nonessential_blocks_is_invisible() {
        let base = family(5, 7, 1);
        let b = entropy_bounds(&base);
        for extra in [
            BlockSpec::k3(),
            BlockSpec::cp2bar(),
            BlockSpec::s1xs3(),
            BlockSpec::gompf(3, 2).unwrap(),
            BlockSpec::homotopy_k3(9).unwrap(),
        ] {
            assert_eq!(entropy_bounds(&base.clone().with(extra, 2)), b);
        }
    }

    #[test]
    fn bcg_matches_lower_bound() {
        for g in 1..10i128 {
            for h in 1..10i128 {
                let e = ManifoldExpr::single(
                    BlockSpec::surface_product(g as u64, h as u64).unwrap(),
                );
                let vol = simplicial_volume(&e).unwrap();
                let b = entropy_bounds(&e);
                assert_eq!(ExactReal::from_rational(vol * rat(2, 3)), b.lower);
                assert_eq!(b.lower, ExactReal::from_int(16 * (g - 1) * (h - 1)));
            }
        }
    }
}
