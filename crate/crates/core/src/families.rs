//! The spin and non-spin families `X(m,n) # Y(ℓ) # Σ_g×Σ_h # ℓ'·Z`, with
//! `Z = S¹×S³` (spin) or `Z = CP²bar` (non-spin).
//!
//! Admissible parameters satisfy three linear inequalities in `ℓ'`: one per
//! side of the strict entropy inequality and one for the Einstein criterion.
//! All of them are decided over `ℚ`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use num_traits::{Signed, ToPrimitive};

use crate::blocks::{BlockSpec, MAX_PARAM};
use crate::entropy::{entropy_bounds, EntropyBounds};
use crate::exactnum::{rat, rat_int, ExactError, Rational, Sign};
use crate::facts::ExternalFact;
use crate::forms::{fingerprint, HomeoFingerprint};
use crate::obstructions::{
    einstein_obstruction, strict_ght_from_values, CheckResult, Verdict,
};
use crate::sums::{invariants, published_bookkeeping, ManifoldExpr, SumInvariants};

/// Recorded in every certificate; the distinctness of the smooth structures is not computed.
pub const INFINITE_DIFFEOTYPES_CITATION: &str =
    "distinct diffeotypes across ell are cited (bandwidth argument on monopole classes), not computed";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyKind {
    Spin,
    NonSpin,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Spin => "spin",
            FamilyKind::NonSpin => "nonspin",
        }
    }

    pub fn from_name(s: &str) -> Option<FamilyKind> {
        match s {
            "spin" => Some(FamilyKind::Spin),
            "nonspin" => Some(FamilyKind::NonSpin),
            _ => None,
        }
    }

    /// The summand repeated `ℓ'` times.
    pub fn filler(&self) -> BlockSpec {
        match self {
            FamilyKind::Spin => BlockSpec::s1xs3(),
            FamilyKind::NonSpin => BlockSpec::cp2bar(),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `(m, n, g, h, ℓ')` where `ℓ'` is `ℓ1` (spin) or `ℓ2` (non-spin).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyParams {
    pub kind: FamilyKind,
    pub m: u64,
    pub n: u64,
    pub g: u64,
    pub h: u64,
    pub ell: u64,
}

impl FamilyParams {
    pub fn spin(m: u64, n: u64, g: u64, h: u64, ell1: u64) -> Self {
        FamilyParams { kind: FamilyKind::Spin, m, n, g, h, ell: ell1 }
    }

    pub fn nonspin(m: u64, n: u64, g: u64, h: u64, ell2: u64) -> Self {
        FamilyParams { kind: FamilyKind::NonSpin, m, n, g, h, ell: ell2 }
    }

    /// The member with homotopy K3 index `y`.
    pub fn member(&self, y: u64) -> Result<ManifoldExpr, crate::blocks::BlockError> {
        Ok(ManifoldExpr::single(BlockSpec::gompf(self.m, self.n)?)
            .with(BlockSpec::homotopy_k3(y)?, 1)
            .with(BlockSpec::surface_product(self.g, self.h)?, 1)
            .with(self.kind.filler(), self.ell))
    }

    /// The member with `Y(ℓ)` replaced by K3, homeomorphic to every member.
    pub fn homeomorphic_model(&self) -> Result<ManifoldExpr, crate::blocks::BlockError> {
        Ok(ManifoldExpr::single(BlockSpec::gompf(self.m, self.n)?)
            .with(BlockSpec::k3(), 1)
            .with(BlockSpec::surface_product(self.g, self.h)?, 1)
            .with(self.kind.filler(), self.ell))
    }

    fn p(&self) -> i128 {
        (self.g as i128 - 1) * (self.h as i128 - 1)
    }
}

/// One of the three defining inequalities, with its exact margin.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InequalityCheck {
    pub name: &'static str,
    /// Strict (`margin > 0`) or non-strict (`margin ≥ 0`).
    pub strict: bool,
    pub margin: Rational,
    pub holds: bool,
}

impl InequalityCheck {
    fn new(name: &'static str, strict: bool, margin: Rational) -> Self {
        let holds = if strict { margin.is_positive() } else { !margin.is_negative() };
        InequalityCheck { name, strict, margin, holds }
    }
}

pub const GHT_PLUS_SIDE: &str = "ght_plus_side";
pub const GHT_MINUS_SIDE: &str = "ght_minus_side";
pub const EINSTEIN_CRITERION: &str = "einstein_criterion";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamCheck {
    /// Violated range constraints (`m ≥ 2`, `g` odd `≥ 3`, ...).
    pub range_failures: Vec<String>,
    /// `4m + 2n − 1 ≡ 3 (mod 4)`, i.e. `b⁺(X(m,n)) ≡ 3 (mod 4)`.
    pub congruence: bool,
    pub inequalities: Vec<InequalityCheck>,
}

impl ParamCheck {
    pub fn valid(&self) -> bool {
        self.range_failures.is_empty() && self.congruence && self.inequalities.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&InequalityCheck> {
        self.inequalities.iter().find(|c| c.name == name)
    }
}

fn base_failures(kind: FamilyKind, m: u64, n: u64, g: u64, h: u64) -> Vec<String> {
    let mut out = Vec::new();
    let _ = kind;
    if m < 2 {
        out.push(String::from("m must be at least 2"));
    }
    if n < 1 {
        out.push(String::from("n must be at least 1"));
    }
    if g < 3 || g.is_multiple_of(2) {
        out.push(String::from("g must be an odd integer at least 3"));
    }
    if h < 3 || h.is_multiple_of(2) {
        out.push(String::from("h must be an odd integer at least 3"));
    }
    if [m, n, g, h].iter().any(|v| *v > MAX_PARAM) {
        out.push(String::from("parameter exceeds the supported maximum"));
    }
    out
}

fn congruence(m: u64, n: u64) -> bool {
    (4 * m as i128 + 2 * n as i128 - 1).rem_euclid(4) == 3
}

/// Right-hand constants of the three inequalities as functions of `ℓ'`:
/// returns `(plus_bound, minus_const, einstein_bound)` where the spin
/// system reads `plus_bound > ℓ1`, `minus_const > ℓ1`, `ℓ1 ≥ einstein_bound`
/// and the non-spin one `plus_bound > ℓ2`, `minus_const + 5ℓ2 > 0`,
/// `ℓ2 ≥ einstein_bound`.
fn bounds(kind: FamilyKind, m: u64, n: u64, g: u64, h: u64) -> (Rational, Rational, Rational) {
    let (m, n) = (m as i128, n as i128);
    let p = (g as i128 - 1) * (h as i128 - 1);
    match kind {
        FamilyKind::Spin => (
            rat_int(2 * n - 3) - rat(5 * p, 27),
            rat_int(2 * (n + 12 * m) + 21) - rat(5 * p, 27),
            rat(2 * n + p, 3) - rat_int(3),
        ),
        FamilyKind::NonSpin => (
            rat_int(8 * n - 12) - rat(20 * p, 27),
            rat_int(8 * (n + 12 * m) + 84) - rat(20 * p, 27),
            rat(8 * n + 4 * p, 3) - rat_int(12),
        ),
    }
}

/// Evaluates the range constraints, the congruence and the three inequalities.
pub fn check_params(p: &FamilyParams) -> ParamCheck {
    let mut range_failures = base_failures(p.kind, p.m, p.n, p.g, p.h);
    if p.ell < 1 {
        range_failures.push(String::from("ell must be positive"));
    }
    if p.ell > MAX_PARAM {
        range_failures.push(String::from("ell exceeds the supported maximum"));
    }
    let (plus, minus, einstein) = bounds(p.kind, p.m, p.n, p.g, p.h);
    let ell = rat_int(p.ell as i128);
    let minus_margin = match p.kind {
        FamilyKind::Spin => &minus - &ell,
        FamilyKind::NonSpin => &minus + &ell * rat_int(5),
    };
    ParamCheck {
        range_failures,
        congruence: congruence(p.m, p.n),
        inequalities: vec![
            InequalityCheck::new(GHT_PLUS_SIDE, true, &plus - &ell),
            InequalityCheck::new(GHT_MINUS_SIDE, true, minus_margin),
            InequalityCheck::new(EINSTEIN_CRITERION, false, &ell - &einstein),
        ],
    }
}

/// Admissible `ℓ'` for fixed `(m, n, g, h)`: integers in `[lower, upper)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EllWindow {
    /// Inclusive lower bound (already at least 1).
    pub lower: Rational,
    /// Exclusive upper bound.
    pub upper: Rational,
    /// Whether `(m, n, g, h)` themselves are admissible; if not, the window is empty.
    pub base_admissible: bool,
}

impl EllWindow {
    pub fn integers(&self) -> RangeInclusive<u64> {
        let lo = self.lower.ceil().to_integer();
        // largest integer strictly below upper
        let hi: num_bigint::BigInt = ceil_int(&self.upper) - 1;
        match (lo.to_u64(), hi.to_i128()) {
            (Some(lo), Some(hi)) if self.base_admissible && hi >= lo as i128 => {
                lo..=(hi.min(MAX_PARAM as i128) as u64)
            }
            _ => empty_range(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.integers().is_empty()
    }
}

#[allow(clippy::reversed_empty_ranges)]
fn empty_range() -> RangeInclusive<u64> {
    1..=0
}

fn ceil_int(r: &Rational) -> num_bigint::BigInt {
    r.ceil().to_integer()
}

fn max_rat(a: Rational, b: Rational) -> Rational {
    if a >= b { a } else { b }
}

pub fn ell_window(kind: FamilyKind, m: u64, n: u64, g: u64, h: u64) -> EllWindow {
    let base_admissible = base_failures(kind, m, n, g, h).is_empty() && congruence(m, n);
    let (plus, minus, einstein) = bounds(kind, m, n, g, h);
    let (lower, upper) = match kind {
        FamilyKind::Spin => {
            let upper = if plus <= minus { plus } else { minus };
            (max_rat(rat_int(1), einstein), upper)
        }
        FamilyKind::NonSpin => {
            // minus + 5ℓ > 0  ⟺  ℓ ≥ ⌊−minus/5⌋ + 1
            let strict_lower = (-minus * rat(1, 5)).floor() + rat_int(1);
            (max_rat(max_rat(rat_int(1), einstein), strict_lower), plus)
        }
    };
    EllWindow { lower, upper, base_admissible }
}

/// Finite parameter box for enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumBounds {
    pub g: RangeInclusive<u64>,
    pub h: RangeInclusive<u64>,
    pub m: RangeInclusive<u64>,
    pub n: RangeInclusive<u64>,
}

/// Admissible tuples in lexicographic `(g, h, m, n, ℓ')` order.
pub fn enumerate(kind: FamilyKind, b: &EnumBounds) -> impl Iterator<Item = FamilyParams> + '_ {
    b.g.clone().flat_map(move |g| {
        b.h.clone().flat_map(move |h| {
            b.m.clone().flat_map(move |m| {
                b.n.clone().flat_map(move |n| {
                    ell_window(kind, m, n, g, h)
                        .integers()
                        .map(move |ell| FamilyParams { kind, m, n, g, h, ell })
                })
            })
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("parameters are not admissible")]
    InvalidParams(ParamCheck),
    #[error("empty homotopy K3 index range {0}..{1}")]
    EmptyRange(u64, u64),
    #[error(transparent)]
    Block(#[from] crate::blocks::BlockError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Everything recorded for one member `ℓ` of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberRecord {
    pub ell: u64,
    pub expression: ManifoldExpr,
    pub homeomorphic_model: ManifoldExpr,
    pub invariants: SumInvariants,
    pub entropy: EntropyBounds,
    pub positive_entropy: bool,
    /// Strict entropy inequality with first-principles invariants.
    pub strict_ght: CheckResult,
    /// The same inequality with the published `2χ ± 3τ` values.
    pub strict_ght_published: CheckResult,
    pub einstein: CheckResult,
    pub homotopy_k3_fingerprint: HomeoFingerprint,
    pub k3_fingerprint_match: bool,
    pub spin_matches_kind: bool,
}

impl MemberRecord {
    pub fn all_proven(&self) -> bool {
        self.positive_entropy
            && self.strict_ght.verdict.is_proven()
            && self.einstein.verdict.is_proven()
            && self.k3_fingerprint_match
            && self.spin_matches_kind
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyCertificate {
    pub params: FamilyParams,
    pub param_check: ParamCheck,
    /// Inclusive range of homotopy K3 indices checked.
    pub ell_range: (u64, u64),
    pub members: Vec<MemberRecord>,
    pub fingerprint_stability: bool,
    /// Invariants, entropy bounds and margins agree across all members.
    pub member_independent: bool,
    pub external_facts: Vec<ExternalFact>,
    pub infinite_diffeotypes_citation: &'static str,
}

impl FamilyCertificate {
    pub fn valid(&self) -> bool {
        self.fingerprint_stability && self.members.iter().all(MemberRecord::all_proven)
    }
}

fn published_gap(p: &FamilyParams) -> i128 {
    let (plus, minus) = published_bookkeeping(
        p.m as i128,
        p.n as i128,
        p.g as i128,
        p.h as i128,
        p.ell as i128,
        p.kind,
    );
    plus.min(minus)
}

fn certify_member(p: &FamilyParams, y: u64, k3_print: &HomeoFingerprint) -> Result<MemberRecord, FamilyError> {
    let expression = p.member(y)?;
    let inv = invariants(&expression);
    let entropy = entropy_bounds(&expression);
    let positive_entropy = entropy.lower.sign()? == Sign::Positive;
    let strict_ght = strict_ght_from_values(inv.hitchin_thorpe_gap(), &entropy)?;
    let strict_ght_published = strict_ght_from_values(published_gap(p), &entropy)?;
    let einstein = einstein_obstruction(&expression);
    let homotopy_k3_fingerprint = fingerprint(&ManifoldExpr::single(BlockSpec::homotopy_k3(y)?));
    Ok(MemberRecord {
        ell: y,
        homeomorphic_model: p.homeomorphic_model()?,
        expression,
        invariants: inv,
        entropy,
        positive_entropy,
        strict_ght,
        strict_ght_published,
        einstein,
        k3_fingerprint_match: homotopy_k3_fingerprint == *k3_print,
        homotopy_k3_fingerprint,
        spin_matches_kind: inv.spin == (p.kind == FamilyKind::Spin),
    })
}

/// Builds and checks every member `ℓ ∈ [ell_range.0, ell_range.1]`.
pub fn certify_family(p: &FamilyParams, ell_range: (u64, u64)) -> Result<FamilyCertificate, FamilyError> {
    let param_check = check_params(p);
    if !param_check.valid() {
        return Err(FamilyError::InvalidParams(param_check));
    }
    let (lo, hi) = ell_range;
    if lo > hi {
        return Err(FamilyError::EmptyRange(lo, hi));
    }
    let k3_print = fingerprint(&ManifoldExpr::single(BlockSpec::k3()));
    let members = (lo..=hi)
        .map(|y| certify_member(p, y, &k3_print))
        .collect::<Result<Vec<_>, _>>()?;
    let fingerprint_stability = members.iter().all(|r| r.k3_fingerprint_match);
    let member_independent = members.windows(2).all(|w| {
        w[0].invariants == w[1].invariants
            && w[0].entropy == w[1].entropy
            && w[0].strict_ght.margin == w[1].strict_ght.margin
            && w[0].einstein.margin == w[1].einstein.margin
    });
    Ok(FamilyCertificate {
        params: *p,
        param_check,
        ell_range,
        members,
        fingerprint_stability,
        member_independent,
        external_facts: vec![
            ExternalFact::FreedmanClassification,
            ExternalFact::StableCohomotopyObstruction,
            ExternalFact::EntropyHitchinThorpe,
            ExternalFact::NonessentialSummandInvariance,
            ExternalFact::InfiniteDiffeotypes,
        ],
        infinite_diffeotypes_citation: INFINITE_DIFFEOTYPES_CITATION,
    })
}

/// `(2χ+3τ, 2χ−3τ)` first principles minus published, for a family member.
pub fn bookkeeping_discrepancy(p: &FamilyParams) -> Result<(i128, i128), FamilyError> {
    let inv = invariants(&p.member(0)?);
    let (a, b) = published_bookkeeping(
        p.m as i128,
        p.n as i128,
        p.g as i128,
        p.h as i128,
        p.ell as i128,
        p.kind,
    );
    Ok((inv.two_chi_plus_3tau() - a, inv.two_chi_minus_3tau() - b))
}

/// The margin `4(g−1)(h−1) + 4` by which first-principles values exceed the published ones.
pub fn expected_discrepancy(p: &FamilyParams) -> i128 {
    4 * p.p() + 4
}

/// Whether the entropy inequality holds with the published `2χ ± 3τ`.
pub fn published_strict_ght(p: &FamilyParams) -> Result<Verdict, FamilyError> {
    let e = p.member(0)?;
    Ok(strict_ght_from_values(published_gap(p), &entropy_bounds(&e))?.verdict)
}
