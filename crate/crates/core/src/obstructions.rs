//! Einstein-metric obstructions and the inequalities around them.
//!
//! Every checker returns a [`CheckResult`] whose verdict refers to the
//! statement named by its [`CheckKind`]. The Einstein criterion only ever
//! proves non-existence: when its inequality fails the verdict is
//! `Indeterminate`, never "an Einstein metric exists".

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::blocks::BlockKind;
use crate::entropy::{entropy_bounds, simplicial_volume, EntropyBounds, Upper};
use crate::exactnum::{rat, rat_int, ExactError, ExactReal, Rational, Sign};
use crate::facts::ExternalFact;
use crate::sums::{invariants, ManifoldExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    /// `2χ ≥ 3|τ|`.
    HitchinThorpe,
    /// `2χ ≥ 3|τ| + ‖X‖/(81π²)`.
    GhtSimplicial,
    /// `2χ − 3|τ| > λ⁴/(54π²)`.
    StrictGhtEntropy,
    /// The expression admits no Einstein metric.
    EinsteinObstruction,
}

impl CheckKind {
    pub const ALL: [CheckKind; 4] = [
        CheckKind::HitchinThorpe,
        CheckKind::GhtSimplicial,
        CheckKind::StrictGhtEntropy,
        CheckKind::EinsteinObstruction,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::HitchinThorpe => "ht",
            CheckKind::GhtSimplicial => "ght",
            CheckKind::StrictGhtEntropy => "ght-entropy",
            CheckKind::EinsteinObstruction => "einstein",
        }
    }

    pub fn from_name(s: &str) -> Option<CheckKind> {
        CheckKind::ALL.iter().copied().find(|c| c.name() == s)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Verdict {
    Proven,
    Refuted,
    Indeterminate,
    HypothesesNotMet(Vec<String>),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Proven => "proven",
            Verdict::Refuted => "refuted",
            Verdict::Indeterminate => "indeterminate",
            Verdict::HypothesesNotMet(_) => "hypotheses_not_met",
        }
    }

    pub fn is_proven(&self) -> bool {
        *self == Verdict::Proven
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypothesis {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

impl Hypothesis {
    fn new(name: &'static str, holds: bool, detail: String) -> Self {
        Hypothesis { name, holds, detail }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CheckResult {
    pub check: CheckKind,
    pub verdict: Verdict,
    /// Signed distance to the threshold; positive (or zero for non-strict
    /// statements) when proven, nonpositive or negative when refuted.
    pub margin: Option<ExactReal>,
    /// Hitchin–Thorpe only: whether `2χ = 3|τ|`.
    pub equality: Option<bool>,
    pub hypotheses: Vec<Hypothesis>,
    pub external_facts: Vec<ExternalFact>,
}

/// Outcome of the plain Hitchin–Thorpe comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HtOutcome {
    Strict,
    Equality,
    Violated,
}

impl HtOutcome {
    pub fn name(&self) -> &'static str {
        match self {
            HtOutcome::Strict => "strict",
            HtOutcome::Equality => "equality",
            HtOutcome::Violated => "violated",
        }
    }
}

impl CheckResult {
    pub fn ht_outcome(&self) -> Option<HtOutcome> {
        match (self.check, &self.verdict, self.equality) {
            (CheckKind::HitchinThorpe, Verdict::Proven, Some(true)) => Some(HtOutcome::Equality),
            (CheckKind::HitchinThorpe, Verdict::Proven, _) => Some(HtOutcome::Strict),
            (CheckKind::HitchinThorpe, Verdict::Refuted, _) => Some(HtOutcome::Violated),
            _ => None,
        }
    }
}

pub fn hitchin_thorpe(e: &ManifoldExpr) -> CheckResult {
    let gap = invariants(e).hitchin_thorpe_gap();
    CheckResult {
        check: CheckKind::HitchinThorpe,
        verdict: if gap >= 0 { Verdict::Proven } else { Verdict::Refuted },
        margin: Some(ExactReal::from_int(gap)),
        equality: Some(gap == 0),
        hypotheses: Vec::new(),
        external_facts: vec![ExternalFact::HitchinThorpe],
    }
}

pub fn ght_simplicial(e: &ManifoldExpr) -> Result<CheckResult, ExactError> {
    let gap = invariants(e).hitchin_thorpe_gap();
    let facts = vec![ExternalFact::GromovHitchinThorpeSimplicial];
    let Some(volume) = simplicial_volume(e) else {
        return Ok(CheckResult {
            check: CheckKind::GhtSimplicial,
            verdict: Verdict::Indeterminate,
            margin: None,
            equality: None,
            hypotheses: vec![Hypothesis::new(
                "simplicial_volume_known",
                false,
                String::from("a custom summand has no declared simplicial volume"),
            )],
            external_facts: facts,
        });
    };
    let margin =
        ExactReal::from_int(gap) - ExactReal::monomial(volume * rat(1, 81), -2);
    let verdict = match margin.sign()? {
        Sign::Negative => Verdict::Refuted,
        _ => Verdict::Proven,
    };
    Ok(CheckResult {
        check: CheckKind::GhtSimplicial,
        verdict,
        margin: Some(margin),
        equality: None,
        hypotheses: vec![Hypothesis::new(
            "simplicial_volume_known",
            true,
            String::from("sum over surface-product summands"),
        )],
        external_facts: facts,
    })
}

/// `x/(54π²)`.
fn entropy_threshold(x: &ExactReal) -> ExactReal {
    x * &ExactReal::monomial(rat(1, 54), -2)
}

/// Strict entropy inequality for a given `2χ − 3|τ|` and entropy bounds.
pub fn strict_ght_from_values(gap: i128, bounds: &EntropyBounds) -> Result<CheckResult, ExactError> {
    let gap = ExactReal::from_int(gap);
    let mut facts = vec![ExternalFact::EntropyHitchinThorpe];
    facts.extend(bounds.external_facts.iter().copied());
    let mut result = CheckResult {
        check: CheckKind::StrictGhtEntropy,
        verdict: Verdict::Indeterminate,
        margin: None,
        equality: None,
        hypotheses: vec![Hypothesis::new(
            "entropy_bounds",
            true,
            String::from(bounds.status.name()),
        )],
        external_facts: facts,
    };
    if let Upper::Bounded(upper) = &bounds.upper {
        let margin = &gap - &entropy_threshold(upper);
        if margin.sign()? == Sign::Positive {
            result.verdict = Verdict::Proven;
            result.margin = Some(margin);
            return Ok(result);
        }
    }
    // λ⁴ ≥ lower holds for every status (lower is 0 when nothing is known)
    let margin = &gap - &entropy_threshold(&bounds.lower);
    if margin.sign()? != Sign::Positive {
        result.verdict = Verdict::Refuted;
        result.margin = Some(margin);
    }
    Ok(result)
}

pub fn strict_ght_entropy(e: &ManifoldExpr) -> Result<CheckResult, ExactError> {
    strict_ght_from_values(invariants(e).hitchin_thorpe_gap(), &entropy_bounds(e))
}

/// Shape of a sum `(#X_i) # k(Σ_h×Σ_g) # ℓ1(S¹×S³) # ℓ2·CP²bar`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EinsteinShape {
    /// Number of symplectic blocks `X_i`, with multiplicity.
    pub n: i128,
    pub k: i128,
    pub g: i128,
    pub h: i128,
    pub ell1: i128,
    pub ell2: i128,
    /// `Σ (2χ(X_i) + 3τ(X_i))`.
    pub symplectic_sum: i128,
}

impl EinsteinShape {
    /// `4(n+ℓ1+k) + ℓ2 − (1/3)(Σ(2χ+3τ)(X_i) + 4k(1−h)(1−g))`.
    pub fn margin(&self) -> Rational {
        let lhs = rat_int(4 * (self.n + self.ell1 + self.k) + self.ell2);
        let rhs = rat_int(self.symplectic_sum + 4 * self.k * (1 - self.h) * (1 - self.g)) * rat(1, 3);
        lhs - rhs
    }
}

/// Matches `e` against the criterion's shape, recording every hypothesis.
pub fn match_einstein_shape(e: &ManifoldExpr) -> (Option<EinsteinShape>, Vec<Hypothesis>) {
    let mut shape = EinsteinShape { n: 0, k: 0, g: 0, h: 0, ell1: 0, ell2: 0, symplectic_sum: 0 };
    let mut rejected = Vec::new();
    let mut surfaces = BTreeSet::new();
    for (block, k) in e.summands() {
        let k = k as i128;
        let iv = block.invariants();
        match block.kind() {
            BlockKind::SurfaceProduct { g, h } => {
                let (a, b) = ((*g).min(*h) as i128, (*g).max(*h) as i128);
                surfaces.insert((a, b));
                shape.k += k;
                shape.g = *g as i128;
                shape.h = *h as i128;
            }
            BlockKind::S1xS3 => shape.ell1 += k,
            BlockKind::CP2bar => shape.ell2 += k,
            _ => {
                if iv.simply_connected && iv.symplectic && iv.b_plus.rem_euclid(4) == 3 {
                    shape.n += k;
                    shape.symplectic_sum += k * (2 * iv.chi + 3 * iv.tau);
                } else {
                    let mut why = Vec::new();
                    if !iv.simply_connected {
                        why.push("not simply connected");
                    }
                    if !iv.symplectic {
                        why.push("not symplectic");
                    }
                    if iv.b_plus.rem_euclid(4) != 3 {
                        why.push("b+ not 3 mod 4");
                    }
                    rejected.push(format!("{}: {}", block, why.join(", ")));
                }
            }
        }
    }

    let mut hyps = Vec::new();
    hyps.push(Hypothesis::new(
        "admissible_summands",
        rejected.is_empty(),
        if rejected.is_empty() {
            String::from("every summand fits the shape")
        } else {
            rejected.join("; ")
        },
    ));
    hyps.push(Hypothesis::new(
        "uniform_surface_products",
        surfaces.len() <= 1,
        format!("{} distinct surface products", surfaces.len()),
    ));
    hyps.push(Hypothesis::new("n_at_least_1", shape.n >= 1, format!("n = {}", shape.n)));
    hyps.push(Hypothesis::new("k_at_least_1", shape.k >= 1, format!("k = {}", shape.k)));
    hyps.push(Hypothesis::new(
        "n_plus_k_at_most_3",
        shape.n + shape.k <= 3,
        format!("n + k = {}", shape.n + shape.k),
    ));
    if shape.k >= 1 && surfaces.len() == 1 {
        hyps.push(Hypothesis::new("g_odd", shape.g % 2 == 1, format!("g = {}", shape.g)));
        hyps.push(Hypothesis::new("h_odd", shape.h % 2 == 1, format!("h = {}", shape.h)));
    }
    let ok = hyps.iter().all(|h| h.holds);
    (ok.then_some(shape), hyps)
}

fn failure_reason(h: &Hypothesis) -> String {
    match h.name {
        "g_odd" => String::from("g not odd"),
        "h_odd" => String::from("h not odd"),
        "uniform_surface_products" => String::from("non-uniform surface products"),
        "admissible_summands" => format!("inadmissible summand ({})", h.detail),
        "n_at_least_1" => String::from("no admissible symplectic summand"),
        "k_at_least_1" => String::from("no surface-product summand"),
        "n_plus_k_at_most_3" => format!("too many core summands ({})", h.detail),
        _ => String::from(h.name),
    }
}

pub fn einstein_obstruction(e: &ManifoldExpr) -> CheckResult {
    let (shape, hypotheses) = match_einstein_shape(e);
    let external_facts = vec![ExternalFact::StableCohomotopyObstruction];
    let Some(shape) = shape else {
        let reasons = hypotheses.iter().filter(|h| !h.holds).map(failure_reason).collect();
        return CheckResult {
            check: CheckKind::EinsteinObstruction,
            verdict: Verdict::HypothesesNotMet(reasons),
            margin: None,
            equality: None,
            hypotheses,
            external_facts,
        };
    };
    let margin = shape.margin();
    let verdict = if Sign::of_rational(&margin) == Sign::Negative {
        Verdict::Indeterminate
    } else {
        Verdict::Proven
    };
    CheckResult {
        check: CheckKind::EinsteinObstruction,
        verdict,
        margin: Some(ExactReal::from_rational(margin)),
        equality: None,
        hypotheses,
        external_facts,
    }
}

pub fn run_check(kind: CheckKind, e: &ManifoldExpr) -> Result<CheckResult, ExactError> {
    match kind {
        CheckKind::HitchinThorpe => Ok(hitchin_thorpe(e)),
        CheckKind::GhtSimplicial => ght_simplicial(e),
        CheckKind::StrictGhtEntropy => strict_ght_entropy(e),
        CheckKind::EinsteinObstruction => Ok(einstein_obstruction(e)),
    }
}
