//! JSON encodings. Exact quantities are rational strings or `{degree: "n/d"}`
//! maps in ascending degree; no floats are ever emitted.

use m4_core::entropy::{EntropyBounds, ExternalFact, Upper};
use m4_core::exactnum::{rational_to_string, ExactReal, Rational};
use m4_core::exprlang::pretty;
use m4_core::families::{
    FamilyCertificate, FamilyKind, FamilyParams, MemberRecord, ParamCheck,
};
use m4_core::forms::{Grade, HomeoFingerprint, Parity};
use m4_core::obstructions::{CheckResult, Verdict};
use m4_core::sums::{invariants, ManifoldExpr, SumInvariants};
use serde_json::{json, Map, Value};

use crate::TOOL_VERSION;

pub const SCHEMA_VERSION: &str = "1";

/// An integer as a JSON number when it fits in 64 bits, else a decimal string.
pub fn int(v: i128) -> Value {
    match i64::try_from(v) {
        Ok(x) => Value::from(x),
        Err(_) => Value::String(v.to_string()),
    }
}

pub fn rational(r: &Rational) -> Value {
    Value::String(rational_to_string(r))
}

pub fn exact(x: &ExactReal) -> Value {
    let mut m = Map::new();
    for (deg, c) in x.terms() {
        m.insert(deg.to_string(), rational(c));
    }
    Value::Object(m)
}

pub fn facts(list: &[ExternalFact]) -> Value {
    Value::Array(list.iter().map(|f| Value::from(f.name())).collect())
}

pub fn invariants_json(s: &SumInvariants) -> Value {
    json!({
        "chi": int(s.chi),
        "tau": int(s.tau),
        "b1": int(s.b1),
        "b_plus": int(s.b_plus),
        "b_minus": int(s.b_minus),
        "spin": s.spin,
        "simply_connected": s.simply_connected,
        "summands": s.t,
        "two_chi_plus_3tau": int(s.two_chi_plus_3tau()),
        "two_chi_minus_3tau": int(s.two_chi_minus_3tau()),
    })
}

pub fn entropy(b: &EntropyBounds) -> Value {
    json!({
        "quantity": "lambda^4",
        "lower": exact(&b.lower),
        "upper": match &b.upper {
            Upper::Bounded(u) => exact(u),
            Upper::Unbounded => Value::from("unbounded"),
        },
        "exact_zero": b.exact_zero,
        "status": b.status.name(),
        "external_facts": facts(&b.external_facts),
    })
}

pub fn fingerprint(f: &HomeoFingerprint) -> Value {
    json!({
        "rank": int(f.form.rank),
        "signature": int(f.form.signature),
        "parity": match f.form.parity { Parity::Even => "even", Parity::Odd => "odd" },
        "b1": int(f.b1),
        "spin": f.spin,
        "grade": match f.grade { Grade::Exact => "exact", Grade::Heuristic => "heuristic" },
    })
}

pub fn check(r: &CheckResult) -> Value {
    let unmet = match &r.verdict {
        Verdict::HypothesesNotMet(reasons) => reasons.iter().map(|s| Value::from(s.as_str())).collect(),
        _ => Vec::new(),
    };
    json!({
        "check": r.check.name(),
        "verdict": r.verdict.name(),
        "outcome": r.ht_outcome().map(|o| o.name()),
        "margin": r.margin.as_ref().map(exact),
        "unmet": unmet,
        "hypotheses": r.hypotheses.iter().map(|h| json!({
            "name": h.name,
            "holds": h.holds,
            "detail": h.detail,
        })).collect::<Vec<_>>(),
        "external_facts": facts(&r.external_facts),
    })
}

/// External facts in order of first use across entropy and checks.
fn union_facts<'a>(lists: impl IntoIterator<Item = &'a [ExternalFact]>) -> Vec<ExternalFact> {
    let mut out: Vec<ExternalFact> = Vec::new();
    for list in lists {
        for f in list {
            if !out.contains(f) {
                out.push(*f);
            }
        }
    }
    out
}

/// The certificate emitted by `check --json`.
pub fn certificate(e: &ManifoldExpr, b: &EntropyBounds, checks: &[CheckResult]) -> Value {
    let all = union_facts(
        std::iter::once(b.external_facts.as_slice()).chain(checks.iter().map(|c| c.external_facts.as_slice())),
    );
    json!({
        "schema_version": SCHEMA_VERSION,
        "expression": pretty(e),
        "invariants": invariants_json(&invariants(e)),
        "entropy": entropy(b),
        "checks": checks.iter().map(check).collect::<Vec<_>>(),
        "external_facts": facts(&all),
        "tool_version": TOOL_VERSION,
    })
}

/// The report emitted by `invariants --json`.
pub fn invariants_report(e: &ManifoldExpr, fp: &HomeoFingerprint) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "report": "invariants",
        "expression": pretty(e),
        "invariants": invariants_json(&invariants(e)),
        "fingerprint": fingerprint(fp),
        "tool_version": TOOL_VERSION,
    })
}

fn ell_key(kind: FamilyKind) -> &'static str {
    match kind {
        FamilyKind::Spin => "ell1",
        FamilyKind::NonSpin => "ell2",
    }
}

pub fn params(p: &FamilyParams) -> Value {
    let mut m = Map::new();
    m.insert("m".into(), p.m.into());
    m.insert("n".into(), p.n.into());
    m.insert("g".into(), p.g.into());
    m.insert("h".into(), p.h.into());
    m.insert(ell_key(p.kind).into(), p.ell.into());
    Value::Object(m)
}

pub fn param_check(c: &ParamCheck) -> Value {
    json!({
        "valid": c.valid(),
        "range_failures": c.range_failures,
        "congruence": c.congruence,
        "inequalities": c.inequalities.iter().map(|i| json!({
            "name": i.name,
            "strict": i.strict,
            "margin": rational(&i.margin),
            "holds": i.holds,
        })).collect::<Vec<_>>(),
    })
}

pub struct EnumerationJson<'a> {
    pub kind: FamilyKind,
    pub bounds: [(u64, u64); 4],
    pub limit: Option<usize>,
    pub rows: &'a [(FamilyParams, ParamCheck)],
    pub truncated: bool,
}

pub fn enumeration(en: &EnumerationJson<'_>) -> Value {
    let range = |(a, b): (u64, u64)| json!([a, b]);
    json!({
        "schema_version": SCHEMA_VERSION,
        "report": "enumeration",
        "family": en.kind.name(),
        "bounds": {
            "g": range(en.bounds[0]),
            "h": range(en.bounds[1]),
            "m": range(en.bounds[2]),
            "n": range(en.bounds[3]),
        },
        "limit": en.limit,
        "truncated": en.truncated,
        "rows": en.rows.iter().map(|(p, c)| json!({
            "params": params(p),
            "margins": c.inequalities.iter().map(|i| (i.name.to_string(), rational(&i.margin))).collect::<Map<_, _>>(),
        })).collect::<Vec<_>>(),
        "tool_version": TOOL_VERSION,
    })
}

fn member(r: &MemberRecord) -> Value {
    json!({
        "ell": r.ell,
        "expression": pretty(&r.expression),
        "homeomorphic_model": pretty(&r.homeomorphic_model),
        "invariants": invariants_json(&r.invariants),
        "entropy": entropy(&r.entropy),
        "positive_entropy": r.positive_entropy,
        "checks": [check(&r.strict_ght), check(&r.einstein)],
        "published_bookkeeping": {
            "strict_ght": check(&r.strict_ght_published),
        },
        "homotopy_k3_fingerprint": fingerprint(&r.homotopy_k3_fingerprint),
        "k3_fingerprint_match": r.k3_fingerprint_match,
        "spin_matches_family": r.spin_matches_kind,
        "proven": r.all_proven(),
    })
}

pub fn family_certificate(c: &FamilyCertificate, k3: &HomeoFingerprint) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "family": c.params.kind.name(),
        "params": params(&c.params),
        "param_check": param_check(&c.param_check),
        "checked_ell_range": [c.ell_range.0, c.ell_range.1],
        "members": c.members.iter().map(member).collect::<Vec<_>>(),
        "k3_fingerprint": fingerprint(k3),
        "fingerprint_stability": c.fingerprint_stability,
        "member_independent": c.member_independent,
        "external_facts": facts(&c.external_facts),
        "infinite_diffeotypes": {
            "grade": "cited",
            "citation": c.infinite_diffeotypes_citation,
        },
        "valid": c.valid(),
        "tool_version": TOOL_VERSION,
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
