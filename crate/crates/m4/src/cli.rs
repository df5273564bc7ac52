//! Subcommands. Every command writes its report to `out` and diagnostics to
//! `err`, and returns the process exit code.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use m4_core::blocks::{BlockSpec, MAX_PARAM};
use m4_core::entropy::{entropy_bounds, EntropyBounds, Upper};
use m4_core::exactnum::{ExactError, ExactReal, Rounding};
use m4_core::exprlang::{parse, pretty, ParseError};
use m4_core::families::{
    certify_family, check_params, enumerate, ell_window, EnumBounds, FamilyError, FamilyKind, FamilyParams,
    ParamCheck,
};
use m4_core::forms::{fingerprint, standard_decomposition, Grade, StandardDecomposition};
use m4_core::obstructions::{run_check, CheckKind, CheckResult, Verdict};
use m4_core::sums::{invariants, ManifoldExpr};
use rayon::prelude::*;

use crate::json;
use crate::manifest::{certificate_digest, update_manifest};

pub const EXIT_OK: i32 = 0;
/// Internal failure (corrupt π source, exhausted comparison precision).
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CERTIFICATION: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "m4", version, about = "Invariants, entropy bounds and Einstein obstructions for connected sums of 4-manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print χ, τ, b₁, b⁺, b⁻, spin and 2χ±3τ of an expression.
    Invariants {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Run obstruction checks on an expression.
    Check {
        expr: String,
        /// Comma-separated subset of ht, ght, ght-entropy, einstein.
        #[arg(long, default_value = "ht,ght,ght-entropy,einstein")]
        checks: String,
        #[arg(long)]
        json: bool,
    },
    /// List admissible family parameters with their inequality margins.
    Enumerate(EnumerateArgs),
    /// Certify a family over a range of homotopy K3 indices.
    Certify(CertifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Spin,
    Nonspin,
}

impl From<KindArg> for FamilyKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Spin => FamilyKind::Spin,
            KindArg::Nonspin => FamilyKind::NonSpin,
        }
    }
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Genus g, a value or an inclusive range `a..b`.
    #[arg(long, default_value = "3")]
    pub g: String,
    /// Genus h, a value or an inclusive range `a..b`.
    #[arg(long, default_value = "3")]
    pub h: String,
    #[arg(long, default_value_t = 2)]
    pub m_min: u64,
    #[arg(long)]
    pub m_max: u64,
    #[arg(long, default_value_t = 1)]
    pub n_min: u64,
    #[arg(long)]
    pub n_max: u64,
    /// Stop after this many rows.
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub m: u64,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub g: u64,
    #[arg(long)]
    pub h: u64,
    /// Number of S¹×S³ summands (spin families).
    #[arg(long)]
    pub ell1: Option<u64>,
    /// Number of CP²bar summands (non-spin families).
    #[arg(long)]
    pub ell2: Option<u64>,
    /// Inclusive range `a..b` of homotopy K3 indices.
    #[arg(long, default_value = "0..5")]
    pub ell_range: String,
    #[arg(long)]
    pub out: PathBuf,
    /// Record the certificate digest in this manifest file.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

/// A diagnostic plus its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<ExactError> for Failure {
    fn from(e: ExactError) -> Self {
        Failure { code: EXIT_INTERNAL, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_IO, message: e.to_string() }
    }
}

fn io_failure(path: &str, e: io::Error) -> Failure {
    Failure { code: EXIT_IO, message: format!("error: cannot write {path}: {e}") }
}

fn parse_error(input: &str, e: &ParseError) -> Failure {
    let mut msg = format!("error: {e}");
    if let Some(offset) = e.offset() {
        let line_start = input[..offset.min(input.len())].rfind('\n').map_or(0, |i| i + 1);
        let line_end = input[line_start..].find('\n').map_or(input.len(), |i| line_start + i);
        let col = input[line_start..offset.min(input.len())].chars().count();
        let _ = write!(msg, "\n  {}\n  {}^", &input[line_start..line_end], " ".repeat(col));
    }
    Failure::input(msg)
}

fn parse_expr(input: &str) -> Result<ManifoldExpr, Failure> {
    parse(input).map_err(|e| parse_error(input, &e))
}

/// `a` or `a..b`, inclusive.
pub fn parse_range(what: &str, s: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::input(format!("error: invalid {what} range {s:?}; expected a value or a..b"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: u64 = a.parse().map_err(|_| bad())?;
    let b: u64 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(Failure::input(format!("error: {what} range {s:?} is empty (start exceeds end)")));
    }
    if b > MAX_PARAM {
        return Err(Failure::input(format!("error: {what} range {s:?} exceeds the supported maximum {MAX_PARAM}")));
    }
    Ok((a, b))
}

/// Exact value plus a 6-digit decimal when it is not already exact.
pub fn show_exact(x: &ExactReal) -> String {
    let d = x.to_decimal(6);
    match d.rounding {
        Rounding::Exact if x.as_rational().is_some_and(|r| r.is_integer()) => x.to_string(),
        Rounding::Exact => format!("{x} = {}", d.text),
        Rounding::TowardZero => format!("{x} ≈ {}", d.text),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k}{}  {v}\n", " ".repeat(width - k.chars().count())))
        .collect()
}

fn row(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

pub fn invariants_text(e: &ManifoldExpr) -> String {
    let s = invariants(e);
    let fp = fingerprint(e);
    let form = match standard_decomposition(&fp.form) {
        StandardDecomposition::OddDiag { p, q } => format!("{p}⟨1⟩ ⊕ {q}⟨-1⟩"),
        StandardDecomposition::EvenSplit { e8_count, hyperbolic_count } => {
            format!("{e8_count}·E8 ⊕ {hyperbolic_count}·H")
        }
        StandardDecomposition::Unclassified(why) => format!("unclassified ({why})"),
    };
    let grade = match fp.grade {
        Grade::Exact => "exact",
        Grade::Heuristic => "heuristic",
    };
    table(&[
        row("expression", pretty(e)),
        row("χ", s.chi),
        row("τ", s.tau),
        row("b₁", s.b1),
        row("b⁺", s.b_plus),
        row("b⁻", s.b_minus),
        row("spin", yes_no(s.spin)),
        row("simply connected", yes_no(s.simply_connected)),
        row("2χ+3τ", s.two_chi_plus_3tau()),
        row("2χ−3τ", s.two_chi_minus_3tau()),
        row("intersection form", format!("{form} [{grade}]")),
    ])
}

fn entropy_text(b: &EntropyBounds) -> String {
    let upper = match &b.upper {
        Upper::Bounded(u) => show_exact(u),
        Upper::Unbounded => String::from("unbounded"),
    };
    format!("λ⁴ ∈ [{}, {}] ({})", show_exact(&b.lower), upper, b.status.name())
}

fn verdict_text(r: &CheckResult) -> String {
    match (&r.verdict, r.ht_outcome()) {
        (_, Some(o)) => format!("{} ({})", r.verdict.name(), o.name()),
        (Verdict::HypothesesNotMet(why), _) => format!("{}: {}", r.verdict.name(), why.join("; ")),
        (v, _) => v.name().to_string(),
    }
}

pub fn parse_checks(list: &str) -> Result<Vec<CheckKind>, Failure> {
    let mut out = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let kind = CheckKind::from_name(name).ok_or_else(|| {
            let known: Vec<&str> = CheckKind::ALL.iter().map(|k| k.name()).collect();
            Failure::input(format!("error: unknown check {name:?}; known checks: {}", known.join(", ")))
        })?;
        if !out.contains(&kind) {
            out.push(kind);
        }
    }
    if out.is_empty() {
        return Err(Failure::input("error: no checks requested"));
    }
    Ok(out)
}

fn cmd_invariants(expr: &str, as_json: bool) -> Result<String, Failure> {
    let e = parse_expr(expr)?;
    Ok(if as_json { json::to_text(&json::invariants_report(&e, &fingerprint(&e))) } else { invariants_text(&e) })
}

fn cmd_check(expr: &str, checks: &str, as_json: bool) -> Result<String, Failure> {
    let e = parse_expr(expr)?;
    let kinds = parse_checks(checks)?;
    let results = kinds.iter().map(|k| run_check(*k, &e)).collect::<Result<Vec<_>, _>>()?;
    let bounds = entropy_bounds(&e);
    if as_json {
        return Ok(json::to_text(&json::certificate(&e, &bounds, &results)));
    }
    let mut rows = vec![row("expression", pretty(&e)), row("entropy", entropy_text(&bounds))];
    for r in &results {
        let margin = r.margin.as_ref().map_or_else(|| String::from("-"), show_exact);
        rows.push(row(r.check.name(), format!("{}  margin {margin}", verdict_text(r))));
    }
    Ok(table(&rows))
}

/// Parallel over `(g, h, m, n)`; `collect` keeps the sequential order.
pub fn enumerate_parallel(kind: FamilyKind, b: &EnumBounds) -> Vec<FamilyParams> {
    let mut heads = Vec::new();
    for g in b.g.clone() {
        for h in b.h.clone() {
            for m in b.m.clone() {
                heads.push((g, h, m));
            }
        }
    }
    heads
        .into_par_iter()
        .flat_map_iter(|(g, h, m)| {
            b.n.clone().flat_map(move |n| {
                ell_window(kind, m, n, g, h).integers().map(move |ell| FamilyParams { kind, m, n, g, h, ell })
            })
        })
        .collect()
}

fn cmd_enumerate(a: &EnumerateArgs) -> Result<String, Failure> {
    let kind = FamilyKind::from(a.kind);
    let g = parse_range("g", &a.g)?;
    let h = parse_range("h", &a.h)?;
    for (what, v) in [("m-max", a.m_max), ("n-max", a.n_max)] {
        if v > MAX_PARAM {
            return Err(Failure::input(format!("error: --{what} exceeds the supported maximum {MAX_PARAM}")));
        }
    }
    let bounds = EnumBounds { g: g.0..=g.1, h: h.0..=h.1, m: a.m_min..=a.m_max, n: a.n_min..=a.n_max };
    let (rows, truncated) = match a.limit {
        Some(limit) => {
            let mut it = enumerate(kind, &bounds);
            let rows: Vec<_> = it.by_ref().take(limit).map(|p| (p, check_params(&p))).collect();
            (rows, it.next().is_some())
        }
        None => {
            let ps = enumerate_parallel(kind, &bounds);
            (ps.into_iter().map(|p| (p, check_params(&p))).collect(), false)
        }
    };
    if a.json {
        return Ok(json::to_text(&json::enumeration(&json::EnumerationJson {
            kind,
            bounds: [g, h, (a.m_min, a.m_max), (a.n_min, a.n_max)],
            limit: a.limit,
            rows: &rows,
            truncated,
        })));
    }
    let ell = match kind {
        FamilyKind::Spin => "ell1",
        FamilyKind::NonSpin => "ell2",
    };
    let mut s = format!(
        "{:>4} {:>4} {:>4} {:>4} {:>5}  {:<22} {:<22} {}\n",
        "g", "h", "m", "n", ell, "ght_plus_side", "ght_minus_side", "einstein_criterion"
    );
    for (p, c) in &rows {
        let margins: Vec<String> = c
            .inequalities
            .iter()
            .map(|i| show_exact(&ExactReal::from_rational(i.margin.clone())))
            .collect();
        let _ = writeln!(
            s,
            "{:>4} {:>4} {:>4} {:>4} {:>5}  {:<22} {:<22} {}",
            p.g, p.h, p.m, p.n, p.ell, margins[0], margins[1], margins[2]
        );
    }
    let _ = writeln!(s, "{} row(s){}", rows.len(), if truncated { " (limit reached)" } else { "" });
    Ok(s)
}

fn certify_params(a: &CertifyArgs) -> Result<(FamilyParams, (u64, u64)), Failure> {
    let kind = FamilyKind::from(a.kind);
    let ell = match (kind, a.ell1, a.ell2) {
        (FamilyKind::Spin, Some(l), None) | (FamilyKind::NonSpin, None, Some(l)) => l,
        (FamilyKind::Spin, _, _) => return Err(Failure::input("error: spin families take --ell1 (and not --ell2)")),
        (FamilyKind::NonSpin, _, _) => {
            return Err(Failure::input("error: non-spin families take --ell2 (and not --ell1)"))
        }
    };
    let range = parse_range("ell", &a.ell_range)?;
    Ok((FamilyParams { kind, m: a.m, n: a.n, g: a.g, h: a.h, ell }, range))
}

fn invalid_params_message(c: &ParamCheck) -> String {
    let mut msg = String::from("error: parameters are not admissible");
    for f in &c.range_failures {
        let _ = write!(msg, "\n  {f}");
    }
    if !c.congruence {
        msg.push_str("\n  4m + 2n − 1 must be ≡ 3 (mod 4)");
    }
    for i in c.inequalities.iter().filter(|i| !i.holds) {
        let rel = if i.strict { "> 0" } else { "≥ 0" };
        let _ = write!(msg, "\n  {} fails: margin {} is not {rel}", i.name, show_exact(&ExactReal::from_rational(i.margin.clone())));
    }
    msg
}

fn cmd_certify(a: &CertifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let (p, range) = certify_params(a)?;
    let cert = match certify_family(&p, range) {
        Ok(c) => c,
        Err(FamilyError::InvalidParams(c)) => return Err(Failure::input(invalid_params_message(&c))),
        Err(FamilyError::EmptyRange(a, b)) => return Err(Failure::input(format!("error: empty range {a}..{b}"))),
        Err(FamilyError::Block(e)) => return Err(Failure::input(format!("error: {e}"))),
        Err(FamilyError::Exact(e)) => return Err(e.into()),
    };
    let k3 = fingerprint(&ManifoldExpr::single(BlockSpec::k3()));
    let doc = json::family_certificate(&cert, &k3);
    let path = a.out.display().to_string();
    fs::write(&a.out, json::to_text(&doc)).map_err(|e| io_failure(&path, e))?;
    let digest = certificate_digest(&doc);
    if let Some(m) = &a.manifest {
        update_manifest(m, &path, &digest).map_err(|e| io_failure(&m.display().to_string(), e))?;
    }
    let mut s = String::new();
    let _ = writeln!(s, "family       {} (m={}, n={}, g={}, h={}, ℓ'={})", p.kind, p.m, p.n, p.g, p.h, p.ell);
    let _ = writeln!(s, "ℓ range      {}..{}", range.0, range.1);
    for r in &cert.members {
        let margin = r.strict_ght.margin.as_ref().map_or_else(|| String::from("-"), show_exact);
        let _ = writeln!(
            s,
            "ℓ = {:<8} entropy>0 {}  strict GHT {} (margin {})  einstein {}",
            r.ell,
            yes_no(r.positive_entropy),
            r.strict_ght.verdict.name(),
            margin,
            r.einstein.verdict.name()
        );
    }
    let _ = writeln!(s, "fingerprint  {}", if cert.fingerprint_stability { "stable (Y(ℓ) ≅ K3)" } else { "UNSTABLE" });
    let _ = writeln!(s, "certificate  {path}");
    let _ = writeln!(s, "sha256       {digest}");
    let _ = writeln!(s, "status       {}", if cert.valid() { "valid" } else { "INVALID" });
    out.write_all(s.as_bytes())?;
    Ok(if cert.valid() { EXIT_OK } else { EXIT_CERTIFICATION })
}

/// Runs a parsed command line.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Err(e) = m4_core::exactnum::validate_pi_source() {
        let _ = writeln!(err, "internal error: {e}");
        return EXIT_INTERNAL;
    }
    let result = match &cli.command {
        Command::Invariants { expr, json } => cmd_invariants(expr, *json).map(|s| (s, EXIT_OK)),
        Command::Check { expr, checks, json } => cmd_check(expr, checks, *json).map(|s| (s, EXIT_OK)),
        Command::Enumerate(a) => cmd_enumerate(a).map(|s| (s, EXIT_OK)),
        Command::Certify(a) => cmd_certify(a, out).map(|code| (String::new(), code)),
    };
    match result {
        Ok((text, code)) => match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_IO
            }
        },
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}
