//! The four subcommands as functions from parsed arguments to output text and an exit code.

use crate::doc::{int_value, AtomDoc, InputDocument, Object, ResultDocument, StepDoc, ValueDoc, VertexDoc, Rat, VERSION};
use crate::random_spec::RandomSpec;
use crate::{CliError, EXIT_FAILURE, EXIT_OK};
use hn_core::degree::Slope;
use hn_core::engine::{hn_sequence, Certification, HnCategory, HnDecomposition, HnError, HostError};
use hn_core::fp::destab::{DEFAULT_BUDGET, DEFAULT_CLOSURE_CAP};
use hn_core::fp::{DestabilizerConfig, FpHost, MultiFiltSpace, SubspaceFp};
use hn_core::lattice::{destabilizer_box, destabilizer_enum, EnumConfig, EuclideanLattice, LatticeHost, Sublattice};
use hn_core::render::{polygon_csv, polygon_svg};
use hn_core::suites::oracle::{chain_roundtrip, closure_vs_bruteforce, diag_pair_check, fp_fixed_point, single_filtration_identity, OracleOutcome};
use hn_core::suites::{Suite, SuiteConfig, SuiteReport};
use num::{One, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::fmt::Debug;
use std::time::Instant;

/// Text to print (or write) and the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub exit: u8,
}

pub fn fp_host(budget: Option<u128>) -> FpHost {
    FpHost::new(DestabilizerConfig { budget: budget.unwrap_or(DEFAULT_BUDGET), ..Default::default() })
}

pub fn lattice_host(budget: Option<u128>) -> LatticeHost {
    let mut cfg = EnumConfig::default();
    if let Some(b) = budget {
        let b = b.min(usize::MAX as u128) as usize;
        cfg.max_vectors = b;
        cfg.max_subsets = b;
    }
    LatticeHost::new(cfg)
}

fn fp_basis(s: &SubspaceFp) -> Vec<Vec<Value>> {
    s.basis().iter().map(|r| r.iter().map(|&c| Value::from(c)).collect()).collect()
}

fn lattice_basis(s: &Sublattice) -> Vec<Vec<Value>> {
    s.basis().iter().map(|r| r.iter().map(int_value).collect()).collect()
}

/// HN data of `x` plus whether the result is trustworthy.
pub struct Computed {
    pub doc: ResultDocument,
    pub polygon: Option<hn_core::engine::Polygon>,
}

impl Computed {
    pub fn exit(&self) -> u8 {
        if self.doc.status == "ok" {
            EXIT_OK
        } else {
            EXIT_FAILURE
        }
    }
}

fn run_host<C: HnCategory>(
    host: &C,
    x: &C::Object,
    kind: &str,
    digits: usize,
    basis: impl Fn(&C::Sub) -> Vec<Vec<Value>>,
    certification: impl Fn() -> Option<Certification>,
) -> Computed {
    let step = |s: &C::Sub| StepDoc { rank: host.sub_rank(x, s), basis: basis(s) };
    let degree = ValueDoc::new(&Slope { degree: host.degree(x), rank: 1 }, digits);
    let mut doc = ResultDocument {
        version: VERSION,
        kind: kind.to_string(),
        status: "ok".into(),
        error: None,
        rank: host.rank(x),
        degree,
        chain: vec![],
        slopes: vec![],
        polygon: vec![],
        measure: vec![],
        certification: None,
        digits,
        timing_ms: None,
    };
    match hn_sequence(host, x) {
        Ok(dec) => {
            fill(&mut doc, &dec, digits, step);
            doc.certification = certification().map(|c| c.as_str().to_string());
            if certification() == Some(Certification::Heuristic) {
                doc.status = "uncertified".into();
                doc.error = Some("a destabilizer was found by a heuristic search that could not be checked within the budget".into());
            }
            let polygon = Some(dec.polygon());
            Computed { doc, polygon }
        }
        Err(e) => {
            if let HnError::Host { partial, .. } = &e {
                doc.chain = partial.iter().map(step).collect();
            }
            doc.status = "failed".into();
            doc.error = Some(e.to_string());
            doc.certification = certification().map(|c| c.as_str().to_string());
            Computed { doc, polygon: None }
        }
    }
}

fn fill<S: Clone + PartialEq + Debug>(doc: &mut ResultDocument, dec: &HnDecomposition<S>, digits: usize, step: impl Fn(&S) -> StepDoc) {
    doc.chain = dec.chain.iter().map(step).collect();
    doc.slopes = dec.slopes.iter().map(|s| ValueDoc::new(s, digits)).collect();
    doc.polygon = dec.polygon().vertices.iter().map(|v| VertexDoc { t: Rat(v.t.clone()), height: ValueDoc::new(&v.height, digits) }).collect();
    doc.measure = dec.measure().atoms.iter().map(|a| AtomDoc { location: ValueDoc::new(&a.location, digits), mass: Rat(a.mass.clone()) }).collect();
}

pub fn compute_object(obj: &Object, digits: usize, budget: Option<u128>, timing: bool) -> Computed {
    let start = Instant::now();
    let mut c = match obj {
        Object::Fp(x) => {
            let host = fp_host(budget);
            run_host(&host, x, "multifilt_fp", digits, fp_basis, || host.certification())
        }
        Object::Lattice(l) => {
            let host = lattice_host(budget);
            run_host(&host, l, "lattice", digits, lattice_basis, || host.certification())
        }
    };
    if timing {
        c.doc.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    c
}

pub fn read_input(path: &std::path::Path) -> Result<Object, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    InputDocument::parse(&text)?.to_object()
}

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn compute(obj: &Object, digits: usize, budget: Option<u128>, timing: bool) -> Output {
    let c = compute_object(obj, digits, budget, timing);
    Output { exit: c.exit(), text: to_json(&c.doc) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

/// The rendered polygon, or the failed result document when the HN data is unavailable.
pub fn polygon(obj: &Object, format: Format, digits: usize, budget: Option<u128>) -> Result<Output, Output> {
    let c = compute_object(obj, digits, budget, false);
    match (&c.polygon, c.exit()) {
        (Some(p), EXIT_OK) => {
            let text = match format {
                Format::Csv => polygon_csv(p, digits),
                Format::Svg => polygon_svg(p, digits),
            };
            Ok(Output { text, exit: EXIT_OK })
        }
        _ => Err(Output { exit: c.exit(), text: to_json(&c.doc) }),
    }
}

fn report_json(r: &SuiteReport) -> Value {
    let ces: Vec<Value> = r
        .counterexamples
        .iter()
        .map(|c| {
            json!({
                "check": c.check,
                "trial": c.trial,
                "seed": c.seed,
                "message": c.message,
                "input": c.witness.clone().map(|w| InputDocument::from_object(&Object::from(w))),
            })
        })
        .collect();
    json!({
        "suite": r.suite,
        "trials": r.trials,
        "assertions": r.assertions,
        "ok": r.ok(),
        "counterexamples": ces,
    })
}

pub fn check(suite: Suite, name: &str, cfg: &SuiteConfig) -> Output {
    let reports = suite.run(cfg);
    let ok = reports.iter().all(SuiteReport::ok);
    let doc = json!({
        "version": VERSION,
        "suite": name,
        "seed": cfg.seed,
        "trials": cfg.trials,
        "ok": ok,
        "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
    });
    Output { text: to_json(&doc), exit: if ok { EXIT_OK } else { EXIT_FAILURE } }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Verdict {
    Match,
    OverBudget,
    Mismatch,
    Failed,
}

impl Verdict {
    fn as_str(&self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::OverBudget => "over_budget",
            Verdict::Mismatch => "mismatch",
            Verdict::Failed => "failed",
        }
    }
}

struct CheckResult {
    check: &'static str,
    verdict: Verdict,
    detail: Option<String>,
}

impl CheckResult {
    fn json(&self) -> Value {
        let mut v = json!({ "check": self.check, "outcome": self.verdict.as_str() });
        if let Some(d) = &self.detail {
            v["detail"] = Value::from(d.clone());
        }
        v
    }
}

fn over_budget(e: &HostError) -> bool {
    matches!(e, HostError::BudgetExceeded { .. } | HostError::GuardExceeded { .. })
}

fn from_engine<S: Debug>(check: &'static str, r: Result<Result<(), String>, HnError<S>>) -> CheckResult {
    let (verdict, detail) = match r {
        Ok(Ok(())) => (Verdict::Match, None),
        Ok(Err(m)) => (Verdict::Mismatch, Some(m)),
        Err(HnError::Host { source, .. }) if over_budget(&source) => (Verdict::OverBudget, Some(source.to_string())),
        Err(e) => (Verdict::Failed, Some(e.to_string())),
    };
    CheckResult { check, verdict, detail }
}

fn fp_checks(x: &MultiFiltSpace, budget: Option<u128>) -> Vec<CheckResult> {
    let b = budget.unwrap_or(DEFAULT_BUDGET);
    let host = fp_host(budget);
    let (verdict, detail) = match closure_vs_bruteforce(x, b, DEFAULT_CLOSURE_CAP) {
        OracleOutcome::Match => (Verdict::Match, None),
        OracleOutcome::Mismatch { closure, bruteforce } => (Verdict::Mismatch, Some(format!("closure {closure} != bruteforce {bruteforce}"))),
        OracleOutcome::OverBudget { needed, budget } => (Verdict::OverBudget, Some(format!("enumeration needs {needed} subspaces, budget is {budget}"))),
        OracleOutcome::Failed(e) => (Verdict::Failed, Some(e)),
    };
    let mut out = vec![CheckResult { check: "closure = bruteforce", verdict, detail }];
    out.push(from_engine("chain = chain of HN filtration", chain_roundtrip(&host, x)));
    out.push(from_engine("HN filtration is a fixed point", fp_fixed_point(&host, x)));
    if x.filtrations().len() == 1 && x.alpha()[0].is_one() {
        out.push(from_engine("single filtration is its HN filtration", single_filtration_identity(&host, x)));
    }
    out
}

/// `Σ_{k=1}^{r} C(v, k)`, saturating.
fn subset_count(v: u128, r: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for k in 1..=r as u128 {
        if k > v {
            break;
        }
        c = c.saturating_mul(v - k + 1) / k;
        total = total.saturating_add(c);
    }
    total
}

/// Exact enumeration against the exhaustive box search at the proven coefficient bound.
fn enum_vs_box(l: &EuclideanLattice, budget: u128) -> CheckResult {
    let check = "enumeration = box search";
    let res = match destabilizer_enum(l, &EnumConfig::default()) {
        Ok(r) => r,
        Err(e) if over_budget(&e) => return CheckResult { check, verdict: Verdict::OverBudget, detail: Some(e.to_string()) },
        Err(e) => return CheckResult { check, verdict: Verdict::Failed, detail: Some(e.to_string()) },
    };
    let r = l.rank();
    let b = res.proof_bound.to_u64().filter(|&b| b < 1 << 20);
    let cost = b.map(|b| {
        let side = (2 * b + 1) as u128;
        let pts = side.checked_pow(r as u32).unwrap_or(u128::MAX);
        subset_count(pts / 2, r).max(pts)
    });
    match (b, cost) {
        (Some(b), Some(cost)) if cost <= budget => match destabilizer_box(l, b as i64) {
            Ok(s) if s == res.sub => CheckResult { check, verdict: Verdict::Match, detail: None },
            Ok(s) => CheckResult {
                check,
                verdict: Verdict::Mismatch,
                detail: Some(format!("enumeration {:?} != box {:?}", lattice_basis(&res.sub), lattice_basis(&s))),
            },
            Err(e) => CheckResult { check, verdict: Verdict::Failed, detail: Some(e.to_string()) },
        },
        _ => CheckResult {
            check,
            verdict: Verdict::OverBudget,
            detail: Some(format!("box search at bound {} needs {} candidates, budget is {budget}", res.proof_bound, cost.map_or("> 2^128".into(), |c| c.to_string()))),
        },
    }
}

fn diag_pair(l: &EuclideanLattice) -> Option<hn_core::rational::Q> {
    let g = l.gram();
    (g.len() == 2 && g[0][1].is_zero() && (&g[0][0] * &g[1][1]).is_one()).then(|| g[0][0].clone())
}

fn lattice_checks(l: &EuclideanLattice, budget: Option<u128>) -> Vec<CheckResult> {
    let host = lattice_host(budget);
    let mut out = vec![enum_vs_box(l, budget.unwrap_or(DEFAULT_BUDGET))];
    out.push(from_engine("chain = chain of HN filtration", chain_roundtrip(&host, l)));
    if let Some(q) = diag_pair(l) {
        out.push(from_engine("diag(q, 1/q) destabilizer", diag_pair_check(&host, &q)));
    }
    out
}

pub enum OracleSource {
    File(Object),
    Random(RandomSpec, String),
}

pub fn oracle(source: &OracleSource, budget: Option<u128>) -> Output {
    let (label, objects): (String, Box<dyn Iterator<Item = Object> + '_>) = match source {
        OracleSource::File(o) => ("file".into(), Box::new(std::iter::once(o.clone()))),
        OracleSource::Random(spec, text) => (text.clone(), Box::new(spec.instances())),
    };
    let mut counts = [0usize; 4];
    let mut instances = 0;
    let mut results = Vec::new();
    for (i, obj) in objects.enumerate() {
        instances += 1;
        let checks = match &obj {
            Object::Fp(x) => fp_checks(x, budget),
            Object::Lattice(l) => lattice_checks(l, budget),
        };
        let worst = checks.iter().map(|c| c.verdict).max().unwrap_or(Verdict::Match);
        counts[worst as usize] += 1;
        let mut entry = json!({
            "instance": i,
            "outcome": worst.as_str(),
            "checks": checks.iter().map(CheckResult::json).collect::<Vec<_>>(),
        });
        if worst != Verdict::Match {
            entry["input"] = serde_json::to_value(InputDocument::from_object(&obj)).expect("serializable");
        }
        results.push(entry);
    }
    let ok = counts[0] == instances;
    let doc = json!({
        "version": VERSION,
        "source": label,
        "budget": budget.unwrap_or(DEFAULT_BUDGET).to_string(),
        "instances": instances,
        "match": counts[Verdict::Match as usize],
        "over_budget": counts[Verdict::OverBudget as usize],
        "mismatch": counts[Verdict::Mismatch as usize],
        "failed": counts[Verdict::Failed as usize],
        "ok": ok,
        "results": results,
    });
    Output { text: to_json(&doc), exit: if ok { EXIT_OK } else { EXIT_FAILURE } }
}
