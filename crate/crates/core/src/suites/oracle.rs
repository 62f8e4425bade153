//! Cross-checks against independent computations: closure search against exhaustive
//! enumeration, the HN chain against the one read back off the HN filtration, single
//! filtrations against themselves, and the two-dimensional lattices `diag(q, 1/q)`.

use super::gen::{lattice_object, PRIMES};
use super::{run_trials, SuiteConfig, SuiteReport, Trial, Witness};
use crate::degree::{ExactDegree, Slope};
use crate::engine::{chain_from_filtration, hn_filtration, hn_sequence, HnCategory, HnError, SlopeIndex};
use crate::fp::destab::{closure_candidate, destabilizer_bruteforce, DEFAULT_BUDGET, DEFAULT_CLOSURE_CAP};
use crate::fp::random::{random_filtration, random_multifilt};
use crate::fp::{FpHost, FpSpace, MultiFiltSpace};
use crate::engine::HostError;
use crate::lattice::random::random_scale;
use crate::lattice::{EuclideanLattice, LatticeHost};
use crate::rational::Q;
use crate::subobject::SubobjectLattice;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Debug;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Ceiling on brute-force enumeration.
    pub budget: u128,
    pub closure_cap: usize,
    pub primes: &'static [u64],
    pub max_dim: usize,
    pub max_filtrations: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { budget: DEFAULT_BUDGET, closure_cap: DEFAULT_CLOSURE_CAP, primes: &[2, 3], max_dim: 3, max_filtrations: 3 }
    }
}

/// Outcome of comparing the closure search with exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Match,
    Mismatch { closure: String, bruteforce: String },
    /// Enumeration does not fit the budget; nothing was compared.
    OverBudget { needed: u128, budget: u128 },
    Failed(String),
}

pub fn closure_vs_bruteforce(x: &MultiFiltSpace, budget: u128, cap: usize) -> OracleOutcome {
    let exact = match destabilizer_bruteforce(x, budget) {
        Ok(d) => d,
        Err(HostError::BudgetExceeded { needed, budget }) => return OracleOutcome::OverBudget { needed, budget },
        Err(e) => return OracleOutcome::Failed(e.to_string()),
    };
    match closure_candidate(x, cap) {
        Ok(c) if c == exact => OracleOutcome::Match,
        Ok(c) => OracleOutcome::Mismatch { closure: format!("{:?}", c.basis()), bruteforce: format!("{:?}", exact.basis()) },
        Err(e) => OracleOutcome::Failed(e.to_string()),
    }
}

/// The HN chain equals the chain read back off the HN filtration at its minimal jumping set.
pub fn chain_roundtrip<C: HnCategory>(host: &C, x: &C::Object) -> Result<Result<(), String>, HnError<C::Sub>>
where
    C::Sub: Debug,
{
    let dec = hn_sequence(host, x)?;
    let fil = hn_filtration(host, x)?;
    let (chain, slopes) = chain_from_filtration(&fil);
    if chain != dec.chain {
        return Ok(Err(format!("chain {:?} != {:?}", chain, dec.chain)));
    }
    if slopes != dec.slopes {
        return Ok(Err(format!("slopes {slopes:?} != {:?}", dec.slopes)));
    }
    Ok(Ok(()))
}

/// A filtration indexed by rational slopes, as one indexed by plain rationals.
fn rational_indices(fil: &crate::filtration::StepFiltration<crate::fp::SubspaceFp, SlopeIndex>) -> Option<crate::filtration::StepFiltration<crate::fp::SubspaceFp>> {
    if fil.steps().iter().any(|s| s.index.0.as_rational().is_none()) {
        return None;
    }
    Some(fil.map_indices(|s| s.0.as_rational().expect("checked")))
}

/// `hn_filtration(X, F) = F` for a single filtration with coefficient one.
pub fn single_filtration_identity(host: &FpHost, x: &MultiFiltSpace) -> Result<Result<(), String>, HnError<crate::fp::SubspaceFp>> {
    let [f] = x.filtrations() else {
        return Ok(Err("expected one filtration".into()));
    };
    let fil = hn_filtration(host, x)?;
    match rational_indices(&fil) {
        Some(g) if g.canonicalize() == f.canonicalize() => {}
        Some(g) => return Ok(Err(format!("HN filtration {g:?} != input {f:?}"))),
        None => return Ok(Err("non-rational slope".into())),
    }
    let dec = hn_sequence(host, x)?;
    let flag: Vec<_> = f.canonicalize().steps().iter().map(|s| s.value.clone()).collect();
    if dec.chain != flag {
        return Ok(Err(format!("HN chain {:?} != flag {:?}", dec.chain, flag)));
    }
    let weights: Vec<Slope> = f.canonicalize().steps().iter().map(|s| Slope::rational(s.index.clone())).collect();
    if dec.slopes != weights {
        return Ok(Err(format!("slopes {:?} != weights {:?}", dec.slopes, weights)));
    }
    Ok(Ok(()))
}

/// The HN filtration, taken as a single filtration, is its own HN filtration.
pub fn fp_fixed_point(host: &FpHost, x: &MultiFiltSpace) -> Result<Result<(), String>, HnError<crate::fp::SubspaceFp>> {
    let fil = hn_filtration(host, x)?;
    let Some(g) = rational_indices(&fil) else {
        return Ok(Err("non-rational slope".into()));
    };
    let y = MultiFiltSpace::single(*x.space(), g).map_err(|e| HnError::Invariant(e.to_string()))?;
    let again = hn_filtration(host, &y)?;
    if again.canonicalize() != fil.canonicalize() {
        return Ok(Err(format!("{again:?} != {fil:?}")));
    }
    Ok(Ok(()))
}

/// Expected HN data of `diag(q, 1/q)`: the shorter basis vector destabilizes unless `q = 1`.
pub fn diag_pair_expected(q: &Q) -> (Vec<Vec<i64>>, Vec<Q>) {
    let one = Q::from_integer(1.into());
    let inv = q.recip();
    if *q == one {
        (vec![], vec![one])
    } else if *q < one {
        (vec![vec![1, 0]], vec![q.clone(), inv])
    } else {
        (vec![vec![0, 1]], vec![inv, q.clone()])
    }
}

pub fn diag_pair_check(host: &LatticeHost, q: &Q) -> Result<Result<(), String>, HnError<crate::lattice::Sublattice>> {
    let l = EuclideanLattice::diagonal(&[q.clone(), q.recip()]).map_err(|e| HnError::Invariant(e.to_string()))?;
    let dec = hn_sequence(host, &l)?;
    let (line, dets) = diag_pair_expected(q);
    let mut chain = Vec::new();
    if !line.is_empty() {
        chain.push(l.span(&line).map_err(|e| HnError::Invariant(e.to_string()))?);
    }
    chain.push(l.full());
    if dec.chain != chain {
        return Ok(Err(format!("chain {:?} != {:?}", dec.chain, chain)));
    }
    let slopes: Vec<Slope> = dets.into_iter().map(|d| Slope { degree: ExactDegree::LogRational(d), rank: 1 }).collect();
    let expected: Vec<Slope> = if slopes.len() == 1 { vec![Slope { degree: ExactDegree::LogRational(Q::from_integer(1.into())), rank: 2 }] } else { slopes };
    if dec.slopes != expected {
        return Ok(Err(format!("slopes {:?} != {:?}", dec.slopes, expected)));
    }
    Ok(Ok(()))
}

fn record<S: Debug>(t: &mut Trial, check: &'static str, res: Result<Result<(), String>, HnError<S>>, w: Option<Witness>) {
    match res {
        Ok(r) => t.check(check, r.is_ok(), || r.err().unwrap_or_default(), || w),
        Err(e) => t.error(check, e, w),
    }
}

pub fn run(cfg: &SuiteConfig, oc: &OracleConfig) -> SuiteReport {
    let fp = FpHost::default();
    let lat = LatticeHost::default();
    run_trials("oracle", cfg, |rng: &mut ChaCha8Rng, t| {
        let p = oc.primes[rng.gen_range(0..oc.primes.len())];
        let d = rng.gen_range(0..=oc.max_dim);
        let n = rng.gen_range(1..=oc.max_filtrations);
        let x = random_multifilt(rng, p, d, n);
        match closure_vs_bruteforce(&x, oc.budget, oc.closure_cap) {
            OracleOutcome::Match => t.check("closure = bruteforce", true, String::new, || None),
            OracleOutcome::Mismatch { closure, bruteforce } => t.check(
                "closure = bruteforce",
                false,
                || format!("closure {closure} != bruteforce {bruteforce}"),
                || Some(Witness::Fp(x.clone())),
            ),
            OracleOutcome::OverBudget { needed, budget } => {
                t.error("enumeration budget", format!("needs {needed}, budget {budget}"), Some(Witness::Fp(x.clone())))
            }
            OracleOutcome::Failed(e) => t.error("closure = bruteforce", e, Some(Witness::Fp(x.clone()))),
        }
        record(t, "chain = chain of HN filtration", chain_roundtrip(&fp, &x), Some(Witness::Fp(x.clone())));
        record(t, "HN filtration is a fixed point", fp_fixed_point(&fp, &x), Some(Witness::Fp(x.clone())));

        let sp = FpSpace::new(PRIMES[rng.gen_range(0..PRIMES.len())], rng.gen_range(0..=4)).expect("prime");
        let single = MultiFiltSpace::single(sp, random_filtration(rng, &sp)).expect("valid filtration");
        record(t, "single filtration is its HN filtration", single_filtration_identity(&fp, &single), Some(Witness::Fp(single.clone())));

        let l = lattice_object(rng, 4);
        record(t, "lattice chain = chain of HN filtration", chain_roundtrip(&lat, &l), Some(Witness::Lattice(l.clone())));
        let q = random_scale(rng);
        let wq = EuclideanLattice::diagonal(&[q.clone(), q.recip()]).ok().map(Witness::Lattice);
        record(t, "diag(q, 1/q) destabilizer", diag_pair_check(&lat, &q), wq);
    })
}
