//! Acceptance gate: the ten release criteria, each with its trial count, tolerance (exact
//! everywhere) and time limit. Prints one PASS/FAIL line per criterion and exits non-zero if
//! any fails.

use hn_core::degree::{ExactDegree, Slope};
use hn_core::engine::checks::verify_hom_slope_gap;
use hn_core::engine::polygon::{measure_to_polygon, polygon_to_measure, Atom, Measure};
use hn_core::engine::{hn_run, hn_sequence, is_semistable, slope, verify_run, HnCategory};
use hn_core::fp::random::{random_filtration, random_multifilt};
use hn_core::fp::{FpHost, FpMap, FpSpace, MultiFiltSpace};
use hn_core::lattice::{EuclideanLattice, LatticeHost};
use hn_core::rational::{q, qr, Q};
use hn_core::render::{polygon_csv, polygon_svg};
use hn_core::suites::gen::{Sampler, PRIMES};
use hn_core::suites::oracle::{chain_roundtrip, closure_vs_bruteforce, fp_fixed_point, single_filtration_identity, OracleOutcome};
use hn_core::suites::{axioms, functoriality, slopes, trial_rng, SuiteConfig, Trial};
use hn_core::suites::{run_trials, SuiteReport};
use hn_core::subobject::SubobjectLattice;
use rand::Rng;
use std::process::ExitCode;
use std::time::{Duration, Instant};

const SEED: u64 = 20_240_611;

struct Outcome {
    detail: String,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome { detail: String::new(), failures: Vec::new() }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        if self.failures.len() < 5 {
            self.failures.push(msg.into());
        } else if self.failures.len() == 5 {
            self.failures.push("...".into());
        }
    }

    fn from_report(rep: &SuiteReport) -> Outcome {
        let mut o = Outcome::new();
        o.detail = format!("{} trials, {} assertions, {} counterexamples", rep.trials, rep.assertions, rep.counterexamples.len());
        for c in &rep.counterexamples {
            o.fail(format!("{} (trial {}, seed {}): {}", c.check, c.trial, c.seed, c.message));
        }
        o
    }
}

fn fp_objects(n: usize, seed: u64) -> Vec<MultiFiltSpace> {
    let mut rng = trial_rng(seed);
    (0..n).map(|_| hn_core::suites::gen::fp_object(&mut rng, 4, 3)).collect()
}

fn lattice_objects(n: usize, seed: u64) -> Vec<EuclideanLattice> {
    let mut rng = trial_rng(seed);
    (0..n).map(|_| hn_core::suites::gen::lattice_object(&mut rng, 4)).collect()
}

fn c1_model_identity() -> Outcome {
    let mut o = Outcome::new();
    let host = FpHost::default();
    let mut rng = trial_rng(SEED);
    for i in 0..1000 {
        let p = PRIMES[rng.gen_range(0..PRIMES.len())];
        let sp = FpSpace::new(p, rng.gen_range(0..=6)).unwrap();
        let x = MultiFiltSpace::single(sp, random_filtration(&mut rng, &sp)).unwrap();
        match single_filtration_identity(&host, &x) {
            Ok(Ok(())) => {}
            Ok(Err(m)) => o.fail(format!("object {i}: {m}")),
            Err(e) => o.fail(format!("object {i}: {e}")),
        }
    }
    o.detail = "1000 single-filtration objects, p in {2,3,5}, dim <= 6".into();
    o
}

fn invariants<C: HnCategory>(host: &C, objs: &[C::Object], o: &mut Outcome) {
    for (i, x) in objs.iter().enumerate() {
        match hn_run(host, x).and_then(|run| verify_run(host, x, &run)) {
            Ok(bad) if bad.is_empty() => {}
            Ok(bad) => o.fail(format!("object {i}: {}", bad.join("; "))),
            Err(e) => o.fail(format!("object {i}: {e}")),
        }
    }
}

fn c2_theorem_invariants() -> Outcome {
    let mut o = Outcome::new();
    invariants(&FpHost::default(), &fp_objects(500, SEED + 2), &mut o);
    invariants(&LatticeHost::default(), &lattice_objects(500, SEED + 3), &mut o);
    o.detail = "500 F_p objects, 500 lattices: decreasing slopes, semistable pieces, degree sum".into();
    o
}

fn c3_uniqueness() -> Outcome {
    let mut o = Outcome::new();
    let fp = FpHost::default();
    for (i, x) in fp_objects(500, SEED + 2).iter().enumerate() {
        for (what, r) in [("chain", chain_roundtrip(&fp, x)), ("fixed point", fp_fixed_point(&fp, x))] {
            match r {
                Ok(Ok(())) => {}
                Ok(Err(m)) => o.fail(format!("F_p object {i} {what}: {m}")),
                Err(e) => o.fail(format!("F_p object {i} {what}: {e}")),
            }
        }
    }
    let lat = LatticeHost::default();
    for (i, x) in lattice_objects(500, SEED + 3).iter().enumerate() {
        match chain_roundtrip(&lat, x) {
            Ok(Ok(())) => {}
            Ok(Err(m)) => o.fail(format!("lattice {i}: {m}")),
            Err(e) => o.fail(format!("lattice {i}: {e}")),
        }
    }
    o.detail = "hn_sequence = chain of hn_filtration on 1000 objects; HN filtration is a fixed point".into();
    o
}

fn c4_oracle() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = trial_rng(SEED + 4);
    let mut compared = 0;
    for i in 0..500 {
        let p = [2, 3][rng.gen_range(0..2)];
        let d = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=3);
        let x = random_multifilt(&mut rng, p, d, n);
        match closure_vs_bruteforce(&x, 1_000_000, 4096) {
            OracleOutcome::Match => compared += 1,
            other => o.fail(format!("instance {i}: {other:?}")),
        }
    }
    o.detail = format!("{compared}/500 closure = bruteforce, dim <= 3, p in {{2,3}}, n <= 3");
    o
}

fn additivity<C: Sampler>(host: &C, n: usize, seed: u64, o: &mut Outcome) {
    let mut rng = trial_rng(seed);
    for i in 0..n {
        let x = host.object(&mut rng);
        let s = host.sub(&mut rng, &x);
        let (quot, _) = host.quotient(&x, &s);
        let whole = host.degree(&x);
        let ok = host
            .sub_degree(&x, &s)
            .try_add(&host.degree(&quot))
            .and_then(|sum| sum.try_sub(&whole))
            .map(|d| d.is_zero());
        if ok != Ok(true) {
            o.fail(format!("{} pair {i}: {ok:?}", C::NAME));
        }
    }
}

fn c5_additivity() -> Outcome {
    let mut o = Outcome::new();
    additivity(&FpHost::default(), 500, SEED + 5, &mut o);
    additivity(&LatticeHost::default(), 500, SEED + 6, &mut o);
    o.detail = "500 (object, subobject) pairs per host".into();
    o
}

fn hom_gaps<C: Sampler>(host: &C, seed: u64, o: &mut Outcome) -> usize {
    let mut rng = trial_rng(seed);
    let mut nonzero = 0;
    let mut tries = 0;
    while nonzero < 500 && tries < 5000 {
        tries += 1;
        let x = host.object(&mut rng);
        let (f, y) = host.map_from(&mut rng, &x);
        if host.map_kind(&f).zero {
            continue;
        }
        nonzero += 1;
        match verify_hom_slope_gap(host, &f, &x, &y) {
            Ok(rep) => {
                for v in rep.violations {
                    o.fail(format!("{}: {v}", C::NAME));
                }
            }
            Err(e) => o.fail(format!("{}: {e}", C::NAME)),
        }
    }
    nonzero
}

/// Semistable pairs with a strict slope gap admit no non-zero compatible map.
fn hn2_vanishing(o: &mut Outcome) -> usize {
    let fp = FpHost::default();
    let mut pairs = 0;
    for (a, b) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2)] {
        for (lx, ly) in [(q(1), q(0)), (qr(1, 2), qr(-1, 3)), (q(3), q(2))] {
            let (sx, sy) = (FpSpace::new(2, a).unwrap(), FpSpace::new(2, b).unwrap());
            let x = MultiFiltSpace::single(sx, hn_core::filtration::StepFiltration::from_flag(&sx, vec![lx.clone()], vec![sx.full()]).unwrap()).unwrap();
            let y = MultiFiltSpace::single(sy, hn_core::filtration::StepFiltration::from_flag(&sy, vec![ly.clone()], vec![sy.full()]).unwrap()).unwrap();
            pairs += 1;
            for bits in 0u32..(1 << (a * b)) {
                let mat = (0..b).map(|i| (0..a).map(|j| u64::from(bits >> (i * a + j) & 1)).collect()).collect();
                let f = FpMap::new(&sx, &sy, mat).unwrap();
                if !f.is_zero() && fp.compatible(&f, &x, &y) {
                    o.fail(format!("non-zero compatible map F_2^{a} -> F_2^{b} across slopes {lx} > {ly}"));
                }
            }
        }
    }
    let lat = LatticeHost::default();
    let mut rng = trial_rng(SEED + 9);
    for _ in 0..200 {
        let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let cx = hn_core::lattice::random::random_scale(&mut rng);
        let cy = &cx * qr(rng.gen_range(3..=8), 2);
        let x = EuclideanLattice::diagonal(&vec![cx.clone(); a]).unwrap();
        let y = EuclideanLattice::diagonal(&vec![cy.clone(); b]).unwrap();
        let semistable = is_semistable(&lat, &x).unwrap_or(false) && is_semistable(&lat, &y).unwrap_or(false);
        let gap = slope(&lat, &x).ok().zip(slope(&lat, &y).ok()).map(|(s, t)| s > t).unwrap_or(false);
        if !semistable || !gap {
            o.fail(format!("fixture cI_{a}, {cy}I_{b} is not a semistable pair with a gap"));
            continue;
        }
        pairs += 1;
        let f = hn_core::lattice::random::random_map(&mut rng, a, b);
        if !f.is_zero() && lat.compatible(&f, &x, &y) {
            o.fail(format!("non-zero compatible lattice map {:?}", f.matrix()));
        }
    }
    pairs
}

fn c6_slope_corollaries() -> Outcome {
    let rep = run_trials("slope corollaries", &SuiteConfig { seed: SEED + 7, trials: 500 }, |rng, t: &mut Trial| {
        slopes::check_object(&FpHost::default(), rng, t);
        slopes::check_object(&LatticeHost::default(), rng, t);
    });
    let mut o = Outcome::from_report(&rep);
    let a = hom_gaps(&FpHost::default(), SEED + 8, &mut o);
    let b = hom_gaps(&LatticeHost::default(), SEED + 10, &mut o);
    if a < 500 || b < 500 {
        o.fail(format!("only {a} / {b} non-zero compatible maps generated"));
    }
    let pairs = hn2_vanishing(&mut o);
    o.detail = format!("{}; hom gap on {a} + {b} non-zero maps; vanishing on {pairs} semistable pairs", o.detail);
    o
}

fn c7_functoriality() -> Outcome {
    Outcome::from_report(&functoriality::run(&SuiteConfig { seed: SEED + 11, trials: 500 }))
}

fn diag(entries: &[Q]) -> EuclideanLattice {
    EuclideanLattice::diagonal(entries).unwrap()
}

fn log_slope(d: Q, r: usize) -> Slope {
    Slope { degree: ExactDegree::LogRational(d), rank: r }
}

fn c8_lattice_fixtures() -> Outcome {
    let mut o = Outcome::new();
    let host = LatticeHost::default();
    let l = diag(&[qr(1, 4), q(4)]);
    match hn_sequence(&host, &l) {
        Ok(dec) => {
            if dec.chain != vec![l.span(&[vec![1, 0]]).unwrap(), l.full()] {
                o.fail(format!("diag(1/4, 4) chain {:?}", dec.chain));
            }
            if dec.slopes.len() != 2
                || dec.slopes[0].degree != ExactDegree::LogRational(qr(1, 4))
                || dec.slopes[1].degree != ExactDegree::LogRational(q(4))
                || dec.slopes[0] <= dec.slopes[1]
            {
                o.fail(format!("diag(1/4, 4) slopes {:?}", dec.slopes));
            }
            let ln2 = std::f64::consts::LN_2;
            if (dec.slopes[0].to_f64() - ln2).abs() > 1e-12 || (dec.slopes[1].to_f64() + ln2).abs() > 1e-12 {
                o.fail("diag(1/4, 4) slopes are not ±log 2");
            }
        }
        Err(e) => o.fail(format!("diag(1/4, 4): {e}")),
    }
    let triples = [
        [qr(1, 4), qr(1, 2), q(3)],
        [qr(1, 3), q(1), qr(9, 2)],
        [qr(1, 2), q(2), q(5)],
        [qr(2, 3), qr(3, 4), q(1)],
        [q(1), q(2), q(3)],
    ];
    for t in &triples {
        let l = diag(t);
        let want = vec![l.span(&[vec![1, 0, 0]]).unwrap(), l.span(&[vec![1, 0, 0], vec![0, 1, 0]]).unwrap(), l.full()];
        let slopes: Vec<Slope> = t.iter().map(|x| log_slope(x.clone(), 1)).collect();
        match hn_sequence(&host, &l) {
            Ok(dec) if dec.chain == want && dec.slopes == slopes => {}
            Ok(dec) => o.fail(format!("diag{t:?}: chain {:?}, slopes {:?}", dec.chain, dec.slopes)),
            Err(e) => o.fail(format!("diag{t:?}: {e}")),
        }
    }
    for n in 1..=4 {
        let l = EuclideanLattice::standard(n);
        match hn_sequence(&host, &l) {
            Ok(dec) if dec.chain == vec![l.full()] && dec.slopes[0].degree.is_zero() => {}
            Ok(dec) => o.fail(format!("Z^{n}: {:?} {:?}", dec.chain, dec.slopes)),
            Err(e) => o.fail(format!("Z^{n}: {e}")),
        }
    }
    o.detail = "diag(1/4,4), five sorted diagonal triples, Z^1..Z^4".into();
    o
}

fn c9_axioms() -> Outcome {
    Outcome::from_report(&axioms::run(&SuiteConfig { seed: SEED + 12, trials: 500 }))
}

fn random_measure(rng: &mut impl Rng) -> Measure {
    let k = rng.gen_range(1..=5);
    let mut cuts: Vec<i64> = (0..k - 1).map(|_| rng.gen_range(1..12)).collect();
    cuts.sort_unstable();
    cuts.dedup();
    let mut bounds = vec![0];
    bounds.extend(cuts);
    bounds.push(12);
    let mut locs: Vec<Q> = Vec::new();
    while locs.len() < bounds.len() - 1 {
        let l = qr(rng.gen_range(-20..=20), rng.gen_range(1..=4));
        if !locs.contains(&l) {
            locs.push(l);
        }
    }
    locs.sort_by(|a, b| b.cmp(a));
    let atoms = bounds.windows(2).zip(locs).map(|(w, l)| Atom { location: Slope::rational(l), mass: qr(w[1] - w[0], 12) }).collect();
    Measure { atoms }
}

fn c10_polygon_measure() -> Outcome {
    let rep = run_trials("polygon", &SuiteConfig { seed: SEED + 13, trials: 500 }, |rng, t: &mut Trial| {
        let fp = FpHost::default();
        let x = fp.object(rng);
        let mu = slope(&fp, &x).ok();
        match hn_sequence(&fp, &x) {
            Ok(dec) => slopes::polygon_checks(&dec, mu.as_ref(), t, &|| None),
            Err(e) => t.error("hn sequence", e, None),
        }
        let lat = LatticeHost::default();
        let l = lat.object(rng);
        let mu = slope(&lat, &l).ok();
        match hn_sequence(&lat, &l) {
            Ok(dec) => slopes::polygon_checks(&dec, mu.as_ref(), t, &|| None),
            Err(e) => t.error("hn sequence", e, None),
        }
        let nu = random_measure(rng);
        let back = measure_to_polygon(&nu).and_then(|p| polygon_to_measure(&p));
        t.check("random measure round trip", back.as_ref() == Ok(&nu), || format!("{back:?} != {nu:?}"), || None);
    });
    let mut o = Outcome::from_report(&rep);

    let golden = env!("CARGO_MANIFEST_DIR").to_string() + "/tests/golden/";
    let host = LatticeHost::default();
    let poly = hn_sequence(&host, &diag(&[qr(1, 4), q(4)])).unwrap().polygon();
    let sp = FpSpace::new(2, 2).unwrap();
    let e1 = sp.span(&[vec![1, 0]]).unwrap();
    let two_jump = MultiFiltSpace::single(
        sp,
        hn_core::filtration::StepFiltration::from_flag(&sp, vec![q(1), q(0)], vec![e1, sp.full()]).unwrap(),
    )
    .unwrap();
    let fpoly = hn_sequence(&FpHost::default(), &two_jump).unwrap().polygon();
    for (name, render) in [
        ("lattice_quarter_four.csv", polygon_csv(&poly, 12)),
        ("lattice_quarter_four.svg", polygon_svg(&poly, 12)),
        ("fp_two_jump.csv", polygon_csv(&fpoly, 12)),
        ("fp_two_jump.svg", polygon_svg(&fpoly, 12)),
    ] {
        let again = if name.ends_with("csv") {
            polygon_csv(if name.starts_with("fp") { &fpoly } else { &poly }, 12)
        } else {
            polygon_svg(if name.starts_with("fp") { &fpoly } else { &poly }, 12)
        };
        if render != again {
            o.fail(format!("{name}: two renderings differ"));
        }
        match std::fs::read_to_string(golden.clone() + name) {
            Ok(g) if g == render => {}
            Ok(_) => o.fail(format!("{name}: differs from golden file")),
            Err(e) => o.fail(format!("{name}: {e}")),
        }
    }
    o.detail = format!("{}; 4 golden renderings byte-identical", o.detail);
    o
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("1 model-category identity", c1_model_identity, Duration::from_secs(5)),
        ("2 theorem invariants", c2_theorem_invariants, Duration::from_secs(120)),
        ("3 uniqueness and idempotence", c3_uniqueness, Duration::from_secs(120)),
        ("4 oracle equivalence", c4_oracle, Duration::from_secs(60)),
        ("5 degree additivity", c5_additivity, Duration::from_secs(120)),
        ("6 slope corollaries", c6_slope_corollaries, Duration::from_secs(300)),
        ("7 functoriality", c7_functoriality, Duration::from_secs(300)),
        ("8 lattice fixtures", c8_lattice_fixtures, Duration::from_secs(30)),
        ("9 axiom suites", c9_axioms, Duration::from_secs(300)),
        ("10 polygon and measure", c10_polygon_measure, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let mut o = run();
        let took = start.elapsed();
        if took > limit {
            o.fail(format!("took {took:.2?}, limit {limit:?}"));
        }
        let status = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {name:<30} {took:>9.2?}  {}", o.detail);
        for f in &o.failures {
            println!("       {f}");
        }
        if !o.failures.is_empty() {
            failed += 1;
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
