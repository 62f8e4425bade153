//! Slope inequalities, the conclusions of the HN theorem, degree additivity and the
//! polygon/measure correspondence, on random objects of both hosts.

use super::gen::Sampler;
use super::{run_trials, SuiteConfig, SuiteReport, Trial};
use crate::degree::{ExtendedSlope, Slope};
use crate::engine::checks::verify_hom_slope_gap;
use crate::engine::polygon::{measure_to_polygon, polygon_to_measure};
use crate::engine::{hn_run, hn_sequence, slope, verify_run, HnDecomposition};
use crate::fp::FpHost;
use crate::lattice::LatticeHost;
use crate::rational::Q;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::fmt::Debug;

fn le(a: &ExtendedSlope, b: &ExtendedSlope) -> bool {
    matches!(a.partial_cmp(b), Some(Ordering::Less | Ordering::Equal))
}

/// Concavity, `P(0) = 0`, unit mass, `∫ t dν = μ` and both round trips.
pub fn polygon_checks<S: Clone + PartialEq + Debug>(dec: &HnDecomposition<S>, mu: Option<&Slope>, t: &mut Trial, w: &dyn Fn() -> Option<super::Witness>) {
    let poly = dec.polygon();
    let nu = dec.measure();
    let origin = &poly.vertices[0];
    t.check("polygon P(0) = 0", origin.t == Q::from_integer(0.into()) && origin.height.degree.is_zero(), || format!("{origin:?}"), w);
    match poly.is_concave() {
        Ok(c) => t.check("polygon concave", c, || format!("{poly:?}"), w),
        Err(e) => t.error("polygon concave", e, w()),
    }
    let Some(mu) = mu else {
        t.check("zero object has zero measure", nu.atoms.is_empty() && poly.vertices.len() == 1, || format!("{nu:?}"), w);
        return;
    };
    t.check("measure has unit mass", nu.total_mass() == Q::from_integer(1.into()), || format!("mass {}", nu.total_mass()), w);
    match nu.first_moment() {
        Ok(m) => t.check("first moment is the slope", m == *mu, || format!("{m} != {mu}"), w),
        Err(e) => t.error("first moment is the slope", e, w()),
    }
    t.check("polygon ends at the slope", poly.endpoint() == mu, || format!("{} != {mu}", poly.endpoint()), w);
    match measure_to_polygon(&nu) {
        Ok(p) => t.check("measure -> polygon", p == poly, || format!("{p:?} != {poly:?}"), w),
        Err(e) => t.error("measure -> polygon", e, w()),
    }
    match polygon_to_measure(&poly).and_then(|m| Ok((measure_to_polygon(&m)?, m))) {
        Ok((p, m)) => {
            t.check("polygon -> measure", m == nu, || format!("{m:?} != {nu:?}"), w);
            t.check("polygon -> measure -> polygon", p == poly, || format!("{p:?} != {poly:?}"), w);
        }
        Err(e) => t.error("polygon -> measure", e, w()),
    }
}

/// Every slope check on one random object of `host`.
pub fn check_object<C: Sampler>(host: &C, rng: &mut ChaCha8Rng, t: &mut Trial) {
    let x = host.object(rng);
    let w = || Some(C::witness(&x));
    let run = match hn_run(host, &x) {
        Ok(r) => r,
        Err(e) => return t.error("hn sequence", e, w()),
    };
    match verify_run(host, &x, &run) {
        Ok(bad) => {
            t.check("hn invariants", bad.is_empty(), || bad.join("; "), w);
        }
        Err(e) => t.error("hn invariants", e, w()),
    }
    let dec = &run.decomposition;
    let mu = if host.rank(&x) > 0 { slope(host, &x).ok() } else { None };
    if let Some(m) = &mu {
        let m = ExtendedSlope::Finite(m.clone());
        t.check("mu_min <= mu <= mu_max", le(&dec.mu_min(), &m) && le(&m, &dec.mu_max()), || {
            format!("{} <= {m} <= {} fails", dec.mu_min(), dec.mu_max())
        }, w);
    }
    polygon_checks(dec, mu.as_ref(), t, &w);

    let s = host.sub(rng, &x);
    let (quot, _) = host.quotient(&x, &s);
    let sub = host.induced(&x, &s);
    match host.sub_degree(&x, &s).try_add(&host.degree(&quot)) {
        Ok(sum) => {
            let whole = host.degree(&x);
            let ok = sum.try_sub(&whole).map(|d| d.is_zero()).unwrap_or(false);
            t.check("degree additivity", ok, || format!("deg(S) + deg(X/S) = {sum}, deg(X) = {whole}"), w);
        }
        Err(e) => t.error("degree additivity", e, w()),
    }
    if host.rank(&sub) > 0 {
        match hn_sequence(host, &sub) {
            Ok(hs) => t.check("mu_max(S) <= mu_max(X)", le(&hs.mu_max(), &dec.mu_max()), || {
                format!("{} > {}", hs.mu_max(), dec.mu_max())
            }, w),
            Err(e) => t.error("mu_max(S) <= mu_max(X)", e, w()),
        }
    }
    if host.rank(&quot) > 0 {
        match hn_sequence(host, &quot) {
            Ok(hq) => t.check("mu_min(X) <= mu_min(X/S)", le(&dec.mu_min(), &hq.mu_min()), || {
                format!("{} > {}", dec.mu_min(), hq.mu_min())
            }, w),
            Err(e) => t.error("mu_min(X) <= mu_min(X/S)", e, w()),
        }
    }

    let (f, y) = host.map_from(rng, &x);
    match verify_hom_slope_gap(host, &f, &x, &y) {
        Ok(rep) => t.absorb("hom slope gap", rep, w),
        Err(e) => t.error("hom slope gap", e, w()),
    }
    let (g, v) = host.map_into(rng, &x);
    let wv = || Some(C::witness(&v));
    match verify_hom_slope_gap(host, &g, &v, &x) {
        Ok(rep) => t.absorb("hom slope gap", rep, wv),
        Err(e) => t.error("hom slope gap", e, wv()),
    }
}

/// Multiplying the coefficients by `c > 0` keeps the chain and multiplies the slopes by `c`.
pub fn check_scaling(host: &FpHost, rng: &mut ChaCha8Rng, t: &mut Trial) {
    let x = host.object(rng);
    let c = Q::new(rng.gen_range(1i64..=6).into(), rng.gen_range(1i64..=3).into());
    let w = || Some(<FpHost as Sampler>::witness(&x));
    match (hn_sequence(host, &x), hn_sequence(host, &x.scaled(&c))) {
        (Ok(a), Ok(b)) => {
            t.check("scaling keeps the chain", a.chain == b.chain, || format!("{:?} != {:?}", a.chain, b.chain), w);
            let scaled: Vec<Option<Q>> = a.slopes.iter().map(|s| s.as_rational().map(|v| v * &c)).collect();
            let got: Vec<Option<Q>> = b.slopes.iter().map(|s| s.as_rational()).collect();
            t.check("scaling multiplies slopes", scaled == got, || format!("{scaled:?} != {got:?}"), w);
        }
        (Err(e), _) | (_, Err(e)) => t.error("scaling", e, w()),
    }
}

pub fn run(cfg: &SuiteConfig) -> SuiteReport {
    let fp = FpHost::default();
    let lat = LatticeHost::default();
    run_trials("slopes", cfg, |rng, t| {
        check_object(&fp, rng, t);
        check_object(&lat, rng, t);
        check_scaling(&fp, rng, t);
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slopes_hold_on_a_short_run() {
        let rep = run(&SuiteConfig { seed: 3, trials: 25 });
        assert!(rep.ok(), "{:?}", rep.counterexamples);
    }
}
