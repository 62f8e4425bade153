//! HN filtrations are functorial: a compatible map sends `X_λ` into `Y_λ`. Compatible
//! isomorphisms do not decrease the degree.

use super::gen::Sampler;
use super::{run_trials, SuiteConfig, SuiteReport, Trial};
use crate::engine::checks::{compare_iso_degrees, induced_hn_morphism};
use crate::fp::FpHost;
use crate::lattice::LatticeHost;
use rand_chacha::ChaCha8Rng;

pub fn check_maps<C: Sampler>(host: &C, rng: &mut ChaCha8Rng, t: &mut Trial) {
    let x = host.object(rng);
    let w = || Some(C::witness(&x));
    let (f, y) = host.map_from(rng, &x);
    t.check("generated map is compatible", host.compatible(&f, &x, &y), || format!("{f:?}"), w);
    match induced_hn_morphism(host, &f, &x, &y) {
        Ok(res) => t.check("f(X_λ) ⊆ Y_λ", res.is_ok(), || res.err().unwrap_or_default(), w),
        Err(e) => t.error("f(X_λ) ⊆ Y_λ", e, w()),
    }
    let (g, z) = host.iso_from(rng, &x);
    t.check("generated isomorphism is compatible", host.compatible(&g, &x, &z), || format!("{g:?}"), w);
    match compare_iso_degrees(host, &x, &z) {
        Ok(rep) => t.absorb("deg(X) <= deg(Y) for isomorphisms", rep, w),
        Err(e) => t.error("deg(X) <= deg(Y) for isomorphisms", e, w()),
    }
}

pub fn run(cfg: &SuiteConfig) -> SuiteReport {
    let fp = FpHost::default();
    let lat = LatticeHost::default();
    run_trials("functoriality", cfg, |rng, t| {
        check_maps(&fp, rng, t);
        check_maps(&lat, rng, t);
    })
}
