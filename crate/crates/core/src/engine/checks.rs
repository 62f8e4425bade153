//! Checkers for the slope inequalities and the functoriality of HN filtrations.
//!
//! These report violations instead of failing, so the property suites can collect
//! counterexamples.

use super::model::model_measure;
use super::polygon::measure_to_polygon;
use super::{hn_sequence, slope, HnCategory, HnError, SlopeIndex};
use crate::degree::{ExtendedSlope, Slope};
use crate::filtration::{FiltrationMorphismWitness, Probe};
use crate::subobject::SubobjectLattice;
use std::cmp::Ordering;
use std::fmt::Debug;

/// Outcome of a check: how many assertions ran and which failed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub assertions: usize,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn assert(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        self.assertions += 1;
        if !cond {
            self.violations.push(msg());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.assertions += other.assertions;
        self.violations.extend(other.violations);
    }
}

fn le(a: &ExtendedSlope, b: &ExtendedSlope) -> bool {
    matches!(a.partial_cmp(b), Some(Ordering::Less | Ordering::Equal))
}

/// For a morphism `f: X -> Y` compatible with the structures: `μ_min(X) ≤ μ_max(Y)` when
/// `f ≠ 0`, `μ_max(X) ≤ μ_max(Y)` when `f` is mono, `μ_min(X) ≤ μ_min(Y)` when `f` is epi, and
/// `f = 0` whenever both sides are semistable with `μ(X) > μ(Y)`.
pub fn verify_hom_slope_gap<C: HnCategory>(
    cat: &C,
    f: &C::Map,
    x: &C::Object,
    y: &C::Object,
) -> Result<CheckReport, HnError<C::Sub>> {
    let mut rep = CheckReport::default();
    let kind = cat.map_kind(f);
    if kind.zero {
        return Ok(rep);
    }
    let hx = hn_sequence(cat, x)?;
    let hy = hn_sequence(cat, y)?;
    let (xmin, xmax) = (hx.mu_min(), hx.mu_max());
    let (ymin, ymax) = (hy.mu_min(), hy.mu_max());
    rep.assert(le(&xmin, &ymax), || format!("non-zero map with mu_min(X) = {xmin} > mu_max(Y) = {ymax}"));
    if kind.mono {
        rep.assert(le(&xmax, &ymax), || format!("monomorphism with mu_max(X) = {xmax} > mu_max(Y) = {ymax}"));
    }
    if kind.epi {
        rep.assert(le(&xmin, &ymin), || format!("epimorphism with mu_min(X) = {xmin} > mu_min(Y) = {ymin}"));
    }
    if hx.len() == 1 && hy.len() == 1 {
        let gap = hx.slopes[0].try_cmp(&hy.slopes[0])? == Ordering::Greater;
        rep.assert(!gap, || {
            format!("non-zero map between semistable objects of slopes {} > {}", hx.slopes[0], hy.slopes[0])
        });
    }
    Ok(rep)
}

/// Certifies `f(X_λ) ⊆ Y_λ` for every `λ`, and that `f(X) ⊆ Y_{μ_min(X)}`.
pub fn induced_hn_morphism<C: HnCategory>(
    cat: &C,
    f: &C::Map,
    x: &C::Object,
    y: &C::Object,
) -> Result<Result<FiltrationMorphismWitness<SlopeIndex>, String>, HnError<C::Sub>> {
    let hx = hn_sequence(cat, x)?;
    let hy = hn_sequence(cat, y)?;
    let fx = hx.filtration(cat.zero_sub(x));
    let fy = hy.filtration(cat.zero_sub(y));
    let probes = fx.probe_points(&fy);
    for p in &probes {
        let img = cat.map_image(f, y, fx.eval_probe(p));
        if !cat.contains(y, fy.eval_probe(p), &img) {
            return Ok(Err(format!("containment fails at {p:?}")));
        }
    }
    if let ExtendedSlope::Finite(m) = hx.mu_min() {
        let img = cat.map_image(f, y, &cat.full_sub(x));
        if !cat.contains(y, fy.eval(&SlopeIndex(m.clone())), &img) {
            return Ok(Err(format!("f(X) does not factor through Y_{m}")));
        }
    }
    Ok(Ok(FiltrationMorphismWitness { checked: probes }))
}

/// For a compatible isomorphism `f: X -> Y`: `μ(X) ≤ μ(Y)` and `deg(X) ≤ deg(Y)`.
pub fn compare_iso_degrees<C: HnCategory>(cat: &C, x: &C::Object, y: &C::Object) -> Result<CheckReport, HnError<C::Sub>> {
    let mut rep = CheckReport::default();
    if cat.rank(x) == 0 {
        return Ok(rep);
    }
    let (sx, sy) = (slope(cat, x)?, slope(cat, y)?);
    rep.assert(sx.try_cmp(&sy)? != Ordering::Greater, || format!("slope(X) = {sx} > slope(Y) = {sy}"));
    let dx = Slope::new(cat.degree(x), 1)?;
    let dy = Slope::new(cat.degree(y), 1)?;
    rep.assert(dx.try_cmp(&dy)? != Ordering::Greater, || format!("deg(X) = {} > deg(Y) = {}", dx.degree, dy.degree));
    Ok(rep)
}

/// Transports the HN filtration of `x` along an exact, rank-preserving hook into a model
/// category and checks that its polygon and measure agree with those of `x`.
pub fn polygon_transport_check<C, L, H>(cat: &C, x: &C::Object, target: &L, hook: H) -> Result<CheckReport, HnError<C::Sub>>
where
    C: HnCategory,
    L: SubobjectLattice,
    L::Sub: Debug,
    H: Fn(&C::Sub) -> L::Sub,
{
    let mut rep = CheckReport::default();
    let dec = hn_sequence(cat, x)?;
    let fil = dec.filtration(cat.zero_sub(x)).map_values(&hook);
    let transported = match model_measure(target, &fil) {
        Ok(m) => m,
        Err(e) => {
            rep.assert(false, || format!("transported filtration is not a model object: {e}"));
            return Ok(rep);
        }
    };
    let own = dec.measure();
    rep.assert(transported == own, || format!("measures differ: {transported:?} vs {own:?}"));
    if cat.rank(x) > 0 {
        match measure_to_polygon(&transported) {
            Ok(p) => {
                let own_p = dec.polygon();
                rep.assert(p == own_p, || format!("polygons differ: {p:?} vs {own_p:?}"));
            }
            Err(e) => rep.assert(false, || format!("transported measure has no polygon: {e}")),
        }
    }
    Ok(rep)
}

/// The probe set used by [`induced_hn_morphism`], exposed for reporting.
pub fn describe_probe(p: &Probe<SlopeIndex>) -> String {
    match p {
        Probe::At(l) => format!("{:?}", l),
        Probe::JustAbove(l) => format!("{:?}+", l),
        Probe::JustBelow(l) => format!("{:?}-", l),
        Probe::AboveAll => "+inf".into(),
        Probe::BelowAll => "-inf".into(),
    }
}
