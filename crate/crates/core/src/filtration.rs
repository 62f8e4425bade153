//! Finite-length ℝ-indexed filtrations in step form.
//!
//! A filtration is stored as `base = U₀ ⊆ U₁ ⊆ … ⊆ U_n` together with strictly decreasing
//! breakpoints `λ₁ > … > λ_n`. With left orientation `F(λ) = U_i` on `(λ_{i+1}, λ_i]`, so
//! `F(λ) = U_i` where `i = #{j : λ_j ≥ λ}`. Right orientation uses the half-open intervals
//! `[λ_{i+1}, λ_i)` instead.

use crate::rational::Q;
use crate::subobject::{DirectSumHost, Morphism, SubobjectLattice};
use std::collections::BTreeSet;
use std::fmt::Debug;

/// Totally ordered index set for filtrations. Rational indices are the default; HN
/// filtrations of lattices are indexed by log-rational slopes.
pub trait FiltrationIndex: Clone + Ord + Debug {}

impl<T: Clone + Ord + Debug> FiltrationIndex for T {}

/// A symbolic evaluation point: `λ`, `λ + ε` or `λ - ε` for infinitesimal `ε`, or beyond all
/// breakpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Probe<I> {
    At(I),
    JustAbove(I),
    JustBelow(I),
    AboveAll,
    BelowAll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step<S, I = Q> {
    pub index: I,
    pub value: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepFiltration<S, I = Q> {
    orientation: Orientation,
    base: S,
    steps: Vec<Step<S, I>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FiltrationError {
    #[error("breakpoints must be strictly decreasing (position {0})")]
    NotDecreasing(usize),
    #[error("values must increase under containment (position {0})")]
    NotIncreasing(usize),
    #[error("filtration is not separated")]
    NotSeparated,
    #[error("filtration is not exhaustive")]
    NotExhaustive,
    #[error("expected a left-oriented filtration")]
    NotLeftOriented,
    #[error("filtrations live on different orientations")]
    OrientationMismatch,
}

/// Structural properties of a filtration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification<I = Q> {
    pub separated: bool,
    pub exhaustive: bool,
    pub canonical: bool,
    pub jumping_set: Vec<I>,
}

/// Certificate that a morphism is compatible with two filtrations: the indices at which
/// containment `f(F(λ)) ⊆ G(λ)` was checked. Together these cover every constancy interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationMorphismWitness<I = Q> {
    pub checked: Vec<Probe<I>>,
}

impl<S: Clone + PartialEq + Debug, I: FiltrationIndex> StepFiltration<S, I> {
    /// Builds a filtration, checking index order and containment against `lat`.
    pub fn new<L>(lat: &L, orientation: Orientation, base: S, steps: Vec<Step<S, I>>) -> Result<Self, FiltrationError>
    where
        L: SubobjectLattice<Sub = S>,
    {
        for (i, w) in steps.windows(2).enumerate() {
            if w[0].index <= w[1].index {
                return Err(FiltrationError::NotDecreasing(i + 1));
            }
        }
        let mut prev = &base;
        for (i, s) in steps.iter().enumerate() {
            if !lat.contains(&s.value, prev) {
                return Err(FiltrationError::NotIncreasing(i));
            }
            prev = &s.value;
        }
        Ok(StepFiltration { orientation, base, steps })
    }

    /// Builds without checks; callers guarantee the chain invariants.
    pub(crate) fn from_parts(orientation: Orientation, base: S, steps: Vec<Step<S, I>>) -> Self {
        StepFiltration { orientation, base, steps }
    }

    /// The constant filtration with value `full`.
    pub fn trivial(full: S) -> Self {
        StepFiltration { orientation: Orientation::Left, base: full, steps: Vec::new() }
    }

    /// Left-oriented filtration `0 ⊂ values[0] ⊆ …` jumping to `values[i]` at `indices[i]`.
    pub fn from_flag<L>(lat: &L, indices: Vec<I>, values: Vec<S>) -> Result<Self, FiltrationError>
    where
        L: SubobjectLattice<Sub = S>,
    {
        assert_eq!(indices.len(), values.len());
        let steps = indices.into_iter().zip(values).map(|(index, value)| Step { index, value }).collect();
        Self::new(lat, Orientation::Left, lat.zero(), steps)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn base(&self) -> &S {
        &self.base
    }

    pub fn steps(&self) -> &[Step<S, I>] {
        &self.steps
    }

    /// The largest value `U_n`.
    pub fn top(&self) -> &S {
        self.steps.last().map(|s| &s.value).unwrap_or(&self.base)
    }

    pub fn breakpoints(&self) -> Vec<I> {
        self.steps.iter().map(|s| s.index.clone()).collect()
    }

    fn value_after(&self, count: usize) -> &S {
        if count == 0 {
            &self.base
        } else {
            &self.steps[count - 1].value
        }
    }

    fn count_ge(&self, lambda: &I) -> usize {
        self.steps.iter().take_while(|s| s.index >= *lambda).count()
    }

    fn count_gt(&self, lambda: &I) -> usize {
        self.steps.iter().take_while(|s| s.index > *lambda).count()
    }

    pub fn eval(&self, lambda: &I) -> &S {
        match self.orientation {
            Orientation::Left => self.value_after(self.count_ge(lambda)),
            Orientation::Right => self.value_after(self.count_gt(lambda)),
        }
    }

    pub fn eval_probe(&self, probe: &Probe<I>) -> &S {
        match probe {
            Probe::At(l) => self.eval(l),
            Probe::JustAbove(l) => self.value_after(self.count_gt(l)),
            Probe::JustBelow(l) => self.value_after(self.count_ge(l)),
            Probe::AboveAll => &self.base,
            Probe::BelowAll => self.top(),
        }
    }

    /// The breakpoints at which the value actually changes.
    pub fn minimal_jumping_set(&self) -> Vec<I> {
        let mut out = Vec::new();
        let mut prev = &self.base;
        for s in &self.steps {
            if s.value != *prev {
                out.push(s.index.clone());
            }
            prev = &s.value;
        }
        out
    }

    /// Drops breakpoints at which nothing changes.
    pub fn canonicalize(&self) -> Self {
        let mut steps: Vec<Step<S, I>> = Vec::with_capacity(self.steps.len());
        let mut prev = self.base.clone();
        for s in &self.steps {
            if s.value != prev {
                steps.push(s.clone());
                prev = s.value.clone();
            }
        }
        StepFiltration { orientation: self.orientation, base: self.base.clone(), steps }
    }

    pub fn is_canonical(&self) -> bool {
        self.minimal_jumping_set().len() == self.steps.len()
    }

    pub fn classify<L: SubobjectLattice<Sub = S>>(&self, lat: &L) -> Classification<I> {
        Classification {
            separated: self.base == lat.zero(),
            exhaustive: *self.top() == lat.full(),
            canonical: self.is_canonical(),
            jumping_set: self.minimal_jumping_set(),
        }
    }

    /// `J` is a jumping set when the filtration is constant on every component of `ℝ ∖ J`.
    pub fn is_jumping_set(&self, candidate: &[I]) -> bool {
        self.minimal_jumping_set().iter().all(|l| candidate.contains(l))
    }

    /// `F` is constant on `(λ - ε, λ]` for some `ε > 0`.
    pub fn left_locally_constant_at(&self, lambda: &I) -> bool {
        self.eval_probe(&Probe::JustBelow(lambda.clone())) == self.eval(lambda)
    }

    /// `F` is constant on `[λ, λ + ε)` for some `ε > 0`.
    pub fn right_locally_constant_at(&self, lambda: &I) -> bool {
        self.eval_probe(&Probe::JustAbove(lambda.clone())) == self.eval(lambda)
    }

    pub fn left_continuize(&self) -> Self {
        StepFiltration { orientation: Orientation::Left, ..self.clone() }
    }

    pub fn right_continuize(&self) -> Self {
        StepFiltration { orientation: Orientation::Right, ..self.clone() }
    }

    /// Applies a subobject-valued hook to every value, keeping the indices.
    pub fn map_values<T, F>(&self, hook: F) -> StepFiltration<T, I>
    where
        F: Fn(&S) -> T,
    {
        StepFiltration {
            orientation: self.orientation,
            base: hook(&self.base),
            steps: self.steps.iter().map(|s| Step { index: s.index.clone(), value: hook(&s.value) }).collect(),
        }
    }

    /// Relabels the indices by a strictly increasing map.
    pub fn map_indices<J: FiltrationIndex, F: Fn(&I) -> J>(&self, relabel: F) -> StepFiltration<S, J> {
        StepFiltration {
            orientation: self.orientation,
            base: self.base.clone(),
            steps: self.steps.iter().map(|s| Step { index: relabel(&s.index), value: s.value.clone() }).collect(),
        }
    }

    /// Probes that meet every constancy interval of both filtrations.
    pub fn probe_points<T>(&self, other: &StepFiltration<T, I>) -> Vec<Probe<I>> {
        let set: BTreeSet<I> = self
            .steps
            .iter()
            .map(|s| s.index.clone())
            .chain(other.steps.iter().map(|s| s.index.clone()))
            .collect();
        let mut out = vec![Probe::AboveAll, Probe::BelowAll];
        for l in set {
            out.push(Probe::JustBelow(l.clone()));
            out.push(Probe::JustAbove(l.clone()));
            out.push(Probe::At(l));
        }
        out
    }
}

/// Left-oriented filtration whose value at every breakpoint of `a` or `b` is `op(a(λ), b(λ))`.
pub fn combine<A, B, S, I, F>(
    a: &StepFiltration<A, I>,
    b: &StepFiltration<B, I>,
    op: F,
) -> Result<StepFiltration<S, I>, FiltrationError>
where
    A: Clone + PartialEq + Debug,
    B: Clone + PartialEq + Debug,
    S: Clone + PartialEq + Debug,
    I: FiltrationIndex,
    F: Fn(&A, &B) -> S,
{
    if a.orientation != Orientation::Left || b.orientation != Orientation::Left {
        return Err(FiltrationError::NotLeftOriented);
    }
    let set: BTreeSet<I> = a.steps.iter().map(|s| s.index.clone()).chain(b.steps.iter().map(|s| s.index.clone())).collect();
    let base = op(&a.base, &b.base);
    let steps = set
        .into_iter()
        .rev()
        .map(|index| {
            let value = op(a.eval(&index), b.eval(&index));
            Step { index, value }
        })
        .collect();
    Ok(StepFiltration::from_parts(Orientation::Left, base, steps).canonicalize())
}

/// Inverse image `f*G`: `λ ↦ f⁻¹(G(λ))`.
pub fn pullback<M: Morphism, I: FiltrationIndex>(f: &M, g: &StepFiltration<M::Tgt, I>) -> StepFiltration<M::Src, I> {
    g.map_values(|v| f.preimage(v)).canonicalize()
}

/// Weak direct image `f_♭F`: `λ ↦ f(F(λ))`.
pub fn pushforward_weak<M: Morphism, I: FiltrationIndex>(f: &M, fil: &StepFiltration<M::Src, I>) -> StepFiltration<M::Tgt, I> {
    fil.map_values(|v| f.image(v)).canonicalize()
}

/// Strong direct image `f_* F`, the left-continuous envelope of the weak one.
pub fn pushforward_strong<M: Morphism, I: FiltrationIndex>(f: &M, fil: &StepFiltration<M::Src, I>) -> StepFiltration<M::Tgt, I> {
    pushforward_weak(f, fil).left_continuize()
}

/// `a(λ) ⊆ b(λ)` for every `λ`.
pub fn pointwise_contained<L: SubobjectLattice, I: FiltrationIndex>(
    lat: &L,
    a: &StepFiltration<L::Sub, I>,
    b: &StepFiltration<L::Sub, I>,
) -> bool {
    a.probe_points(b).iter().all(|p| lat.contains(b.eval_probe(p), a.eval_probe(p)))
}

/// Decides whether `f` maps `F(λ)` into `G(λ)` for every `λ`, returning the witness when it does.
pub fn is_compatible<M, L, I>(
    f: &M,
    target: &L,
    fil: &StepFiltration<M::Src, I>,
    gil: &StepFiltration<M::Tgt, I>,
) -> Option<FiltrationMorphismWitness<I>>
where
    M: Morphism,
    L: SubobjectLattice<Sub = M::Tgt>,
    I: FiltrationIndex,
{
    let pts = fil.probe_points(gil);
    for p in &pts {
        if !target.contains(gil.eval_probe(p), &f.image(fil.eval_probe(p))) {
            return None;
        }
    }
    Some(FiltrationMorphismWitness { checked: pts })
}

/// `H(λ) = F(λ) ⊕ G(λ)` inside `X ⊕ Y`.
pub fn direct_sum<H, I>(
    host: &H,
    fil: &StepFiltration<H::Left, I>,
    gil: &StepFiltration<H::Right, I>,
) -> Result<StepFiltration<H::Sum, I>, FiltrationError>
where
    H: DirectSumHost,
    H::Left: Clone + PartialEq + Debug,
    H::Right: Clone + PartialEq + Debug,
    H::Sum: Clone + PartialEq + Debug,
    I: FiltrationIndex,
{
    combine(fil, gil, |a, b| host.direct_sum_sub(a, b))
}
