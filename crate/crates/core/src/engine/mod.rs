//! Generic Harder–Narasimhan machinery over a host category.
//!
//! The host supplies ranks, degrees, quotients and a destabilizing subobject; the engine
//! builds the HN sequence by repeatedly destabilizing the current quotient and pulling the
//! result back to the original object.

pub mod checks;
pub mod model;
pub mod polygon;

use crate::degree::{DegreeError, ExactDegree, ExtendedSlope, Slope};
use crate::filtration::{Orientation, Step, StepFiltration};
use crate::rational::Q;
use std::cmp::Ordering;
use std::fmt::{self, Debug};

pub use polygon::{Atom, Measure, Polygon, PolygonError, Vertex};

/// Failures reported by a host's destabilizer search.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HostError {
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("{what} = {value} exceeds the configured limit {limit}")]
    GuardExceeded { what: &'static str, value: usize, limit: usize },
    #[error("two distinct subobjects tie at slope {slope} and rank {rank}")]
    Tie { slope: String, rank: usize },
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error("{0}")]
    Other(String),
}

/// How much a returned destabilizer is trusted, weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Certification {
    /// Search over a restricted candidate set that could not be checked exhaustively.
    Heuristic,
    /// Restricted search confirmed by exhaustive enumeration.
    Verified,
    /// Found by exhaustive enumeration.
    Exhaustive,
    /// Guaranteed by theory (a single filtration) or by an exact search bound.
    Proved,
}

impl Certification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Certification::Heuristic => "heuristic",
            Certification::Verified => "verified",
            Certification::Exhaustive => "exhaustive",
            Certification::Proved => "proved",
        }
    }
}

/// How a morphism sits: zero, monomorphism, epimorphism (any combination).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapKind {
    pub zero: bool,
    pub mono: bool,
    pub epi: bool,
}

/// A host category with arithmetic structures, a degree and a rank.
pub trait HnCategory {
    /// An arithmetic object (an object together with its structure).
    type Object: Clone + Debug;
    /// A subobject of a given arithmetic object, in canonical form.
    type Sub: Clone + PartialEq + Debug;
    /// The projection onto a quotient produced by [`HnCategory::quotient`].
    type Projection: Clone + Debug;
    /// A morphism between underlying objects.
    type Map: Clone + Debug;

    fn rank(&self, x: &Self::Object) -> usize;
    fn sub_rank(&self, x: &Self::Object, s: &Self::Sub) -> usize;
    /// Degree of `s` with the structure induced from `x`.
    fn sub_degree(&self, x: &Self::Object, s: &Self::Sub) -> ExactDegree;
    fn zero_sub(&self, x: &Self::Object) -> Self::Sub;
    fn full_sub(&self, x: &Self::Object) -> Self::Sub;
    fn contains(&self, x: &Self::Object, big: &Self::Sub, small: &Self::Sub) -> bool;

    /// The non-zero subobject of maximal slope, of maximal rank among those.
    fn destabilizer(&self, x: &Self::Object) -> Result<Self::Sub, HostError>;
    /// `s` as an arithmetic object with the induced structure.
    fn induced(&self, x: &Self::Object, s: &Self::Sub) -> Self::Object;
    /// `x / s` with the quotient structure.
    fn quotient(&self, x: &Self::Object, s: &Self::Sub) -> (Self::Object, Self::Projection);
    /// Preimage under a projection of a subobject of the quotient.
    fn lift(&self, p: &Self::Projection, s: &Self::Sub) -> Self::Sub;

    /// Image of `s ⊆ x` under `f: x -> y`, as a subobject of `y`.
    fn map_image(&self, f: &Self::Map, y: &Self::Object, s: &Self::Sub) -> Self::Sub;
    fn map_kind(&self, f: &Self::Map) -> MapKind;
    /// Whether `f` is compatible with the arithmetic structures of `x` and `y`.
    fn compatible(&self, f: &Self::Map, x: &Self::Object, y: &Self::Object) -> bool;

    fn degree(&self, x: &Self::Object) -> ExactDegree {
        self.sub_degree(x, &self.full_sub(x))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum HnError<S: Debug> {
    #[error("the zero object has no slope")]
    ZeroObject,
    #[error("destabilizer search failed after {} step(s): {source}", partial.len())]
    Host { source: HostError, partial: Vec<S> },
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// A slope used as a filtration index. All slopes of one host share a degree kind, so the
/// order is total; comparing slopes of different kinds panics.
#[derive(Clone)]
pub struct SlopeIndex(pub Slope);

impl Debug for SlopeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl PartialEq for SlopeIndex {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for SlopeIndex {}

impl PartialOrd for SlopeIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SlopeIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.try_cmp(&other.0).expect("slopes of one host share a degree kind")
    }
}

/// The HN flag `0 = X₀ ⊂ X₁ ⊂ … ⊂ X_n = X` with subquotient slopes.
#[derive(Debug, Clone)]
pub struct HnDecomposition<S> {
    /// `X₁, …, X_n` (the zero subobject is implicit).
    pub chain: Vec<S>,
    /// `rank(X_i)`.
    pub ranks: Vec<usize>,
    /// Degrees of the subquotients `X_i / X_{i-1}`.
    pub degrees: Vec<ExactDegree>,
    /// Slopes of the subquotients, strictly decreasing.
    pub slopes: Vec<Slope>,
    pub total_rank: usize,
    /// Degree of `X`, as reported by the host (zero of the host's kind for `X = 0`).
    pub total_degree: ExactDegree,
}

impl<S: Clone + PartialEq + Debug> HnDecomposition<S> {
    /// `t_i = rank(X_i) / rank(X)`, with `t_0 = 0`.
    pub fn t(&self, i: usize) -> Q {
        if i == 0 {
            return Q::from_integer(0.into());
        }
        Q::new(self.ranks[i - 1].into(), self.total_rank.into())
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn mu_max(&self) -> ExtendedSlope {
        self.slopes.first().cloned().map(ExtendedSlope::Finite).unwrap_or(ExtendedSlope::NegInfinity)
    }

    pub fn mu_min(&self) -> ExtendedSlope {
        self.slopes.last().cloned().map(ExtendedSlope::Finite).unwrap_or(ExtendedSlope::PosInfinity)
    }

    /// `X_λ = X_{i(λ)}` with `i(λ) = max{i | slope_i ≥ λ}` (and `X_0 = zero`).
    pub fn filtration(&self, zero: S) -> StepFiltration<S, SlopeIndex> {
        let steps = self
            .chain
            .iter()
            .zip(&self.slopes)
            .map(|(value, slope)| Step { index: SlopeIndex(slope.clone()), value: value.clone() })
            .collect();
        StepFiltration::from_parts(Orientation::Left, zero, steps)
    }

    pub fn measure(&self) -> Measure {
        let atoms = self
            .slopes
            .iter()
            .enumerate()
            .map(|(i, s)| Atom { location: s.clone(), mass: self.t(i + 1) - self.t(i) })
            .collect();
        Measure { atoms }
    }

    pub fn polygon(&self) -> Polygon {
        let zero = self.total_degree.zero_like();
        let mut vertices = vec![Vertex { t: self.t(0), height: Slope { degree: zero.clone(), rank: 1 } }];
        let mut acc = zero;
        for (i, d) in self.degrees.iter().enumerate() {
            acc = acc.try_add(d).expect("subquotient degrees share the host's kind");
            vertices.push(Vertex { t: self.t(i + 1), height: Slope { degree: acc.clone(), rank: self.total_rank } });
        }
        Polygon { vertices }
    }
}

/// The decomposition together with the subquotients as arithmetic objects.
#[derive(Debug, Clone)]
pub struct HnRun<C: HnCategory> {
    pub decomposition: HnDecomposition<C::Sub>,
    pub subquotients: Vec<C::Object>,
}

pub fn slope<C: HnCategory>(cat: &C, x: &C::Object) -> Result<Slope, HnError<C::Sub>> {
    let r = cat.rank(x);
    if r == 0 {
        return Err(HnError::ZeroObject);
    }
    Ok(Slope::new(cat.degree(x), r)?)
}

/// Runs the destabilize–quotient–lift loop.
pub fn hn_run<C: HnCategory>(cat: &C, x: &C::Object) -> Result<HnRun<C>, HnError<C::Sub>> {
    let total_rank = cat.rank(x);
    let total_degree = cat.degree(x);
    let mut chain: Vec<C::Sub> = Vec::new();
    let mut ranks = Vec::new();
    let mut degrees = Vec::new();
    let mut slopes: Vec<Slope> = Vec::new();
    let mut subquotients = Vec::new();
    let mut projections: Vec<C::Projection> = Vec::new();
    let mut current = x.clone();
    while cat.rank(&current) > 0 {
        let d = match cat.destabilizer(&current) {
            Ok(d) => d,
            Err(source) => return Err(HnError::Host { source, partial: chain }),
        };
        let rk = cat.sub_rank(&current, &d);
        if rk == 0 {
            return Err(HnError::Invariant("host returned a zero destabilizer".into()));
        }
        let deg = cat.sub_degree(&current, &d);
        let s = Slope::new(deg.clone(), rk)?;
        if let Some(prev) = slopes.last() {
            if s.try_cmp(prev)? != Ordering::Less {
                return Err(HnError::Invariant(format!("subquotient slopes not decreasing: {prev} then {s}")));
            }
        }
        let mut lifted = d.clone();
        for p in projections.iter().rev() {
            lifted = cat.lift(p, &lifted);
        }
        ranks.push(cat.sub_rank(x, &lifted));
        chain.push(lifted);
        degrees.push(deg);
        slopes.push(s);
        subquotients.push(cat.induced(&current, &d));
        let (q, p) = cat.quotient(&current, &d);
        projections.push(p);
        current = q;
    }
    Ok(HnRun {
        decomposition: HnDecomposition { chain, ranks, degrees, slopes, total_rank, total_degree },
        subquotients,
    })
}

/// The HN sequence of `x`; empty for the zero object.
pub fn hn_sequence<C: HnCategory>(cat: &C, x: &C::Object) -> Result<HnDecomposition<C::Sub>, HnError<C::Sub>> {
    hn_run(cat, x).map(|r| r.decomposition)
}

pub fn mu_max<C: HnCategory>(cat: &C, x: &C::Object) -> Result<ExtendedSlope, HnError<C::Sub>> {
    Ok(hn_sequence(cat, x)?.mu_max())
}

pub fn mu_min<C: HnCategory>(cat: &C, x: &C::Object) -> Result<ExtendedSlope, HnError<C::Sub>> {
    Ok(hn_sequence(cat, x)?.mu_min())
}

/// `x` is semistable iff its destabilizer has the slope of `x`.
pub fn is_semistable<C: HnCategory>(cat: &C, x: &C::Object) -> Result<bool, HnError<C::Sub>> {
    let whole = slope(cat, x)?;
    let d = cat.destabilizer(x).map_err(|source| HnError::Host { source, partial: Vec::new() })?;
    let ds = Slope::new(cat.sub_degree(x, &d), cat.sub_rank(x, &d))?;
    Ok(ds.try_cmp(&whole)? == Ordering::Equal)
}

/// The ℝ-indexed HN filtration: separated, exhaustive, left continuous, finite length.
pub fn hn_filtration<C: HnCategory>(
    cat: &C,
    x: &C::Object,
) -> Result<StepFiltration<C::Sub, SlopeIndex>, HnError<C::Sub>> {
    Ok(hn_sequence(cat, x)?.filtration(cat.zero_sub(x)))
}

/// Reads the chain back off a filtration at its minimal jumping set.
pub fn chain_from_filtration<S: Clone + PartialEq + Debug>(fil: &StepFiltration<S, SlopeIndex>) -> (Vec<S>, Vec<Slope>) {
    let canon = fil.canonicalize();
    canon.steps().iter().map(|s| (s.value.clone(), s.index.0.clone())).unzip()
}

pub fn hn_polygon<C: HnCategory>(cat: &C, x: &C::Object) -> Result<Polygon, HnError<C::Sub>> {
    Ok(hn_sequence(cat, x)?.polygon())
}

pub fn hn_measure<C: HnCategory>(cat: &C, x: &C::Object) -> Result<Measure, HnError<C::Sub>> {
    Ok(hn_sequence(cat, x)?.measure())
}

/// Checks the HN theorem's conclusions on a run: strictly decreasing slopes, semistable
/// subquotients, rank-weighted slopes summing to the degree, increasing chain ending at `x`.
pub fn verify_run<C: HnCategory>(cat: &C, x: &C::Object, run: &HnRun<C>) -> Result<Vec<String>, HnError<C::Sub>> {
    let dec = &run.decomposition;
    let mut bad = Vec::new();
    for w in dec.slopes.windows(2) {
        if w[0].try_cmp(&w[1])? != Ordering::Greater {
            bad.push(format!("slopes {} and {} not strictly decreasing", w[0], w[1]));
        }
    }
    for (i, piece) in run.subquotients.iter().enumerate() {
        if !is_semistable(cat, piece)? {
            bad.push(format!("subquotient {} is not semistable", i + 1));
        }
        let own = slope(cat, piece)?;
        if own.try_cmp(&dec.slopes[i])? != Ordering::Equal {
            bad.push(format!("subquotient {} slope {} differs from recorded {}", i + 1, own, dec.slopes[i]));
        }
    }
    if let Some(sum) = ExactDegree::sum(&dec.degrees)? {
        if !sum.try_sub(&cat.degree(x))?.is_zero() {
            bad.push(format!("subquotient degrees sum to {sum}, object degree is {}", cat.degree(x)));
        }
    } else if cat.rank(x) != 0 {
        bad.push("empty chain for a non-zero object".into());
    }
    let mut prev = cat.zero_sub(x);
    for (i, s) in dec.chain.iter().enumerate() {
        if !cat.contains(x, s, &prev) || *s == prev {
            bad.push(format!("chain not strictly increasing at step {}", i + 1));
        }
        prev = s.clone();
    }
    if cat.rank(x) > 0 && prev != cat.full_sub(x) {
        bad.push("chain does not end at the full object".into());
    }
    Ok(bad)
}
