use super::destab::{self, Certification, DestabilizerConfig};
use super::{FpError, FpMap, FpSpace, SubspaceFp};
use crate::degree::ExactDegree;
use crate::engine::{HnCategory, HostError, MapKind};
use crate::filtration::{self, FiltrationError, Orientation, StepFiltration};
use crate::rational::Q;
use crate::subobject::SubobjectLattice;
use num::{Signed, Zero};
use std::cell::Cell;

/// `F_p^d` with filtrations `F_1, …, F_n` and non-negative coefficients `a_1, …, a_n`.
/// The degree is `Σ a_k deg_k`, each `deg_k` the model degree of `F_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiFiltSpace {
    space: FpSpace,
    filtrations: Vec<StepFiltration<SubspaceFp>>,
    alpha: Vec<Q>,
}

impl MultiFiltSpace {
    pub fn new(space: FpSpace, filtrations: Vec<StepFiltration<SubspaceFp>>, alpha: Vec<Q>) -> Result<Self, FpError> {
        if alpha.len() != filtrations.len() {
            return Err(FpError::AlphaLength { alpha: alpha.len(), filtrations: filtrations.len() });
        }
        if let Some(a) = alpha.iter().find(|a| a.is_negative()) {
            return Err(FpError::NegativeAlpha(a.to_string()));
        }
        let mut canon = Vec::with_capacity(filtrations.len());
        for (index, f) in filtrations.iter().enumerate() {
            space.check(f.base())?;
            for s in f.steps() {
                space.check(&s.value)?;
            }
            if f.orientation() != Orientation::Left {
                return Err(FpError::NotLeft(index));
            }
            let c = f.classify(&space);
            if !c.separated {
                return Err(FpError::Filtration { index, source: FiltrationError::NotSeparated });
            }
            if !c.exhaustive {
                return Err(FpError::Filtration { index, source: FiltrationError::NotExhaustive });
            }
            canon.push(f.canonicalize());
        }
        Ok(MultiFiltSpace { space, filtrations: canon, alpha })
    }

    /// A model object: one filtration with coefficient 1.
    pub fn single(space: FpSpace, fil: StepFiltration<SubspaceFp>) -> Result<Self, FpError> {
        Self::new(space, vec![fil], vec![Q::from_integer(1.into())])
    }

    pub fn space(&self) -> &FpSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn filtrations(&self) -> &[StepFiltration<SubspaceFp>] {
        &self.filtrations
    }

    pub fn alpha(&self) -> &[Q] {
        &self.alpha
    }

    /// Same filtrations, coefficients multiplied by `c > 0`.
    pub fn scaled(&self, c: &Q) -> MultiFiltSpace {
        MultiFiltSpace { alpha: self.alpha.iter().map(|a| a * c).collect(), ..self.clone() }
    }

    /// Degree of `u` with the induced filtrations, from the ranks `dim(U ∩ F_k(λ))`.
    pub fn degree_of(&self, u: &SubspaceFp) -> Q {
        let sp = &self.space;
        let mut total = Q::zero();
        for (fil, a) in self.filtrations.iter().zip(&self.alpha) {
            if a.is_zero() {
                continue;
            }
            let mut prev = 0usize;
            let mut deg = Q::zero();
            for s in fil.steps() {
                let r = u.dim() + s.value.dim() - sp.sum(u, &s.value).dim();
                if r != prev {
                    deg += &s.index * Q::from_integer((r - prev).into());
                    prev = r;
                }
            }
            total += a * deg;
        }
        total
    }

    /// Same value as [`degree_of`](Self::degree_of), computed as `Σ a_k · deg(inclusion* F_k)`.
    pub fn degree_via_pullback(&self, u: &SubspaceFp) -> Q {
        let (usp, incl) = self.space.inclusion(u);
        self.filtrations
            .iter()
            .zip(&self.alpha)
            .map(|(f, a)| {
                let pb = filtration::pullback(&incl, f);
                a * crate::engine::model::model_degree(&usp, &pb).expect("pullback of a model filtration")
            })
            .sum()
    }

    pub fn degree(&self) -> Q {
        self.degree_of(&self.space.full())
    }

    /// `u` with the induced filtrations, in the echelon coordinates of `u`.
    pub fn induced(&self, u: &SubspaceFp) -> MultiFiltSpace {
        let (usp, incl) = self.space.inclusion(u);
        let filtrations = self.filtrations.iter().map(|f| filtration::pullback(&incl, f)).collect();
        MultiFiltSpace { space: usp, filtrations, alpha: self.alpha.clone() }
    }

    /// `X / u` with the pushed-forward filtrations, and the projection.
    pub fn quotient(&self, u: &SubspaceFp) -> (MultiFiltSpace, FpMap) {
        let (qsp, proj) = self.space.quotient(u);
        let filtrations = self.filtrations.iter().map(|f| filtration::pushforward_strong(&proj, f)).collect();
        (MultiFiltSpace { space: qsp, filtrations, alpha: self.alpha.clone() }, proj)
    }

    fn same_structure(&self, other: &MultiFiltSpace) -> bool {
        self.alpha == other.alpha && self.space.prime() == other.space.prime()
    }

    /// `f` is compatible iff it is compatible with `(F_k, G_k)` for every `k`.
    pub fn compatible_map(&self, f: &FpMap, other: &MultiFiltSpace) -> bool {
        self.same_structure(other)
            && self
                .filtrations
                .iter()
                .zip(&other.filtrations)
                .all(|(a, b)| filtration::is_compatible(f, &other.space, a, b).is_some())
    }

    /// Flag-level test: `f(U_i) ⊆ G_k(λ_i)` at every step `(λ_i, U_i)` of every `F_k`.
    pub fn compatible_map_flags(&self, f: &FpMap, other: &MultiFiltSpace) -> bool {
        use crate::subobject::Morphism;
        self.same_structure(other)
            && self.filtrations.iter().zip(&other.filtrations).all(|(a, b)| {
                a.steps().iter().all(|s| other.space.contains(b.eval(&s.index), &f.image(&s.value)))
            })
    }
}

/// The multi-filtered host, parameterized by its destabilizer search.
#[derive(Debug, Default)]
pub struct FpHost {
    pub config: DestabilizerConfig,
    weakest: Cell<Option<Certification>>,
}

impl FpHost {
    pub fn new(config: DestabilizerConfig) -> FpHost {
        FpHost { config, weakest: Cell::new(None) }
    }

    /// The weakest certification among destabilizers computed so far.
    pub fn certification(&self) -> Option<Certification> {
        self.weakest.get()
    }

    pub fn reset_certification(&self) {
        self.weakest.set(None);
    }
}

impl HnCategory for FpHost {
    type Object = MultiFiltSpace;
    type Sub = SubspaceFp;
    type Projection = FpMap;
    type Map = FpMap;

    fn rank(&self, x: &MultiFiltSpace) -> usize {
        x.dim()
    }

    fn sub_rank(&self, _x: &MultiFiltSpace, s: &SubspaceFp) -> usize {
        s.dim()
    }

    fn sub_degree(&self, x: &MultiFiltSpace, s: &SubspaceFp) -> ExactDegree {
        ExactDegree::Rational(x.degree_of(s))
    }

    fn zero_sub(&self, x: &MultiFiltSpace) -> SubspaceFp {
        x.space.zero()
    }

    fn full_sub(&self, x: &MultiFiltSpace) -> SubspaceFp {
        x.space.full()
    }

    fn contains(&self, x: &MultiFiltSpace, big: &SubspaceFp, small: &SubspaceFp) -> bool {
        x.space.contains(big, small)
    }

    fn destabilizer(&self, x: &MultiFiltSpace) -> Result<SubspaceFp, HostError> {
        let (d, cert) = destab::destabilize(x, &self.config)?;
        let weakest = match self.weakest.get() {
            Some(w) if w <= cert => w,
            _ => cert,
        };
        self.weakest.set(Some(weakest));
        Ok(d)
    }

    fn induced(&self, x: &MultiFiltSpace, s: &SubspaceFp) -> MultiFiltSpace {
        x.induced(s)
    }

    fn quotient(&self, x: &MultiFiltSpace, s: &SubspaceFp) -> (MultiFiltSpace, FpMap) {
        x.quotient(s)
    }

    fn lift(&self, p: &FpMap, s: &SubspaceFp) -> SubspaceFp {
        use crate::subobject::Morphism;
        p.preimage(s)
    }

    fn map_image(&self, f: &FpMap, _y: &MultiFiltSpace, s: &SubspaceFp) -> SubspaceFp {
        use crate::subobject::Morphism;
        f.image(s)
    }

    fn map_kind(&self, f: &FpMap) -> MapKind {
        MapKind { zero: f.is_zero(), mono: f.is_injective(), epi: f.is_surjective() }
    }

    fn compatible(&self, f: &FpMap, x: &MultiFiltSpace, y: &MultiFiltSpace) -> bool {
        x.compatible_map(f, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{hn_filtration, hn_sequence, is_semistable, slope};
    use crate::rational::{q, qr};

    fn f2() -> FpSpace {
        FpSpace::new(2, 2).unwrap()
    }

    fn line(sp: &FpSpace, v: Vec<u64>) -> SubspaceFp {
        sp.span(&[v]).unwrap()
    }

    fn flag(sp: &FpSpace, weights: &[i64], values: Vec<SubspaceFp>) -> StepFiltration<SubspaceFp> {
        StepFiltration::from_flag(sp, weights.iter().map(|&w| q(w)).collect(), values).unwrap()
    }

    /// One filtration: jumps {1 on span(e1), 0 on X}.
    fn two_jump() -> MultiFiltSpace {
        let sp = f2();
        MultiFiltSpace::single(sp, flag(&sp, &[1, 0], vec![line(&sp, vec![1, 0]), sp.full()])).unwrap()
    }

    /// Filtrations A (weight 2 on span(e1)) and B (weight 1 on span(e1)), alpha = (1, 1).
    fn a_b() -> MultiFiltSpace {
        let sp = f2();
        let e1 = line(&sp, vec![1, 0]);
        MultiFiltSpace::new(
            sp,
            vec![flag(&sp, &[2, 0], vec![e1.clone(), sp.full()]), flag(&sp, &[1, 0], vec![e1, sp.full()])],
            vec![q(1), q(1)],
        )
        .unwrap()
    }

    #[test]
    fn degree_examples() {
        let x = two_jump();
        let sp = *x.space();
        assert_eq!(x.degree_of(&sp.zero()), q(0));
        assert_eq!(x.degree(), q(1));
        assert_eq!(x.degree_of(&line(&sp, vec![1, 0])), q(1));
        assert_eq!(x.degree_of(&line(&sp, vec![0, 1])), q(0));
        let two = MultiFiltSpace::new(
            sp,
            vec![flag(&sp, &[1], vec![line(&sp, vec![1, 0])]).clone(), flag(&sp, &[1], vec![line(&sp, vec![0, 1])])],
            vec![q(1), q(1)],
        );
        // not exhaustive
        assert!(two.is_err());
        let two = MultiFiltSpace::new(
            sp,
            vec![
                flag(&sp, &[1, 0], vec![line(&sp, vec![1, 0]), sp.full()]),
                flag(&sp, &[1, 0], vec![line(&sp, vec![0, 1]), sp.full()]),
            ],
            vec![q(1), q(1)],
        )
        .unwrap();
        assert_eq!(two.degree_of(&line(&sp, vec![1, 1])), q(0));
        for u in sp.all_subspaces() {
            assert_eq!(two.degree_of(&u), two.degree_via_pullback(&u));
        }
    }

    #[test]
    fn slopes_and_semistability() {
        let host = FpHost::default();
        let x = two_jump();
        assert_eq!(slope(&host, &x).unwrap().as_rational(), Some(qr(1, 2)));
        assert!(!is_semistable(&host, &x).unwrap());
        let sp = f2();
        let single = MultiFiltSpace::single(sp, flag(&sp, &[5], vec![sp.full()])).unwrap();
        assert!(is_semistable(&host, &single).unwrap());
        let l = FpSpace::new(3, 1).unwrap();
        let rank_one = MultiFiltSpace::single(l, flag(&l, &[-2], vec![l.full()])).unwrap();
        assert!(is_semistable(&host, &rank_one).unwrap());
        assert_eq!(slope(&host, &rank_one).unwrap().as_rational(), Some(q(-2)));
    }

    #[test]
    fn a_b_sequence() {
        let host = FpHost::default();
        let x = a_b();
        let sp = *x.space();
        let dec = hn_sequence(&host, &x).unwrap();
        assert_eq!(dec.chain, vec![line(&sp, vec![1, 0]), sp.full()]);
        let s: Vec<Q> = dec.slopes.iter().map(|s| s.as_rational().unwrap()).collect();
        assert_eq!(s, vec![q(3), q(0)]);
        let fil = hn_filtration(&host, &x).unwrap();
        assert_eq!(fil.breakpoints().iter().map(|i| i.0.as_rational().unwrap()).collect::<Vec<_>>(), vec![q(3), q(0)]);
        let verts: Vec<(Q, Q)> =
            dec.polygon().vertices.iter().map(|v| (v.t.clone(), v.height.as_rational().unwrap())).collect();
        assert_eq!(verts, vec![(q(0), q(0)), (qr(1, 2), qr(3, 2)), (q(1), qr(3, 2))]);
    }

    #[test]
    fn quotient_examples() {
        let x = a_b();
        let sp = *x.space();
        let (same, _) = x.quotient(&sp.zero());
        assert_eq!(same, x);
        let (zero, _) = x.quotient(&sp.full());
        assert_eq!(zero.dim(), 0);
        assert_eq!(zero.degree(), q(0));
        let u = line(&sp, vec![1, 1]);
        let (qx, _) = x.quotient(&u);
        assert_eq!(x.induced(&u).degree() + qx.degree(), x.degree());
    }

    #[test]
    fn compatibility_routes_agree() {
        let x = two_jump();
        let sp = *x.space();
        let swap = FpMap::new(&sp, &sp, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let id = FpMap::identity(&sp);
        assert!(x.compatible_map(&id, &x) && x.compatible_map_flags(&id, &x));
        assert!(!x.compatible_map(&swap, &x) && !x.compatible_map_flags(&swap, &x));
        let zero = FpMap::zero(&sp, &sp);
        assert!(x.compatible_map(&zero, &x) && x.compatible_map_flags(&zero, &x));
    }
}
