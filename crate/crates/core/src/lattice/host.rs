use super::enumerate::{destabilizer_enum, EnumConfig};
use super::euclid::{is_compatible, quotient_lattice, EuclideanLattice, LatticeMap, LatticeProjection, Sublattice};
use crate::degree::ExactDegree;
use crate::engine::{Certification, HnCategory, HostError, MapKind};
use crate::subobject::{Morphism, SubobjectLattice};
use std::cell::Cell;

/// Euclidean lattices as an HN category, destabilized by exact enumeration.
#[derive(Debug, Default)]
pub struct LatticeHost {
    pub config: EnumConfig,
    weakest: Cell<Option<Certification>>,
}

impl LatticeHost {
    pub fn new(config: EnumConfig) -> LatticeHost {
        LatticeHost { config, weakest: Cell::new(None) }
    }

    /// The weakest certification among destabilizers computed so far.
    pub fn certification(&self) -> Option<Certification> {
        self.weakest.get()
    }

    pub fn reset_certification(&self) {
        self.weakest.set(None);
    }
}

impl HnCategory for LatticeHost {
    type Object = EuclideanLattice;
    type Sub = Sublattice;
    type Projection = LatticeProjection;
    type Map = LatticeMap;

    fn rank(&self, x: &EuclideanLattice) -> usize {
        x.rank()
    }

    fn sub_rank(&self, _x: &EuclideanLattice, s: &Sublattice) -> usize {
        s.rank()
    }

    fn sub_degree(&self, x: &EuclideanLattice, s: &Sublattice) -> ExactDegree {
        ExactDegree::LogRational(x.sub_det(s))
    }

    fn zero_sub(&self, x: &EuclideanLattice) -> Sublattice {
        x.zero()
    }

    fn full_sub(&self, x: &EuclideanLattice) -> Sublattice {
        x.full()
    }

    fn contains(&self, x: &EuclideanLattice, big: &Sublattice, small: &Sublattice) -> bool {
        SubobjectLattice::contains(x, big, small)
    }

    fn destabilizer(&self, x: &EuclideanLattice) -> Result<Sublattice, HostError> {
        let res = destabilizer_enum(x, &self.config)?;
        let weakest = match self.weakest.get() {
            Some(w) if w <= res.certification => w,
            _ => res.certification,
        };
        self.weakest.set(Some(weakest));
        Ok(res.sub)
    }

    fn induced(&self, x: &EuclideanLattice, s: &Sublattice) -> EuclideanLattice {
        x.induced(s)
    }

    fn quotient(&self, x: &EuclideanLattice, s: &Sublattice) -> (EuclideanLattice, LatticeProjection) {
        quotient_lattice(x, s).expect("subobjects handed out by the host are saturated")
    }

    fn lift(&self, p: &LatticeProjection, s: &Sublattice) -> Sublattice {
        p.preimage(s)
    }

    fn map_image(&self, f: &LatticeMap, _y: &EuclideanLattice, s: &Sublattice) -> Sublattice {
        f.image(s)
    }

    /// Monomorphisms are injective maps; epimorphisms have finite cokernel.
    fn map_kind(&self, f: &LatticeMap) -> MapKind {
        let r = f.rank();
        MapKind { zero: f.is_zero(), mono: r == f.source_rank(), epi: r == f.target_rank() }
    }

    fn compatible(&self, f: &LatticeMap, x: &EuclideanLattice, y: &EuclideanLattice) -> bool {
        is_compatible(f, x, y).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::Slope;
    use crate::engine::{hn_sequence, is_semistable, verify_run, hn_run};
    use crate::rational::{q, qr};

    #[test]
    fn quarter_four_sequence() {
        let host = LatticeHost::default();
        let l = EuclideanLattice::diagonal(&[qr(1, 4), q(4)]).unwrap();
        let dec = hn_sequence(&host, &l).unwrap();
        assert_eq!(dec.chain, vec![l.span(&[vec![1, 0]]).unwrap(), l.full()]);
        assert_eq!(
            dec.slopes,
            vec![Slope::new(ExactDegree::LogRational(qr(1, 4)), 1).unwrap(), Slope::new(ExactDegree::LogRational(q(4)), 1).unwrap()]
        );
        assert_eq!(host.certification(), Some(Certification::Proved));
    }

    #[test]
    fn three_scales() {
        let host = LatticeHost::default();
        let l = EuclideanLattice::diagonal(&[qr(1, 2), q(3), q(7)]).unwrap();
        let run = hn_run(&host, &l).unwrap();
        let dec = &run.decomposition;
        assert_eq!(
            dec.chain,
            vec![l.span(&[vec![1, 0, 0]]).unwrap(), l.span(&[vec![1, 0, 0], vec![0, 1, 0]]).unwrap(), l.full()]
        );
        assert!(verify_run(&host, &l, &run).unwrap().is_empty());
    }

    #[test]
    fn standard_is_semistable() {
        let host = LatticeHost::default();
        for n in 1..=4 {
            assert!(is_semistable(&host, &EuclideanLattice::standard(n)).unwrap());
        }
    }
}
