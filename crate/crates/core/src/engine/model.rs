//! The model category: objects carrying a single separated, exhaustive ℝ-filtration.

use super::polygon::{Atom, Measure};
use super::SlopeIndex;
use crate::filtration::{FiltrationError, FiltrationIndex, Orientation, StepFiltration};
use crate::rational::Q;
use crate::subobject::SubobjectLattice;
use num::Zero;

fn check_model<L: SubobjectLattice, I: FiltrationIndex>(lat: &L, fil: &StepFiltration<L::Sub, I>) -> Result<(), FiltrationError> {
    if fil.orientation() != Orientation::Left {
        return Err(FiltrationError::NotLeftOriented);
    }
    let c = fil.classify(lat);
    if !c.separated {
        return Err(FiltrationError::NotSeparated);
    }
    if !c.exhaustive {
        return Err(FiltrationError::NotExhaustive);
    }
    Ok(())
}

/// `Σ λ (rank F(λ) - sup_{j>λ} rank F(j))` for a separated, exhaustive, left-oriented filtration.
pub fn model_degree<L: SubobjectLattice>(lat: &L, fil: &StepFiltration<L::Sub>) -> Result<Q, FiltrationError> {
    check_model(lat, fil)?;
    let mut prev = 0usize;
    let mut deg = Q::zero();
    for s in fil.canonicalize().steps() {
        let r = lat.rank(&s.value);
        deg += &s.index * Q::from_integer((r - prev).into());
        prev = r;
    }
    Ok(deg)
}

/// The distributional derivative of `t ↦ -rank(F(t)) / rank(X)`: an atom of mass
/// `(rank F(λ) - rank F(λ⁺)) / rank(X)` at every jump `λ`.
pub fn model_measure<L: SubobjectLattice>(
    lat: &L,
    fil: &StepFiltration<L::Sub, SlopeIndex>,
) -> Result<Measure, FiltrationError> {
    check_model(lat, fil)?;
    let total = lat.ambient_rank();
    if total == 0 {
        return Ok(Measure::default());
    }
    let mut prev = 0usize;
    let atoms = fil
        .canonicalize()
        .steps()
        .iter()
        .map(|s| {
            let r = lat.rank(&s.value);
            let mass = Q::new((r - prev).into(), total.into());
            prev = r;
            Atom { location: s.index.0.clone(), mass }
        })
        .collect();
    Ok(Measure { atoms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::FpSpace;
    use crate::rational::q;

    #[test]
    fn single_jump_degree() {
        let sp = FpSpace::new(3, 3).unwrap();
        let f = StepFiltration::from_flag(&sp, vec![q(2)], vec![sp.full()]).unwrap();
        assert_eq!(model_degree(&sp, &f).unwrap(), q(6));
    }

    #[test]
    fn two_jump_degree() {
        let sp = FpSpace::new(2, 2).unwrap();
        let e1 = sp.span(&[vec![1, 0]]).unwrap();
        let f = StepFiltration::from_flag(&sp, vec![q(1), q(0)], vec![e1, sp.full()]).unwrap();
        assert_eq!(model_degree(&sp, &f).unwrap(), q(1));
    }

    #[test]
    fn rejects_non_model_input() {
        let sp = FpSpace::new(2, 2).unwrap();
        let e1 = sp.span(&[vec![1, 0]]).unwrap();
        let partial = StepFiltration::from_flag(&sp, vec![q(1)], vec![e1]).unwrap();
        assert_eq!(model_degree(&sp, &partial).unwrap_err(), FiltrationError::NotExhaustive);
        let trivial = StepFiltration::trivial(sp.full());
        assert_eq!(model_degree(&sp, &trivial).unwrap_err(), FiltrationError::NotSeparated);
        let right = StepFiltration::from_flag(&sp, vec![q(0)], vec![sp.full()]).unwrap().right_continuize();
        assert_eq!(model_degree(&sp, &right).unwrap_err(), FiltrationError::NotLeftOriented);
    }
}
