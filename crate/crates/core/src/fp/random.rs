//! Seeded generators of multi-filtered spaces and compatible maps.

use super::{FpMap, FpSpace, MultiFiltSpace, SubspaceFp};
use crate::filtration::{self, StepFiltration};
use crate::rational::Q;
use crate::subobject::SubobjectLattice;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;

pub fn random_vector<R: Rng>(rng: &mut R, sp: &FpSpace) -> Vec<u64> {
    (0..sp.dim()).map(|_| rng.gen_range(0..sp.prime())).collect()
}

/// Span of `k` random vectors, so of dimension at most `k`.
pub fn random_subspace<R: Rng>(rng: &mut R, sp: &FpSpace, k: usize) -> SubspaceFp {
    let vs: Vec<Vec<u64>> = (0..k).map(|_| random_vector(rng, sp)).collect();
    sp.span(&vs).expect("vectors have the ambient dimension")
}

/// A random complete flag `V_1 ⊂ … ⊂ V_d = F_p^d`.
pub fn random_full_flag<R: Rng>(rng: &mut R, sp: &FpSpace) -> Vec<SubspaceFp> {
    let mut flag = Vec::with_capacity(sp.dim());
    let mut cur = sp.zero();
    while cur.dim() < sp.dim() {
        let v = sp.span(&[random_vector(rng, sp)]).expect("ambient dimension");
        let next = sp.sum(&cur, &v);
        if next.dim() > cur.dim() {
            flag.push(next.clone());
            cur = next;
        }
    }
    flag
}

/// Strictly decreasing weights `a/b` with `|a| ≤ 4·b`, `b ≤ 3`.
pub fn random_weights<R: Rng>(rng: &mut R, k: usize) -> Vec<Q> {
    let mut set = BTreeSet::new();
    while set.len() < k {
        let b: i64 = rng.gen_range(1..=3);
        let a: i64 = rng.gen_range(-4 * b..=4 * b);
        set.insert(Q::new(a.into(), b.into()));
    }
    set.into_iter().rev().collect()
}

/// A separated, exhaustive, left filtration with between one and `dim` jumps.
pub fn random_filtration<R: Rng>(rng: &mut R, sp: &FpSpace) -> StepFiltration<SubspaceFp> {
    if sp.dim() == 0 {
        return StepFiltration::trivial(sp.full());
    }
    let flag = random_full_flag(rng, sp);
    let k = rng.gen_range(1..=sp.dim());
    let mut cut: Vec<usize> = (0..sp.dim() - 1).collect();
    cut.shuffle(rng);
    let mut keep: Vec<usize> = cut.into_iter().take(k - 1).collect();
    keep.push(sp.dim() - 1);
    keep.sort_unstable();
    let values = keep.into_iter().map(|i| flag[i].clone()).collect();
    StepFiltration::from_flag(sp, random_weights(rng, k), values).expect("flag is increasing")
}

pub fn random_alpha<R: Rng>(rng: &mut R, n: usize) -> Vec<Q> {
    (0..n).map(|_| Q::new(rng.gen_range(0i64..=6).into(), rng.gen_range(1i64..=2).into())).collect()
}

pub fn random_multifilt<R: Rng>(rng: &mut R, p: u64, dim: usize, n: usize) -> MultiFiltSpace {
    let sp = FpSpace::new(p, dim).expect("prime");
    let fils = (0..n).map(|_| random_filtration(rng, &sp)).collect();
    MultiFiltSpace::new(sp, fils, random_alpha(rng, n)).expect("generated filtrations are valid")
}

pub fn random_map<R: Rng>(rng: &mut R, src: &FpSpace, tgt: &FpSpace) -> FpMap {
    let mat = (0..tgt.dim()).map(|_| random_vector(rng, src)).collect();
    FpMap::new(src, tgt, mat).expect("shapes match")
}

/// A random automorphism of `sp`.
pub fn random_iso<R: Rng>(rng: &mut R, sp: &FpSpace) -> FpMap {
    loop {
        let f = random_map(rng, sp, sp);
        if f.is_injective() {
            return f;
        }
    }
}

/// Filtrations `G_k = f_♭ F_k + H_k` on `tgt`, making `f: x -> target` compatible.
pub fn compatible_target<R: Rng>(rng: &mut R, x: &MultiFiltSpace, f: &FpMap, tgt: &FpSpace) -> MultiFiltSpace {
    let fils = x
        .filtrations()
        .iter()
        .map(|fk| {
            let pushed = filtration::pushforward_weak(f, fk);
            let h = random_filtration(rng, tgt);
            filtration::combine(&pushed, &h, |a, b| tgt.sum(a, b)).expect("left filtrations")
        })
        .collect();
    MultiFiltSpace::new(*tgt, fils, x.alpha().to_vec()).expect("sum with an exhaustive filtration")
}

/// Filtrations `F_k = f* G_k ∩ H_k` on `src`, making `f: source -> y` compatible.
pub fn compatible_source<R: Rng>(rng: &mut R, y: &MultiFiltSpace, f: &FpMap, src: &FpSpace) -> MultiFiltSpace {
    let fils = y
        .filtrations()
        .iter()
        .map(|gk| {
            let pulled = filtration::pullback(f, gk);
            let h = random_filtration(rng, src);
            filtration::combine(&pulled, &h, |a, b| src.intersect(a, b)).expect("left filtrations")
        })
        .collect();
    MultiFiltSpace::new(*src, fils, y.alpha().to_vec()).expect("intersection with a separated filtration")
}

/// A random compatible map `x -> y` with `y` generated on a space of dimension `tgt_dim`.
pub fn random_compatible_pair<R: Rng>(rng: &mut R, x: &MultiFiltSpace, tgt_dim: usize) -> (FpMap, MultiFiltSpace) {
    let tgt = FpSpace::new(x.space().prime(), tgt_dim).expect("prime");
    let f = random_map(rng, x.space(), &tgt);
    let y = compatible_target(rng, x, &f, &tgt);
    (f, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_objects_are_valid_and_maps_compatible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let d = rng.gen_range(0..=4);
            let n = rng.gen_range(1..=3);
            let x = random_multifilt(&mut rng, 3, d, n);
            let e = rng.gen_range(0..=4);
            let (f, y) = random_compatible_pair(&mut rng, &x, e);
            assert!(x.compatible_map(&f, &y));
            assert!(x.compatible_map_flags(&f, &y));
            let src = FpSpace::new(3, rng.gen_range(0..=4)).unwrap();
            let g = random_map(&mut rng, &src, x.space());
            let w = compatible_source(&mut rng, &x, &g, &src);
            assert!(w.compatible_map(&g, &x));
        }
    }

    #[test]
    fn full_flags_are_complete() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let sp = FpSpace::new(2, 5).unwrap();
        let flag = random_full_flag(&mut rng, &sp);
        assert_eq!(flag.iter().map(|s| s.dim()).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
    }
}
