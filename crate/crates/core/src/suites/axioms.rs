//! The structure axioms for filtrations on `F_p`-spaces: induced structures compose along
//! monomorphisms, quotient structures along epimorphisms, identities and isomorphisms act
//! trivially, the two routes around a cartesian square agree, and a compatible pair glues
//! along the graph.

use super::{run_trials, SuiteConfig, SuiteReport, Trial, Witness};
use crate::filtration::{self, Orientation, Step, StepFiltration};
use crate::fp::random::{random_compatible_pair, random_filtration, random_map, random_multifilt, random_subspace, random_weights};
use crate::fp::{FpDirectSum, FpMap, FpSpace, MultiFiltSpace, SubspaceFp};
use crate::subobject::SubobjectLattice;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::gen::PRIMES;

type Fil = StepFiltration<SubspaceFp>;

const MAX_DIM: usize = 4;

fn same(a: &Fil, b: &Fil) -> bool {
    a.canonicalize() == b.canonicalize()
}

fn witness(sp: &FpSpace, f: &Fil) -> Option<Witness> {
    MultiFiltSpace::single(*sp, f.clone()).ok().map(Witness::Fp)
}

fn injective(rng: &mut ChaCha8Rng, src: &FpSpace, tgt: &FpSpace) -> FpMap {
    loop {
        let f = random_map(rng, src, tgt);
        if f.is_injective() {
            return f;
        }
    }
}

fn surjective(rng: &mut ChaCha8Rng, src: &FpSpace, tgt: &FpSpace) -> FpMap {
    loop {
        let f = random_map(rng, src, tgt);
        if f.is_surjective() {
            return f;
        }
    }
}

/// Three dimensions `a ≤ b ≤ c` up to [`MAX_DIM`].
fn chain_dims(rng: &mut ChaCha8Rng) -> [usize; 3] {
    let mut d = [rng.gen_range(0..=MAX_DIM), rng.gen_range(0..=MAX_DIM), rng.gen_range(0..=MAX_DIM)];
    d.sort_unstable();
    d
}

fn space(p: u64, d: usize) -> FpSpace {
    FpSpace::new(p, d).expect("supported prime")
}

/// On the zero space every filtration is the trivial one.
fn a1(rng: &mut ChaCha8Rng, p: u64, t: &mut Trial) {
    let sp = space(p, 0);
    let k = rng.gen_range(0..=3);
    let steps = random_weights(rng, k).into_iter().map(|index| Step { index, value: sp.zero() }).collect();
    match StepFiltration::new(&sp, Orientation::Left, sp.zero(), steps) {
        Ok(f) => {
            let trivial = StepFiltration::trivial(sp.full());
            t.check("A1 zero object", same(&f, &trivial), || format!("{f:?} differs from the trivial filtration"), || None)
        }
        Err(e) => t.error("A1 zero object", e, None),
    }
}

/// `(ji)* = i* j*` for monomorphisms `i: X -> Y`, `j: Y -> Z`.
fn a2(rng: &mut ChaCha8Rng, p: u64, t: &mut Trial) {
    let [dx, dy, dz] = chain_dims(rng);
    let (x, y, z) = (space(p, dx), space(p, dy), space(p, dz));
    let i = injective(rng, &x, &y);
    let j = injective(rng, &y, &z);
    let g = random_filtration(rng, &z);
    let lhs = filtration::pullback(&j.compose(&i), &g);
    let rhs = filtration::pullback(&i, &filtration::pullback(&j, &g));
    t.check("A2 (ji)* = i*j*", same(&lhs, &rhs), || format!("{lhs:?} != {rhs:?}"), || witness(&z, &g));
}

/// `(qp)_* = q_* p_*` for epimorphisms `p: X -> Y`, `q: Y -> Z`.
fn a3(rng: &mut ChaCha8Rng, p: u64, t: &mut Trial) {
    let [dz, dy, dx] = chain_dims(rng);
    let (x, y, z) = (space(p, dx), space(p, dy), space(p, dz));
    let pp = surjective(rng, &x, &y);
    let q = surjective(rng, &y, &z);
    let f = random_filtration(rng, &x);
    let lhs = filtration::pushforward_strong(&q.compose(&pp), &f);
    let rhs = filtration::pushforward_strong(&q, &filtration::pushforward_strong(&pp, &f));
    t.check("A3 (qp)_* = q_*p_*", same(&lhs, &rhs), || format!("{lhs:?} != {rhs:?}"), || witness(&x, &f));
}

/// `Id* = Id_* = Id`.
fn a4(rng: &mut ChaCha8Rng, p: u64, t: &mut Trial) {
    let x = space(p, rng.gen_range(0..=MAX_DIM));
    let id = FpMap::identity(&x);
    let f = random_filtration(rng, &x);
    let pulled = filtration::pullback(&id, &f);
    let pushed = filtration::pushforward_strong(&id, &f);
    t.check("A4 Id* = Id", same(&pulled, &f), || format!("{pulled:?} != {f:?}"), || witness(&x, &f));
    t.check("A4 Id_* = Id", same(&pushed, &f), || format!("{pushed:?} != {f:?}"), || witness(&x, &f));
}

/// `f* f_* = Id` and `f_* f* = Id` for an isomorphism `f`.
fn a5(rng: &mut ChaCha8Rng, p: u64, t: &mut Trial) {
    let x = space(p, rng.gen_range(0..=MAX_DIM));
    let f = crate::fp::random::random_iso(rng, &x);
    let fx = random_filtration(rng, &x);
    let gy = random_filtration(rng, &x);
    let back = filtration::pullback(&f, &filtration::pushforward_strong(&f, &fx));
    let forth = filtration::pushforward_strong(&f, &filtration::pullback(&f, &gy));
    t.check("A5 f*f_* = Id", same(&back, &fx), || format!("{back:?} != {fx:?}"), || witness(&x, &fx));
    t.check("A5 f_*f* = Id", same(&forth, &gy), || format!("{forth:?} != {gy:?}"), || witness(&x, &gy));
}

/// `v* q_* = p_* u*` on the cartesian square `X = Y ×_W Z` built from a random quotient
/// `q: Y -> W = Y / K` and a random subspace `v: Z ⊆ W`, with `u` twisted by an automorphism
/// of `X`.
fn a6(rng: &mut ChaCha8Rng, p: u64, t: &mut Trial) {
    let y = space(p, rng.gen_range(0..=MAX_DIM));
    let k = rng.gen_range(0..=y.dim());
    let kern = random_subspace(rng, &y, k);
    let (w, q) = y.quotient(&kern);
    let zk = rng.gen_range(0..=w.dim());
    let zsub = random_subspace(rng, &w, zk);
    let (z, v) = w.inclusion(&zsub);
    let xsub = {
        use crate::subobject::Morphism;
        q.preimage(&zsub)
    };
    let (x, incl) = y.inclusion(&xsub);
    let a = crate::fp::random::random_iso(rng, &x);
    let u = incl.compose(&a);
    // p = v⁻¹ ∘ q ∘ u, read off in the echelon coordinates of Z
    let cols: Vec<Vec<u64>> = (0..x.dim())
        .map(|j| {
            let mut e = vec![0; x.dim()];
            e[j] = 1;
            zsub.coordinates(&q.apply(&u.apply(&e)))
        })
        .collect();
    let mat = (0..z.dim()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let pp = FpMap::new(&x, &z, mat).expect("shapes match");
    if !pp.is_surjective() || v.compose(&pp) != q.compose(&u) {
        t.check("A6 square", false, || "square construction is not cartesian".into(), || None);
        return;
    }
    let f = random_filtration(rng, &y);
    let lhs = filtration::pullback(&v, &filtration::pushforward_strong(&q, &f));
    let rhs = filtration::pushforward_strong(&pp, &filtration::pullback(&u, &f));
    t.check("A6 v*q_* = p_*u*", same(&lhs, &rhs), || format!("{lhs:?} != {rhs:?}"), || witness(&y, &f));
}

/// For a compatible `f: (X, F) -> (Y, G)`, `H = F ⊕ G` on `X ⊕ Y` satisfies `Γ_f* H = F` and
/// `pr₂_* H = pr₂♭ H = G`.
fn a7(rng: &mut ChaCha8Rng, p: u64, t: &mut Trial) {
    let dx = rng.gen_range(0..=MAX_DIM - 1);
    let n = rng.gen_range(1..=2);
    let x = random_multifilt(rng, p, dx, n);
    let e = rng.gen_range(0..=MAX_DIM - 1);
    let (f, y) = random_compatible_pair(rng, &x, e);
    let wx = || Some(Witness::Fp(x.clone()));
    t.check("A7 compatible input", x.compatible_map(&f, &y), || "generated map is not compatible".into(), wx);
    let host = FpDirectSum { left: *x.space(), right: *y.space() };
    let graph = f.graph();
    let pr2 = FpMap::second_projection(x.space(), y.space());
    for (fk, gk) in x.filtrations().iter().zip(y.filtrations()) {
        let h = match filtration::direct_sum(&host, fk, gk) {
            Ok(h) => h,
            Err(e) => {
                t.error("A7 direct sum", e, wx());
                continue;
            }
        };
        let sum = host.space();
        let c = h.classify(&sum);
        t.check("A7 direct sum is separated and exhaustive", c.separated && c.exhaustive, || format!("{c:?}"), wx);
        let back = filtration::pullback(&graph, &h);
        t.check("A7 Γ_f*H = F", same(&back, fk), || format!("{back:?} != {fk:?}"), wx);
        let strong = filtration::pushforward_strong(&pr2, &h);
        t.check("A7 pr2_*H = G", same(&strong, gk), || format!("{strong:?} != {gk:?}"), wx);
        let weak = filtration::pushforward_weak(&pr2, &h);
        t.check("A7 pr2♭H = G", same(&weak, gk), || format!("{weak:?} != {gk:?}"), wx);
    }
}

pub fn run(cfg: &SuiteConfig) -> SuiteReport {
    run_trials("axioms", cfg, |rng, t| {
        let p = PRIMES[rng.gen_range(0..PRIMES.len())];
        a1(rng, p, t);
        a2(rng, p, t);
        a3(rng, p, t);
        a4(rng, p, t);
        a5(rng, p, t);
        a6(rng, p, t);
        a7(rng, p, t);
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_hold_on_a_short_run() {
        let rep = run(&SuiteConfig { seed: 11, trials: 40 });
        assert!(rep.ok(), "{:?}", rep.counterexamples);
        assert!(rep.assertions >= 40 * 9);
    }

    #[test]
    fn runs_are_deterministic() {
        let cfg = SuiteConfig { seed: 5, trials: 10 };
        assert_eq!(run(&cfg).assertions, run(&cfg).assertions);
    }
}
