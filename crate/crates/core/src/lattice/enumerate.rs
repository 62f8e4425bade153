//! Destabilizing sublattices by exact short-vector enumeration.
//!
//! A rank-`k` saturated sublattice `S` with `det(S G Sᵀ) = D` has an LLL-reduced basis with
//! `Π |b_i|² ≤ 2^{k(k-1)/2} D`, and every `|b_i|²` is at least the minimum `m` of the lattice,
//! so each basis vector has norm at most `2^{k(k-1)/2} D / m^{k-1}`. Only sublattices with a
//! slope strictly above that of the whole lattice matter, which bounds `D`. Ranks above `r/2`
//! are searched in the dual lattice through `S ↦ S^⊥`, where `det(S^⊥) = det(S) / det(G)`.

use super::euclid::{saturate, EuclideanLattice, Sublattice};
use super::zmat::{self, QMat, ZMat, ZRow};
use crate::degree::exact_slope_compare;
use crate::engine::{Certification, HostError};
use crate::rational::{ceil_sqrt, rational_root_upper, Q};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;

pub const DEFAULT_MAX_RANK: usize = 5;
pub const DEFAULT_MAX_VECTORS: usize = 200_000;
pub const DEFAULT_MAX_SUBSETS: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    /// Box `|x_i| ≤ B` on coefficients; `None` searches the whole proven region.
    pub coefficient_bound: Option<u64>,
    pub max_rank: usize,
    pub max_vectors: usize,
    pub max_subsets: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            coefficient_bound: None,
            max_rank: DEFAULT_MAX_RANK,
            max_vectors: DEFAULT_MAX_VECTORS,
            max_subsets: DEFAULT_MAX_SUBSETS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumResult {
    pub sub: Sublattice,
    pub det: Q,
    pub certification: Certification,
    /// Coefficient box that provably suffices for this lattice.
    pub proof_bound: BigInt,
}

/// The quadratic form as `Σ q_ii (x_i + Σ_{j>i} q_ij x_j)²`.
fn pohst_form(g: &QMat) -> QMat {
    let n = g.len();
    let mut q = g.clone();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let t = &q[k][i] * &q[i][l];
                q[k][l] -= t;
            }
        }
    }
    q
}

struct ShortVectors<'a> {
    q: &'a QMat,
    bound: Option<BigInt>,
    limit: usize,
    out: Vec<(ZRow, Q)>,
    overflow: bool,
}

impl ShortVectors<'_> {
    fn rec(&mut self, i: usize, x: &mut Vec<BigInt>, remaining: &Q, total: &Q) {
        if self.overflow {
            return;
        }
        let n = self.q.len();
        let mut c = Q::zero();
        for j in i + 1..n {
            if !x[j].is_zero() {
                c += &self.q[i][j] * Q::from_integer(x[j].clone());
            }
        }
        let qii = &self.q[i][i];
        let start = (-&c).round().to_integer();
        for dir in [1i32, -1] {
            let mut xi = if dir == 1 { start.clone() } else { &start - 1 };
            loop {
                let t = Q::from_integer(xi.clone()) + &c;
                let used = qii * &t * &t;
                if &used > remaining {
                    break;
                }
                let inside = self.bound.as_ref().map_or(true, |b| xi.abs() <= *b);
                if inside {
                    x[i] = xi.clone();
                    let rem = remaining - &used;
                    if i == 0 {
                        let norm = total - &rem;
                        if x.iter().any(|v| !v.is_zero()) {
                            self.out.push((x.clone(), norm));
                            if self.out.len() > self.limit {
                                self.overflow = true;
                                return;
                            }
                        }
                    } else {
                        self.rec(i - 1, x, &rem, total);
                    }
                    x[i] = BigInt::zero();
                }
                xi += dir;
            }
        }
    }
}

/// All primitive `x ≠ 0` with `x G xᵀ ≤ bound`, one of each pair `±x`, sorted by norm.
pub fn short_vectors(g: &QMat, norm_bound: &Q, box_bound: Option<&BigInt>, limit: usize) -> Result<Vec<(ZRow, Q)>, HostError> {
    let n = g.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let q = pohst_form(g);
    let mut sv = ShortVectors { q: &q, bound: box_bound.cloned(), limit: limit.saturating_mul(2), out: Vec::new(), overflow: false };
    let mut x = vec![BigInt::zero(); n];
    sv.rec(n - 1, &mut x, norm_bound, norm_bound);
    if sv.overflow {
        return Err(HostError::GuardExceeded { what: "short vectors", value: sv.out.len() / 2, limit });
    }
    let mut out: Vec<(ZRow, Q)> = sv
        .out
        .into_iter()
        .filter(|(v, _)| {
            let lead = v.iter().find(|a| !a.is_zero()).expect("non-zero");
            lead.is_positive() && zmat::gcd_row(v).is_one()
        })
        .collect();
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

fn pow_q(x: &Q, e: usize) -> Q {
    num::pow(x.clone(), e)
}

/// `d^r < det^k`: a rank-`k` sublattice with Gram determinant `d` has slope strictly above
/// the rank-`r` lattice with determinant `det`.
fn beats(d: &Q, k: usize, det: &Q, r: usize) -> bool {
    pow_q(d, r) < pow_q(det, k)
}

struct Search<'a> {
    gram: &'a QMat,
    vectors: &'a [(ZRow, Q)],
    k: usize,
    product_bound: Q,
    det: Q,
    r: usize,
    visited: usize,
    limit: usize,
    best: BTreeMap<ZMat, Q>,
    best_det: Option<Q>,
}

impl Search<'_> {
    fn consider(&mut self, rows: &ZMat) {
        let s = saturate(&Sublattice::generated(self.r, rows).expect("rows have the ambient length"));
        let d = zmat::q_det(&zmat::congruence(s.basis(), self.gram));
        if !beats(&d, self.k, &self.det, self.r) {
            return;
        }
        match &self.best_det {
            Some(b) if &d > b => {}
            Some(b) if &d == b => {
                self.best.insert(s.basis().clone(), d);
            }
            _ => {
                self.best.clear();
                self.best.insert(s.basis().clone(), d.clone());
                self.best_det = Some(d);
            }
        }
    }

    fn rec(&mut self, start: usize, chosen: &mut Vec<usize>, product: &Q) -> Result<(), HostError> {
        if chosen.len() == self.k {
            self.visited += 1;
            if self.visited > self.limit {
                return Err(HostError::GuardExceeded { what: "candidate subsets", value: self.visited, limit: self.limit });
            }
            let rows: ZMat = chosen.iter().map(|&i| self.vectors[i].0.clone()).collect();
            let gram = zmat::congruence(&rows, self.gram);
            if zmat::q_det(&gram).is_positive() {
                self.consider(&rows);
            }
            return Ok(());
        }
        let left = self.k - chosen.len();
        for i in start..self.vectors.len() {
            let n = &self.vectors[i].1;
            // vectors are sorted, so the remaining factors are at least n each
            if product * pow_q(n, left) > self.product_bound {
                break;
            }
            if chosen.len() + 1 < self.k {
                let rows: ZMat = chosen.iter().chain(std::iter::once(&i)).map(|&j| self.vectors[j].0.clone()).collect();
                if !zmat::q_det(&zmat::congruence(&rows, self.gram)).is_positive() {
                    continue;
                }
            }
            chosen.push(i);
            self.rec(i + 1, chosen, &(product * n))?;
            chosen.pop();
        }
        Ok(())
    }
}

/// Minimal-determinant rank-`k` saturated sublattices of `(Z^r, g)` that beat the whole
/// lattice, found among bases of short vectors. Returns the proof box and the minimizers.
fn search_rank(
    g: &QMat,
    k: usize,
    cfg: &EnumConfig,
) -> Result<(BigInt, Option<(Q, Vec<ZMat>)>), HostError> {
    let r = g.len();
    let det = zmat::q_det(g);
    let ginv = zmat::q_inverse(g).expect("positive definite");
    let max_dual_diag = (0..r).map(|i| ginv[i][i].clone()).max().expect("r ≥ 1");
    // every non-zero integer vector has norm at least 1 / max_i (G⁻¹)_ii
    let m = Q::one() / &max_dual_diag;
    let dmax = rational_root_upper(&det, k as u32, r as u32);
    let lll = Q::from_integer(BigInt::from(2).pow((k * (k - 1) / 2) as u32));
    let product_bound = &lll * &dmax;
    let norm_bound = &product_bound / pow_q(&m, k - 1);
    let proof_bound = ceil_sqrt(&(&norm_bound * &max_dual_diag));
    let box_bound = cfg.coefficient_bound.map(BigInt::from).filter(|b| *b < proof_bound);
    let vectors = short_vectors(g, &norm_bound, box_bound.as_ref(), cfg.max_vectors)?;
    let mut search = Search {
        gram: g,
        vectors: &vectors,
        k,
        product_bound,
        det,
        r,
        visited: 0,
        limit: cfg.max_subsets,
        best: BTreeMap::new(),
        best_det: None,
    };
    search.rec(0, &mut Vec::new(), &Q::one())?;
    let found = search.best_det.map(|d| (d, search.best.into_keys().collect()));
    Ok((proof_bound, found))
}

/// The saturated sublattice of maximal slope and, among those, maximal rank.
pub fn destabilizer_enum(l: &EuclideanLattice, cfg: &EnumConfig) -> Result<EnumResult, HostError> {
    let r = l.rank();
    if r > cfg.max_rank {
        return Err(HostError::GuardExceeded { what: "lattice rank", value: r, limit: cfg.max_rank });
    }
    let det = l.det();
    if r == 0 {
        return Ok(EnumResult { sub: Sublattice::zero(0), det, certification: Certification::Proved, proof_bound: BigInt::zero() });
    }
    let dual = l.dual();
    let mut proof_bound = BigInt::zero();
    // per rank: (determinant, distinct minimizers)
    let mut per_rank: Vec<(usize, Q, Vec<Sublattice>)> = vec![(r, det.clone(), vec![Sublattice::full(r)])];
    for k in 1..r {
        let (pb, found) = if 2 * k <= r {
            let (pb, found) = search_rank(l.gram(), k, cfg)?;
            let found = found.map(|(d, subs)| {
                (d, subs.iter().map(|b| Sublattice::generated(r, b).expect("ambient rank")).collect::<Vec<_>>())
            });
            (pb, found)
        } else {
            let (pb, found) = search_rank(dual.gram(), r - k, cfg)?;
            let found = found.map(|(dw, subs)| {
                let subs: Vec<Sublattice> = subs
                    .iter()
                    .map(|w| Sublattice::generated(r, &zmat::kernel(w, r)).expect("ambient rank"))
                    .collect();
                (&det * dw, subs)
            });
            (pb, found)
        };
        proof_bound = proof_bound.max(pb);
        if let Some((d, subs)) = found {
            per_rank.push((k, d, subs));
        }
    }
    let mut best = 0;
    for i in 1..per_rank.len() {
        let (k, d, _) = &per_rank[i];
        let (bk, bd, _) = &per_rank[best];
        let ord = exact_slope_compare(d, *k, bd, *bk)?.then(k.cmp(bk));
        if ord == Ordering::Greater {
            best = i;
        }
    }
    let (k, d, subs) = per_rank.swap_remove(best);
    if subs.len() > 1 {
        return Err(HostError::Tie { slope: format!("-1/2 log({d}) / {k}"), rank: k });
    }
    let certification = match cfg.coefficient_bound {
        Some(b) if BigInt::from(b) < proof_bound => Certification::Heuristic,
        _ => Certification::Proved,
    };
    let sub = subs.into_iter().next().expect("one minimizer");
    debug_assert_eq!(l.sub_det(&sub), d);
    Ok(EnumResult { sub, det: d, certification, proof_bound })
}

/// Exhaustive search over every saturated sublattice spanned by vectors with coefficients in
/// `[-b, b]`; exponential, used as an independent check in tests.
pub fn destabilizer_box(l: &EuclideanLattice, b: i64) -> Result<Sublattice, HostError> {
    let r = l.rank();
    let mut vecs: Vec<ZRow> = Vec::new();
    let side = (2 * b + 1) as usize;
    for idx in 0..side.pow(r as u32) {
        let mut t = idx;
        let v: Vec<i64> = (0..r)
            .map(|_| {
                let c = (t % side) as i64 - b;
                t /= side;
                c
            })
            .collect();
        // saturated sublattices have bases of primitive vectors, taken up to sign
        let z = zmat::zvec(&v);
        if v.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0) && zmat::gcd_row(&z).is_one() {
            vecs.push(z);
        }
    }
    let mut seen: BTreeMap<ZMat, Q> = BTreeMap::new();
    fn subsets(vecs: &[ZRow], k: usize, start: usize, cur: &mut ZMat, out: &mut Vec<ZMat>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..vecs.len() {
            cur.push(vecs[i].clone());
            subsets(vecs, k, i + 1, cur, out);
            cur.pop();
        }
    }
    for k in 1..=r {
        let mut all = Vec::new();
        subsets(&vecs, k, 0, &mut Vec::new(), &mut all);
        for rows in all {
            let s = Sublattice::generated(r, &rows).expect("ambient rank");
            if s.rank() != k {
                continue;
            }
            let s = saturate(&s);
            let d = l.sub_det(&s);
            seen.insert(s.basis().clone(), d);
        }
    }
    let mut best: Option<(ZMat, Q, usize)> = None;
    for (basis, d) in seen {
        let k = basis.len();
        let better = match &best {
            None => true,
            Some((_, bd, bk)) => exact_slope_compare(&d, k, bd, *bk)?.then(k.cmp(bk)) == Ordering::Greater,
        };
        if better {
            best = Some((basis, d, k));
        }
    }
    let (basis, _, _) = best.expect("the full lattice is a candidate");
    Ok(Sublattice::generated(r, &basis).expect("ambient rank"))
}
