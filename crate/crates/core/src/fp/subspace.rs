//! Subspaces of `F_p^d` in canonical reduced echelon form, and linear maps between them.

use super::linalg::{self, Row};
use super::FpError;
use crate::subobject::{DirectSumHost, Morphism, SubobjectLattice};

/// The ambient space `F_p^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpSpace {
    p: u64,
    dim: usize,
}

/// A subspace of `F_p^d`, held as its reduced row-echelon basis. Two subspaces are equal iff
/// their canonical matrices agree entry for entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceFp {
    p: u64,
    dim: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl SubspaceFp {
    fn from_rows(p: u64, dim: usize, rows: Vec<Row>) -> SubspaceFp {
        let (rows, pivots) = linalg::rref(rows, dim, p);
        SubspaceFp { p, dim, rows, pivots }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Row] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminates the pivot coordinates of `v` against this subspace.
    pub fn reduce(&self, v: &[u64]) -> Row {
        let p = self.p;
        let mut x = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = x[pc];
            if f != 0 {
                for (a, b) in x.iter_mut().zip(row) {
                    *a = (*a + (p - f) * b) % p;
                }
            }
        }
        x
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of a vector of this subspace in the echelon basis.
    pub fn coordinates(&self, v: &[u64]) -> Row {
        self.pivots.iter().map(|&c| v[c]).collect()
    }
}

impl FpSpace {
    pub fn new(p: u64, dim: usize) -> Result<FpSpace, FpError> {
        if !linalg::is_prime(p) || p >= 1 << 31 {
            return Err(FpError::NotPrime(p));
        }
        Ok(FpSpace { p, dim })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Span of the given vectors (entries reduced mod p).
    pub fn span(&self, vectors: &[Vec<u64>]) -> Result<SubspaceFp, FpError> {
        for v in vectors {
            if v.len() != self.dim {
                return Err(FpError::DimMismatch { expected: self.dim, got: v.len() });
            }
        }
        let rows = vectors.iter().map(|v| v.iter().map(|x| x % self.p).collect()).collect();
        Ok(SubspaceFp::from_rows(self.p, self.dim, rows))
    }

    pub fn span_signed(&self, vectors: &[Vec<i64>]) -> Result<SubspaceFp, FpError> {
        let p = self.p as i64;
        let v: Vec<Vec<u64>> = vectors.iter().map(|v| v.iter().map(|x| x.rem_euclid(p) as u64).collect()).collect();
        self.span(&v)
    }

    pub fn check(&self, s: &SubspaceFp) -> Result<(), FpError> {
        if s.p != self.p {
            return Err(FpError::PrimeMismatch { expected: self.p, got: s.p });
        }
        if s.dim != self.dim {
            return Err(FpError::DimMismatch { expected: self.dim, got: s.dim });
        }
        Ok(())
    }

    /// The quotient `F_p^d / U` in pivot-complement coordinates, with its projection.
    pub fn quotient(&self, u: &SubspaceFp) -> (FpSpace, FpMap) {
        let free: Vec<usize> = (0..self.dim).filter(|c| !u.pivots.contains(c)).collect();
        let quot = FpSpace { p: self.p, dim: free.len() };
        let mut cols = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mut e = vec![0; self.dim];
            e[j] = 1;
            let r = u.reduce(&e);
            cols.push(free.iter().map(|&c| r[c]).collect::<Row>());
        }
        let mat = linalg::transpose(&cols, self.dim, free.len());
        (quot, FpMap { p: self.p, src: self.dim, tgt: free.len(), mat })
    }

    /// `U` as a space of its own together with its inclusion into `self`.
    pub fn inclusion(&self, u: &SubspaceFp) -> (FpSpace, FpMap) {
        let s = u.dim();
        let sub = FpSpace { p: self.p, dim: s };
        let mat = linalg::transpose(&u.rows, s, self.dim);
        (sub, FpMap { p: self.p, src: s, tgt: self.dim, mat })
    }

    /// Expresses `w ⊆ u` in the echelon coordinates of `u`.
    pub fn restrict_to(&self, u: &SubspaceFp, w: &SubspaceFp) -> SubspaceFp {
        debug_assert!(self.contains(u, w));
        let rows = w.rows.iter().map(|v| u.coordinates(v)).collect();
        SubspaceFp::from_rows(self.p, u.dim(), rows)
    }

    /// Every subspace of the given dimension, in echelon enumeration order.
    pub fn subspaces_of_dim(&self, k: usize) -> Vec<SubspaceFp> {
        let mut out = Vec::new();
        if k > self.dim {
            return out;
        }
        let mut pivots = Vec::with_capacity(k);
        self.pivot_sets(0, k, &mut pivots, &mut out);
        out
    }

    fn pivot_sets(&self, start: usize, k: usize, pivots: &mut Vec<usize>, out: &mut Vec<SubspaceFp>) {
        if pivots.len() == k {
            self.fill_free(pivots, out);
            return;
        }
        for c in start..self.dim {
            pivots.push(c);
            self.pivot_sets(c + 1, k, pivots, out);
            pivots.pop();
        }
    }

    fn fill_free(&self, pivots: &[usize], out: &mut Vec<SubspaceFp>) {
        // free slots: (row i, column c) with c > pivot_i and c not a pivot
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &pc)| ((pc + 1)..self.dim).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
            .collect();
        let total = (self.p as u128).pow(slots.len() as u32);
        for code in 0..total {
            let mut rows: Vec<Row> = pivots
                .iter()
                .map(|&pc| {
                    let mut r = vec![0; self.dim];
                    r[pc] = 1;
                    r
                })
                .collect();
            let mut c = code;
            for &(i, col) in &slots {
                rows[i][col] = (c % self.p as u128) as u64;
                c /= self.p as u128;
            }
            out.push(SubspaceFp { p: self.p, dim: self.dim, rows, pivots: pivots.to_vec() });
        }
    }

    /// Number of subspaces of `F_p^d` (sum of Gaussian binomials), saturating.
    pub fn subspace_count(&self) -> u128 {
        let p = self.p as u128;
        let d = self.dim;
        let mut total: u128 = 0;
        for k in 0..=d {
            // [d choose k]_p = prod_{i<k} (p^{d-i} - 1) / (p^{i+1} - 1)
            let mut num: u128 = 1;
            let mut den: u128 = 1;
            for i in 0..k {
                let a = p.checked_pow((d - i) as u32).map(|x| x - 1);
                let b = p.checked_pow((i + 1) as u32).map(|x| x - 1);
                match (a.and_then(|a| num.checked_mul(a)), b.and_then(|b| den.checked_mul(b))) {
                    (Some(n), Some(m)) => {
                        num = n;
                        den = m;
                    }
                    _ => return u128::MAX,
                }
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
            total = match total.checked_add(num / den) {
                Some(t) => t,
                None => return u128::MAX,
            };
        }
        total
    }

    pub fn all_subspaces(&self) -> Vec<SubspaceFp> {
        (0..=self.dim).flat_map(|k| self.subspaces_of_dim(k)).collect()
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl SubobjectLattice for FpSpace {
    type Sub = SubspaceFp;

    fn rank(&self, s: &SubspaceFp) -> usize {
        s.dim()
    }

    fn contains(&self, big: &SubspaceFp, small: &SubspaceFp) -> bool {
        small.dim() <= big.dim() && small.rows.iter().all(|v| big.contains_vector(v))
    }

    fn intersect(&self, a: &SubspaceFp, b: &SubspaceFp) -> SubspaceFp {
        if a.dim() == 0 || b.dim() == 0 {
            return self.zero();
        }
        // c^T A lies in B  <=>  the reduction of c^T A against B vanishes
        let p = self.p;
        let reduced: Vec<Row> = a.rows.iter().map(|v| b.reduce(v)).collect();
        let coeff_rows = linalg::transpose(&reduced, a.dim(), self.dim);
        let ker = linalg::kernel(coeff_rows, a.dim(), p);
        let rows = ker
            .iter()
            .map(|c| {
                let mut v = vec![0; self.dim];
                for (ci, row) in c.iter().zip(&a.rows) {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x = (*x + ci * y) % p;
                    }
                }
                v
            })
            .collect();
        SubspaceFp::from_rows(p, self.dim, rows)
    }

    fn sum(&self, a: &SubspaceFp, b: &SubspaceFp) -> SubspaceFp {
        let rows = a.rows.iter().chain(&b.rows).cloned().collect();
        SubspaceFp::from_rows(self.p, self.dim, rows)
    }

    fn zero(&self) -> SubspaceFp {
        SubspaceFp { p: self.p, dim: self.dim, rows: Vec::new(), pivots: Vec::new() }
    }

    fn full(&self) -> SubspaceFp {
        let rows = (0..self.dim)
            .map(|i| {
                let mut r = vec![0; self.dim];
                r[i] = 1;
                r
            })
            .collect();
        SubspaceFp { p: self.p, dim: self.dim, rows, pivots: (0..self.dim).collect() }
    }
}

/// A linear map `F_p^src -> F_p^tgt`, stored as a `tgt × src` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMap {
    p: u64,
    src: usize,
    tgt: usize,
    mat: Vec<Row>,
}

impl FpMap {
    pub fn new(src: &FpSpace, tgt: &FpSpace, mat: Vec<Row>) -> Result<FpMap, FpError> {
        if src.p != tgt.p {
            return Err(FpError::PrimeMismatch { expected: src.p, got: tgt.p });
        }
        if mat.len() != tgt.dim || mat.iter().any(|r| r.len() != src.dim) {
            return Err(FpError::DimMismatch { expected: tgt.dim, got: mat.len() });
        }
        let mat = mat.into_iter().map(|r| r.into_iter().map(|x| x % src.p).collect()).collect();
        Ok(FpMap { p: src.p, src: src.dim, tgt: tgt.dim, mat })
    }

    pub fn identity(sp: &FpSpace) -> FpMap {
        FpMap { p: sp.p, src: sp.dim, tgt: sp.dim, mat: sp.full().rows }
    }

    pub fn zero(src: &FpSpace, tgt: &FpSpace) -> FpMap {
        FpMap { p: src.p, src: src.dim, tgt: tgt.dim, mat: vec![vec![0; src.dim]; tgt.dim] }
    }

    pub fn source(&self) -> FpSpace {
        FpSpace { p: self.p, dim: self.src }
    }

    pub fn target(&self) -> FpSpace {
        FpSpace { p: self.p, dim: self.tgt }
    }

    pub fn matrix(&self) -> &[Row] {
        &self.mat
    }

    pub fn apply(&self, v: &[u64]) -> Row {
        linalg::mat_vec(&self.mat, v, self.p)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &FpMap) -> FpMap {
        assert_eq!(first.tgt, self.src);
        let mat = linalg::mat_mul(&self.mat, &first.mat, first.src, self.p);
        FpMap { p: self.p, src: first.src, tgt: self.tgt, mat }
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.mat.clone(), self.src, self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.mat.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.src
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.tgt
    }

    /// The graph `x ↦ (x, f x)` into `src ⊕ tgt`.
    pub fn graph(&self) -> FpMap {
        let mut mat = FpMap::identity(&self.source()).mat;
        mat.extend(self.mat.iter().cloned());
        FpMap { p: self.p, src: self.src, tgt: self.src + self.tgt, mat }
    }

    /// The projection `src ⊕ tgt -> tgt` onto the second summand of a direct sum.
    pub fn second_projection(left: &FpSpace, right: &FpSpace) -> FpMap {
        let mat = (0..right.dim)
            .map(|i| {
                let mut r = vec![0; left.dim + right.dim];
                r[left.dim + i] = 1;
                r
            })
            .collect();
        FpMap { p: left.p, src: left.dim + right.dim, tgt: right.dim, mat }
    }
}

impl Morphism for FpMap {
    type Src = SubspaceFp;
    type Tgt = SubspaceFp;

    fn image(&self, s: &SubspaceFp) -> SubspaceFp {
        let rows = s.rows.iter().map(|v| self.apply(v)).collect();
        SubspaceFp::from_rows(self.p, self.tgt, rows)
    }

    fn preimage(&self, t: &SubspaceFp) -> SubspaceFp {
        // x with f(x) ≡ 0 mod t: kernel of (reduction against t) ∘ f
        let cols: Vec<Row> = (0..self.src)
            .map(|j| {
                let col: Row = self.mat.iter().map(|r| r[j]).collect();
                t.reduce(&col)
            })
            .collect();
        let rows = linalg::transpose(&cols, self.src, self.tgt);
        SubspaceFp::from_rows(self.p, self.src, linalg::kernel(rows, self.src, self.p))
    }
}

/// Direct sum `X ⊕ Y` of two spaces over the same field.
#[derive(Debug, Clone, Copy)]
pub struct FpDirectSum {
    pub left: FpSpace,
    pub right: FpSpace,
}

impl FpDirectSum {
    pub fn space(&self) -> FpSpace {
        FpSpace { p: self.left.p, dim: self.left.dim + self.right.dim }
    }
}

impl DirectSumHost for FpDirectSum {
    type Left = SubspaceFp;
    type Right = SubspaceFp;
    type Sum = SubspaceFp;

    fn direct_sum_sub(&self, a: &SubspaceFp, b: &SubspaceFp) -> SubspaceFp {
        let (l, r) = (self.left.dim, self.right.dim);
        let mut rows: Vec<Row> = a
            .rows
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.extend(std::iter::repeat(0).take(r));
                w
            })
            .collect();
        rows.extend(b.rows.iter().map(|v| {
            let mut w = vec![0; l];
            w.extend(v.iter().copied());
            w
        }));
        SubspaceFp::from_rows(self.left.p, l + r, rows)
    }
}
