//! Integer and rational matrices: Hermite normal form, integer kernels, exact determinants.

use crate::rational::Q;
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

pub type ZRow = Vec<BigInt>;
pub type ZMat = Vec<ZRow>;
pub type QMat = Vec<Vec<Q>>;

pub fn zvec(v: &[i64]) -> ZRow {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn zmat(rows: &[Vec<i64>]) -> ZMat {
    rows.iter().map(|r| zvec(r)).collect()
}

pub fn identity_z(n: usize) -> ZMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn identity_q(n: usize) -> QMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

pub fn to_q(m: &ZMat) -> QMat {
    m.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn z_mul(a: &ZMat, b: &ZMat, ncols_b: usize) -> ZMat {
    a.iter()
        .map(|r| (0..ncols_b).map(|j| r.iter().zip(b).map(|(x, br)| x * &br[j]).sum()).collect())
        .collect()
}

pub fn q_mul(a: &QMat, b: &QMat, ncols_b: usize) -> QMat {
    a.iter()
        .map(|r| (0..ncols_b).map(|j| r.iter().zip(b).map(|(x, br)| x * &br[j]).sum()).collect())
        .collect()
}

/// `S G Sᵀ` for integer rows `S`.
pub fn congruence(s: &ZMat, g: &QMat) -> QMat {
    let sq = to_q(s);
    let n = g.len();
    let sg = q_mul(&sq, g, n);
    let st = transpose(&sq, n);
    q_mul(&sg, &st, s.len())
}

pub fn q_det(m: &QMat) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

pub fn q_inverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut a: QMat = m.iter().zip(identity_q(n)).map(|(r, e)| r.iter().cloned().chain(e).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..2 * n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn q_rank(m: &QMat, ncols: usize) -> usize {
    let mut a = m.clone();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let piv = a[rank][c].clone();
        for r in rank + 1..a.len() {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &piv;
                for k in c..ncols {
                    let t = &f * &a[rank][k];
                    a[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn row_axpy(m: &mut [ZRow], dst: usize, src: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    let s = m[src].clone();
    for (d, x) in m[dst].iter_mut().zip(&s) {
        *d -= f * x;
    }
}

/// Unimodular row reduction of `m` (with `ncols` columns) to Hermite normal form: returns
/// `(H, U)` with `U m = H`, pivots positive, entries above each pivot reduced to `[0, pivot)`
/// and zero rows last.
pub fn hnf_with_transform(m: &ZMat, ncols: usize) -> (ZMat, ZMat) {
    let n = m.len();
    let mut h = m.clone();
    let mut u = identity_z(n);
    let mut row = 0;
    for c in 0..ncols {
        if row == n {
            break;
        }
        loop {
            let best = (row..n).filter(|&r| !h[r][c].is_zero()).min_by(|&a, &b| h[a][c].abs().cmp(&h[b][c].abs()));
            let Some(b) = best else { break };
            h.swap(row, b);
            u.swap(row, b);
            let mut done = true;
            for r in row + 1..n {
                if h[r][c].is_zero() {
                    continue;
                }
                let f = h[r][c].div_floor(&h[row][c]);
                row_axpy(&mut h, r, row, &f);
                row_axpy(&mut u, r, row, &f);
                if !h[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[row][c].is_zero() {
            continue;
        }
        if h[row][c].is_negative() {
            for x in h[row].iter_mut().chain(u[row].iter_mut()) {
                *x = -&*x;
            }
        }
        for r in 0..row {
            let f = h[r][c].div_floor(&h[row][c]);
            row_axpy(&mut h, r, row, &f);
            row_axpy(&mut u, r, row, &f);
        }
        row += 1;
    }
    (h, u)
}

/// Non-zero rows of the Hermite normal form: a canonical basis of the row lattice.
pub fn hnf(m: &ZMat, ncols: usize) -> ZMat {
    let (h, _) = hnf_with_transform(m, ncols);
    h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Basis (in Hermite normal form) of `{y ∈ Z^ncols : m y = 0}`. The result is saturated.
pub fn kernel(m: &ZMat, ncols: usize) -> ZMat {
    if m.is_empty() {
        return identity_z(ncols);
    }
    let mt = transpose(m, ncols);
    let (h, u) = hnf_with_transform(&mt, m.len());
    let ker: ZMat = h.iter().zip(u).filter(|(hr, _)| hr.iter().all(|x| x.is_zero())).map(|(_, ur)| ur).collect();
    hnf(&ker, ncols)
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &ZMat) -> ZMat {
    let inv = q_inverse(&to_q(m)).expect("unimodular matrix is invertible");
    inv.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    assert!(x.is_integer(), "inverse of a unimodular matrix is integral");
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

pub fn gcd_row(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}
