//! Euclidean lattices `(Z^r, G)` and their saturated sublattices.

use super::zmat::{self, QMat, ZMat, ZRow};
use super::LatticeError;
use crate::degree::ExactDegree;
use crate::rational::Q;
use crate::subobject::{Morphism, SubobjectLattice};
use num::bigint::BigInt;
use num::{Signed, Zero};

/// `Z^r` with a positive-definite rational Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclideanLattice {
    gram: QMat,
}

/// A sublattice of `Z^r`, held as the Hermite normal form of a basis (one row per vector).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice {
    ambient: usize,
    rows: ZMat,
    saturated: bool,
}

impl Sublattice {
    /// The sublattice generated by `gens` (any integer vectors of length `ambient`).
    pub fn generated(ambient: usize, gens: &ZMat) -> Result<Sublattice, LatticeError> {
        if let Some(r) = gens.iter().find(|r| r.len() != ambient) {
            return Err(LatticeError::Shape { expected: ambient, got: r.len() });
        }
        let rows = zmat::hnf(gens, ambient);
        let saturated = zmat::kernel(&zmat::kernel(&rows, ambient), ambient) == rows;
        Ok(Sublattice { ambient, rows, saturated })
    }

    /// A saturated sublattice from a basis known to be saturated.
    fn saturated_from(ambient: usize, gens: &ZMat) -> Sublattice {
        Sublattice { ambient, rows: zmat::hnf(gens, ambient), saturated: true }
    }

    pub fn zero(ambient: usize) -> Sublattice {
        Sublattice { ambient, rows: Vec::new(), saturated: true }
    }

    pub fn full(ambient: usize) -> Sublattice {
        Sublattice { ambient, rows: zmat::identity_z(ambient), saturated: true }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &ZMat {
        &self.rows
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// `{y : ⟨s, y⟩ = 0 for all s}` in the standard pairing; saturated.
    pub fn annihilator(&self) -> ZMat {
        zmat::kernel(&self.rows, self.ambient)
    }

    pub fn contains_vector(&self, v: &[BigInt]) -> bool {
        if !self.saturated {
            let mut m = self.rows.clone();
            m.push(v.to_vec());
            return zmat::hnf(&m, self.ambient) == self.rows;
        }
        self.annihilator().iter().all(|a| a.iter().zip(v).map(|(x, y)| x * y).sum::<BigInt>().is_zero())
    }
}

pub fn saturate(s: &Sublattice) -> Sublattice {
    if s.saturated {
        return s.clone();
    }
    Sublattice::saturated_from(s.ambient, &zmat::kernel(&s.annihilator(), s.ambient))
}

/// `[Z^r ∩ Q S : S]`, the torsion of `Z^r / S` in the saturation.
pub fn saturation_index(s: &Sublattice) -> BigInt {
    let sat = saturate(s);
    let g = zmat::identity_q(s.ambient);
    let a = zmat::q_det(&zmat::congruence(&s.rows, &g));
    let b = zmat::q_det(&zmat::congruence(&sat.rows, &g));
    let ratio = a / b;
    num::integer::Roots::sqrt(&ratio.to_integer())
}

impl EuclideanLattice {
    pub fn new(gram: QMat) -> Result<EuclideanLattice, LatticeError> {
        let r = gram.len();
        for row in &gram {
            if row.len() != r {
                return Err(LatticeError::Shape { expected: r, got: row.len() });
            }
        }
        for i in 0..r {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric { row: i, col: j });
                }
            }
        }
        for k in 1..=r {
            let minor: QMat = gram[..k].iter().map(|row| row[..k].to_vec()).collect();
            if !zmat::q_det(&minor).is_positive() {
                return Err(LatticeError::NotPositiveDefinite(k));
            }
        }
        Ok(EuclideanLattice { gram })
    }

    pub fn diagonal(entries: &[Q]) -> Result<EuclideanLattice, LatticeError> {
        let n = entries.len();
        Self::new((0..n).map(|i| (0..n).map(|j| if i == j { entries[i].clone() } else { Q::zero() }).collect()).collect())
    }

    pub fn standard(n: usize) -> EuclideanLattice {
        EuclideanLattice { gram: zmat::identity_q(n) }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    pub fn det(&self) -> Q {
        zmat::q_det(&self.gram)
    }

    /// Gram matrix of the dual lattice, `G⁻¹`.
    pub fn dual(&self) -> EuclideanLattice {
        EuclideanLattice { gram: zmat::q_inverse(&self.gram).expect("positive definite") }
    }

    pub fn norm(&self, v: &[BigInt]) -> Q {
        let vq: Vec<Q> = v.iter().map(|x| Q::from_integer(x.clone())).collect();
        let mut s = Q::zero();
        for (i, a) in vq.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in vq.iter().enumerate() {
                s += a * &self.gram[i][j] * b;
            }
        }
        s
    }

    /// `det(S G Sᵀ)`: the covolume squared of a sublattice given by a basis.
    pub fn sub_det(&self, s: &Sublattice) -> Q {
        zmat::q_det(&zmat::congruence(&s.rows, &self.gram))
    }

    /// The lattice `s` with the restricted metric, in the coordinates of its HNF basis.
    pub fn induced(&self, s: &Sublattice) -> EuclideanLattice {
        EuclideanLattice { gram: zmat::congruence(&s.rows, &self.gram) }
    }

    pub fn check(&self, s: &Sublattice) -> Result<(), LatticeError> {
        if s.ambient != self.rank() {
            return Err(LatticeError::Shape { expected: self.rank(), got: s.ambient });
        }
        Ok(())
    }

    /// The saturated sublattice generated by integer vectors.
    pub fn span(&self, gens: &[Vec<i64>]) -> Result<Sublattice, LatticeError> {
        Ok(saturate(&Sublattice::generated(self.rank(), &zmat::zmat(gens))?))
    }
}

/// `-½ log det(S G Sᵀ)` for a basis `S` of the sublattice.
pub fn arakelov_degree(l: &EuclideanLattice, s: &Sublattice) -> ExactDegree {
    ExactDegree::LogRational(l.sub_det(s))
}

/// Degree of the saturated lattice `E` spanned by independent vectors `gens ⊂ E`, through
/// `log #(E / Σ Z s_i) - ½ log det⟨s_i, s_j⟩`: the index enters `d` squared.
pub fn arakelov_degree_of_generators(l: &EuclideanLattice, gens: &ZMat) -> Result<ExactDegree, LatticeError> {
    let s = Sublattice::generated(l.rank(), gens)?;
    if gens.len() != s.rank() {
        return Err(LatticeError::RankDeficient { rows: gens.len(), rank: s.rank() });
    }
    let index = Q::from_integer(saturation_index(&s));
    let d = zmat::q_det(&zmat::congruence(gens, l.gram()));
    Ok(ExactDegree::LogRational(d / (&index * &index)))
}

/// Projection `Z^r → Z^r / S` in coordinates `x ↦ x P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeProjection {
    ambient: usize,
    /// `r × (r - s)` integer matrix.
    p: ZMat,
}

impl LatticeProjection {
    pub fn matrix(&self) -> &ZMat {
        &self.p
    }

    pub fn target_rank(&self) -> usize {
        self.p.first().map_or(0, |r| r.len())
    }

    pub fn apply(&self, v: &[BigInt]) -> ZRow {
        (0..self.target_rank()).map(|j| v.iter().zip(&self.p).map(|(x, r)| x * &r[j]).sum()).collect()
    }

    /// The saturated sublattice of `Z^r` mapping into `t`.
    pub fn preimage(&self, t: &Sublattice) -> Sublattice {
        let rows: ZMat =
            t.annihilator().iter().map(|a| self.p.iter().map(|r| r.iter().zip(a).map(|(x, y)| x * y).sum()).collect()).collect();
        Sublattice::saturated_from(self.ambient, &zmat::kernel(&rows, self.ambient))
    }

    /// Saturation of the image of `s`.
    pub fn image(&self, s: &Sublattice) -> Sublattice {
        let imgs: ZMat = s.rows.iter().map(|v| self.apply(v)).collect();
        saturate(&Sublattice::generated(self.target_rank(), &imgs).expect("target rank"))
    }
}

/// `L / S` with the quotient metric (the Schur complement of the block of `S` in a basis
/// completing `S`), and the projection.
pub fn quotient_lattice(l: &EuclideanLattice, s: &Sublattice) -> Result<(EuclideanLattice, LatticeProjection), LatticeError> {
    l.check(s)?;
    if !s.saturated {
        return Err(LatticeError::NotSaturated);
    }
    let r = l.rank();
    let k = s.rank();
    // U Sᵀ = [Hᵀ; 0] with U unimodular; V = Uᵀ satisfies S V = [H | 0]
    let st = zmat::transpose(&s.rows, r);
    let (_, u) = zmat::hnf_with_transform(&st, k);
    let v = zmat::transpose(&u, r);
    let mut basis = zmat::transpose(&zmat::unimodular_inverse(&u), r);
    // rows of V⁻¹ = basis; the first k span S, replace them by S itself
    for (i, row) in s.rows.iter().enumerate() {
        basis[i] = row.clone();
    }
    let p: ZMat = v.iter().map(|row| row[k..].to_vec()).collect();
    let g = zmat::congruence(&basis, &l.gram);
    let a: QMat = g[..k].iter().map(|row| row[..k].to_vec()).collect();
    let b: QMat = g[..k].iter().map(|row| row[k..].to_vec()).collect();
    let d: QMat = g[k..].iter().map(|row| row[k..].to_vec()).collect();
    let quot = if k == 0 {
        d
    } else {
        let ainv = zmat::q_inverse(&a).expect("positive definite block");
        let bt = zmat::transpose(&b, r - k);
        let corr = zmat::q_mul(&zmat::q_mul(&bt, &ainv, k), &b, r - k);
        d.iter().zip(corr).map(|(dr, cr)| dr.iter().zip(cr).map(|(x, y)| x - y).collect()).collect()
    };
    Ok((EuclideanLattice { gram: quot }, LatticeProjection { ambient: r, p }))
}

/// `(P G⁻¹ Pᵀ)⁻¹`, the quotient metric computed through the dual lattice.
pub fn quotient_gram_via_dual(l: &EuclideanLattice, proj: &LatticeProjection) -> QMat {
    let pt = zmat::to_q(&zmat::transpose(&proj.p, proj.target_rank()));
    let ginv = zmat::q_inverse(&l.gram).expect("positive definite");
    let m = zmat::q_mul(&zmat::q_mul(&pt, &ginv, proj.ambient), &zmat::to_q(&proj.p), proj.target_rank());
    zmat::q_inverse(&m).expect("projection is surjective")
}

/// Exact positive semi-definiteness by symmetric elimination.
pub fn is_psd(m: &QMat) -> bool {
    let mut a = m.clone();
    let n = a.len();
    let mut alive: Vec<usize> = (0..n).collect();
    while let Some(&i) = alive.first() {
        let piv = a[i][i].clone();
        if piv.is_negative() {
            return false;
        }
        if piv.is_zero() {
            if alive.iter().any(|&j| !a[i][j].is_zero()) {
                return false;
            }
            alive.remove(0);
            continue;
        }
        alive.remove(0);
        for &r in &alive {
            let f = &a[r][i] / &piv;
            for &c in &alive {
                let t = &f * &a[i][c];
                a[r][c] -= t;
            }
        }
    }
    true
}

/// A homomorphism `Z^{r_X} → Z^{r_Y}` as an `r_Y × r_X` integer matrix acting on columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    src: usize,
    tgt: usize,
    mat: ZMat,
}

impl LatticeMap {
    pub fn new(src: usize, tgt: usize, mat: ZMat) -> Result<LatticeMap, LatticeError> {
        if mat.len() != tgt {
            return Err(LatticeError::Shape { expected: tgt, got: mat.len() });
        }
        if let Some(r) = mat.iter().find(|r| r.len() != src) {
            return Err(LatticeError::Shape { expected: src, got: r.len() });
        }
        Ok(LatticeMap { src, tgt, mat })
    }

    pub fn identity(n: usize) -> LatticeMap {
        LatticeMap { src: n, tgt: n, mat: zmat::identity_z(n) }
    }

    pub fn source_rank(&self) -> usize {
        self.src
    }

    pub fn target_rank(&self) -> usize {
        self.tgt
    }

    pub fn matrix(&self) -> &ZMat {
        &self.mat
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LatticeMap) -> LatticeMap {
        LatticeMap { src: first.src, tgt: self.tgt, mat: zmat::z_mul(&self.mat, &first.mat, first.src) }
    }

    pub fn apply(&self, v: &[BigInt]) -> ZRow {
        self.mat.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn rank(&self) -> usize {
        zmat::q_rank(&zmat::to_q(&self.mat), self.src)
    }

    pub fn is_zero(&self) -> bool {
        self.mat.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }
}

impl Morphism for LatticeMap {
    type Src = Sublattice;
    type Tgt = Sublattice;

    /// Saturation of `φ(S)`.
    fn image(&self, s: &Sublattice) -> Sublattice {
        let imgs: ZMat = s.rows.iter().map(|v| self.apply(v)).collect();
        let g = Sublattice::generated(self.tgt, &imgs).expect("image has the target rank");
        saturate(&g)
    }

    fn preimage(&self, t: &Sublattice) -> Sublattice {
        // x ∈ φ⁻¹(T) iff aᵀ φ x = 0 for every a in the annihilator of T
        let rows: ZMat = t
            .annihilator()
            .iter()
            .map(|a| (0..self.src).map(|j| a.iter().zip(&self.mat).map(|(x, r)| x * &r[j]).sum()).collect())
            .collect();
        Sublattice::saturated_from(self.src, &zmat::kernel(&rows, self.src))
    }
}

/// `φ` does not increase lengths: `G_X - φᵀ G_Y φ` is positive semi-definite.
pub fn is_compatible(phi: &LatticeMap, x: &EuclideanLattice, y: &EuclideanLattice) -> Result<bool, LatticeError> {
    if phi.src != x.rank() || phi.tgt != y.rank() {
        return Err(LatticeError::MapShape { src: phi.src, tgt: phi.tgt, x: x.rank(), y: y.rank() });
    }
    let pq = zmat::to_q(&phi.mat);
    let pt = zmat::transpose(&pq, phi.src);
    let pull = zmat::q_mul(&zmat::q_mul(&pt, &y.gram, phi.tgt), &pq, phi.src);
    let diff: QMat = x.gram.iter().zip(pull).map(|(a, b)| a.iter().zip(b).map(|(u, v)| u - v).collect()).collect();
    Ok(is_psd(&diff))
}

impl SubobjectLattice for EuclideanLattice {
    type Sub = Sublattice;

    fn rank(&self, s: &Sublattice) -> usize {
        s.rank()
    }

    fn contains(&self, big: &Sublattice, small: &Sublattice) -> bool {
        small.rows.iter().all(|v| big.contains_vector(v))
    }

    /// Saturated intersection: the common kernel of both annihilators.
    fn intersect(&self, a: &Sublattice, b: &Sublattice) -> Sublattice {
        let mut ann = a.annihilator();
        ann.extend(b.annihilator());
        Sublattice::saturated_from(self.rank(), &zmat::kernel(&ann, self.rank()))
    }

    /// Saturation of `a + b`.
    fn sum(&self, a: &Sublattice, b: &Sublattice) -> Sublattice {
        let mut gens = a.rows.clone();
        gens.extend(b.rows.iter().cloned());
        saturate(&Sublattice::generated(self.rank(), &gens).expect("same ambient rank"))
    }

    fn zero(&self) -> Sublattice {
        Sublattice::zero(self.rank())
    }

    fn full(&self) -> Sublattice {
        Sublattice::full(self.rank())
    }
}

/// `G ↦ Uᵀ G U` for a unimodular change of basis: the same lattice in new coordinates.
pub fn change_basis(l: &EuclideanLattice, u: &ZMat) -> EuclideanLattice {
    let ut = zmat::transpose(u, l.rank());
    EuclideanLattice { gram: zmat::congruence(&ut, &l.gram) }
}
