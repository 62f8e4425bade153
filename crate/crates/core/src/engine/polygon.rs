//! Normalized HN polygons and HN measures, and the exact correspondence between them.
//!
//! Heights are stored as [`Slope`] values (a degree divided by a positive integer) so that
//! log-rational polygons stay exact: a vertex height `-1/2 log(D) / R` is `Slope { LogRational(D), R }`.

use crate::degree::{DegreeError, ExactDegree, Slope};
use crate::rational::Q;
use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolygonError {
    #[error("atom mass must be positive, got {0}")]
    NonPositiveMass(String),
    #[error("total mass {0} exceeds 1")]
    MassTooLarge(String),
    #[error("polygon is not concave at vertex {0}")]
    NotConcave(usize),
    #[error("polygon must start at (0, 0)")]
    BadOrigin,
    #[error("vertex abscissae must increase strictly (vertex {0})")]
    NotIncreasing(usize),
    #[error("exponent too large to represent exactly")]
    Overflow,
    #[error(transparent)]
    Degree(#[from] DegreeError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub location: Slope,
    pub mass: Q,
}

/// A finite positive combination of Dirac masses, atoms sorted by strictly decreasing location.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Measure {
    pub atoms: Vec<Atom>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub t: Q,
    pub height: Slope,
}

/// A concave piecewise-linear function on `[0, t_n]` through its vertices, starting at `(0, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    pub vertices: Vec<Vertex>,
}

impl Measure {
    pub fn total_mass(&self) -> Q {
        self.atoms.iter().map(|a| a.mass.clone()).sum()
    }

    /// Sorts by decreasing location and merges atoms at equal locations.
    pub fn normalized(&self) -> Result<Measure, PolygonError> {
        let mut atoms = self.atoms.clone();
        for a in &atoms {
            if !a.mass.is_positive() {
                return Err(PolygonError::NonPositiveMass(a.mass.to_string()));
            }
        }
        let mut err = None;
        atoms.sort_by(|a, b| {
            b.location.try_cmp(&a.location).unwrap_or_else(|e| {
                err = Some(e);
                Ordering::Equal
            })
        });
        if let Some(e) = err {
            return Err(e.into());
        }
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for a in atoms {
            match merged.last_mut() {
                Some(last) if last.location == a.location => last.mass += a.mass,
                _ => merged.push(a),
            }
        }
        Ok(Measure { atoms: merged })
    }

    /// `∫ t dν(t)`, as an exact height value.
    pub fn first_moment(&self) -> Result<Slope, PolygonError> {
        let poly = measure_to_polygon(self)?;
        Ok(poly.vertices.last().expect("polygon has an origin").height.clone())
    }
}

impl Polygon {
    /// Slopes of the successive segments.
    pub fn segment_slopes(&self) -> Result<Vec<Slope>, PolygonError> {
        self.vertices.windows(2).map(|w| segment_slope(&w[0], &w[1])).collect()
    }

    pub fn is_concave(&self) -> Result<bool, PolygonError> {
        let s = self.segment_slopes()?;
        for w in s.windows(2) {
            if w[0].try_cmp(&w[1])? == Ordering::Less {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Height of the last vertex.
    pub fn endpoint(&self) -> &Slope {
        &self.vertices.last().expect("polygon has an origin").height
    }
}

fn lcm_all(values: impl Iterator<Item = BigInt>) -> BigInt {
    values.fold(BigInt::one(), |acc, v| acc.lcm(&v))
}

fn exp_usize(e: &BigInt) -> Result<usize, PolygonError> {
    e.to_usize().filter(|&x| x <= 1 << 16).ok_or(PolygonError::Overflow)
}

/// Builds the polygon whose slope on `[t_{i-1}, t_i)` is the i-th largest atom location and
/// whose segment lengths are the masses.
pub fn measure_to_polygon(nu: &Measure) -> Result<Polygon, PolygonError> {
    let nu = nu.normalized()?;
    let total = nu.total_mass();
    if total > Q::one() {
        return Err(PolygonError::MassTooLarge(total.to_string()));
    }
    let kind_zero = nu
        .atoms
        .first()
        .map(|a| a.location.degree.zero_like())
        .unwrap_or(ExactDegree::Rational(Q::zero()));
    let origin = Vertex { t: Q::zero(), height: Slope { degree: kind_zero.clone(), rank: 1 } };
    let mut vertices = vec![origin];
    match kind_zero {
        ExactDegree::Rational(_) => {
            let mut t = Q::zero();
            let mut h = Q::zero();
            for a in &nu.atoms {
                let loc = a.location.as_rational().ok_or(DegreeError::MixedKinds)?;
                t += &a.mass;
                h += loc * &a.mass;
                vertices.push(Vertex { t: t.clone(), height: Slope::rational(h.clone()) });
            }
        }
        ExactDegree::LogRational(_) => {
            // increment_i = -1/2 log(d_i) * (m_i / r_i); write m_i / r_i = e_i / R
            let ratios: Vec<Q> = nu
                .atoms
                .iter()
                .map(|a| &a.mass / Q::from_integer(a.location.rank.into()))
                .collect();
            let r = lcm_all(ratios.iter().map(|x| x.denom().clone()));
            let per = r.to_usize().ok_or(PolygonError::Overflow)?;
            let mut t = Q::zero();
            let mut acc = Q::one();
            for (a, ratio) in nu.atoms.iter().zip(&ratios) {
                let ExactDegree::LogRational(d) = &a.location.degree else {
                    return Err(DegreeError::MixedKinds.into());
                };
                let e = exp_usize(&(ratio * Q::from_integer(r.clone())).to_integer())?;
                acc *= num::pow(d.clone(), e);
                t += &a.mass;
                vertices.push(Vertex { t: t.clone(), height: Slope { degree: ExactDegree::LogRational(acc.clone()), rank: per } });
            }
        }
    }
    Ok(Polygon { vertices })
}

fn segment_slope(a: &Vertex, b: &Vertex) -> Result<Slope, PolygonError> {
    let dt = &b.t - &a.t;
    match (&a.height.degree, &b.height.degree) {
        (ExactDegree::Rational(_), ExactDegree::Rational(_)) => {
            let ha = a.height.as_rational().expect("rational");
            let hb = b.height.as_rational().expect("rational");
            Ok(Slope::rational((hb - ha) / dt))
        }
        (ExactDegree::LogRational(da), ExactDegree::LogRational(db)) => {
            // heights -1/2 log(da)/ra and -1/2 log(db)/rb; bring both to the denominator R
            let (ra, rb) = (a.height.rank, b.height.rank);
            let r = ra.lcm(&rb);
            let num_b = num::pow(db.clone(), r / rb);
            let num_a = num::pow(da.clone(), r / ra);
            // slope = -1/2 log(num_b / num_a) / (R * dt), dt = p/q
            let ratio = num_b / num_a;
            let p = exp_usize(dt.numer())?;
            let q = exp_usize(dt.denom())?;
            Ok(Slope { degree: ExactDegree::LogRational(num::pow(ratio, q)), rank: r * p })
        }
        _ => Err(DegreeError::MixedKinds.into()),
    }
}

/// Reads the measure back off a concave polygon: one atom per maximal segment.
pub fn polygon_to_measure(p: &Polygon) -> Result<Measure, PolygonError> {
    let Some(first) = p.vertices.first() else {
        return Ok(Measure::default());
    };
    if !first.t.is_zero() || !first.height.degree.is_zero() {
        return Err(PolygonError::BadOrigin);
    }
    let mut atoms: Vec<Atom> = Vec::new();
    for (i, w) in p.vertices.windows(2).enumerate() {
        if w[1].t <= w[0].t {
            return Err(PolygonError::NotIncreasing(i + 1));
        }
        let s = segment_slope(&w[0], &w[1])?;
        let mass = &w[1].t - &w[0].t;
        match atoms.last_mut() {
            Some(last) => match last.location.try_cmp(&s)? {
                Ordering::Greater => atoms.push(Atom { location: s, mass }),
                Ordering::Equal => last.mass += mass,
                Ordering::Less => return Err(PolygonError::NotConcave(i)),
            },
            None => atoms.push(Atom { location: s, mass }),
        }
    }
    Ok(Measure { atoms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};
    use proptest::prelude::*;

    fn atom(loc: Q, mass: Q) -> Atom {
        Atom { location: Slope::rational(loc), mass }
    }

    #[test]
    fn dirac_gives_one_segment() {
        let nu = Measure { atoms: vec![atom(q(3), q(1))] };
        let p = measure_to_polygon(&nu).unwrap();
        assert_eq!(p.vertices.len(), 2);
        assert_eq!(p.vertices[1].t, q(1));
        assert_eq!(p.endpoint().as_rational(), Some(q(3)));
        assert_eq!(polygon_to_measure(&p).unwrap(), nu);
    }

    #[test]
    fn two_atom_polygon() {
        let nu = Measure { atoms: vec![atom(q(0), qr(1, 2)), atom(q(1), qr(1, 2))] };
        let p = measure_to_polygon(&nu).unwrap();
        let pts: Vec<(Q, Q)> = p.vertices.iter().map(|v| (v.t.clone(), v.height.as_rational().unwrap())).collect();
        assert_eq!(pts, vec![(q(0), q(0)), (qr(1, 2), qr(1, 2)), (q(1), qr(1, 2))]);
        assert!(p.is_concave().unwrap());
        assert_eq!(nu.first_moment().unwrap().as_rational(), Some(qr(1, 2)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(measure_to_polygon(&Measure { atoms: vec![atom(q(0), q(-1))] }).is_err());
        assert!(measure_to_polygon(&Measure { atoms: vec![atom(q(0), q(1)), atom(q(1), q(1))] }).is_err());
        let convex = Polygon {
            vertices: vec![
                Vertex { t: q(0), height: Slope::rational(q(0)) },
                Vertex { t: qr(1, 2), height: Slope::rational(q(0)) },
                Vertex { t: q(1), height: Slope::rational(q(1)) },
            ],
        };
        assert_eq!(polygon_to_measure(&convex).unwrap_err(), PolygonError::NotConcave(1));
        let shifted = Polygon { vertices: vec![Vertex { t: q(0), height: Slope::rational(q(1)) }] };
        assert_eq!(polygon_to_measure(&shifted).unwrap_err(), PolygonError::BadOrigin);
    }

    #[test]
    fn log_atoms_stay_exact() {
        // slopes log 2 (rank 1) and -log 2 (rank 1), masses 1/2 each
        let nu = Measure {
            atoms: vec![
                Atom { location: Slope { degree: ExactDegree::LogRational(qr(1, 4)), rank: 1 }, mass: qr(1, 2) },
                Atom { location: Slope { degree: ExactDegree::LogRational(q(4)), rank: 1 }, mass: qr(1, 2) },
            ],
        };
        let p = measure_to_polygon(&nu).unwrap();
        assert!(p.endpoint().degree.is_zero());
        assert!((p.vertices[1].height.to_f64() - 0.5 * 2f64.ln()).abs() < 1e-15);
        assert_eq!(polygon_to_measure(&p).unwrap(), nu);
    }

    fn arb_measure() -> impl Strategy<Value = Measure> {
        prop::collection::btree_set(-20i64..20, 1..6).prop_flat_map(|locs| {
            let n = locs.len();
            (Just(locs), prop::collection::vec(1i64..10, n)).prop_map(|(locs, w)| {
                let total: i64 = w.iter().sum();
                let atoms = locs
                    .into_iter()
                    .rev()
                    .zip(w)
                    .map(|(l, m)| atom(qr(l, 3), qr(m, total)))
                    .collect();
                Measure { atoms }
            })
        })
    }

    proptest! {
        #[test]
        fn roundtrip(nu in arb_measure()) {
            let p = measure_to_polygon(&nu).unwrap();
            prop_assert!(p.is_concave().unwrap());
            prop_assert_eq!(p.vertices.last().unwrap().t.clone(), q(1));
            prop_assert_eq!(polygon_to_measure(&p).unwrap(), nu.clone());
            prop_assert_eq!(measure_to_polygon(&polygon_to_measure(&p).unwrap()).unwrap(), p);
        }
    }
}
