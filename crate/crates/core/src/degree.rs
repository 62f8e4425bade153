//! Exact degrees and slopes.
//!
//! Two kinds of degree occur: rational degrees of filtered objects and log-rational
//! Arakelov degrees `-1/2 log d` of lattices. Slopes are kept as `(degree, rank)` pairs and
//! compared without ever leaving exact arithmetic.

use crate::rational::{decimal, ln_q, to_f64, Q};
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DegreeError {
    #[error("cannot combine a rational degree with a log-rational degree")]
    MixedKinds,
    #[error("log-rational degree needs a positive argument")]
    NonPositive,
    #[error("slope of a rank-0 object")]
    ZeroRank,
    #[error("arithmetic on an infinite slope")]
    Infinite,
}

/// An exact degree value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExactDegree {
    /// The rational number itself.
    Rational(Q),
    /// The real number `-1/2 log d` for a positive rational `d`.
    LogRational(Q),
}

impl ExactDegree {
    pub fn zero_like(&self) -> ExactDegree {
        match self {
            ExactDegree::Rational(_) => ExactDegree::Rational(Q::zero()),
            ExactDegree::LogRational(_) => ExactDegree::LogRational(Q::one()),
        }
    }

    pub fn log_rational(d: Q) -> Result<ExactDegree, DegreeError> {
        if d.is_positive() {
            Ok(ExactDegree::LogRational(d))
        } else {
            Err(DegreeError::NonPositive)
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactDegree::Rational(x) => x.is_zero(),
            ExactDegree::LogRational(d) => d.is_one(),
        }
    }

    pub fn try_add(&self, other: &ExactDegree) -> Result<ExactDegree, DegreeError> {
        match (self, other) {
            (ExactDegree::Rational(a), ExactDegree::Rational(b)) => Ok(ExactDegree::Rational(a + b)),
            (ExactDegree::LogRational(a), ExactDegree::LogRational(b)) => {
                Ok(ExactDegree::LogRational(a * b))
            }
            _ => Err(DegreeError::MixedKinds),
        }
    }

    pub fn try_sub(&self, other: &ExactDegree) -> Result<ExactDegree, DegreeError> {
        match (self, other) {
            (ExactDegree::Rational(a), ExactDegree::Rational(b)) => Ok(ExactDegree::Rational(a - b)),
            (ExactDegree::LogRational(a), ExactDegree::LogRational(b)) => {
                Ok(ExactDegree::LogRational(a / b))
            }
            _ => Err(DegreeError::MixedKinds),
        }
    }

    /// Multiplies the degree by a non-negative integer.
    pub fn times(&self, k: u32) -> ExactDegree {
        match self {
            ExactDegree::Rational(a) => ExactDegree::Rational(a * Q::from_integer(k.into())),
            ExactDegree::LogRational(d) => ExactDegree::LogRational(num::pow(d.clone(), k as usize)),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactDegree::Rational(a) => to_f64(a),
            ExactDegree::LogRational(d) => -0.5 * ln_q(d),
        }
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a ExactDegree>) -> Result<Option<ExactDegree>, DegreeError> {
        let mut acc: Option<ExactDegree> = None;
        for d in items {
            acc = Some(match acc {
                None => d.clone(),
                Some(a) => a.try_add(d)?,
            });
        }
        Ok(acc)
    }
}

impl fmt::Display for ExactDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactDegree::Rational(a) => write!(f, "{a}"),
            ExactDegree::LogRational(d) => write!(f, "-1/2 log({d})"),
        }
    }
}

/// Degree divided by a positive rank. Equality and order are by real value.
#[derive(Debug, Clone)]
pub struct Slope {
    pub degree: ExactDegree,
    pub rank: usize,
}

impl Slope {
    pub fn new(degree: ExactDegree, rank: usize) -> Result<Slope, DegreeError> {
        if rank == 0 {
            return Err(DegreeError::ZeroRank);
        }
        Ok(Slope { degree, rank })
    }

    pub fn rational(x: Q) -> Slope {
        Slope { degree: ExactDegree::Rational(x), rank: 1 }
    }

    /// The slope as an exact rational, when the degree is rational.
    pub fn as_rational(&self) -> Option<Q> {
        match &self.degree {
            ExactDegree::Rational(a) => Some(a / Q::from_integer(self.rank.into())),
            ExactDegree::LogRational(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.degree.to_f64() / self.rank as f64
    }

    pub fn try_cmp(&self, other: &Slope) -> Result<Ordering, DegreeError> {
        match (&self.degree, &other.degree) {
            (ExactDegree::Rational(a), ExactDegree::Rational(b)) => {
                let lhs = a * Q::from_integer(other.rank.into());
                let rhs = b * Q::from_integer(self.rank.into());
                Ok(lhs.cmp(&rhs))
            }
            (ExactDegree::LogRational(a), ExactDegree::LogRational(b)) => {
                Ok(exact_slope_compare(a, self.rank, b, other.rank)?)
            }
            _ => Err(DegreeError::MixedKinds),
        }
    }

    /// Decimal rendering; exact for rational slopes, f64-accurate (at most 15 digits) for logs.
    pub fn decimal(&self, digits: usize) -> String {
        match self.as_rational() {
            Some(x) => decimal(&x, digits),
            None => format!("{:.*}", digits.min(15), self.to_f64()),
        }
    }
}

/// Compares `-log(d1)/(2 r1)` with `-log(d2)/(2 r2)` by testing `d1^r2` against `d2^r1`
/// (order reversed by the minus sign).
pub fn exact_slope_compare(d1: &Q, r1: usize, d2: &Q, r2: usize) -> Result<Ordering, DegreeError> {
    if !d1.is_positive() || !d2.is_positive() {
        return Err(DegreeError::NonPositive);
    }
    if r1 == 0 || r2 == 0 {
        return Err(DegreeError::ZeroRank);
    }
    let lhs = num::pow(d1.clone(), r2);
    let rhs = num::pow(d2.clone(), r1);
    Ok(rhs.cmp(&lhs))
}

impl PartialEq for Slope {
    fn eq(&self, other: &Slope) -> bool {
        matches!(self.try_cmp(other), Ok(Ordering::Equal))
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Slope) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(x) => write!(f, "{x}"),
            None => write!(f, "({})/{}", self.degree, self.rank),
        }
    }
}

/// A slope extended by the sentinels used for `mu_max(0)` and `mu_min(0)`.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtendedSlope {
    NegInfinity,
    Finite(Slope),
    PosInfinity,
}

impl ExtendedSlope {
    pub fn finite(&self) -> Result<&Slope, DegreeError> {
        match self {
            ExtendedSlope::Finite(s) => Ok(s),
            _ => Err(DegreeError::Infinite),
        }
    }
}

impl PartialOrd for ExtendedSlope {
    fn partial_cmp(&self, other: &ExtendedSlope) -> Option<Ordering> {
        use ExtendedSlope::*;
        match (self, other) {
            (NegInfinity, NegInfinity) | (PosInfinity, PosInfinity) => Some(Ordering::Equal),
            (NegInfinity, _) | (_, PosInfinity) => Some(Ordering::Less),
            (PosInfinity, _) | (_, NegInfinity) => Some(Ordering::Greater),
            (Finite(a), Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl fmt::Display for ExtendedSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedSlope::NegInfinity => write!(f, "-inf"),
            ExtendedSlope::PosInfinity => write!(f, "+inf"),
            ExtendedSlope::Finite(s) => write!(f, "{s}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};
    use proptest::prelude::*;

    fn log(d: Q, r: usize) -> Slope {
        Slope::new(ExactDegree::LogRational(d), r).unwrap()
    }

    #[test]
    fn equal_log_slopes() {
        assert_eq!(exact_slope_compare(&q(3), 2, &q(3), 2).unwrap(), Ordering::Equal);
        // -log 4 / 2 == -log 16 / 4
        assert_eq!(log(q(4), 1), log(q(16), 2));
    }

    #[test]
    fn cross_exponentiation() {
        // (1/4)^2 = 1/16 < 1^1, so the first slope is larger
        assert_eq!(exact_slope_compare(&qr(1, 4), 1, &q(1), 2).unwrap(), Ordering::Greater);
        assert!(log(qr(1, 4), 1) > log(q(1), 2));
        assert!(exact_slope_compare(&q(0), 1, &q(1), 1).is_err());
    }

    #[test]
    fn rational_slopes_cross_multiply() {
        let a = Slope::new(ExactDegree::Rational(q(1)), 2).unwrap();
        let b = Slope::new(ExactDegree::Rational(q(2)), 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.as_rational(), Some(qr(1, 2)));
        assert!(Slope::rational(q(3)) > a);
    }

    #[test]
    fn mixed_kinds_do_not_compare() {
        let a = Slope::rational(q(0));
        let b = log(q(1), 1);
        assert_eq!(a.partial_cmp(&b), None);
        assert!(a.degree.try_add(&b.degree).is_err());
    }

    #[test]
    fn sentinels_surround_finite() {
        let s = ExtendedSlope::Finite(Slope::rational(q(-1000)));
        assert!(ExtendedSlope::NegInfinity < s);
        assert!(s < ExtendedSlope::PosInfinity);
        assert!(ExtendedSlope::NegInfinity < ExtendedSlope::PosInfinity);
        assert!(ExtendedSlope::PosInfinity.finite().is_err());
    }

    #[test]
    fn log_arithmetic() {
        let a = ExactDegree::LogRational(qr(1, 4));
        let b = ExactDegree::LogRational(q(4));
        assert!(a.try_add(&b).unwrap().is_zero());
        assert_eq!(a.try_sub(&b).unwrap(), ExactDegree::LogRational(qr(1, 16)));
        assert!((a.to_f64() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(a.times(2), ExactDegree::LogRational(qr(1, 16)));
    }

    fn small_pos() -> impl Strategy<Value = Q> {
        (1i64..40, 1i64..40).prop_map(|(n, d)| qr(n, d))
    }

    proptest! {
        #[test]
        fn log_compare_matches_float(d1 in small_pos(), r1 in 1usize..5, d2 in small_pos(), r2 in 1usize..5) {
            let a = log(d1, r1);
            let b = log(d2, r2);
            let exact = a.try_cmp(&b).unwrap();
            let (fa, fb) = (a.to_f64(), b.to_f64());
            if (fa - fb).abs() > 1e-12 {
                prop_assert_eq!(exact, fa.partial_cmp(&fb).unwrap());
            }
        }

        #[test]
        fn log_compare_transitive(
            d in proptest::collection::vec(small_pos(), 3),
            r in proptest::collection::vec(1usize..5, 3),
        ) {
            let s: Vec<Slope> = d.into_iter().zip(r).map(|(d, r)| log(d, r)).collect();
            if s[0] <= s[1] && s[1] <= s[2] {
                prop_assert!(s[0] <= s[2]);
            }
            if s[0] >= s[1] && s[1] >= s[2] {
                prop_assert!(s[0] >= s[2]);
            }
        }
    }
}
