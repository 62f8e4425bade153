//! Exact rational helpers shared by both hosts.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

/// Exact rational number used for filtration indices, weights and Gram entries.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"a/b"`, `"a"` or a plain decimal like `"-1.25"`.
pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
        let mut n = BigInt::from_str(&digits).map_err(|_| err())?;
        if neg {
            n = -n;
        }
        let d = num::pow(BigInt::from(10), frac.len());
        return Ok(Q::new(n, d));
    }
    BigInt::from_str(t).map(Q::from_integer).map_err(|_| err())
}

/// Canonical `a/b` rendering (`a` when the denominator is 1).
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

/// Rounds `x` half away from zero to `digits` decimals, exactly.
pub fn decimal(x: &Q, digits: usize) -> String {
    let scale = num::pow(BigInt::from(10), digits);
    let scaled = x * Q::from_integer(scale.clone());
    let mut n = scaled.abs().round().to_integer();
    let neg = x.is_negative() && !n.is_zero();
    let int_part = &n / &scale;
    n -= &int_part * &scale;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = n.to_string();
        out.push('.');
        out.push_str(&"0".repeat(digits - frac.len()));
        out.push_str(&frac);
    }
    out
}

/// Natural logarithm of a positive big integer, to f64 precision.
pub fn ln_bigint(n: &BigInt) -> f64 {
    assert_eq!(n.sign(), Sign::Plus, "logarithm of non-positive integer");
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite").ln();
    }
    let shift = bits - 60;
    let top: BigInt = n >> shift;
    top.to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational.
pub fn ln_q(x: &Q) -> f64 {
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // fall back through logs for huge magnitudes
        let s = if x.is_negative() { -1.0 } else { 1.0 };
        s * ln_q(&x.abs()).exp()
    })
}

/// Integer `ceil(sqrt(x))` for non-negative rational `x`, computed exactly.
pub fn ceil_sqrt(x: &Q) -> BigInt {
    assert!(!x.is_negative());
    if x.is_zero() {
        return BigInt::zero();
    }
    let c = x.ceil().to_integer();
    let mut r = c.sqrt();
    while Q::from_integer(&r * &r) < *x {
        r += 1;
    }
    while r > BigInt::zero() && Q::from_integer((&r - 1) * (&r - 1)) >= *x {
        r -= 1;
    }
    r
}

/// Smallest "nice" rational `u` with `u^num_exp >= x^den_exp`, i.e. an exact outward rounding
/// of `x^(den_exp / num_exp)` for positive `x`.
pub fn rational_root_upper(x: &Q, den_exp: u32, num_exp: u32) -> Q {
    assert!(x.is_positive() && num_exp > 0);
    let target = num::pow(x.clone(), den_exp as usize);
    let approx = (ln_q(x) * den_exp as f64 / num_exp as f64).exp();
    let mut scale: i64 = 1 << 20;
    let mut u = Q::new(
        BigInt::from(((approx * (1.0 + 1e-9)) * scale as f64).ceil() as i128 + 1),
        BigInt::from(scale),
    );
    if !u.is_positive() || !approx.is_finite() {
        u = Q::one() + target.clone();
        scale = 1;
    }
    while num::pow(u.clone(), num_exp as usize) < target {
        u = u * qr(11, 10) + Q::new(BigInt::one(), BigInt::from(scale));
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_q("3/6").unwrap(), qr(1, 2));
        assert_eq!(parse_q("-4").unwrap(), q(-4));
        assert_eq!(parse_q("-1.25").unwrap(), qr(-5, 4));
        assert_eq!(parse_q(".5").unwrap(), qr(1, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
        assert!(parse_q("").is_err());
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(decimal(&qr(1, 2), 3), "0.500");
        assert_eq!(decimal(&qr(-1, 3), 4), "-0.3333");
        assert_eq!(decimal(&qr(2, 3), 2), "0.67");
        assert_eq!(decimal(&qr(-1, 1000), 2), "0.00");
        assert_eq!(decimal(&q(7), 0), "7");
    }

    #[test]
    fn sqrt_and_roots() {
        assert_eq!(ceil_sqrt(&q(16)), BigInt::from(4));
        assert_eq!(ceil_sqrt(&q(17)), BigInt::from(5));
        assert_eq!(ceil_sqrt(&qr(1, 4)), BigInt::from(1));
        let u = rational_root_upper(&q(2), 1, 2);
        assert!(&u * &u >= q(2));
        assert!(to_f64(&u) < 1.4143);
    }

    #[test]
    fn logs() {
        assert!((ln_q(&qr(1, 4)) + 4f64.ln()).abs() < 1e-15);
        let big = num::pow(BigInt::from(3), 2000);
        assert!((ln_bigint(&big) - 2000.0 * 3f64.ln()).abs() < 1e-9);
    }
}
