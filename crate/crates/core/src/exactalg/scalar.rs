//! Rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ArithError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => {
            if b.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            a / b
        }
    })
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `n/d`; panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Scalar {
    assert!(d != 0, "zero denominator");
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn binomial(n: i64, k: i64) -> Scalar {
    if k < 0 || n < 0 || k > n {
        return Scalar::zero();
    }
    let mut acc = Scalar::one();
    for i in 0..k {
        acc = acc * int(n - i) / int(i + 1);
    }
    acc
}

/// Parses `n` or `n/d` (optional leading sign, optional surrounding whitespace).
pub fn parse_scalar(s: &str) -> Result<Scalar, ArithError> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || ArithError::Parse(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t.as_str(), "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    Ok(Scalar::new(n, d))
}

/// Canonical `num/den` text, denominator always present.
pub fn format_scalar(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

/// Short human form: `3`, `-1/2`.
pub fn display_scalar(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

pub fn is_negative(s: &Scalar) -> bool {
    s.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arith_basics() {
        let a = frac(1, 2);
        let b = frac(1, 3);
        assert_eq!(scalar_arith(&a, &b, ArithOp::Add).unwrap(), frac(5, 6));
        assert_eq!(scalar_arith(&a, &b, ArithOp::Div).unwrap(), frac(3, 2));
        assert_eq!(
            scalar_arith(&a, &Scalar::zero(), ArithOp::Div),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_scalar("-4/6").unwrap(), frac(-2, 3));
        assert_eq!(parse_scalar(" 7 ").unwrap(), int(7));
        assert_eq!(format_scalar(&int(7)), "7/1");
        assert_eq!(display_scalar(&frac(-2, 3)), "-2/3");
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(3, 4), int(0));
    }
}
