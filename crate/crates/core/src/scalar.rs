//! Exact rational scalars.
//!
//! Every coefficient in this crate is an arbitrary-precision rational in
//! canonical reduced form (gcd(|num|, den) = 1, den >= 1). There is no
//! floating point anywhere in the decision pipeline: ranks, Groebner bases
//! and cyclotomic sums are all computed exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The ground field: exact rationals. `BigRational` keeps the canonical
/// reduced form (positive denominator, coprime parts) on every operation.
pub type Scalar = BigRational;

/// Scalar from a machine integer.
pub fn scalar_int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Scalar from a numerator/denominator pair. Panics on zero denominator.
pub fn scalar_ratio(num: i64, den: i64) -> Scalar {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `p` or `p/q`, minus sign included.
pub fn scalar_to_string(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses `p` or `p/q` with optional sign on the numerator.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let num: BigInt = n.trim().parse().ok()?;
        let den: BigInt = d.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    } else {
        let num: BigInt = text.parse().ok()?;
        Some(BigRational::from_integer(num))
    }
}

/// True if `s` is a negative rational.
pub fn is_negative(s: &Scalar) -> bool {
    s.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let s = scalar_ratio(4, -6);
        assert_eq!(scalar_to_string(&s), "-2/3");
        assert_eq!(s.denom(), &BigInt::from(3));
    }

    #[test]
    fn parse_roundtrip() {
        for text in ["0", "7", "-3", "2/5", "-9/4"] {
            let s = parse_scalar(text).unwrap();
            assert_eq!(scalar_to_string(&s), text);
        }
        assert!(parse_scalar("1/0").is_none());
        assert!(parse_scalar("x").is_none());
    }
}
