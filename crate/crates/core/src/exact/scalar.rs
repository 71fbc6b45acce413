//! Exact rational scalars.
//!
//! All structural identities are checked over [`Scalar`], an arbitrary
//! precision rational kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Scalar = BigRational;

/// `n / d` as a reduced scalar. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p/q"` or `"p"` (optional sign on the numerator, surrounding
/// whitespace ignored).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let valid = |t: &str, allow_sign: bool| {
        let digits = if allow_sign {
            t.strip_prefix(['-', '+']).unwrap_or(t)
        } else {
            t
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return Err(bad());
    }
    let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// Canonical text form: `"p/q"`, or `"p"` when the denominator is one.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_integer(x: &Scalar) -> bool {
    x.denom().is_one()
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // numerator or denominator too wide for a direct conversion
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact conversion of a finite double.
pub fn from_f64(x: f64) -> Option<Scalar> {
    BigRational::from_float(x)
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

pub fn square(x: &Scalar) -> Scalar {
    x * x
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_scalar("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_scalar(" -6/4 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_scalar("+7").unwrap(), int(7));
        assert_eq!(format_scalar(&rat(-6, 4)), "-3/2");
        assert_eq!(format_scalar(&int(5)), "5");
        assert_eq!(format_scalar(&rat(0, 9)), "0");
        for bad in ["abc", "", "1/", "/2", "1/0", "1.5", "1/-2", "--1"] {
            assert!(parse_scalar(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn integer_detection() {
        assert!(is_integer(&rat(4, 2)));
        assert!(!is_integer(&rat(1, 2)));
        assert!(is_integer(&rat(-3, 1)));
    }

    proptest! {
        #[test]
        fn reduction_is_canonical(p in -500i64..500, q in 1i64..500, k in 1i64..60, neg in any::<bool>()) {
            let k = if neg { -k } else { k };
            let x = rat(p, q);
            let y = rat(k * p, k * q);
            prop_assert_eq!(&x, &y);
            prop_assert!(y.denom() > &BigInt::zero());
            prop_assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
        }

        #[test]
        fn addition_is_exact(p in -300i64..300, q in 1i64..300, r in -300i64..300, s in 1i64..300) {
            let sum = rat(p, q) + rat(r, s);
            prop_assert_eq!(sum, rat(p * s + r * q, q * s));
        }
    }
}
