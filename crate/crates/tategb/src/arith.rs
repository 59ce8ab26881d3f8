//! Exact rational arithmetic and the p-adic valuation.
//!
//! Every quantity in this crate is an exact `BigRational`; there is no
//! floating point anywhere. Valuations are rationals as well since Gauss
//! valuations mix the integer p-adic valuation with rational log-radii.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses the `[-]a[/b]` syntax. `BigRational::from_str` accepts the same
/// grammar and normalizes sign and gcd.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|e| Error::Parse {
        offset: 0,
        message: format!("invalid rational {s:?}: {e}"),
    })
}

/// A rational extended by +∞, the valuation of zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendedRational {
    Finite(Rational),
    Infinity,
}

impl ExtendedRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(v) => Some(v),
            ExtendedRational::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::Infinity)
    }

    pub fn expect_finite(&self) -> &Rational {
        self.finite().expect("valuation of a nonzero quantity is finite")
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedRational::*;
        match (self, other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Finite(_), Infinity) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl std::ops::Add for ExtendedRational {
    type Output = ExtendedRational;
    fn add(self, rhs: ExtendedRational) -> ExtendedRational {
        use ExtendedRational::*;
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => Infinity,
        }
    }
}

impl From<Rational> for ExtendedRational {
    fn from(v: Rational) -> Self {
        ExtendedRational::Finite(v)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(v) => write!(f, "{v}"),
            ExtendedRational::Infinity => write!(f, "inf"),
        }
    }
}

/// The base field: exact rationals equipped with the p-adic valuation.
/// The uniformizer is p itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuedField {
    p: BigInt,
}

impl ValuedField {
    pub fn new(p: i64) -> Result<Self> {
        Self::from_bigint(BigInt::from(p))
    }

    pub fn from_bigint(p: BigInt) -> Result<Self> {
        if !is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(ValuedField { p })
    }

    pub fn prime(&self) -> &BigInt {
        &self.p
    }

    /// p-adic valuation of an exact rational: the exponent of p in the
    /// numerator minus the exponent in the denominator, +∞ for zero.
    pub fn val(&self, c: &Rational) -> ExtendedRational {
        if c.is_zero() {
            return ExtendedRational::Infinity;
        }
        let vn = int_valuation(c.numer(), &self.p);
        let vd = int_valuation(c.denom(), &self.p);
        ExtendedRational::Finite(Rational::from_integer(BigInt::from(vn) - BigInt::from(vd)))
    }

    /// Valuation of a nonzero rational as a plain rational.
    pub fn val_nonzero(&self, c: &Rational) -> Rational {
        debug_assert!(!c.is_zero());
        self.val(c).expect_finite().clone()
    }
}

fn int_valuation(x: &BigInt, p: &BigInt) -> u64 {
    debug_assert!(!x.is_zero());
    let mut v = 0u64;
    let mut cur = x.abs();
    loop {
        let (q, r) = cur.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        cur = q;
    }
}

/// Deterministic primality by trial division; inputs here are desk-scale.
pub fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    if n == &two {
        return true;
    }
    if n.is_even() {
        return false;
    }
    let mut d = BigInt::from(3);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_prime_i64(n: i64) -> bool {
    n >= 0 && is_prime(&BigInt::from(n))
}

/// Formats a rational as `a/b`, or `a` when the denominator is one.
pub fn format_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_of_uniformizer_is_one() {
        let f = ValuedField::new(7).unwrap();
        assert_eq!(f.val(&rat_int(7)), ExtendedRational::Finite(rat_int(1)));
    }

    #[test]
    fn valuation_of_zero_is_infinite() {
        let f = ValuedField::new(7).unwrap();
        assert_eq!(f.val(&rat_int(0)), ExtendedRational::Infinity);
    }

    #[test]
    fn valuation_of_fraction() {
        // 50/3 = 2 * 5^2 / 3, so v_5 = 2 by trial division of both parts.
        let f = ValuedField::new(5).unwrap();
        assert_eq!(f.val(&rat(50, 3)), ExtendedRational::Finite(rat_int(2)));
        assert_eq!(f.val(&rat(3, 50)), ExtendedRational::Finite(rat_int(-2)));
    }

    #[test]
    fn primality() {
        assert!(is_prime_i64(7));
        assert!(!is_prime_i64(1));
        assert!(!is_prime_i64(0));
        // 91 = 7 * 13
        assert!(!is_prime_i64(91));
        assert!(is_prime_i64(2));
        assert!(ValuedField::new(6).is_err());
    }

    #[test]
    fn infinity_ordering_and_addition() {
        use ExtendedRational::*;
        assert!(Infinity > Finite(rat_int(1_000_000)));
        assert_eq!(Infinity + Finite(rat_int(3)), Infinity);
        assert_eq!(
            Finite(rat_int(1)) + Finite(rat(1, 2)),
            Finite(rat(3, 2))
        );
    }

    #[test]
    fn rational_round_trip() {
        for s in ["-3/7", "0", "12", "5/9", "-4"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        // non-canonical input normalizes
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
    }
}
