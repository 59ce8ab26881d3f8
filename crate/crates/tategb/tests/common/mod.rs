//! Shared generators for the randomized suites. Everything is seeded; no
//! test depends on ambient entropy.

#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tategb::arith::Rational;
use tategb::poly::{Monomial, Polynomial, Ring, Term};
use tategb::{LogRadii, ValuedField};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

pub fn ring(names: &[&str], p: i64) -> Ring {
    Ring::new(
        names.iter().map(|s| s.to_string()).collect(),
        ValuedField::new(p).unwrap(),
    )
    .unwrap()
}

/// Nonzero rational with numerator and denominator in small ranges.
pub fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-bound..=bound);
    }
    let den = rng.gen_range(1..=bound.max(1));
    rat(num, den)
}

pub fn random_rational_allow_zero(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=bound.max(1));
    rat(num, den)
}

/// Nonzero rational of the shape unit * p^k with the unit prime to p.
pub fn random_rational_with_valuation(
    rng: &mut ChaCha8Rng,
    p: i64,
    val_min: i64,
    val_max: i64,
) -> Rational {
    let k = rng.gen_range(val_min..=val_max);
    let mut num;
    loop {
        num = rng.gen_range(1..=20i64);
        if num % p != 0 {
            break;
        }
    }
    let mut den;
    loop {
        den = rng.gen_range(1..=20i64);
        if den % p != 0 {
            break;
        }
    }
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let unit = rat(sign * num, den);
    let p_big = rat_int(p);
    let mut scale = rat_int(1);
    for _ in 0..k.unsigned_abs() {
        scale *= &p_big;
    }
    if k >= 0 {
        unit * scale
    } else {
        unit / scale
    }
}

pub fn random_monomial(rng: &mut ChaCha8Rng, n_vars: usize, max_exp: u32) -> Monomial {
    Monomial((0..n_vars).map(|_| rng.gen_range(0..=max_exp)).collect())
}

pub fn random_monomial_of_degree(rng: &mut ChaCha8Rng, n_vars: usize, degree: u32) -> Monomial {
    let mut e = vec![0u32; n_vars];
    for _ in 0..degree {
        e[rng.gen_range(0..n_vars)] += 1;
    }
    Monomial(e)
}

/// Random nonzero polynomial with up to `max_terms` terms.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    ring: &Ring,
    max_terms: usize,
    max_exp: u32,
    coeff_bound: i64,
) -> Polynomial {
    loop {
        let k = rng.gen_range(1..=max_terms);
        let terms: Vec<Term> = (0..k)
            .map(|_| {
                Term::new(
                    random_rational(rng, coeff_bound),
                    random_monomial(rng, ring.n_vars(), max_exp),
                )
            })
            .collect();
        let f = Polynomial::from_terms(ring, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random nonzero homogeneous polynomial of the given degree whose
/// coefficients have p-adic valuations in the given range.
pub fn random_homogeneous(
    rng: &mut ChaCha8Rng,
    ring: &Ring,
    p: i64,
    degree: u32,
    max_terms: usize,
    val_range: (i64, i64),
) -> Polynomial {
    loop {
        let k = rng.gen_range(1..=max_terms);
        let terms: Vec<Term> = (0..k)
            .map(|_| {
                Term::new(
                    random_rational_with_valuation(rng, p, val_range.0, val_range.1),
                    random_monomial_of_degree(rng, ring.n_vars(), degree),
                )
            })
            .collect();
        let f = Polynomial::from_terms(ring, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_radii(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> LogRadii {
    LogRadii((0..n).map(|_| random_rational_allow_zero(rng, bound)).collect())
}
