//! Classical Buchberger over the rationals with a global monomial order.
//!
//! This is a deliberately separate code path from the valued engine: no
//! Gauss valuations, ordinary division with remainder, classical well-founded
//! termination. It backs the saturation test for monomial containment and
//! exact ideal-membership oracles.

use num_traits::One;

use crate::arith::Rational;
use crate::error::Result;
use crate::order::TieBreak;
use crate::poly::{Monomial, Polynomial, Ring, Term};

fn leading(f: &Polynomial, tie: TieBreak) -> &Term {
    debug_assert!(!f.is_zero());
    f.terms()
        .iter()
        .max_by(|a, b| tie.cmp_monomials(&a.monomial, &b.monomial))
        .expect("nonzero")
}

/// Division with remainder against a family of divisors; the remainder has
/// no term divisible by any divisor's leading monomial.
pub fn classical_reduce(f: &Polynomial, divisors: &[Polynomial], tie: TieBreak) -> Polynomial {
    let mut rem = Polynomial::zero(f.ring());
    let mut h = f.clone();
    'outer: while !h.is_zero() {
        let lt = leading(&h, tie).clone();
        for g in divisors {
            let ltg = leading(g, tie);
            if ltg.monomial.divides(&lt.monomial) {
                let q = lt.quotient(ltg);
                h = &h - &g.mul_term(&q);
                continue 'outer;
            }
        }
        // move the irreducible leading term into the remainder
        rem = &rem + &Polynomial::from_terms(h.ring(), vec![lt.clone()]);
        h = &h - &Polynomial::from_terms(h.ring(), vec![lt]);
    }
    rem
}

fn classical_spoly(f: &Polynomial, g: &Polynomial, tie: TieBreak) -> Polynomial {
    let ltf = leading(f, tie).clone();
    let ltg = leading(g, tie).clone();
    let lcm = ltf.monomial.lcm(&ltg.monomial);
    let mf = Term::new(Rational::one() / &ltf.coeff, ltf.monomial.quotient_into(&lcm));
    let mg = Term::new(Rational::one() / &ltg.coeff, ltg.monomial.quotient_into(&lcm));
    &f.mul_term(&mf) - &g.mul_term(&mg)
}

/// Plain Buchberger with the coprime-pair criterion.
pub fn classical_gb(gens: &[Polynomial], tie: TieBreak) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if basis.is_empty() {
        return basis;
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let lmi = &leading(&basis[i], tie).monomial;
        let lmj = &leading(&basis[j], tie).monomial;
        if lmi.gcd(lmj).is_one() {
            continue;
        }
        let s = classical_spoly(&basis[i], &basis[j], tie);
        let rem = classical_reduce(&s, &basis, tie);
        if !rem.is_zero() {
            let k = basis.len();
            for l in 0..k {
                pairs.push((l, k));
            }
            basis.push(rem);
        }
    }
    basis
}

/// Exact membership of f in the polynomial ideal spanned by gens.
pub fn ideal_contains(gens: &[Polynomial], f: &Polynomial, tie: TieBreak) -> bool {
    if f.is_zero() {
        return true;
    }
    let gb = classical_gb(gens, tie);
    if gb.is_empty() {
        return false;
    }
    classical_reduce(f, &gb, tie).is_zero()
}

/// Containment of two polynomial ideals: every generator of the first lies
/// in the second.
pub fn ideal_subset(sub: &[Polynomial], sup: &[Polynomial], tie: TieBreak) -> bool {
    let gb = classical_gb(sup, tie);
    sub.iter().all(|f| f.is_zero() || classical_reduce(f, &gb, tie).is_zero())
}

/// Decides whether the ideal spanned by `gens` contains a monomial, through
/// the saturation by the product of all variables: adjoin a fresh variable z
/// and test whether 1 lies in  <gens, z*x_1*...*x_n - 1>.
pub fn contains_monomial(gens: &[Polynomial]) -> Result<bool> {
    let nonzero: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(false);
    }
    // a single-term generator is itself a monomial of the ideal
    if nonzero.iter().any(|g| g.n_terms() == 1) {
        return Ok(true);
    }
    let ring = nonzero[0].ring().clone();
    let n = ring.n_vars();
    let ext = ring.extended();
    let lifted: Vec<Polynomial> = nonzero
        .iter()
        .map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|t| {
                    let mut e = t.monomial.0.clone();
                    e.push(0);
                    Term::new(t.coeff.clone(), Monomial(e))
                })
                .collect();
            Polynomial::from_terms(&ext, terms)
        })
        .collect();
    // z * x_1...x_n - 1
    let mut e = vec![1u32; n];
    e.push(1);
    let rabinowitsch = Polynomial::from_terms(
        &ext,
        vec![
            Term::new(Rational::one(), Monomial(e)),
            Term::new(-Rational::one(), Monomial::one(n + 1)),
        ],
    );
    let mut all = lifted;
    all.push(rabinowitsch);
    let gb = classical_gb(&all, TieBreak::Grevlex);
    Ok(gb.iter().any(|g| {
        !g.is_zero() && g.total_degree() == Some(0)
    }))
}

/// Convenience constructor used by tests.
pub fn ring_over_q(names: &[&str]) -> Ring {
    Ring::new(
        names.iter().map(|s| s.to_string()).collect(),
        crate::arith::ValuedField::new(2).expect("2 is prime"),
    )
    .expect("valid ring")
}
