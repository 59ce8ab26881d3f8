//! Sparse multivariate polynomials over the valued rationals, with
//! homogenization and dehomogenization.
//!
//! Terms are kept sorted by a fixed internal order (degree-reverse-
//! lexicographic on exponents, largest first), so equality of polynomials is
//! equality of term sequences.

use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::arith::{Rational, ValuedField};
use crate::error::{Error, Result};

/// Exponent vector; the length always equals the ambient variable count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|&e| e * k).collect())
    }
}

/// Degree-reverse-lexicographic comparison on exponents alone. This is the
/// canonical storage order; it is coefficient-independent.
pub fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    match a.total_degree().cmp(&b.total_degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // equal degree: the last nonzero entry of a - b decides, negative wins
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        match x.cmp(y) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

/// A nonzero coefficient attached to a monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub monomial: Monomial,
}

impl Term {
    pub fn new(coeff: Rational, monomial: Monomial) -> Self {
        debug_assert!(!coeff.is_zero());
        Term { coeff, monomial }
    }

    pub fn mul(&self, other: &Term) -> Term {
        Term::new(&self.coeff * &other.coeff, self.monomial.mul(&other.monomial))
    }

    /// `self / other` as a term; caller guarantees monomial divisibility.
    pub fn quotient(&self, other: &Term) -> Term {
        Term::new(&self.coeff / &other.coeff, other.monomial.quotient_into(&self.monomial))
    }
}

#[derive(Debug, PartialEq, Eq)]
struct RingInner {
    variables: Vec<String>,
    field: ValuedField,
}

/// The ambient polynomial ring: named variables over a valued field.
/// Cheap to clone; equality is structural (names and prime).
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}
impl Eq for Ring {}

impl Ring {
    pub fn new(variables: Vec<String>, field: ValuedField) -> Result<Self> {
        if variables.is_empty() {
            return Err(Error::Problem("a ring needs at least one variable".into()));
        }
        for (i, v) in variables.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::Problem("empty variable name".into()));
            }
            if variables[..i].contains(v) {
                return Err(Error::Problem(format!("duplicate variable {v:?}")));
            }
        }
        Ok(Ring(Arc::new(RingInner { variables, field })))
    }

    pub fn n_vars(&self) -> usize {
        self.0.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.0.variables
    }

    pub fn field(&self) -> &ValuedField {
        &self.0.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.variables.iter().position(|v| v == name)
    }

    /// Extends the ring by a fresh homogenization variable, appended last.
    pub fn extended(&self) -> Ring {
        let mut name = "t".to_string();
        while self.0.variables.contains(&name) {
            name.push('_');
        }
        let mut vars = self.0.variables.clone();
        vars.push(name);
        Ring(Arc::new(RingInner {
            variables: vars,
            field: self.0.field.clone(),
        }))
    }

    /// Drops the last variable; inverse of `extended`.
    pub fn restricted(&self) -> Ring {
        debug_assert!(self.n_vars() > 1);
        let vars = self.0.variables[..self.n_vars() - 1].to_vec();
        Ring(Arc::new(RingInner {
            variables: vars,
            field: self.0.field.clone(),
        }))
    }
}

/// Sparse polynomial in canonical form: monomials pairwise distinct, sorted
/// grevlex-descending, no zero coefficients. Zero is the empty sequence.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term::new(c, Monomial::one(ring.n_vars()))],
        }
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term::new(Rational::one(), Monomial::var(ring.n_vars(), i))],
        }
    }

    pub fn from_terms(ring: &Ring, terms: Vec<Term>) -> Self {
        let mut terms: Vec<Term> = terms.into_iter().filter(|t| !t.coeff.is_zero()).collect();
        terms.sort_by(|a, b| grevlex_cmp(&b.monomial, &a.monomial));
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            debug_assert_eq!(t.monomial.n_vars(), ring.n_vars());
            match merged.last_mut() {
                Some(last) if last.monomial == t.monomial => {
                    last.coeff += t.coeff;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        Polynomial { ring: ring.clone(), terms: merged }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Support as monomials, in canonical storage order.
    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|t| &t.monomial)
    }

    /// Max total degree of the support; None for zero.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.monomial.total_degree()).max()
    }

    /// All terms share one total degree. Vacuously true for zero.
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t0) => {
                let d = t0.monomial.total_degree();
                self.terms.iter().all(|t| t.monomial.total_degree() == d)
            }
        }
    }

    pub fn coeff_of(&self, m: &Monomial) -> Option<&Rational> {
        self.terms.iter().find(|t| &t.monomial == m).map(|t| &t.coeff)
    }

    fn assert_same_ring(&self, other: &Polynomial) {
        assert!(self.ring == other.ring, "polynomials belong to different rings");
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term::new(&t.coeff * c, t.monomial.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, t: &Term) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|s| s.mul(t)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// True when `other = c * self` for some nonzero rational c.
    pub fn proportional_to(&self, other: &Polynomial) -> bool {
        if self.ring != other.ring || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.terms.is_empty() {
            return true;
        }
        let (a, b) = (&self.terms[0], &other.terms[0]);
        if a.monomial != b.monomial {
            return false;
        }
        let c = &b.coeff / &a.coeff;
        self.terms
            .iter()
            .zip(&other.terms)
            .all(|(s, t)| s.monomial == t.monomial && &s.coeff * &c == t.coeff)
    }

    /// Scales so the coefficient of the canonical-leading (grevlex-largest)
    /// monomial is one. The canonical representative of the scalar class.
    pub fn canonical_scaled(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(t0) => {
                let inv = Rational::one() / &t0.coeff;
                self.scale(&inv)
            }
        }
    }

    /// Homogenizes into the ring extended by a final variable t: each term is
    /// padded with t so all terms reach the top total degree. Degree is
    /// preserved and dehomogenizing recovers the input.
    pub fn homogenize(&self, target: &Ring) -> Polynomial {
        debug_assert_eq!(target.n_vars(), self.ring.n_vars() + 1);
        let d = match self.total_degree() {
            None => return Polynomial::zero(target),
            Some(d) => d,
        };
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut e = t.monomial.0.clone();
                let pad = d - t.monomial.total_degree();
                e.push(u32::try_from(pad).expect("degree fits in u32"));
                Term::new(t.coeff.clone(), Monomial(e))
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Sets the last variable to one and drops it from the ring.
    pub fn dehomogenize(&self, target: &Ring) -> Polynomial {
        debug_assert_eq!(target.n_vars() + 1, self.ring.n_vars());
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let e = t.monomial.0[..t.monomial.n_vars() - 1].to_vec();
                Term::new(t.coeff.clone(), Monomial(e))
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        // merge two sorted term lists
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let a = &self.terms[i];
            let b = &rhs.terms[j];
            match grevlex_cmp(&b.monomial, &a.monomial) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a.coeff + &b.coeff;
                    if !c.is_zero() {
                        out.push(Term::new(c, a.monomial.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Polynomial { ring: self.ring.clone(), terms: out }
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let mut acc = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                acc.push(a.mul(b));
            }
        }
        Polynomial::from_terms(&self.ring, acc)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parse::print_polynomial(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat_int, ValuedField};

    pub(crate) fn ring_xy() -> Ring {
        Ring::new(vec!["x".into(), "y".into()], ValuedField::new(7).unwrap()).unwrap()
    }

    fn p(ring: &Ring, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(
            ring,
            terms
                .iter()
                .map(|(c, e)| Term::new(rat_int(*c), Monomial(e.to_vec())))
                .collect(),
        )
    }

    #[test]
    fn addition_cancels() {
        let r = ring_xy();
        let xy = p(&r, &[(1, &[1, 0]), (1, &[0, 1])]);
        let my = p(&r, &[(-1, &[0, 1])]);
        assert_eq!(&xy + &my, p(&r, &[(1, &[1, 0])]));

        let f = p(&r, &[(1, &[1, 0]), (-7, &[0, 1])]);
        let g = p(&r, &[(7, &[0, 1])]);
        assert_eq!(&f + &g, p(&r, &[(1, &[1, 0])]));

        // (x+7) + (x-7) = 2x
        let a = p(&r, &[(1, &[1, 0]), (7, &[0, 0])]);
        let b = p(&r, &[(1, &[1, 0]), (-7, &[0, 0])]);
        assert_eq!(&a + &b, p(&r, &[(2, &[1, 0])]));
    }

    #[test]
    fn multiplication() {
        let r = ring_xy();
        let x = Polynomial::var(&r, 0);
        assert!((&x * &Polynomial::zero(&r)).is_zero());

        let f = p(&r, &[(1, &[1, 0]), (-7, &[0, 1])]);
        assert_eq!(&f * &Polynomial::one(&r), f);

        let s = p(&r, &[(1, &[1, 0]), (1, &[0, 1])]);
        let d = p(&r, &[(1, &[1, 0]), (-1, &[0, 1])]);
        assert_eq!(&s * &d, p(&r, &[(1, &[2, 0]), (-1, &[0, 2])]));
    }

    #[test]
    fn homogenize_pads_with_t() {
        let r = ring_xy();
        let ext = r.extended();
        // x - 7y^2 -> xt - 7y^2
        let f = p(&r, &[(1, &[1, 0]), (-7, &[0, 2])]);
        let h = f.homogenize(&ext);
        let expected = Polynomial::from_terms(
            &ext,
            vec![
                Term::new(rat_int(1), Monomial(vec![1, 0, 1])),
                Term::new(rat_int(-7), Monomial(vec![0, 2, 0])),
            ],
        );
        assert_eq!(h, expected);
        assert!(h.is_homogeneous());
        assert_eq!(h.dehomogenize(&r), f);

        // already homogeneous: unchanged apart from the extra t^0
        let g = p(&r, &[(1, &[1, 0]), (-7, &[0, 1])]);
        let gh = g.homogenize(&ext);
        assert_eq!(gh.dehomogenize(&r), g);
        assert!(gh.monomials().all(|m| m.0[2] == 0));

        assert!(Polynomial::zero(&r).homogenize(&ext).is_zero());
    }

    #[test]
    fn dehomogenize_merges_terms() {
        let r = ring_xy();
        let ext = r.extended();
        // x^2 - xt -> x^2 - x
        let h = Polynomial::from_terms(
            &ext,
            vec![
                Term::new(rat_int(1), Monomial(vec![2, 0, 0])),
                Term::new(rat_int(-1), Monomial(vec![1, 0, 1])),
            ],
        );
        assert_eq!(h.dehomogenize(&r), p(&r, &[(1, &[2, 0]), (-1, &[1, 0])]));

        // t -> 1
        let t = Polynomial::var(&ext, 2);
        assert_eq!(t.dehomogenize(&r), Polynomial::one(&r));

        // merging: xt^2 + xt -> 2x
        let m = Polynomial::from_terms(
            &ext,
            vec![
                Term::new(rat_int(1), Monomial(vec![1, 0, 2])),
                Term::new(rat_int(1), Monomial(vec![1, 0, 1])),
            ],
        );
        assert_eq!(m.dehomogenize(&r), p(&r, &[(2, &[1, 0])]));
    }

    #[test]
    fn ring_mismatch_is_detected() {
        let r1 = ring_xy();
        let r2 = Ring::new(vec!["a".into()], ValuedField::new(7).unwrap()).unwrap();
        let f = Polynomial::var(&r1, 0);
        let g = Polynomial::var(&r2, 0);
        assert!(f.checked_add(&g).is_err());
    }

    #[test]
    fn proportionality_and_canonical_scaling() {
        let r = ring_xy();
        let f = p(&r, &[(1, &[1, 0]), (-7, &[0, 1])]);
        let g = f.scale(&rat_int(-3));
        assert!(f.proportional_to(&g));
        assert_eq!(g.canonical_scaled(), f);
        let h = p(&r, &[(1, &[1, 0]), (7, &[0, 1])]);
        assert!(!f.proportional_to(&h));
    }

    #[test]
    fn grevlex_canonical_order() {
        let r = ring_xy();
        // x^2 > xy > y^2 > x > y > 1 under grevlex
        let f = p(
            &r,
            &[(1, &[0, 0]), (2, &[0, 1]), (3, &[1, 0]), (4, &[0, 2]), (5, &[1, 1]), (6, &[2, 0])],
        );
        let degrees: Vec<Vec<u32>> = f.monomials().map(|m| m.0.clone()).collect();
        assert_eq!(
            degrees,
            vec![
                vec![2, 0],
                vec![1, 1],
                vec![0, 2],
                vec![1, 0],
                vec![0, 1],
                vec![0, 0]
            ]
        );
    }
}
