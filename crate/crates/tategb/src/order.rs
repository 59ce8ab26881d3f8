//! Gauss valuations, r-supports, initial parts, and the valuation-first term
//! orders used throughout.
//!
//! A term `a X^i` compares above `b X^j` when its Gauss valuation
//! `val(a) - r.i` is smaller; ties fall back to a classical monomial order.
//! The homogenized variant inserts the total degree between the valuation and
//! the tie-break and ignores the final variable in the tie-break, which is
//! what makes dehomogenization preserve leading terms.

use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use crate::arith::{ExtendedRational, Rational, ValuedField};
use crate::error::{Error, Result};
use crate::lp::{lp_feasible_certain, LinConstraint, LpProblem};
use crate::poly::{Monomial, Polynomial, Term};

/// Convergence log-radii: one rational per ambient variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogRadii(pub Vec<Rational>);

impl LogRadii {
    pub fn zeros(n: usize) -> Self {
        LogRadii(vec![Rational::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Appends a zero radius for the homogenization variable.
    pub fn extended(&self) -> LogRadii {
        let mut v = self.0.clone();
        v.push(Rational::zero());
        LogRadii(v)
    }

    pub fn dot(&self, m: &Monomial) -> Rational {
        debug_assert_eq!(self.dim(), m.n_vars());
        let mut acc = Rational::zero();
        for (r, &e) in self.0.iter().zip(&m.0) {
            if e != 0 && !r.is_zero() {
                acc += r * Rational::from_integer(e.into());
            }
        }
        acc
    }
}

/// Classical monomial orders available as tie-breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    Grevlex,
    Lex,
    Grlex,
}

impl TieBreak {
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TieBreak::Grevlex => crate::poly::grevlex_cmp(a, b),
            TieBreak::Lex => lex_cmp(a, b),
            TieBreak::Grlex => match a.total_degree().cmp(&b.total_degree()) {
                Ordering::Equal => lex_cmp(a, b),
                ord => ord,
            },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TieBreak::Grevlex => "grevlex",
            TieBreak::Lex => "lex",
            TieBreak::Grlex => "grlex",
        }
    }

    pub fn from_name(s: &str) -> Option<TieBreak> {
        match s {
            "grevlex" => Some(TieBreak::Grevlex),
            "lex" => Some(TieBreak::Lex),
            "grlex" => Some(TieBreak::Grlex),
            _ => None,
        }
    }
}

fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.0.iter().zip(&b.0) {
        match x.cmp(y) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// A complete term order: log-radii first, tie-break second. In homogenized
/// mode the ambient ring carries the homogenization variable last, the radii
/// end in zero, and the comparison runs valuation, then total degree, then
/// the tie-break restricted to the original variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TateOrder {
    pub radii: LogRadii,
    pub tie: TieBreak,
    pub homogenized: bool,
}

impl TateOrder {
    pub fn new(radii: LogRadii, tie: TieBreak) -> Self {
        TateOrder { radii, tie, homogenized: false }
    }

    /// Order on the extended ring for the homogenize-compute-dehomogenize
    /// pipeline; `radii` are the radii of the original variables.
    pub fn homogenized(radii: &LogRadii, tie: TieBreak) -> Self {
        TateOrder { radii: radii.extended(), tie, homogenized: true }
    }

    pub fn dim(&self) -> usize {
        self.radii.dim()
    }

    /// Gauss valuation of a term under this order's radii.
    pub fn val(&self, t: &Term, field: &ValuedField) -> Rational {
        field.val_nonzero(&t.coeff) - self.radii.dot(&t.monomial)
    }

    /// Compares terms; `Greater` means a larger term, i.e. a smaller Gauss
    /// valuation. `Equal` occurs exactly when the monomials coincide and the
    /// coefficient valuations coincide.
    pub fn cmp_terms(&self, a: &Term, b: &Term, field: &ValuedField) -> Ordering {
        let va = self.val(a, field);
        let vb = self.val(b, field);
        match va.cmp(&vb) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {}
        }
        if self.homogenized {
            match a.monomial.total_degree().cmp(&b.monomial.total_degree()) {
                Ordering::Equal => {}
                ord => return ord,
            }
            let n = a.monomial.n_vars();
            let ax = Monomial(a.monomial.0[..n - 1].to_vec());
            let bx = Monomial(b.monomial.0[..n - 1].to_vec());
            self.tie.cmp_monomials(&ax, &bx)
        } else {
            self.tie.cmp_monomials(&a.monomial, &b.monomial)
        }
    }
}

/// Gauss valuation of a term: `val(coefficient) - r . exponents`.
pub fn gauss_val(t: &Term, r: &LogRadii, field: &ValuedField) -> ExtendedRational {
    if t.coeff.is_zero() {
        return ExtendedRational::Infinity;
    }
    ExtendedRational::Finite(field.val_nonzero(&t.coeff) - r.dot(&t.monomial))
}

/// Minimum Gauss valuation over the terms; +∞ for the zero polynomial.
pub fn gauss_val_poly(f: &Polynomial, r: &LogRadii, field: &ValuedField) -> ExtendedRational {
    f.terms()
        .iter()
        .map(|t| field.val_nonzero(&t.coeff) - r.dot(&t.monomial))
        .min()
        .map(ExtendedRational::Finite)
        .unwrap_or(ExtendedRational::Infinity)
}

/// Monomials of `f` whose term valuation attains the minimum.
pub fn support_r(f: &Polynomial, r: &LogRadii) -> Result<Vec<Monomial>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.ring().field();
    let vals: Vec<Rational> = f
        .terms()
        .iter()
        .map(|t| field.val_nonzero(&t.coeff) - r.dot(&t.monomial))
        .collect();
    let min = vals.iter().min().expect("nonzero").clone();
    Ok(f.terms()
        .iter()
        .zip(&vals)
        .filter(|(_, v)| **v == min)
        .map(|(t, _)| t.monomial.clone())
        .collect())
}

/// Sum of the terms indexed by the r-support; always a polynomial.
pub fn initial_part(f: &Polynomial, r: &LogRadii) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.ring().field();
    let vals: Vec<Rational> = f
        .terms()
        .iter()
        .map(|t| field.val_nonzero(&t.coeff) - r.dot(&t.monomial))
        .collect();
    let min = vals.iter().min().expect("nonzero").clone();
    let terms = f
        .terms()
        .iter()
        .zip(&vals)
        .filter(|(_, v)| **v == min)
        .map(|(t, _)| t.clone())
        .collect();
    Ok(Polynomial::from_terms(f.ring(), terms))
}

/// The maximal term of `f` under the order.
pub fn leading_term(f: &Polynomial, o: &TateOrder) -> Result<Term> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.ring().field();
    let mut best = &f.terms()[0];
    for t in &f.terms()[1..] {
        if o.cmp_terms(t, best, field) == Ordering::Greater {
            best = t;
        }
    }
    Ok(best.clone())
}

pub fn leading_monomial(f: &Polynomial, o: &TateOrder) -> Result<Monomial> {
    leading_term(f, o).map(|t| t.monomial)
}

pub fn leading_coefficient(f: &Polynomial, o: &TateOrder) -> Result<Rational> {
    leading_term(f, o).map(|t| t.coeff)
}

/// Leading terms of the members, one per polynomial, in input order.
pub fn lt_tuple(fs: &[Polynomial], o: &TateOrder) -> Result<Vec<Term>> {
    fs.iter().map(|f| leading_term(f, o)).collect()
}

/// The set of leading terms, deduplicated and canonically sorted.
pub fn lt_set(fs: &[Polynomial], o: &TateOrder) -> Result<Vec<Term>> {
    let mut out = lt_tuple(fs, o)?;
    out.sort_by(|a, b| {
        crate::poly::grevlex_cmp(&a.monomial, &b.monomial).then_with(|| a.coeff.cmp(&b.coeff))
    });
    out.dedup();
    Ok(out)
}

/// Finds `s` close to `r` realizing the same leading terms on `fs` while
/// separating every pair of terms by valuation alone: after the perturbation,
/// `t1 > t2` under the original order iff `val_s(t1) < val_s(t2)` (terms with
/// equal monomial and equal coefficient valuation stay tied, harmlessly).
///
/// The direction comes from an exact LP separating the tie-break order on the
/// finite monomial set, the step size from exact slack ratios, and the sign
/// of the step is settled by checking the postcondition on both candidates.
pub fn realize_term_order(fs: &[Polynomial], r: &LogRadii, tie: TieBreak) -> Result<LogRadii> {
    let nonzero: Vec<&Polynomial> = fs.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(r.clone());
    }
    let field = nonzero[0].ring().field().clone();
    let n = r.dim();
    let mut terms: Vec<Term> = Vec::new();
    for f in &nonzero {
        for t in f.terms() {
            if !terms.iter().any(|u| u.monomial == t.monomial && u.coeff == t.coeff) {
                terms.push(t.clone());
            }
        }
    }
    let mut monomials: Vec<Monomial> = Vec::new();
    for t in &terms {
        if !monomials.contains(&t.monomial) {
            monomials.push(t.monomial.clone());
        }
    }
    if monomials.len() <= 1 {
        return Ok(r.clone());
    }

    // direction u with  a >_m b  <=>  (a - b) . u >= 1  on the monomial set;
    // the >= 1 form is legitimate because the constraints are homogeneous
    let mut constraints: Vec<LinConstraint> = Vec::new();
    for (i, a) in monomials.iter().enumerate() {
        for b in monomials.iter().skip(i + 1) {
            let (hi, lo) = match tie.cmp_monomials(a, b) {
                Ordering::Greater => (a, b),
                Ordering::Less => (b, a),
                Ordering::Equal => unreachable!("distinct monomials"),
            };
            let coeffs: Vec<Rational> = hi
                .0
                .iter()
                .zip(&lo.0)
                .map(|(x, y)| Rational::from_integer((*x as i64 - *y as i64).into()))
                .collect();
            if !constraints.iter().any(|c| c.coeffs == coeffs) {
                constraints.push(LinConstraint::ge(coeffs, Rational::one()));
            }
        }
    }
    let u = lp_feasible_certain(
        &LpProblem::feasibility(n, constraints),
        "tie-break separation",
    )?;

    // step small enough that valuation-decided comparisons keep their sign:
    // half the minimal slack |val_r gap| / |u . (alpha - beta)| over pairs
    let order = TateOrder::new(r.clone(), tie);
    let mut eps = Rational::one();
    for (i, t1) in terms.iter().enumerate() {
        for t2 in terms.iter().skip(i + 1) {
            let v1 = order.val(t1, &field);
            let v2 = order.val(t2, &field);
            if v1 == v2 {
                continue;
            }
            let shift: Rational = t1
                .monomial
                .0
                .iter()
                .zip(&t2.monomial.0)
                .zip(&u)
                .map(|((a, b), ui)| ui * Rational::from_integer((*a as i64 - *b as i64).into()))
                .fold(Rational::zero(), |acc, v| acc + v);
            if shift.is_zero() {
                continue;
            }
            let bound = (v1 - v2).abs() / shift.abs();
            if bound < eps {
                eps = bound;
            }
        }
    }
    eps /= Rational::from_integer(2.into());

    for sign in [Rational::one(), -Rational::one()] {
        let s = LogRadii(
            r.0.iter()
                .zip(&u)
                .map(|(ri, ui)| ri + &(&sign * &eps) * ui)
                .collect(),
        );
        if realization_holds(&terms, &order, &s, &field) {
            return Ok(s);
        }
    }
    Err(Error::LpInternal(
        "no perturbation sign satisfied the realization postcondition".into(),
    ))
}

/// `t1 > t2` in the source order must become `val_s(t1) < val_s(t2)`, except
/// for pairs tied in both monomial and coefficient valuation.
fn realization_holds(
    terms: &[Term],
    source: &TateOrder,
    s: &LogRadii,
    field: &ValuedField,
) -> bool {
    let target = TateOrder::new(s.clone(), source.tie);
    for (i, t1) in terms.iter().enumerate() {
        for t2 in terms.iter().skip(i + 1) {
            let cmp = source.cmp_terms(t1, t2, field);
            if cmp == Ordering::Equal {
                continue;
            }
            let (hi, lo) = if cmp == Ordering::Greater { (t1, t2) } else { (t2, t1) };
            if target.val(hi, field) >= target.val(lo, field) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int, ValuedField};
    use crate::poly::Ring;

    fn ring_xy() -> Ring {
        Ring::new(vec!["x".into(), "y".into()], ValuedField::new(7).unwrap()).unwrap()
    }

    fn ring_xyt() -> Ring {
        ring_xy().extended()
    }

    fn term(c: i64, e: &[u32]) -> Term {
        Term::new(rat_int(c), Monomial(e.to_vec()))
    }

    fn poly(ring: &Ring, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(
            ring,
            terms.iter().map(|(c, e)| term(*c, e)).collect(),
        )
    }

    #[test]
    fn gauss_val_examples() {
        let f7 = ValuedField::new(7).unwrap();
        // val(7 x y^2) at r = (1, -1/2): 1 - (1*1 + 2*(-1/2)) = 1
        let r = LogRadii(vec![rat_int(1), rat(-1, 2)]);
        assert_eq!(
            gauss_val(&term(7, &[1, 2]), &r, &f7),
            ExtendedRational::Finite(rat_int(1))
        );
        let r0 = LogRadii::zeros(2);
        assert_eq!(
            gauss_val(&term(1, &[1, 0]), &r0, &f7),
            ExtendedRational::Finite(rat_int(0))
        );
        // y t at r = (0, 2, 0): 0 - 2 = -2
        let r3 = LogRadii(vec![rat_int(0), rat_int(2), rat_int(0)]);
        assert_eq!(
            gauss_val(&term(1, &[0, 1, 1]), &r3, &f7),
            ExtendedRational::Finite(rat_int(-2))
        );
    }

    #[test]
    fn gauss_val_poly_examples() {
        let r = ring_xy();
        let f7 = r.field().clone();
        let f = poly(&r, &[(1, &[1, 0]), (7, &[0, 1])]);
        assert_eq!(
            gauss_val_poly(&f, &LogRadii::zeros(2), &f7),
            ExtendedRational::Finite(rat_int(0))
        );
        assert_eq!(
            gauss_val_poly(&Polynomial::zero(&r), &LogRadii::zeros(2), &f7),
            ExtendedRational::Infinity
        );
        let rt = ring_xyt();
        let g = poly(&rt, &[(1, &[0, 1, 1]), (-7, &[0, 2, 0])]);
        let r3 = LogRadii(vec![rat_int(0), rat_int(2), rat_int(0)]);
        assert_eq!(
            gauss_val_poly(&g, &r3, &f7),
            ExtendedRational::Finite(rat_int(-3))
        );
    }

    #[test]
    fn support_and_initial_part() {
        let r = ring_xy();
        let f = poly(&r, &[(1, &[1, 0]), (1, &[0, 1]), (7, &[0, 0])]);
        let sup = support_r(&f, &LogRadii::zeros(2)).unwrap();
        assert_eq!(sup, vec![Monomial(vec![1, 0]), Monomial(vec![0, 1])]);
        assert_eq!(
            initial_part(&f, &LogRadii::zeros(2)).unwrap(),
            poly(&r, &[(1, &[1, 0]), (1, &[0, 1])])
        );

        let x = poly(&r, &[(1, &[1, 0])]);
        assert_eq!(support_r(&x, &LogRadii::zeros(2)).unwrap(), vec![Monomial(vec![1, 0])]);

        // x + 7y at r = (0,1): both terms have valuation 0
        let g = poly(&r, &[(1, &[1, 0]), (7, &[0, 1])]);
        let r01 = LogRadii(vec![rat_int(0), rat_int(1)]);
        assert_eq!(support_r(&g, &r01).unwrap().len(), 2);
        assert_eq!(initial_part(&g, &r01).unwrap(), g);

        assert!(support_r(&Polynomial::zero(&r), &LogRadii::zeros(2)).is_err());
    }

    #[test]
    fn compare_examples() {
        let r = ring_xy();
        let f7 = r.field();
        let o = TateOrder::new(LogRadii::zeros(2), TieBreak::Grevlex);
        // 7x^2 has valuation 1, y has 0, so 7x^2 is the smaller term
        assert_eq!(
            o.cmp_terms(&term(7, &[2, 0]), &term(1, &[0, 1]), f7),
            Ordering::Less
        );
        assert_eq!(
            o.cmp_terms(&term(1, &[1, 0]), &term(1, &[1, 0]), f7),
            Ordering::Equal
        );

        // homogenized: yt vs 7y^2 at radii (0,2,0)
        let oh = TateOrder::homogenized(&LogRadii(vec![rat_int(0), rat_int(2)]), TieBreak::Grevlex);
        let f7t = ring_xyt();
        assert_eq!(
            oh.cmp_terms(&term(1, &[0, 1, 1]), &term(7, &[0, 2, 0]), f7t.field()),
            Ordering::Less
        );
    }

    #[test]
    fn homogenized_order_inserts_total_degree_between_valuation_and_tiebreak() {
        let rt = ring_xyt();
        let f7 = rt.field();
        let oh = TateOrder::homogenized(&LogRadii::zeros(2), TieBreak::Grevlex);
        // equal valuation, the higher total degree wins: x < x*t, 1 < t
        assert_eq!(
            oh.cmp_terms(&term(1, &[1, 0, 0]), &term(1, &[1, 0, 1]), f7),
            Ordering::Less
        );
        assert_eq!(
            oh.cmp_terms(&term(1, &[0, 0, 0]), &term(1, &[0, 0, 1]), f7),
            Ordering::Less
        );
        // equal valuation and degree: tie-break ignores the last variable,
        // so x*t beats y*t through x > y alone
        assert_eq!(
            oh.cmp_terms(&term(1, &[1, 0, 1]), &term(1, &[0, 1, 1]), f7),
            Ordering::Greater
        );
        // valuation still dominates the degree rule
        assert_eq!(
            oh.cmp_terms(&term(7, &[1, 0, 1]), &term(1, &[1, 0, 0]), f7),
            Ordering::Less
        );
    }

    #[test]
    fn leading_term_examples() {
        let rt = ring_xyt();
        let oh = TateOrder::homogenized(&LogRadii(vec![rat_int(0), rat_int(2)]), TieBreak::Grevlex);
        let g = poly(&rt, &[(1, &[0, 1, 1]), (-7, &[0, 2, 0])]);
        assert_eq!(leading_term(&g, &oh).unwrap(), term(-7, &[0, 2, 0]));

        let r = ring_xy();
        let o = TateOrder::new(LogRadii::zeros(2), TieBreak::Grevlex);
        let f = poly(&r, &[(1, &[1, 0]), (-7, &[0, 1])]);
        assert_eq!(leading_term(&f, &o).unwrap(), term(1, &[1, 0]));
        assert!(leading_term(&Polynomial::zero(&r), &o).is_err());
    }

    #[test]
    fn lt_set_examples() {
        let r = ring_xy();
        let o = TateOrder::new(LogRadii::zeros(2), TieBreak::Grevlex);
        let fs = vec![
            poly(&r, &[(1, &[1, 0]), (-7, &[0, 1])]),
            poly(&r, &[(1, &[0, 1]), (-7, &[0, 2])]),
        ];
        assert_eq!(
            lt_set(&fs, &o).unwrap(),
            vec![term(1, &[0, 1]), term(1, &[1, 0])]
        );

        let rt = ring_xyt();
        let oh = TateOrder::homogenized(&LogRadii(vec![rat_int(0), rat_int(2)]), TieBreak::Grevlex);
        let gs = vec![
            poly(&rt, &[(1, &[1, 0, 0]), (-7, &[0, 1, 0])]),
            poly(&rt, &[(1, &[0, 1, 1]), (-7, &[0, 2, 0])]),
        ];
        assert_eq!(
            lt_set(&gs, &oh).unwrap(),
            vec![term(-7, &[0, 1, 0]), term(-7, &[0, 2, 0])]
        );
    }

    #[test]
    fn realize_preserves_leading_terms() {
        let r = ring_xy();
        let cases = vec![
            vec![poly(&r, &[(1, &[1, 0]), (1, &[0, 1])])],
            vec![poly(&r, &[(1, &[1, 0])])],
            vec![
                poly(&r, &[(1, &[1, 0]), (-7, &[0, 1])]),
                poly(&r, &[(1, &[0, 1]), (-7, &[0, 2])]),
            ],
        ];
        for fs in cases {
            let r0 = LogRadii::zeros(2);
            let s = realize_term_order(&fs, &r0, TieBreak::Grevlex).unwrap();
            let source = TateOrder::new(r0, TieBreak::Grevlex);
            let target = TateOrder::new(s.clone(), TieBreak::Grevlex);
            for f in &fs {
                let lt_src = leading_term(f, &source).unwrap();
                let lt_tgt = leading_term(f, &target).unwrap();
                assert_eq!(lt_src, lt_tgt);
                // the initial part at s collapses to that single term
                assert_eq!(
                    initial_part(f, &s).unwrap(),
                    Polynomial::from_terms(f.ring(), vec![lt_src])
                );
            }
        }
    }

    #[test]
    fn realize_single_term_returns_input() {
        let r = ring_xy();
        let fs = vec![poly(&r, &[(1, &[1, 0])])];
        let r0 = LogRadii(vec![rat(1, 3), rat_int(2)]);
        assert_eq!(realize_term_order(&fs, &r0, TieBreak::Grevlex).unwrap(), r0);
    }
}
