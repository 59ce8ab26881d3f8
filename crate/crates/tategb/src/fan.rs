//! Weighted degrees, initial forms, the analytic Gröbner fan of a
//! homogeneous ideal, and its tropical subfan.
//!
//! Weights live in Q_{<0} x Q^n; the first coordinate scales the coefficient
//! valuation, the rest the exponents. A weight is compatible with log-radii
//! r = -(w_1/w_0, ..., w_n/w_0), under which the weighted degree is w_0 times
//! the Gauss valuation, so initial forms agree with initial parts. Cones of
//! weights sharing all initial forms of a reduced basis are polyhedral, and
//! the fan is traversed by exact facet crossing. Everything is exact; the
//! only search is a halving step size, and each halving is justified by an
//! exact violation found at the previous size.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{Rational, ValuedField};
use crate::classical;
use crate::error::{Error, Result};
use crate::gb::{reduced_gb, sort_canonical};
use crate::lp::{lp_feasible, LinConstraint, LpProblem};
use crate::order::{realize_term_order, LogRadii, TateOrder, TieBreak};
use crate::poly::{Polynomial, Term};

/// System of weights (w_0, ..., w_n) with w_0 strictly negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector(pub Vec<Rational>);

impl WeightVector {
    pub fn new(w: Vec<Rational>) -> Result<Self> {
        if w.is_empty() || !w[0].is_negative() {
            return Err(Error::Problem(
                "a system of weights needs w0 < 0".into(),
            ));
        }
        Ok(WeightVector(w))
    }

    /// (-1, r_1, ..., r_n), the canonical weight compatible with r.
    pub fn from_radii(r: &LogRadii) -> Self {
        let mut w = Vec::with_capacity(r.dim() + 1);
        w.push(-Rational::one());
        w.extend(r.0.iter().cloned());
        WeightVector(w)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Weighted degree of a term as a linear form in w: [val(c), a_1, ..., a_n].
fn deg_form(t: &Term, field: &ValuedField) -> Vec<Rational> {
    let mut form = Vec::with_capacity(1 + t.monomial.n_vars());
    form.push(field.val_nonzero(&t.coeff));
    form.extend(
        t.monomial
            .0
            .iter()
            .map(|&e| Rational::from_integer(e.into())),
    );
    form
}

fn eval_form(form: &[Rational], w: &[Rational]) -> Rational {
    crate::lp::dot(form, w)
}

/// Weighted degree `w_0 val(c) + sum w_i a_i` of a term.
pub fn deg_w(t: &Term, w: &WeightVector, field: &ValuedField) -> Rational {
    eval_form(&deg_form(t, field), &w.0)
}

/// The compatible log-radii `-(w_1/w_0, ..., w_n/w_0)`.
pub fn compatible_radii(w: &WeightVector) -> LogRadii {
    let w0 = &w.0[0];
    LogRadii(w.0[1..].iter().map(|wi| -(wi / w0)).collect())
}

/// Initial form: the sum of the terms of maximal weighted degree. Agrees
/// with the initial part at the compatible radii.
pub fn init_w(f: &Polynomial, w: &WeightVector, field: &ValuedField) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let degs: Vec<Rational> = f.terms().iter().map(|t| deg_w(t, w, field)).collect();
    let max = degs.iter().max().expect("nonzero").clone();
    let terms = f
        .terms()
        .iter()
        .zip(&degs)
        .filter(|(_, d)| **d == max)
        .map(|(t, _)| t.clone())
        .collect();
    Ok(Polynomial::from_terms(f.ring(), terms))
}

fn validate_homogeneous(fs: &[Polynomial]) -> Result<()> {
    if fs.is_empty() {
        return Err(Error::Problem("no generators".into()));
    }
    for f in fs {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_homogeneous() {
            return Err(Error::NonHomogeneous(f.to_string()));
        }
    }
    Ok(())
}

/// Generators of the initial ideal: initial forms of the reduced local basis
/// at the compatible radii.
pub fn initial_ideal_gens(
    fs: &[Polynomial],
    w: &WeightVector,
    tie: TieBreak,
) -> Result<Vec<Polynomial>> {
    validate_homogeneous(fs)?;
    let field = fs[0].ring().field().clone();
    let r = compatible_radii(w);
    let basis = reduced_gb(fs, &TateOrder::new(r, tie))?;
    let mut inits = basis
        .generators
        .iter()
        .map(|g| init_w(g, w, &field))
        .collect::<Result<Vec<_>>>()?;
    sort_canonical(&mut inits);
    Ok(inits)
}

/// Scales a rational form to a primitive integer vector; equalities also fix
/// the sign of the first nonzero entry.
fn canonical_form(form: &[Rational], fix_sign: bool) -> Vec<Rational> {
    let mut denom = BigInt::one();
    for c in form {
        denom = denom.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = form
        .iter()
        .map(|c| c.numer() * (&denom / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if !g.is_zero() {
        for v in ints.iter_mut() {
            *v = &*v / &g;
        }
    }
    if fix_sign {
        if let Some(first) = ints.iter().find(|v| !v.is_zero()) {
            if first.is_negative() {
                for v in ints.iter_mut() {
                    *v = -v.clone();
                }
            }
        }
    }
    ints.into_iter().map(Rational::from_integer).collect()
}

/// The relative interior of an analytic Gröbner cone: weights where every
/// stored generator keeps the same initial form. Equalities tie the initial
/// support together, strict inequalities dominate the remaining terms, and
/// w_0 < 0 is implicit throughout.
#[derive(Debug, Clone)]
pub struct GroebnerCone {
    /// h . w = 0 for every h here.
    pub equalities: Vec<Vec<Rational>>,
    /// h . w > 0 for every h here.
    pub strict: Vec<Vec<Rational>>,
    pub sample: WeightVector,
    /// Reduced local basis at the sample.
    pub basis: Vec<Polynomial>,
    /// Initial forms of the basis at the sample, aligned with `basis`.
    pub initial_forms: Vec<Polynomial>,
}

impl GroebnerCone {
    pub fn dim_ambient(&self) -> usize {
        self.sample.dim()
    }

    /// Relative-interior membership.
    pub fn contains(&self, w: &[Rational]) -> bool {
        if w.len() != self.sample.dim() || !w[0].is_negative() {
            return false;
        }
        self.equalities.iter().all(|h| eval_form(h, w).is_zero())
            && self.strict.iter().all(|h| eval_form(h, w).is_positive())
    }

    /// Closure membership (w_0 = 0 still excluded; weights need w_0 < 0).
    pub fn closure_contains(&self, w: &[Rational]) -> bool {
        if w.len() != self.sample.dim() || !w[0].is_negative() {
            return false;
        }
        self.equalities.iter().all(|h| eval_form(h, w).is_zero())
            && self.strict.iter().all(|h| !eval_form(h, w).is_negative())
    }

    /// A maximal cone constrains nothing by equalities: every initial form
    /// is a single term.
    pub fn is_maximal(&self) -> bool {
        self.equalities.is_empty()
    }

    /// Deterministic identity for deduplication and sorting.
    pub fn canonical_key(&self) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
        let mut eq = self.equalities.clone();
        eq.sort();
        let mut st = self.strict.clone();
        st.sort();
        (eq, st)
    }
}

/// Builds the Gröbner cone of the weight w for the homogeneous ideal spanned
/// by fs: compute the reduced local basis at the compatible radii, read off
/// each generator's initial support, and cut the weight space accordingly.
pub fn cone_of(fs: &[Polynomial], w: &WeightVector, tie: TieBreak) -> Result<GroebnerCone> {
    validate_homogeneous(fs)?;
    let field = fs[0].ring().field().clone();
    let r = compatible_radii(w);
    let basis = reduced_gb(fs, &TateOrder::new(r, tie))?;
    let mut equalities: Vec<Vec<Rational>> = Vec::new();
    let mut strict: Vec<Vec<Rational>> = Vec::new();
    let mut initial_forms = Vec::with_capacity(basis.generators.len());
    for g in &basis.generators {
        let init = init_w(g, w, &field)?;
        let init_forms: Vec<Vec<Rational>> =
            init.terms().iter().map(|t| deg_form(t, &field)).collect();
        for pair in init_forms.windows(2) {
            let diff: Vec<Rational> = pair[0]
                .iter()
                .zip(&pair[1])
                .map(|(a, b)| a - b)
                .collect();
            let h = canonical_form(&diff, true);
            if h.iter().any(|c| !c.is_zero()) && !equalities.contains(&h) {
                equalities.push(h);
            }
        }
        let top = &init_forms[0];
        for t in g.terms() {
            if init.coeff_of(&t.monomial).is_some() {
                continue;
            }
            let low = deg_form(t, &field);
            let diff: Vec<Rational> = top.iter().zip(&low).map(|(a, b)| a - b).collect();
            let h = canonical_form(&diff, false);
            if !strict.contains(&h) {
                strict.push(h);
            }
        }
        initial_forms.push(init);
    }
    equalities.sort();
    strict.sort();
    let cone = GroebnerCone {
        equalities,
        strict,
        sample: w.clone(),
        basis: basis.generators,
        initial_forms,
    };
    debug_assert!(cone.contains(&w.0));
    Ok(cone)
}

/// An exact interior point of the cone displaced from the sample along the
/// given direction: the step is half the minimal slack ratio, so every
/// strict constraint keeps at least half its value.
pub fn interior_sample(cone: &GroebnerCone, direction: &[Rational]) -> Option<Vec<Rational>> {
    let w = &cone.sample.0;
    // directions breaking an equality leave the relative interior
    if cone
        .equalities
        .iter()
        .any(|h| !eval_form(h, direction).is_zero())
    {
        return None;
    }
    let mut eps = Rational::one();
    // keep w0 negative
    let mut forms: Vec<Vec<Rational>> = cone.strict.clone();
    let mut w0_form = vec![Rational::zero(); w.len()];
    w0_form[0] = -Rational::one();
    forms.push(w0_form);
    for h in &forms {
        let slope = eval_form(h, direction);
        if slope.is_negative() {
            let slack = eval_form(h, w);
            let bound = slack / -slope;
            if bound < eps {
                eps = bound;
            }
        }
    }
    eps /= Rational::from_integer(2.into());
    Some(
        w.iter()
            .zip(direction)
            .map(|(a, d)| a + &eps * d)
            .collect(),
    )
}

fn facet_interior(cone: &GroebnerCone, j: usize) -> Option<Vec<Rational>> {
    let dim = cone.sample.dim();
    let mut constraints = Vec::new();
    for h in &cone.equalities {
        constraints.push(LinConstraint::ge(h.clone(), Rational::zero()));
        constraints.push(LinConstraint::le(h.clone(), Rational::zero()));
    }
    constraints.push(LinConstraint::ge(cone.strict[j].clone(), Rational::zero()));
    constraints.push(LinConstraint::le(cone.strict[j].clone(), Rational::zero()));
    for (k, h) in cone.strict.iter().enumerate() {
        if k != j {
            constraints.push(LinConstraint::gt(h.clone(), Rational::zero()));
        }
    }
    let mut w0 = vec![Rational::zero(); dim];
    w0[0] = -Rational::one();
    constraints.push(LinConstraint::gt(w0, Rational::zero()));
    lp_feasible(&LpProblem::feasibility(dim, constraints))
}

/// Crosses the facet j of a maximal cone from an interior point z of that
/// facet. The step halves until the landing point sits in a maximal cone
/// whose closure still holds z, which identifies the unique neighbor.
fn cross_facet(
    fs: &[Polynomial],
    tie: TieBreak,
    cone: &GroebnerCone,
    j: usize,
    z: &[Rational],
    known: &[GroebnerCone],
) -> Result<Option<GroebnerCone>> {
    let h = &cone.strict[j];
    let mut eps = Rational::one();
    for _ in 0..256 {
        let y: Vec<Rational> = z
            .iter()
            .zip(h)
            .map(|(zi, hi)| zi - &eps * hi)
            .collect();
        let ok = y[0].is_negative()
            && cone
                .strict
                .iter()
                .enumerate()
                .all(|(k, hk)| k == j || eval_form(hk, &y).is_positive());
        if ok {
            if let Some(k) = known.iter().find(|c| c.contains(&y)) {
                if k.closure_contains(z) {
                    return Ok(None);
                }
            } else {
                let cand = cone_of(fs, &WeightVector::new(y.clone())?, tie)?;
                if cand.is_maximal() && cand.closure_contains(z) {
                    return Ok(Some(cand));
                }
            }
        }
        eps /= Rational::from_integer(2.into());
    }
    Err(Error::LpInternal("facet crossing failed to stabilize".into()))
}

/// A weight defining a monomial order for the given reduced basis at its own
/// sample: constructed by perturbing the compatible radii until the leading
/// terms separate by valuation alone.
fn start_cone(fs: &[Polynomial], tie: TieBreak) -> Result<GroebnerCone> {
    let n = fs[0].ring().n_vars();
    let mut radii = LogRadii::zeros(n);
    for _ in 0..16 {
        let basis = reduced_gb(fs, &TateOrder::new(radii.clone(), tie))?;
        let s = realize_term_order(&basis.generators, &radii, tie)?;
        let w = WeightVector::from_radii(&s);
        let cone = cone_of(fs, &w, tie)?;
        if cone.is_maximal() {
            return Ok(cone);
        }
        radii = s;
    }
    Err(Error::LpInternal("could not reach a maximal starting cone".into()))
}

fn push_sorted(cones: &mut [GroebnerCone]) {
    cones.sort_by_key(|c| c.canonical_key());
}

/// xorshift shuffle for the seeded traversal-order stability checks.
fn shuffle(idx: &mut [usize], mut state: u64) {
    state = state.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
    for i in (1..idx.len()).rev() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        idx.swap(i, (state % (i as u64 + 1)) as usize);
    }
}

/// All maximal cones of the analytic Gröbner fan, by breadth-first facet
/// crossing from a generic starting weight. The traversal order is
/// deterministic; a seed only permutes it, never the resulting set.
pub fn groebner_fan(fs: &[Polynomial], tie: TieBreak) -> Result<Vec<GroebnerCone>> {
    groebner_fan_seeded(fs, tie, None)
}

pub fn groebner_fan_seeded(
    fs: &[Polynomial],
    tie: TieBreak,
    seed: Option<u64>,
) -> Result<Vec<GroebnerCone>> {
    validate_homogeneous(fs)?;
    let start = start_cone(fs, tie)?;
    let mut cones = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(cone) = queue.pop_front() {
        let mut facets: Vec<usize> = (0..cone.strict.len()).collect();
        if let Some(s) = seed {
            shuffle(&mut facets, s.wrapping_add(cones.len() as u64));
        }
        for j in facets {
            let Some(z) = facet_interior(&cone, j) else {
                continue;
            };
            if let Some(neighbor) = cross_facet(fs, tie, &cone, j, &z, &cones)? {
                cones.push(neighbor.clone());
                queue.push_back(neighbor);
            }
        }
    }
    push_sorted(&mut cones);
    Ok(cones)
}

/// Every cone of the fan: the maximal ones and all faces reachable as
/// equality-subsets of their facets. Faces are deduplicated by mutual
/// sample membership.
pub fn enumerate_faces(
    fs: &[Polynomial],
    tie: TieBreak,
    maximal: &[GroebnerCone],
) -> Result<Vec<GroebnerCone>> {
    let mut out: Vec<GroebnerCone> = maximal.to_vec();
    for cone in maximal {
        let facet_ids: Vec<usize> = (0..cone.strict.len())
            .filter(|&j| facet_interior(cone, j).is_some())
            .collect();
        let subsets = 1u64
            .checked_shl(facet_ids.len() as u32)
            .ok_or_else(|| Error::Problem("too many facets to enumerate".into()))?;
        for mask in 1..subsets {
            let dim = cone.sample.dim();
            let mut constraints = Vec::new();
            for (bit, &j) in facet_ids.iter().enumerate() {
                let h = cone.strict[j].clone();
                if mask & (1 << bit) != 0 {
                    constraints.push(LinConstraint::ge(h.clone(), Rational::zero()));
                    constraints.push(LinConstraint::le(h, Rational::zero()));
                } else {
                    constraints.push(LinConstraint::gt(h, Rational::zero()));
                }
            }
            for h in &cone.equalities {
                constraints.push(LinConstraint::ge(h.clone(), Rational::zero()));
                constraints.push(LinConstraint::le(h.clone(), Rational::zero()));
            }
            let mut w0 = vec![Rational::zero(); dim];
            w0[0] = -Rational::one();
            constraints.push(LinConstraint::gt(w0, Rational::zero()));
            let Some(z) = lp_feasible(&LpProblem::feasibility(dim, constraints)) else {
                continue;
            };
            if out.iter().any(|c| c.contains(&z)) {
                continue;
            }
            out.push(cone_of(fs, &WeightVector::new(z)?, tie)?);
        }
    }
    push_sorted(&mut out);
    Ok(out)
}

/// Monomial containment of a polynomial ideal over the rationals, through
/// saturation by the product of the variables.
pub fn contains_monomial(gens: &[Polynomial]) -> Result<bool> {
    classical::contains_monomial(gens)
}

/// The tropical subfan: cones of the Gröbner fan whose initial ideal is
/// monomial-free.
#[derive(Debug, Clone)]
pub struct TropicalFan {
    pub cones: Vec<GroebnerCone>,
}

/// Every cone of the fan flagged by monomial-freeness of its initial ideal.
/// A weight defining a monomial order always carries a monomial initial
/// ideal, so maximal cones are always rejected.
pub fn tropical_scan(
    fs: &[Polynomial],
    tie: TieBreak,
) -> Result<Vec<(GroebnerCone, bool)>> {
    let maximal = groebner_fan(fs, tie)?;
    let all = enumerate_faces(fs, tie, &maximal)?;
    let flags: Vec<Result<bool>> = all
        .par_iter()
        .map(|cone| {
            if cone.initial_forms.iter().any(|f| f.n_terms() == 1) {
                return Ok(false);
            }
            Ok(!contains_monomial(&cone.initial_forms)?)
        })
        .collect();
    let mut out = Vec::with_capacity(all.len());
    for (cone, flag) in all.into_iter().zip(flags) {
        out.push((cone, flag?));
    }
    Ok(out)
}

pub fn tropical_variety(fs: &[Polynomial], tie: TieBreak) -> Result<TropicalFan> {
    let cones = tropical_scan(fs, tie)?
        .into_iter()
        .filter(|(_, free)| *free)
        .map(|(c, _)| c)
        .collect();
    Ok(TropicalFan { cones })
}
