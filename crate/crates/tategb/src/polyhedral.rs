//! Tate algebras on polyhedral convergence domains: écarts, Mora's weak
//! normal form, a WNF-backed Buchberger loop, and the finite leading-term
//! candidates of principal ideals.
//!
//! A domain is described by the extremal points of a polyhedron whose
//! recession cone is the strictly negative orthant; series converging on it
//! converge on every vertex polydisk. Reduction at radii inside the domain
//! can genuinely fail to terminate while all vertex valuations diverge, so
//! the weak normal form carries a valuation cap and reports convergence to
//! zero as a distinct status instead of silently returning zero.

use std::collections::BTreeSet;

use num_traits::Signed;

use crate::arith::{Rational, ValuedField};
use crate::error::{Error, Result};
use crate::gb::{dedupe_scaled, sort_canonical, spoly, GBasis};
use crate::order::{gauss_val_poly, leading_term, LogRadii, TateOrder, TieBreak};
use crate::poly::{Polynomial, Term};
use crate::polytope::dominated_by_convex_hull;

/// Extremal points of a polyhedron with recession cone the negative orthant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralDomain {
    vertices: Vec<Vec<Rational>>,
}

impl PolyhedralDomain {
    pub fn new(vertices: Vec<Vec<Rational>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidDomain("at least one vertex required".into()));
        }
        let n = vertices[0].len();
        if n == 0 || vertices.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidDomain("inconsistent vertex dimensions".into()));
        }
        for (i, a) in vertices.iter().enumerate() {
            for (j, b) in vertices.iter().enumerate() {
                if i != j && a.iter().zip(b).all(|(x, y)| x <= y) {
                    return Err(Error::InvalidDomain(format!(
                        "vertex {i} is dominated by vertex {j} and is redundant"
                    )));
                }
            }
        }
        Ok(PolyhedralDomain { vertices })
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn vertex_radii(&self) -> Vec<LogRadii> {
        self.vertices.iter().map(|v| LogRadii(v.clone())).collect()
    }

    /// Membership of log-radii: r must be dominated by a convex combination
    /// of the vertices, decided by exact LP.
    pub fn contains(&self, r: &LogRadii) -> Result<bool> {
        if r.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: r.dim() });
        }
        Ok(dominated_by_convex_hull(&r.0, &self.vertices))
    }
}

pub fn domain_member(r: &LogRadii, domain: &PolyhedralDomain) -> Result<bool> {
    domain.contains(r)
}

/// The (s, r)-degree: max of (s - r) . a over the s-support of f.
pub fn deg_sr(
    f: &Polynomial,
    s: &LogRadii,
    r: &LogRadii,
    field: &ValuedField,
) -> Result<Rational> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let diff = LogRadii(
        s.0.iter().zip(&r.0).map(|(a, b)| a - b).collect(),
    );
    let vals: Vec<Rational> = f
        .terms()
        .iter()
        .map(|t| field.val_nonzero(&t.coeff) - s.dot(&t.monomial))
        .collect();
    let min = vals.iter().min().expect("nonzero").clone();
    Ok(f.terms()
        .iter()
        .zip(&vals)
        .filter(|(_, v)| **v == min)
        .map(|(t, _)| diff.dot(&t.monomial))
        .max()
        .expect("nonzero"))
}

fn term_deg_sr(t: &Term, s: &LogRadii, r: &LogRadii) -> Rational {
    let diff = LogRadii(s.0.iter().zip(&r.0).map(|(a, b)| a - b).collect());
    diff.dot(&t.monomial)
}

/// Écart of the first (kind 0) or second (kind 1) type at the vertex s:
/// the valuation defect of the leading term, or the degree defect of the
/// support. Both are nonnegative.
pub fn ecart(
    f: &Polynomial,
    s: &LogRadii,
    order: &TateOrder,
    kind: u8,
) -> Result<Rational> {
    let field = f.ring().field().clone();
    let lt = leading_term(f, order)?;
    match kind {
        0 => {
            let val_lt = field.val_nonzero(&lt.coeff) - s.dot(&lt.monomial);
            let val_f = gauss_val_poly(f, s, &field).expect_finite().clone();
            Ok(val_lt - val_f)
        }
        1 => {
            let r = &order.radii;
            Ok(deg_sr(f, s, r, &field)? - term_deg_sr(&lt, s, r))
        }
        _ => Err(Error::Problem("écart kind must be 0 or 1".into())),
    }
}

fn ecart_tuple(
    f: &Polynomial,
    vertices: &[LogRadii],
    order: &TateOrder,
) -> Result<Vec<Rational>> {
    let mut out = Vec::with_capacity(2 * vertices.len());
    for s in vertices {
        out.push(ecart(f, s, order, 0)?);
        out.push(ecart(f, s, order, 1)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WnfStatus {
    Exact,
    ConvergedToZeroAtCap,
}

/// Result of a weak normal form computation, with the full certificate:
/// multiplier * f = sum(cofactor_i * g_i) + remainder holds exactly, the
/// multiplier's leading term is a nonzero constant, and in the exact case
/// the remainder's leading term is reducible by no divisor.
#[derive(Debug, Clone)]
pub struct WnfResult {
    pub remainder: Polynomial,
    pub status: WnfStatus,
    pub multiplier: Polynomial,
    pub cofactors: Vec<Polynomial>,
    pub cap: Rational,
    pub steps: usize,
}

/// Per-step monitor used to witness the termination argument: the écart
/// tuples of the chosen reducer and of the partial remainder, and the vertex
/// valuations before and after the step.
#[derive(Debug, Clone)]
pub struct WnfTraceStep {
    pub reducer_ecarts: Vec<Rational>,
    pub h_ecarts: Vec<Rational>,
    /// Per vertex: both écart kinds of the reducer are bounded by h's.
    pub hypothesis: Vec<bool>,
    pub val_before: Vec<Rational>,
    /// None when the step canceled h entirely.
    pub val_after: Option<Vec<Rational>>,
    pub deg_before: Vec<Rational>,
    pub deg_after: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, Default)]
pub struct WnfTrace {
    pub steps: Vec<WnfTraceStep>,
}

impl WnfTrace {
    /// Steps where the per-vertex hypothesis held but the vertex valuation
    /// dropped, or stayed equal while the (s, r)-degree grew.
    pub fn monotonicity_violations(&self) -> usize {
        let mut count = 0;
        for step in &self.steps {
            for (i, hyp) in step.hypothesis.iter().enumerate() {
                if !hyp {
                    continue;
                }
                match (&step.val_after, &step.deg_after) {
                    (None, _) => {}
                    (Some(va), Some(da)) => {
                        let val_dropped = va[i] < step.val_before[i];
                        let deg_grew =
                            va[i] == step.val_before[i] && da[i] > step.deg_before[i];
                        if val_dropped || deg_grew {
                            count += 1;
                        }
                    }
                    (Some(va), None) => {
                        if va[i] < step.val_before[i] {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }
}

struct Certified {
    poly: Polynomial,
    /// coefficient of f
    mu: Polynomial,
    /// coefficients of the original divisors
    cof: Vec<Polynomial>,
}

/// Mora weak normal form of f against the divisors over the domain, working
/// at log-radii r inside it. The reducer minimizing the interleaved écart
/// tuple (first kind then second kind, vertex by vertex) is chosen each
/// step; when every écart of the choice strictly exceeds the corresponding
/// écart of the partial remainder, the partial remainder joins the pool.
pub fn mora_wnf(
    f: &Polynomial,
    divisors: &[Polynomial],
    domain: &PolyhedralDomain,
    r: &LogRadii,
    cap: &Rational,
    tie: TieBreak,
) -> Result<WnfResult> {
    Ok(mora_wnf_traced(f, divisors, domain, r, cap, tie)?.0)
}

pub fn mora_wnf_traced(
    f: &Polynomial,
    divisors: &[Polynomial],
    domain: &PolyhedralDomain,
    r: &LogRadii,
    cap: &Rational,
    tie: TieBreak,
) -> Result<(WnfResult, WnfTrace)> {
    if !domain.contains(r)? {
        return Err(Error::OutsideDomain);
    }
    if !cap.is_positive() {
        return Err(Error::InvalidCap(crate::arith::format_rational(cap)));
    }
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let order = TateOrder::new(r.clone(), tie);
    let vertices = domain.vertex_radii();
    let zero = Polynomial::zero(&ring);
    let one = Polynomial::one(&ring);

    let mut pool: Vec<Certified> = divisors
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut cof = vec![zero.clone(); divisors.len()];
            cof[i] = one.clone();
            Certified { poly: g.clone(), mu: zero.clone(), cof }
        })
        .collect();
    let mut h = Certified {
        poly: f.clone(),
        mu: one.clone(),
        cof: vec![zero.clone(); divisors.len()],
    };
    let mut trace = WnfTrace::default();
    let mut steps = 0usize;

    let finish = |h: Certified, status: WnfStatus, steps: usize| {
        // h = mu f + sum cof_i g_i, so mu f = sum (-cof_i) g_i + h
        let result = WnfResult {
            remainder: h.poly,
            status,
            multiplier: h.mu,
            cofactors: h.cof.iter().map(|c| -c).collect(),
            cap: cap.clone(),
            steps,
        };
        #[cfg(debug_assertions)]
        {
            let mut rhs = result.remainder.clone();
            for (u, g) in result.cofactors.iter().zip(divisors) {
                rhs = &rhs + &(u * g);
            }
            debug_assert_eq!(&result.multiplier * f, rhs, "certificate identity broke");
            let lt_mu = leading_term(&result.multiplier, &order).expect("multiplier nonzero");
            debug_assert!(lt_mu.monomial.is_one(), "multiplier lost invertibility");
        }
        result
    };

    loop {
        if h.poly.is_zero() {
            return Ok((finish(h, WnfStatus::Exact, steps), trace));
        }
        let lt_h = leading_term(&h.poly, &order)?;
        let mut applicable: Vec<usize> = Vec::new();
        for (i, cand) in pool.iter().enumerate() {
            let lt_g = leading_term(&cand.poly, &order)?;
            if lt_g.monomial.divides(&lt_h.monomial) {
                applicable.push(i);
            }
        }
        if applicable.is_empty() {
            return Ok((finish(h, WnfStatus::Exact, steps), trace));
        }
        let diverged = gauss_val_poly(&h.poly, r, &field).expect_finite() > cap
            && vertices
                .iter()
                .all(|s| gauss_val_poly(&h.poly, s, &field).expect_finite() > cap);
        if diverged {
            return Ok((finish(h, WnfStatus::ConvergedToZeroAtCap, steps), trace));
        }

        let mut best = applicable[0];
        let mut best_tuple = ecart_tuple(&pool[best].poly, &vertices, &order)?;
        for &i in &applicable[1..] {
            let tuple = ecart_tuple(&pool[i].poly, &vertices, &order)?;
            if tuple < best_tuple {
                best = i;
                best_tuple = tuple;
            }
        }
        let h_tuple = ecart_tuple(&h.poly, &vertices, &order)?;
        let all_strictly_larger = best_tuple
            .iter()
            .zip(&h_tuple)
            .all(|(g, hh)| g > hh);
        if all_strictly_larger {
            pool.push(Certified {
                poly: h.poly.clone(),
                mu: h.mu.clone(),
                cof: h.cof.clone(),
            });
        }

        let val_before: Vec<Rational> = vertices
            .iter()
            .map(|s| gauss_val_poly(&h.poly, s, &field).expect_finite().clone())
            .collect();
        let deg_before: Vec<Rational> = vertices
            .iter()
            .map(|s| deg_sr(&h.poly, s, r, &field))
            .collect::<Result<_>>()?;
        let hypothesis: Vec<bool> = (0..vertices.len())
            .map(|i| {
                best_tuple[2 * i] <= h_tuple[2 * i] && best_tuple[2 * i + 1] <= h_tuple[2 * i + 1]
            })
            .collect();

        // h := h - (LT(h)/LT(g)) g, certificates updated alongside
        let g = &pool[best];
        let lt_g = leading_term(&g.poly, &order)?;
        let factor = lt_h.quotient(&lt_g);
        h = Certified {
            poly: &h.poly - &g.poly.mul_term(&factor),
            mu: &h.mu - &g.mu.mul_term(&factor),
            cof: h
                .cof
                .iter()
                .zip(&g.cof)
                .map(|(a, b)| a - &b.mul_term(&factor))
                .collect(),
        };
        steps += 1;

        let (val_after, deg_after) = if h.poly.is_zero() {
            (None, None)
        } else {
            (
                Some(
                    vertices
                        .iter()
                        .map(|s| gauss_val_poly(&h.poly, s, &field).expect_finite().clone())
                        .collect(),
                ),
                Some(
                    vertices
                        .iter()
                        .map(|s| deg_sr(&h.poly, s, r, &field))
                        .collect::<Result<_>>()?,
                ),
            )
        };
        trace.steps.push(WnfTraceStep {
            reducer_ecarts: best_tuple,
            h_ecarts: h_tuple,
            hypothesis,
            val_before,
            val_after,
            deg_before,
            deg_after,
        });
    }
}

/// Buchberger loop over the domain with the weak normal form as reduction.
/// S-pairs whose normal form only converges to zero at the cap are discarded
/// but flag the basis as precision-conditional.
pub fn local_gb_wnf(
    gens: &[Polynomial],
    domain: &PolyhedralDomain,
    r: &LogRadii,
    cap: &Rational,
    tie: TieBreak,
) -> Result<GBasis> {
    if !domain.contains(r)? {
        return Err(Error::OutsideDomain);
    }
    if !cap.is_positive() {
        return Err(Error::InvalidCap(crate::arith::format_rational(cap)));
    }
    let order = TateOrder::new(r.clone(), tie);
    let mut basis = dedupe_scaled(gens.to_vec());
    if basis.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut precision_conditional = false;
    let mut pending: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let enqueue = |pending: &mut BTreeSet<(u64, usize, usize)>,
                       basis: &[Polynomial],
                       i: usize,
                       j: usize|
     -> Result<()> {
        let a = leading_term(&basis[i], &order)?.monomial;
        let b = leading_term(&basis[j], &order)?.monomial;
        pending.insert((a.lcm(&b).total_degree(), i, j));
        Ok(())
    };
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            enqueue(&mut pending, &basis, i, j)?;
        }
    }
    while let Some(entry) = pending.pop_first() {
        let (_, i, j) = entry;
        let s = spoly(&basis[i], &basis[j], &order)?;
        if s.is_zero() {
            continue;
        }
        let res = mora_wnf(&s, &basis, domain, r, cap, tie)?;
        match res.status {
            WnfStatus::ConvergedToZeroAtCap => {
                precision_conditional = true;
            }
            WnfStatus::Exact => {
                if !res.remainder.is_zero() {
                    let k = basis.len();
                    basis.push(res.remainder.canonical_scaled());
                    for l in 0..k {
                        enqueue(&mut pending, &basis, l, k)?;
                    }
                }
            }
        }
    }
    Ok(GBasis {
        generators: basis,
        order,
        reduced: false,
        precision_conditional,
    })
}

/// The finitely many terms of f that can lead it anywhere on the domain:
/// minimal elements of the lifted tuples (vertex valuations, exponents)
/// under the componentwise order.
pub fn terms_p_principal(
    f: &Polynomial,
    domain: &PolyhedralDomain,
    field: &ValuedField,
) -> Result<Vec<Term>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let vertices = domain.vertex_radii();
    let lifted: Vec<Vec<Rational>> = f
        .terms()
        .iter()
        .map(|t| {
            let mut v: Vec<Rational> = vertices
                .iter()
                .map(|s| field.val_nonzero(&t.coeff) - s.dot(&t.monomial))
                .collect();
            v.extend(
                t.monomial
                    .0
                    .iter()
                    .map(|&e| Rational::from_integer(e.into())),
            );
            v
        })
        .collect();
    let dominated = |a: &[Rational], b: &[Rational]| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut out = Vec::new();
    for (i, t) in f.terms().iter().enumerate() {
        let minimal = lifted
            .iter()
            .enumerate()
            .all(|(j, other)| j == i || !dominated(other, &lifted[i]));
        if minimal {
            out.push(t.clone());
        }
    }
    Ok(out)
}

/// Convenience: the sum-of-terms view used when printing Terms_P results.
pub fn terms_as_polynomials(ring: &crate::poly::Ring, terms: &[Term]) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = terms
        .iter()
        .map(|t| Polynomial::from_terms(ring, vec![t.clone()]))
        .collect();
    sort_canonical(&mut out);
    out
}
