//! Newton polytopes of polynomials over a valued field and vertex
//! enumeration of their Minkowski sums, with exact certificates.
//!
//! A term c X^a lifts to the point (val(c), a). The polytope is the convex
//! hull of the lifted points plus the recession ray (1, 0, ..., 0), so
//! certifying directions can always be scaled to U = (1, u). A candidate sum
//! of per-factor points is a vertex of the Minkowski sum precisely when the
//! per-factor strict selection cones admit a common direction, which an
//! exact LP decides.

use num_traits::{One, Zero};

use crate::arith::{Rational, ValuedField};
use crate::error::{Error, Result};
use crate::lp::{lp_feasible, LinConstraint, LpProblem};
use crate::order::LogRadii;
use crate::poly::Polynomial;

/// Lifted support of one polynomial: one point of Q^{1+n} per term, plus the
/// implicit recession ray (1, 0, ..., 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolytope {
    pub points: Vec<Vec<Rational>>,
}

impl NewtonPolytope {
    pub fn dim(&self) -> usize {
        self.points.first().map(|p| p.len()).unwrap_or(0)
    }
}

/// A vertex of the Minkowski sum together with a direction U = (1, u) whose
/// scalar product is uniquely minimized there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCertificate {
    pub vertex: Vec<Rational>,
    /// The u of U = (1, u).
    pub direction: Vec<Rational>,
    /// Which term of each factor the vertex selects.
    pub selection: Vec<usize>,
}

impl VertexCertificate {
    /// Log-radii whose Gauss valuation ranks terms exactly as U ranks lifted
    /// points: val(c) - r.a = (val(c), a) . (1, u) requires r = -u.
    pub fn log_radii(&self) -> LogRadii {
        LogRadii(self.direction.iter().map(|c| -c.clone()).collect())
    }

    pub fn functional(&self, point: &[Rational]) -> Rational {
        let mut acc = point[0].clone();
        for (u, p) in self.direction.iter().zip(&point[1..]) {
            acc += u * p;
        }
        acc
    }
}

/// Lifts the terms of a nonzero polynomial.
pub fn newton_polytope(f: &Polynomial, field: &ValuedField) -> Result<NewtonPolytope> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let points = f
        .terms()
        .iter()
        .map(|t| {
            let mut p = Vec::with_capacity(1 + t.monomial.n_vars());
            p.push(field.val_nonzero(&t.coeff));
            p.extend(
                t.monomial
                    .0
                    .iter()
                    .map(|&e| Rational::from_integer(e.into())),
            );
            p
        })
        .collect();
    Ok(NewtonPolytope { points })
}

/// Sum of the selected lifted points, one per factor.
fn candidate_point(lifted: &[NewtonPolytope], selection: &[usize]) -> Vec<Rational> {
    let dim = lifted[0].dim();
    let mut acc = vec![Rational::zero(); dim];
    for (np, &j) in lifted.iter().zip(selection) {
        for (a, b) in acc.iter_mut().zip(&np.points[j]) {
            *a += b;
        }
    }
    acc
}

/// Every candidate sum point, indexed over the full selection product.
pub fn minkowski_points(fs: &[Polynomial], field: &ValuedField) -> Result<Vec<Vec<Rational>>> {
    let lifted = lift_all(fs, field)?;
    let mut out = Vec::new();
    let mut sel = vec![0usize; lifted.len()];
    loop {
        out.push(candidate_point(&lifted, &sel));
        if !advance(&mut sel, &lifted) {
            return Ok(out);
        }
    }
}

fn advance(sel: &mut [usize], lifted: &[NewtonPolytope]) -> bool {
    for i in (0..sel.len()).rev() {
        sel[i] += 1;
        if sel[i] < lifted[i].points.len() {
            return true;
        }
        sel[i] = 0;
    }
    false
}

fn lift_all(fs: &[Polynomial], field: &ValuedField) -> Result<Vec<NewtonPolytope>> {
    if fs.is_empty() {
        return Err(Error::Problem("no polynomials".into()));
    }
    fs.iter().map(|f| newton_polytope(f, field)).collect()
}

/// Constraints forcing factor i to strictly select its j-th lifted point
/// under directions (1, u): one strict inequality per competing point.
fn selection_constraints(np: &NewtonPolytope, j: usize, out: &mut Vec<LinConstraint>) {
    let n = np.dim() - 1;
    let chosen = &np.points[j];
    for (k, other) in np.points.iter().enumerate() {
        if k == j {
            continue;
        }
        // (other - chosen) . (1, u) > 0
        let mut coeffs = Vec::with_capacity(n);
        for d in 1..=n {
            coeffs.push(&other[d] - &chosen[d]);
        }
        let rhs = &chosen[0] - &other[0];
        out.push(LinConstraint::gt(coeffs, rhs));
    }
}

fn cone_witness(
    lifted: &[NewtonPolytope],
    selection: &[usize],
    upto: usize,
) -> Option<Vec<Rational>> {
    let n = lifted[0].dim() - 1;
    let mut constraints = Vec::new();
    for (np, &j) in lifted.iter().zip(selection).take(upto) {
        selection_constraints(np, j, &mut constraints);
    }
    lp_feasible(&LpProblem::feasibility(n, constraints))
}

/// Enumerates the vertices of the Minkowski sum of the factor polytopes with
/// certifying directions. The walk fixes one factor selection at a time and
/// prunes any partial selection whose partial cone is already empty; leaves
/// that survive carry the full cone's interior witness.
pub fn minkowski_vertices(
    fs: &[Polynomial],
    field: &ValuedField,
) -> Result<Vec<VertexCertificate>> {
    let lifted = lift_all(fs, field)?;
    let mut out = Vec::new();
    let mut sel = vec![0usize; lifted.len()];
    walk(&lifted, &mut sel, 0, &mut out);
    out.sort_by(|a, b| a.vertex.cmp(&b.vertex));
    Ok(out)
}

fn walk(
    lifted: &[NewtonPolytope],
    sel: &mut Vec<usize>,
    depth: usize,
    out: &mut Vec<VertexCertificate>,
) {
    for j in 0..lifted[depth].points.len() {
        sel[depth] = j;
        let Some(u) = cone_witness(lifted, sel, depth + 1) else {
            continue;
        };
        if depth + 1 == lifted.len() {
            out.push(VertexCertificate {
                vertex: candidate_point(lifted, sel),
                direction: u,
                selection: sel.clone(),
            });
        } else {
            walk(lifted, sel, depth + 1, out);
        }
    }
    sel[depth] = 0;
}

/// Brute-force vertex count: tests the full cone of every selection without
/// pruning. Meant as an oracle for the pruned walk.
pub fn minkowski_vertex_count_bruteforce(
    fs: &[Polynomial],
    field: &ValuedField,
) -> Result<usize> {
    Ok(minkowski_selections_bruteforce(fs, field)?.len())
}

/// All selections whose strict cone is nonempty, enumerated without pruning.
pub fn minkowski_selections_bruteforce(
    fs: &[Polynomial],
    field: &ValuedField,
) -> Result<Vec<Vec<usize>>> {
    let lifted = lift_all(fs, field)?;
    let mut out = Vec::new();
    let mut sel = vec![0usize; lifted.len()];
    loop {
        if cone_witness(&lifted, &sel, lifted.len()).is_some() {
            out.push(sel.clone());
        }
        if !advance(&mut sel, &lifted) {
            return Ok(out);
        }
    }
}

/// Direct evaluation check of a certificate against candidate points.
pub fn certificate_is_valid(cert: &VertexCertificate, candidates: &[Vec<Rational>]) -> bool {
    let v = cert.functional(&cert.vertex);
    candidates
        .iter()
        .filter(|q| **q != cert.vertex)
        .all(|q| cert.functional(q) > v)
}

/// Feasibility wrapper kept close to the geometry: an exact rational point
/// of the possibly-open polyhedron, if any.
pub fn lp_feasible_point(problem: &LpProblem) -> Option<Vec<Rational>> {
    lp_feasible(problem)
}

/// Membership of log-radii in the closed convex region dominated by convex
/// combinations of the given vertices (used by the polyhedral domains).
pub fn dominated_by_convex_hull(r: &[Rational], vertices: &[Vec<Rational>]) -> bool {
    let n = r.len();
    let l = vertices.len();
    // variables: lambda_1..lambda_l; constraints: lambda >= 0, sum = 1,
    // sum lambda_i s_i >= r componentwise
    let mut constraints = Vec::new();
    for i in 0..l {
        let mut c = vec![Rational::zero(); l];
        c[i] = Rational::one();
        constraints.push(LinConstraint::ge(c, Rational::zero()));
    }
    let ones = vec![Rational::one(); l];
    constraints.push(LinConstraint::ge(ones.clone(), Rational::one()));
    constraints.push(LinConstraint::le(ones, Rational::one()));
    for d in 0..n {
        let coeffs: Vec<Rational> = vertices.iter().map(|s| s[d].clone()).collect();
        constraints.push(LinConstraint::ge(coeffs, r[d].clone()));
    }
    lp_feasible(&LpProblem::feasibility(l, constraints)).is_some()
}
