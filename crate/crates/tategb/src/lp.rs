//! Exact rational linear programming.
//!
//! A dense two-phase simplex over `BigRational` with Bland's rule, so
//! termination is guaranteed and no numerical tolerance exists anywhere.
//! Strict inequalities are decided through the slack-maximization transform:
//! maximize delta subject to a.x >= b + delta; the strict system is feasible
//! iff the optimum delta is positive.

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// One linear constraint `coeffs . x >= rhs` (or `>` when strict).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinConstraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub strict: bool,
}

impl LinConstraint {
    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        LinConstraint { coeffs, rhs, strict: false }
    }

    pub fn gt(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        LinConstraint { coeffs, rhs, strict: true }
    }

    /// `coeffs . x <= rhs` rewritten in >= form.
    pub fn le(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        LinConstraint {
            coeffs: coeffs.into_iter().map(|c| -c).collect(),
            rhs: -rhs,
            strict: false,
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x)
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let v = self.eval(x);
        if self.strict {
            v > self.rhs
        } else {
            v >= self.rhs
        }
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Feasibility/optimization problem over free rational variables.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub dim: usize,
    pub constraints: Vec<LinConstraint>,
    /// Linear objective to maximize, if any.
    pub objective: Option<Vec<Rational>>,
}

impl LpProblem {
    pub fn feasibility(dim: usize, constraints: Vec<LinConstraint>) -> Self {
        LpProblem { dim, constraints, objective: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Optimal { point: Vec<Rational>, value: Rational },
    Unbounded,
}

/// Solves `maximize objective` over the closed system (strict flags are
/// ignored here; use `lp_feasible` for open systems). A missing objective is
/// treated as the zero objective, so the outcome reports plain feasibility.
pub fn solve(p: &LpProblem) -> LpOutcome {
    let objective = p
        .objective
        .clone()
        .unwrap_or_else(|| vec![Rational::zero(); p.dim]);
    simplex(p.dim, &p.constraints, &objective)
}

/// Returns an exact feasible point of the possibly-open system, or None when
/// it is infeasible. Strict constraints get a shared positive slack delta,
/// capped at one so the auxiliary objective stays bounded.
pub fn lp_feasible(p: &LpProblem) -> Option<Vec<Rational>> {
    let has_strict = p.constraints.iter().any(|c| c.strict);
    if !has_strict {
        return match solve(&LpProblem::feasibility(p.dim, p.constraints.clone())) {
            LpOutcome::Optimal { point, .. } => Some(point),
            LpOutcome::Infeasible => None,
            LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
        };
    }
    // variables (x, delta)
    let dim = p.dim + 1;
    let mut cons: Vec<LinConstraint> = Vec::with_capacity(p.constraints.len() + 1);
    for c in &p.constraints {
        let mut coeffs = c.coeffs.clone();
        coeffs.push(if c.strict { -Rational::one() } else { Rational::zero() });
        cons.push(LinConstraint::ge(coeffs, c.rhs.clone()));
    }
    let mut cap = vec![Rational::zero(); p.dim];
    cap.push(Rational::one());
    cons.push(LinConstraint::le(cap.clone(), Rational::one()));
    let outcome = simplex(dim, &cons, &cap);
    match outcome {
        LpOutcome::Optimal { point, value } if value.is_positive() => {
            Some(point[..p.dim].to_vec())
        }
        LpOutcome::Optimal { .. } | LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("delta is capped"),
    }
}

/// Like `lp_feasible` but errors instead of returning None; used where
/// infeasibility indicates an internal bug rather than a legitimate answer.
pub fn lp_feasible_certain(p: &LpProblem, what: &str) -> Result<Vec<Rational>> {
    lp_feasible(p).ok_or_else(|| Error::LpInternal(format!("{what}: expected a feasible system")))
}

/// Two-phase primal simplex in standard form with Bland's rule.
/// Free variables are split into positive and negative parts, each `>=`
/// constraint gets a surplus variable, and phase one drives artificials out.
fn simplex(dim: usize, constraints: &[LinConstraint], objective: &[Rational]) -> LpOutcome {
    let m = constraints.len();
    if m == 0 {
        // unconstrained: optimum exists only for the zero objective
        if objective.iter().all(|c| c.is_zero()) {
            return LpOutcome::Optimal { point: vec![Rational::zero(); dim], value: Rational::zero() };
        }
        return LpOutcome::Unbounded;
    }
    let n_struct = 2 * dim; // x = u - v
    let n_slack = m;
    let n = n_struct + n_slack + m; // + artificials
    // rows: a.u - a.v - s = b, scaled so b >= 0
    let mut a = vec![vec![Rational::zero(); n]; m];
    let mut b = vec![Rational::zero(); m];
    for (i, c) in constraints.iter().enumerate() {
        let flip = c.rhs.is_negative();
        let sign = if flip { -Rational::one() } else { Rational::one() };
        for (j, coef) in c.coeffs.iter().enumerate() {
            a[i][2 * j] = coef * &sign;
            a[i][2 * j + 1] = -(coef * &sign);
        }
        a[i][n_struct + i] = -&sign;
        a[i][n_struct + n_slack + i] = Rational::one();
        b[i] = c.rhs.clone() * sign;
        if b[i].is_negative() {
            // rhs was zero with negative sign quirks cannot happen; guard anyway
            for v in a[i].iter_mut() {
                *v = -v.clone();
            }
            b[i] = -b[i].clone();
        }
    }
    let mut basis: Vec<usize> = (0..m).map(|i| n_struct + n_slack + i).collect();

    // phase 1: minimize the sum of artificials
    let mut cost1 = vec![Rational::zero(); n];
    for c in cost1.iter_mut().skip(n_struct + n_slack) {
        *c = Rational::one();
    }
    let end = run_simplex(&mut a, &mut b, &mut basis, &cost1, n, true);
    debug_assert!(end != SimplexEnd::Unbounded, "phase one is bounded below by zero");
    let phase1_value = basis
        .iter()
        .enumerate()
        .filter(|(_, &j)| j >= n_struct + n_slack)
        .map(|(i, _)| b[i].clone())
        .fold(Rational::zero(), |acc, v| acc + v);
    if !phase1_value.is_zero() {
        return LpOutcome::Infeasible;
    }
    // pivot any artificial still in the basis out, or drop its row if all
    // usable entries vanish (redundant constraint)
    for i in 0..m {
        if basis[i] >= n_struct + n_slack {
            let mut pivoted = false;
            for j in 0..(n_struct + n_slack) {
                if !a[i][j].is_zero() {
                    pivot(&mut a, &mut b, &mut basis, i, j);
                    pivoted = true;
                    break;
                }
            }
            let _ = pivoted; // row is redundant when no pivot exists; harmless
        }
    }

    // phase 2: maximize the objective = minimize its negation. Artificial
    // columns are excluded from entering; one may remain basic at zero on an
    // all-zero redundant row, which later pivots can never touch.
    let mut cost2 = vec![Rational::zero(); n];
    for j in 0..dim {
        cost2[2 * j] = -objective[j].clone();
        cost2[2 * j + 1] = objective[j].clone();
    }
    match run_simplex(&mut a, &mut b, &mut basis, &cost2, n_struct + n_slack, false) {
        SimplexEnd::Unbounded => LpOutcome::Unbounded,
        SimplexEnd::Optimal => {
            let mut x = vec![Rational::zero(); dim];
            for (i, &j) in basis.iter().enumerate() {
                if j < n_struct {
                    let var = j / 2;
                    if j % 2 == 0 {
                        x[var] += &b[i];
                    } else {
                        x[var] -= &b[i];
                    }
                }
            }
            let value = dot(objective, &x);
            LpOutcome::Optimal { point: x, value }
        }
    }
}

#[derive(PartialEq, Eq)]
enum SimplexEnd {
    Optimal,
    Unbounded,
}

fn run_simplex(
    a: &mut [Vec<Rational>],
    b: &mut [Rational],
    basis: &mut [usize],
    cost: &[Rational],
    n_cols: usize,
    phase1: bool,
) -> SimplexEnd {
    let m = a.len();
    loop {
        // reduced costs via the basic cost row
        let mut entering = None;
        for j in 0..n_cols {
            if basis.contains(&j) {
                continue;
            }
            let mut rc = cost[j].clone();
            for i in 0..m {
                if !a[i][j].is_zero() && !cost[basis[i]].is_zero() {
                    rc -= &cost[basis[i]] * &a[i][j];
                }
            }
            if rc.is_negative() {
                entering = Some(j); // Bland: first improving index
                break;
            }
        }
        let Some(e) = entering else {
            return SimplexEnd::Optimal;
        };
        // ratio test, Bland ties by smallest basis index
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if a[i][e].is_positive() {
                let ratio = &b[i] / &a[i][e];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((l, _)) = leave else {
            debug_assert!(!phase1);
            return SimplexEnd::Unbounded;
        };
        pivot(a, b, basis, l, e);
    }
}

fn pivot(a: &mut [Vec<Rational>], b: &mut [Rational], basis: &mut [usize], row: usize, col: usize) {
    let m = a.len();
    let inv = Rational::one() / a[row][col].clone();
    for v in a[row].iter_mut() {
        if !v.is_zero() {
            *v *= &inv;
        }
    }
    b[row] *= &inv;
    for i in 0..m {
        if i != row && !a[i][col].is_zero() {
            let factor = a[i][col].clone();
            let (pivot_row, target) = if i < row {
                let (lo, hi) = a.split_at_mut(row);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = a.split_at_mut(i);
                (&lo[row], &mut hi[0])
            };
            for (t, p) in target.iter_mut().zip(pivot_row.iter()) {
                if !p.is_zero() {
                    *t -= &factor * p;
                }
            }
            let sub = &factor * &b[row];
            b[i] -= sub;
        }
    }
    basis[row] = col;
}
