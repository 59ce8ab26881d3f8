//! Universality testing and computation of universal analytic Gröbner bases.
//!
//! A finite polynomial set is universal when it stays a local Gröbner basis
//! for every choice of convergence log-radii. The vertices of the Minkowski
//! sum of the generators' Newton polytopes classify the leading-term
//! selections that can occur, so universality reduces to finitely many local
//! checks, one per certified vertex. The computation itself grows the
//! homogenized generating set by reduced local bases until every vertex
//! check passes, then dehomogenizes.

use rayon::prelude::*;

use crate::arith::ValuedField;
use crate::error::Result;
use crate::gb::{dedupe_scaled, is_local_gb, reduced_gb, sort_canonical};
use crate::order::{LogRadii, TateOrder, TieBreak};
use crate::poly::Polynomial;
use crate::polytope::{minkowski_vertices, VertexCertificate};

/// One vertex check performed by `test_uagb`.
#[derive(Debug, Clone)]
pub struct VertexCheck {
    pub certificate: VertexCertificate,
    pub radii: LogRadii,
    pub passed: bool,
}

/// Outcome of the universality test.
#[derive(Debug, Clone)]
pub struct UagbReport {
    pub verdict: bool,
    /// Log-radii at which the set fails to be a local basis, when it does.
    pub witness: Option<LogRadii>,
    pub vertex_count: usize,
    pub checks: Vec<VertexCheck>,
}

fn check_vertex(
    fs: &[Polynomial],
    cert: &VertexCertificate,
    tie: TieBreak,
) -> Result<VertexCheck> {
    let radii = cert.log_radii();
    let passed = is_local_gb(fs, fs, &radii, tie)?;
    Ok(VertexCheck { certificate: cert.clone(), radii, passed })
}

/// Decides whether `fs` is a universal analytic Gröbner basis of the ideal
/// it generates. Certificates are visited in descending lexicographic vertex
/// order and the first failing one provides the witness radii.
pub fn test_uagb(fs: &[Polynomial], field: &ValuedField, tie: TieBreak) -> Result<UagbReport> {
    let mut certs = minkowski_vertices(fs, field)?;
    certs.reverse();
    let results: Vec<Result<VertexCheck>> = certs
        .par_iter()
        .map(|c| check_vertex(fs, c, tie))
        .collect();
    let mut checks = Vec::with_capacity(results.len());
    let mut witness = None;
    for r in results {
        let check = r?;
        let failed = !check.passed;
        let radii = check.radii.clone();
        checks.push(check);
        if failed {
            witness = Some(radii);
            break;
        }
    }
    Ok(UagbReport {
        verdict: witness.is_none(),
        witness,
        vertex_count: certs.len(),
        checks,
    })
}

/// Log of one growth round of the universal basis computation.
#[derive(Debug, Clone)]
pub struct UagbRound {
    pub witness: LogRadii,
    pub added: usize,
    pub vertex_count: usize,
}

#[derive(Debug, Clone)]
pub struct UagbResult {
    pub generators: Vec<Polynomial>,
    pub rounds: Vec<UagbRound>,
    pub final_vertex_count: usize,
}

/// Computes a universal analytic Gröbner basis of the ideal spanned by `fs`.
///
/// The generators are homogenized; while some Newton vertex rejects the
/// current set, the reduced local basis at the witness radii is adjoined.
/// Termination is guaranteed by the finiteness of the leading-term ideals a
/// polynomial ideal can realize. The result is dehomogenized at the end and
/// is a local basis for every system of log-radii and tie-break.
pub fn uagb(fs: &[Polynomial], field: &ValuedField, tie: TieBreak) -> Result<UagbResult> {
    let report = uagb_homogenized(fs, field, tie)?;
    Ok(report.0)
}

/// Like `uagb` but also exposes the homogenized working set for callers that
/// need the intermediate object.
pub fn uagb_homogenized(
    fs: &[Polynomial],
    field: &ValuedField,
    tie: TieBreak,
) -> Result<(UagbResult, Vec<Polynomial>)> {
    let ring = fs
        .first()
        .map(|f| f.ring().clone())
        .ok_or_else(|| crate::error::Error::Problem("no generators".into()))?;
    let ext = ring.extended();
    let mut working: Vec<Polynomial> = dedupe_scaled(
        fs.iter().map(|f| f.homogenize(&ext)).collect(),
    );
    if working.is_empty() {
        return Err(crate::error::Error::ZeroPolynomial);
    }
    let mut rounds = Vec::new();
    let mut max_vertices = 0usize;
    let report = loop {
        let report = test_uagb(&working, field, tie)?;
        max_vertices = max_vertices.max(report.vertex_count);
        match &report.witness {
            None => break report,
            Some(r) => {
                let reduced = reduced_gb(&working, &TateOrder::new(r.clone(), tie))?;
                let before = working.len();
                let mut grown = working.clone();
                grown.extend(reduced.generators.iter().cloned());
                working = dedupe_scaled(grown);
                let added = working.len() - before;
                rounds.push(UagbRound {
                    witness: r.clone(),
                    added,
                    vertex_count: report.vertex_count,
                });
                // each round must realize a fresh leading-term ideal; the
                // vertex classes bound how many of those the current set has
                debug_assert!(
                    rounds.len() <= max_vertices,
                    "more growth rounds than observed vertex classes"
                );
            }
        }
    };
    let mut generators = dedupe_scaled(
        working.iter().map(|g| g.dehomogenize(&ring)).collect(),
    );
    sort_canonical(&mut generators);
    Ok((
        UagbResult {
            generators,
            rounds,
            final_vertex_count: report.vertex_count,
        },
        working,
    ))
}

/// One representative system of log-radii per equivalence class of term
/// orders with respect to `fs`, derived from the vertex certificates. The
/// per-generator leading-term tuples at distinct representatives differ.
pub fn term_order_classes(fs: &[Polynomial], field: &ValuedField) -> Result<Vec<LogRadii>> {
    Ok(minkowski_vertices(fs, field)?
        .into_iter()
        .map(|c| c.log_radii())
        .collect())
}
