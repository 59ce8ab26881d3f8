//! S-polynomials, degree-sliced reduction, local Gröbner bases, and the
//! homogenize-compute-dehomogenize pipeline for arbitrary polynomial ideals.
//!
//! Reduction never runs naive term division against the valuation order: a
//! chain like x -> 7x -> 49x never terminates. Instead each homogeneous
//! degree slice is a finite-dimensional vector space, and we keep a fully
//! interreduced echelon basis of it whose pivots are the order-maximal terms.
//! Pivot monomials of a slice are exactly the leading monomials realized by
//! the slice, so stabilization of the pivot sets certifies the basis.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::One;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::order::{leading_monomial, leading_term, TateOrder, TieBreak, LogRadii};
use crate::poly::{grevlex_cmp, Monomial, Polynomial, Ring, Term};

/// A Gröbner basis together with the order it was computed for.
#[derive(Debug, Clone)]
pub struct GBasis {
    pub generators: Vec<Polynomial>,
    pub order: TateOrder,
    pub reduced: bool,
    /// Set when some reduction was discarded because it only converged to
    /// zero up to the valuation cap rather than terminating exactly.
    pub precision_conditional: bool,
}

impl GBasis {
    pub fn leading_monomials(&self) -> Result<Vec<Monomial>> {
        self.generators.iter().map(|g| leading_monomial(g, &self.order)).collect()
    }
}

/// Deterministic total order on polynomials of one ring: term sequences
/// compared lexicographically.
pub fn canonical_cmp(a: &Polynomial, b: &Polynomial) -> Ordering {
    for (s, t) in a.terms().iter().zip(b.terms()) {
        match grevlex_cmp(&s.monomial, &t.monomial) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match s.coeff.cmp(&t.coeff) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    a.terms().len().cmp(&b.terms().len())
}

pub fn sort_canonical(polys: &mut [Polynomial]) {
    polys.sort_by(canonical_cmp);
}

/// Drops duplicates up to nonzero scalar factors, keeping canonical scaling.
pub fn dedupe_scaled(polys: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        let c = p.canonical_scaled();
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// S-polynomial with the divisor `gcd` of the two leading terms taken as the
/// monomial gcd with coefficient one, so both cross-products are exact terms
/// and the top terms cancel.
pub fn spoly(f: &Polynomial, g: &Polynomial, o: &TateOrder) -> Result<Polynomial> {
    let ltf = leading_term(f, o)?;
    let ltg = leading_term(g, o)?;
    let d = ltf.monomial.gcd(&ltg.monomial);
    let mf = Term::new(ltg.coeff.clone(), d.quotient_into(&ltg.monomial));
    let mg = Term::new(ltf.coeff.clone(), d.quotient_into(&ltf.monomial));
    Ok(&f.mul_term(&mf) - &g.mul_term(&mg))
}

/// Fully interreduced echelon basis of a span of polynomials, with pivots
/// chosen as the order-maximal term of each row. Rows are monic at their
/// pivot, tails contain no pivot monomial, and every pivot monomial appears
/// in exactly one row. Those invariants are what make insertion terminate:
/// each elimination step removes a monomial from the working polynomial for
/// good, and within a finite support set that bounds the loop.
pub struct Echelon {
    order: TateOrder,
    ring: Ring,
    rows: Vec<Polynomial>,
    pivots: Vec<Monomial>,
}

impl Echelon {
    pub fn new(ring: &Ring, order: &TateOrder) -> Self {
        Echelon {
            order: order.clone(),
            ring: ring.clone(),
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rows(&self) -> &[Polynomial] {
        &self.rows
    }

    pub fn pivots(&self) -> &[Monomial] {
        &self.pivots
    }

    fn pivot_index(&self, m: &Monomial) -> Option<usize> {
        self.pivots.iter().position(|p| p == m)
    }

    /// Cancels leading terms against registered pivot rows until the leading
    /// monomial is fresh or the polynomial vanishes.
    pub fn reduce_leading(&self, mut h: Polynomial) -> Polynomial {
        loop {
            if h.is_zero() {
                return h;
            }
            let lt = leading_term(&h, &self.order).expect("nonzero");
            match self.pivot_index(&lt.monomial) {
                None => return h,
                Some(i) => {
                    // rows are monic at their pivot
                    h = &h - &self.rows[i].scale(&lt.coeff);
                }
            }
        }
    }

    /// Inserts a polynomial, returning the index of the freshly created row,
    /// or None when the polynomial lies in the current span.
    pub fn insert(&mut self, h: Polynomial) -> Option<usize> {
        let mut h = self.reduce_leading(h);
        if h.is_zero() {
            return None;
        }
        let pivot = leading_term(&h, &self.order).expect("nonzero").monomial;
        // clear every other pivot monomial out of the tail
        loop {
            let hit = h.terms().iter().find_map(|t| {
                if t.monomial == pivot {
                    None
                } else {
                    self.pivot_index(&t.monomial).map(|i| (i, t.coeff.clone()))
                }
            });
            match hit {
                None => break,
                Some((i, c)) => {
                    h = &h - &self.rows[i].scale(&c);
                }
            }
        }
        // tail reduction can perturb the pivot coefficient but never its
        // valuation, so the pivot term is still the leading one
        let c = h.coeff_of(&pivot).expect("pivot survives").clone();
        h = h.scale(&(Rational::one() / c));
        debug_assert_eq!(
            leading_term(&h, &self.order).expect("nonzero").monomial,
            pivot
        );
        // back-substitute into older rows
        for row in self.rows.iter_mut() {
            if let Some(c) = row.coeff_of(&pivot) {
                let c = c.clone();
                *row = &*row - &h.scale(&c);
            }
        }
        self.rows.push(h);
        self.pivots.push(pivot);
        Some(self.rows.len() - 1)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
}

/// Echelonizes a family of same-degree homogeneous polynomials. Zero rows
/// drop out; the result spans the same space with pairwise distinct pivot
/// monomials, sorted canonically.
pub fn reduce_degree_slice(rows: &[Polynomial], o: &TateOrder) -> Vec<Polynomial> {
    let Some(first) = rows.iter().find(|r| !r.is_zero()) else {
        return Vec::new();
    };
    let mut ech = Echelon::new(first.ring(), o);
    for r in rows {
        if !r.is_zero() {
            ech.insert(r.clone());
        }
    }
    let mut out = ech.rows.clone();
    sort_canonical(&mut out);
    out
}

/// All monomials of the given total degree, in a deterministic order.
pub fn monomials_of_degree(n_vars: usize, degree: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n_vars];
    fill_monomials(&mut out, &mut cur, 0, degree);
    out
}

fn fill_monomials(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, i: usize, remaining: u64) {
    if i + 1 == cur.len() {
        cur[i] = u32::try_from(remaining).expect("desk-scale degree");
        out.push(Monomial(cur.clone()));
        cur[i] = 0;
        return;
    }
    for e in 0..=remaining {
        cur[i] = u32::try_from(e).expect("desk-scale degree");
        fill_monomials(out, cur, i + 1, remaining - e);
    }
    cur[i] = 0;
}

fn validate_homogeneous(gens: &[Polynomial]) -> Result<()> {
    for g in gens {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !g.is_homogeneous() {
            return Err(Error::NonHomogeneous(g.to_string()));
        }
    }
    if gens.is_empty() {
        return Err(Error::Problem("no generators".into()));
    }
    Ok(())
}

/// Builds the echelon of the full degree-d slice of the ideal spanned by
/// `basis`: every monomial multiple of every generator landing in degree d.
fn slice_echelon(basis: &[Polynomial], d: u64, ring: &Ring, o: &TateOrder) -> Echelon {
    let mut ech = Echelon::new(ring, o);
    for g in basis {
        let e = g.total_degree().expect("nonzero");
        if e > d {
            continue;
        }
        for m in monomials_of_degree(ring.n_vars(), d - e) {
            ech.insert(g.mul_term(&Term::new(Rational::one(), m)));
        }
    }
    ech
}

/// Gröbner basis of a homogeneous ideal by degree-driven Buchberger: pending
/// S-pair degrees are processed in increasing order, and each slice is
/// echelonized exactly. A pivot not divisible by any current leading monomial
/// is a forced new basis element. New pairs always land in strictly higher
/// degrees, so no slice is ever revisited.
pub fn buchberger_homogeneous(gens: &[Polynomial], o: &TateOrder) -> Result<GBasis> {
    validate_homogeneous(gens)?;
    let ring = gens[0].ring().clone();
    if ring.n_vars() != o.dim() {
        return Err(Error::DimensionMismatch { expected: ring.n_vars(), got: o.dim() });
    }
    let mut basis = dedupe_scaled(gens.to_vec());
    let mut lms: Vec<Monomial> = basis
        .iter()
        .map(|g| leading_monomial(g, o))
        .collect::<Result<_>>()?;

    let mut pending: BTreeSet<u64> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pending.insert(lms[i].lcm(&lms[j]).total_degree());
        }
    }

    while let Some(d) = pending.pop_first() {
        let ech = slice_echelon(&basis, d, &ring, o);
        for (row, pivot) in ech.rows().iter().zip(ech.pivots()) {
            if lms.iter().any(|lm| lm.divides(pivot)) {
                continue;
            }
            for lm in &lms {
                pending.insert(lm.lcm(pivot).total_degree());
            }
            basis.push(row.clone());
            lms.push(pivot.clone());
        }
        pending.retain(|&e| e > d);
    }

    Ok(GBasis {
        generators: basis,
        order: o.clone(),
        reduced: false,
        precision_conditional: false,
    })
}

/// The unique reduced Gröbner basis of a homogeneous ideal: for each minimal
/// generator of the leading-monomial ideal, the monic fully reduced echelon
/// row at that pivot. Tails of echelon rows avoid every pivot of their slice,
/// which is precisely the degree slice of the leading-term ideal.
pub fn reduced_gb(gens: &[Polynomial], o: &TateOrder) -> Result<GBasis> {
    let gb = buchberger_homogeneous(gens, o)?;
    let ring = gb.generators[0].ring().clone();
    let lms = gb.leading_monomials()?;
    let mut minimal: Vec<Monomial> = Vec::new();
    for m in &lms {
        if minimal.contains(m) {
            continue;
        }
        if lms.iter().any(|other| other != m && other.divides(m)) {
            continue;
        }
        minimal.push(m.clone());
    }
    let mut degrees: Vec<u64> = minimal.iter().map(|m| m.total_degree()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut out = Vec::with_capacity(minimal.len());
    for d in degrees {
        let ech = slice_echelon(&gb.generators, d, &ring, &gb.order);
        for m in minimal.iter().filter(|m| m.total_degree() == d) {
            let i = ech
                .pivot_index(m)
                .expect("a minimal leading monomial is a pivot of its slice");
            out.push(ech.rows()[i].clone());
        }
    }
    sort_canonical(&mut out);
    #[cfg(debug_assertions)]
    for g in &out {
        let lt = leading_term(g, &gb.order).expect("nonzero");
        debug_assert!(lt.coeff.is_one(), "reduced rows are monic");
        debug_assert!(
            g.terms().iter().all(|t| {
                t.monomial == lt.monomial
                    || !minimal.iter().any(|m| m.divides(&t.monomial))
            }),
            "a tail term fell back into the leading-term ideal"
        );
    }
    Ok(GBasis {
        generators: out,
        order: gb.order,
        reduced: true,
        precision_conditional: false,
    })
}

/// r-local Gröbner basis of an arbitrary polynomial ideal. Homogeneous input
/// is handled directly; otherwise the generators are homogenized, a reduced
/// basis is computed for the extended order, and the result is dehomogenized
/// without further interreduction (dehomogenization can break minimality, so
/// cleanup is left to `minimize`).
pub fn local_gb(gens: &[Polynomial], r: &LogRadii, tie: TieBreak) -> Result<GBasis> {
    if gens.is_empty() {
        return Err(Error::Problem("no generators".into()));
    }
    if gens.iter().any(|g| g.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    let ring = gens[0].ring().clone();
    if ring.n_vars() != r.dim() {
        return Err(Error::DimensionMismatch { expected: ring.n_vars(), got: r.dim() });
    }
    if gens.iter().all(|g| g.is_homogeneous()) {
        return reduced_gb(gens, &TateOrder::new(r.clone(), tie));
    }
    let ext = ring.extended();
    let o = TateOrder::homogenized(r, tie);
    let hom: Vec<Polynomial> = gens.iter().map(|g| g.homogenize(&ext)).collect();
    let h = reduced_gb(&hom, &o)?;
    let mut out = dedupe_scaled(
        h.generators
            .iter()
            .map(|g| g.dehomogenize(&ring))
            .collect(),
    );
    sort_canonical(&mut out);
    Ok(GBasis {
        generators: out,
        order: TateOrder::new(r.clone(), tie),
        reduced: false,
        precision_conditional: false,
    })
}

/// Leading-term coverage test: G passes at r when every element of a
/// reference local basis of <F> has its leading monomial divisible by the
/// leading monomial of some member of G. Ideal containment of G in <F> is
/// the caller's responsibility (see `classical::ideal_contains`).
pub fn is_local_gb(
    candidate: &[Polynomial],
    gens: &[Polynomial],
    r: &LogRadii,
    tie: TieBreak,
) -> Result<bool> {
    let reference = local_gb(gens, r, tie)?;
    let o = TateOrder::new(r.clone(), tie);
    let cand_lms: Vec<Monomial> = candidate
        .iter()
        .map(|g| leading_monomial(g, &o))
        .collect::<Result<_>>()?;
    for h in &reference.generators {
        let lm = leading_monomial(h, &reference.order)?;
        if !cand_lms.iter().any(|c| c.divides(&lm)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Optional minimality pass: drops elements whose leading monomial is
/// divisible by the leading monomial of another kept element.
pub fn minimize(basis: &GBasis) -> Result<GBasis> {
    let lms = basis.leading_monomials()?;
    let mut keep = vec![true; basis.generators.len()];
    for i in 0..lms.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..lms.len() {
            if i != j && keep[j] && lms[j].divides(&lms[i]) && !(lms[i] == lms[j] && j > i) {
                keep[i] = false;
                break;
            }
        }
    }
    let generators = basis
        .generators
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(g, _)| g.clone())
        .collect();
    Ok(GBasis { generators, ..basis.clone() })
}

/// Checks the Buchberger criterion directly: every pairwise S-polynomial of
/// the basis must lie in the span of its degree slice.
pub fn spolys_reduce_to_zero(basis: &GBasis) -> Result<bool> {
    let gens = &basis.generators;
    if gens.is_empty() {
        return Ok(true);
    }
    let ring = gens[0].ring().clone();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let s = spoly(&gens[i], &gens[j], &basis.order)?;
            if s.is_zero() {
                continue;
            }
            let d = s.total_degree().expect("nonzero");
            let ech = slice_echelon(gens, d, &ring, &basis.order);
            if !ech.reduce_leading(s).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
