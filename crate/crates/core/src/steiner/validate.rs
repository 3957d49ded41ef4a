use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::presentation::SteinerPresentation;
use crate::error::{Error, Result};
use crate::exactalg::Mat;
use crate::polygeom::{monomials, projective_points, random_point, HomForm, MonomialBasis, ProjPoint};

/// Coordinate bound for sampled rational points.
const SAMPLE_BOUND: i64 = 1000;
/// At most this many failing points are kept in a report.
const MAX_FAILURES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidationStrategy {
    /// Every point of `P^n(F_p)`.
    ExhaustiveFp,
    /// Seeded random points.
    Sampled { samples: usize, seed: u64 },
    /// Ideal of maximal minors contains every form of high enough degree.
    Minors,
}

impl ValidationStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            ValidationStrategy::ExhaustiveFp => "exhaustive-fp",
            ValidationStrategy::Sampled { .. } => "sampled",
            ValidationStrategy::Minors => "minors",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub strategy: String,
    /// No point of rank drop was found (or none exists, if conclusive).
    pub valid: bool,
    pub conclusive: bool,
    /// Points tested, or the number of minors for the minors strategy.
    pub checked: usize,
    /// Normalized coordinates of points where `N(x)` drops rank.
    pub failures: Vec<Vec<String>>,
    pub note: Option<String>,
}

pub fn validate_bundle(p: &SteinerPresentation, strategy: ValidationStrategy) -> Result<ValidityReport> {
    match strategy {
        ValidationStrategy::ExhaustiveFp => {
            if !p.field().is_prime_field() {
                return Err(Error::Strategy("exhaustive validation needs a prime field".into()));
            }
            let points = projective_points(p.field(), p.nvars() - 1)?;
            Ok(scan_points(p, &points, strategy, true))
        }
        ValidationStrategy::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let points: Vec<ProjPoint> = (0..samples)
                .map(|_| random_point(p.field(), p.nvars() - 1, &mut rng, SAMPLE_BOUND))
                .collect();
            Ok(scan_points(p, &points, strategy, false))
        }
        ValidationStrategy::Minors => minors_report(p),
    }
}

fn scan_points(p: &SteinerPresentation, points: &[ProjPoint], strategy: ValidationStrategy, exhaustive: bool) -> ValidityReport {
    let failures: Vec<Vec<String>> = points
        .iter()
        .filter(|x| p.pencil_at_point(x).rank() < p.m())
        .take(MAX_FAILURES)
        .map(ProjPoint::to_strings)
        .collect();
    let valid = failures.is_empty();
    ValidityReport {
        strategy: strategy.name().into(),
        valid,
        conclusive: exhaustive || !valid,
        checked: points.len(),
        failures,
        note: (exhaustive && valid).then(|| format!("conclusive over {} only", p.field())),
    }
}

/// All `m x m` minors of the pencil as forms of degree `m`.
pub fn maximal_minors(p: &SteinerPresentation) -> Result<Vec<HomForm>> {
    linear_minors(p.matrices())
}

/// Maximal minors of the matrix of linear forms `sum X_i mats[i]` (at
/// least as many rows as columns), indexed by row subsets in increasing
/// bitmask order, zero minors dropped.
pub fn linear_minors(mats: &[Mat]) -> Result<Vec<HomForm>> {
    let first = mats.first().ok_or_else(|| Error::ShapeMismatch("no matrices".into()))?;
    let (tau, m, nv) = (first.rows(), first.cols(), mats.len());
    let field = first.field();
    if tau > 63 || tau < m {
        return Err(Error::Strategy("minor enumeration needs cols <= rows <= 63".into()));
    }
    let entry = |i: usize, j: usize| {
        let coeffs: Vec<_> = mats.iter().map(|n| n.get(i, j).clone()).collect();
        HomForm::linear(&coeffs)
    };
    // minors on the first c columns, keyed by the row subset as a bitmask
    let mut layer: BTreeMap<u64, HomForm> = BTreeMap::new();
    layer.insert(0, HomForm::new(field, nv, 0, vec![field.one()])?);
    for c in 0..m {
        let mut next: BTreeMap<u64, HomForm> = BTreeMap::new();
        for (&rows, g) in &layer {
            for i in (0..tau).filter(|i| rows & (1 << i) == 0) {
                let e = entry(i, c);
                if e.is_zero() || g.is_zero() {
                    continue;
                }
                let above = (rows >> (i + 1)).count_ones();
                let mut term = e.mul(g)?;
                if above % 2 == 1 {
                    term = term.scale(&-field.one());
                }
                let key = rows | (1 << i);
                let sum = match next.remove(&key) {
                    Some(prev) => prev.add(&term)?,
                    None => term,
                };
                next.insert(key, sum);
            }
        }
        layer = next;
    }
    Ok(layer.into_values().filter(|f| !f.is_zero()).collect())
}

/// `N(x)` has rank `m` at every point over the algebraic closure iff the
/// ideal of maximal minors contains all forms of degree `(n+1)(m-1)+1`.
fn minors_report(p: &SteinerPresentation) -> Result<ValidityReport> {
    let (m, nv) = (p.m(), p.nvars());
    let field = p.field();
    let report = |valid: bool, checked: usize, note: String| ValidityReport {
        strategy: ValidationStrategy::Minors.name().into(),
        valid,
        conclusive: true,
        checked,
        failures: vec![],
        note: Some(note),
    };
    if m == 0 {
        return Ok(report(true, 0, "no summands to degenerate".into()));
    }
    let minors = maximal_minors(p)?;
    if minors.is_empty() {
        return Ok(report(false, 0, "all maximal minors vanish identically".into()));
    }
    // only the span of the minors matters
    let span = Mat::from_rows(field, minors.iter().map(|f| f.coeffs().to_vec()).collect())?;
    let (reduced, pivots) = span.rref();
    let target_degree = nv * (m - 1) + 1;
    let shift = monomials(nv, target_degree - m);
    let target = MonomialBasis::new(nv, target_degree);
    let small = MonomialBasis::new(nv, m);
    let mut rows = Vec::new();
    for k in 0..pivots.len() {
        let g = reduced.row(k);
        for mu in &shift {
            let mut row = vec![field.zero(); target.len()];
            for (nu, c) in small.exponents().iter().zip(g) {
                if c.is_zero() {
                    continue;
                }
                let e: Vec<u32> = mu.iter().zip(nu).map(|(a, b)| a + b).collect();
                row[target.position(&e).expect("target degree")] = c.clone();
            }
            rows.push(row);
        }
    }
    let rank = Mat::from_rows(field, rows)?.rank();
    let valid = rank == target.len();
    Ok(report(
        valid,
        minors.len(),
        format!(
            "{} nonzero minors, span {}; degree-{} part has rank {} of {}; cost grows like C(total, m)",
            minors.len(),
            pivots.len(),
            target_degree,
            rank,
            target.len()
        ),
    ))
}
