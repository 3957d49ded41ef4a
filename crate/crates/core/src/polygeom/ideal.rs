use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::PointConfig;
use super::form::{binomial, monomial_count, HomForm, MonomialBasis};
use super::point::{dual_line_through, incidence, random_point, HyperplaneChart, ProjPoint};
use crate::error::{Error, Result};
use crate::exactalg::Mat;

/// Number of seeded hyperplanes probed by the sampled general-position test.
pub const DEFAULT_GP_SAMPLES: usize = 50;

/// Values of the degree-`d` monomials at the stored representatives; one
/// row per point. Its column space is the image of `S_d -> F^Z`.
pub fn eval_matrix(z: &PointConfig, d: usize) -> Mat {
    let basis = MonomialBasis::new(z.n() + 1, d);
    let mut entries = Vec::with_capacity(z.len() * basis.len());
    for p in z.points() {
        entries.extend(basis.evaluate(p.coords()));
    }
    Mat::from_entries(z.field(), z.len(), basis.len(), entries).expect("consistent shape")
}

/// `h^0(J_Z(d))`: forms of degree `d` vanishing on `Z`.
pub fn h0_ideal(z: &PointConfig, d: usize) -> usize {
    monomial_count(z.n() + 1, d) - eval_matrix(z, d).rank()
}

/// `h^1(J_Z(d))`: failure of `Z` to impose independent conditions in degree `d`.
pub fn h1_ideal(z: &PointConfig, d: usize) -> usize {
    z.len() - eval_matrix(z, d).rank()
}

/// Basis of the degree-`d` forms through `Z`.
pub fn linear_system(z: &PointConfig, d: usize) -> Vec<HomForm> {
    eval_matrix(z, d)
        .kernel_vectors()
        .into_iter()
        .map(|c| HomForm::new(z.field(), z.n() + 1, d, c).expect("kernel length matches"))
        .collect()
}

/// A line of the dual plane together with the points of `Z` on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecantLine {
    pub line: ProjPoint,
    pub points: Vec<ProjPoint>,
}

/// Lines spanned by pairs of `Z` carrying at least `min_points` points, in
/// order of first appearance.
pub fn secant_lines(z: &PointConfig, min_points: usize) -> Result<Vec<SecantLine>> {
    if z.n() != 2 {
        return Err(Error::Precondition("secant lines are computed in the plane".into()));
    }
    let pts = z.points();
    let mut out: Vec<SecantLine> = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let line = dual_line_through(&pts[i], &pts[j])?;
            if out.iter().any(|s| s.line == line) {
                continue;
            }
            let on: Vec<ProjPoint> = pts.iter().filter(|p| incidence(p, &line)).cloned().collect();
            if on.len() >= min_points {
                out.push(SecantLine { line, points: on });
            }
        }
    }
    Ok(out)
}

/// Largest number of points of `Z` on one line of the dual plane.
pub fn max_secant(z: &PointConfig) -> Result<usize> {
    if z.len() < 2 {
        return Err(Error::UndefinedInput(format!(
            "max_secant needs at least two points, got {}",
            z.len()
        )));
    }
    Ok(secant_lines(z, 2)?
        .iter()
        .map(|s| s.points.len())
        .max()
        .unwrap_or(2))
}

/// Cohomology of `J_Z(d)` restricted to the hyperplane `x^v` (dual
/// coordinates `x`), using `J_Z(d)|x^v = O_{Z∩x^v} ⊕ J_{Z∩x^v}(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneSection {
    pub incident: usize,
    pub h0: usize,
    pub h1: usize,
}

pub fn hyperplane_section(z: &PointConfig, x: &ProjPoint, d: usize) -> Result<HyperplaneSection> {
    if x.nvars() != z.n() + 1 {
        return Err(Error::ShapeMismatch("hyperplane in a different space".into()));
    }
    let chart = HyperplaneChart::new(x)?;
    let on: Vec<ProjPoint> = z
        .points()
        .iter()
        .filter(|p| incidence(p, x))
        .map(|p| ProjPoint::new(chart.coordinates(p)))
        .collect::<Result<_>>()?;
    let incident = on.len();
    let forms = monomial_count(z.n(), d);
    let rank = if on.is_empty() {
        0
    } else {
        eval_matrix(&PointConfig::new(z.field(), z.n() - 1, on)?, d).rank()
    };
    Ok(HyperplaneSection {
        incident,
        h0: incident + forms - rank,
        h1: incident - rank,
    })
}

/// Diagnostic of the `(r+1)`-general position test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPosition {
    pub holds: bool,
    pub r: usize,
    /// `h^0(J_Z(r+1))`; must vanish.
    pub h0: usize,
    /// Plane case: lines carrying `r+3` or more points.
    pub secants: Vec<SecantLine>,
    /// Higher dimension: probed hyperplanes where `h^0(J_Z(r+1)|x^v)` jumps.
    pub jumps: Vec<ProjPoint>,
    pub sampled: bool,
    pub samples: usize,
}

impl GeneralPosition {
    /// Human-readable list of violated clauses, or `None`.
    pub fn violation(&self) -> Option<String> {
        if self.holds {
            return None;
        }
        let mut parts = Vec::new();
        if self.h0 != 0 {
            parts.push(format!(
                "h0(J_Z({})) = {} != 0 (Z lies on a hypersurface of degree {})",
                self.r + 1,
                self.h0,
                self.r + 1
            ));
        }
        for s in &self.secants {
            let pts: Vec<String> = s.points.iter().map(ToString::to_string).collect();
            parts.push(format!(
                "{}-secant line {} through {}",
                s.points.len(),
                s.line,
                pts.join(", ")
            ));
        }
        for j in &self.jumps {
            parts.push(format!("section dimension jumps on hyperplane {j}"));
        }
        Some(parts.join("; "))
    }
}

/// `(r+1)`-general position: exact in the plane, sampled over
/// [`DEFAULT_GP_SAMPLES`] hyperplanes (seed 0) in higher dimension.
pub fn is_general_position(z: &PointConfig, r: usize) -> Result<GeneralPosition> {
    is_general_position_sampled(z, r, DEFAULT_GP_SAMPLES, 0)
}

pub fn is_general_position_sampled(
    z: &PointConfig,
    r: usize,
    samples: usize,
    seed: u64,
) -> Result<GeneralPosition> {
    let n = z.n();
    if n < 2 {
        return Err(Error::Precondition("general position is tested for n >= 2".into()));
    }
    let h0 = h0_ideal(z, r + 1);
    if n == 2 {
        let secants = if z.len() >= 2 { secant_lines(z, r + 3)? } else { Vec::new() };
        return Ok(GeneralPosition {
            holds: h0 == 0 && secants.is_empty(),
            r,
            h0,
            secants,
            jumps: Vec::new(),
            sampled: false,
            samples: 0,
        });
    }
    // Random hyperplanes almost never meet Z, so probe the hyperplanes
    // spanned by random n-subsets of Z, falling back to random ones.
    let expected = binomial(n + r, n - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jumps = Vec::new();
    for _ in 0..samples {
        let x = if z.len() >= n {
            let idx = sample(&mut rng, z.len(), n);
            let rows: Vec<_> = idx
                .iter()
                .flat_map(|i| z.points()[i].coords().to_vec())
                .collect();
            let m = Mat::from_entries(z.field(), n, n + 1, rows)?;
            let k = m.kernel_vectors();
            if k.len() != 1 {
                continue;
            }
            ProjPoint::new(k.into_iter().next().expect("one vector"))?
        } else {
            random_point(z.field(), n, &mut rng, 20)
        };
        let sec = hyperplane_section(z, &x, r + 1)?;
        if sec.h0 != expected && !jumps.contains(&x) {
            jumps.push(x);
        }
    }
    Ok(GeneralPosition {
        holds: h0 == 0 && jumps.is_empty(),
        r,
        h0,
        secants: Vec::new(),
        jumps,
        sampled: true,
        samples,
    })
}
