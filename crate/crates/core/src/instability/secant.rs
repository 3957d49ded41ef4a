use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::oracle::unstable_test_bundle;
use crate::error::{Error, Result};
use crate::exactalg::FieldElem;
use crate::polygeom::{projective_points, secant_lines, HyperplaneChart, PointConfig, ProjPoint};
use crate::steiner::SteinerPresentation;

/// Points of a rich line tested over Q (besides the points of `S` on it).
const RATIONAL_LINE_SAMPLES: usize = 12;

/// A point of a line carrying at least `r+3` points of `S` that is not
/// unstable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecantViolation {
    pub line: Vec<String>,
    pub incident: usize,
    pub stable_point: Vec<String>,
}

/// Checks that every dual line meeting the unstable set `s` in at least
/// `r+3` points consists of unstable points. Over a prime field every point
/// of such a line is tested; over Q a seeded sample of each line is.
pub fn secant_pencil_check(p: &SteinerPresentation, s: &[ProjPoint], r: usize, seed: u64) -> Result<Vec<SecantViolation>> {
    if p.nvars() != 3 {
        return Err(Error::Precondition("secant check on the plane only".into()));
    }
    let need = r + 3;
    let known: HashSet<ProjPoint> = s.iter().map(ProjPoint::normalized).collect();
    let mut lines: Vec<(ProjPoint, usize)> = Vec::new();
    if p.field().is_prime_field() {
        for x in projective_points(p.field(), 2)? {
            let on = HyperplaneChart::new(&x)?.points()?;
            let incident = on.iter().filter(|y| known.contains(*y)).count();
            if incident >= need {
                lines.push((x, incident));
            }
        }
    } else if s.len() >= need {
        let mut pts: Vec<ProjPoint> = known.iter().cloned().collect();
        pts.sort();
        let z = PointConfig::new(p.field(), 2, pts)?;
        for sec in secant_lines(&z, need)? {
            lines.push((sec.line, sec.points.len()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (x, incident) in lines {
        let chart = HyperplaneChart::new(&x)?;
        let candidates: Vec<ProjPoint> = if p.field().is_prime_field() {
            chart.points()?
        } else {
            (0..RATIONAL_LINE_SAMPLES)
                .filter_map(|_| {
                    let t: Vec<FieldElem> = (0..2).map(|_| p.field().random(&mut rng, 50)).collect();
                    ProjPoint::new(chart.embed(&t)).ok()
                })
                .collect()
        };
        for y in candidates {
            if known.contains(&y) {
                continue;
            }
            if !unstable_test_bundle(p, &y, None)?.unstable {
                out.push(SecantViolation {
                    line: x.to_strings(),
                    incident,
                    stable_point: y.to_strings(),
                });
            }
        }
    }
    Ok(out)
}
