use std::collections::HashSet;

use super::point::ProjPoint;
use crate::error::{Error, Result};
use crate::exactalg::Field;

/// A finite set of distinct points of the dual space `P^{n,v}`, kept in the
/// order given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    field: Field,
    n: usize,
    points: Vec<ProjPoint>,
}

impl PointConfig {
    pub fn new(field: Field, n: usize, points: Vec<ProjPoint>) -> Result<Self> {
        let mut seen = HashSet::new();
        for p in &points {
            if p.field() != field {
                return Err(Error::FieldMismatch(field, p.field()));
            }
            if p.nvars() != n + 1 {
                return Err(Error::ShapeMismatch(format!(
                    "point {p} has {} coordinates, expected {}",
                    p.nvars(),
                    n + 1
                )));
            }
            if !seen.insert(p.clone()) {
                return Err(Error::Precondition(format!("duplicate point {p}")));
            }
        }
        Ok(PointConfig { field, n, points })
    }

    pub fn from_ints(field: Field, n: usize, points: &[&[i64]]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|c| ProjPoint::from_ints(field, c))
            .collect::<Result<Vec<_>>>()?;
        PointConfig::new(field, n, pts)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Dimension of the ambient dual space.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.contains(p)
    }

    /// `self ∪ {p}`; unchanged when `p` is already present.
    pub fn with_point(&self, p: &ProjPoint) -> Result<PointConfig> {
        if self.contains(p) {
            return Ok(self.clone());
        }
        let mut pts = self.points.clone();
        pts.push(p.clone());
        PointConfig::new(self.field, self.n, pts)
    }

    pub fn union(&self, other: &PointConfig) -> Result<PointConfig> {
        let mut out = self.clone();
        for p in other.points() {
            out = out.with_point(p)?;
        }
        Ok(out)
    }

    pub fn without(&self, index: usize) -> PointConfig {
        let mut pts = self.points.clone();
        pts.remove(index);
        PointConfig { points: pts, ..self.clone() }
    }

    /// Set equality, ignoring order and representatives.
    pub fn same_set(&self, other: &PointConfig) -> bool {
        if self.field != other.field || self.n != other.n || self.len() != other.len() {
            return false;
        }
        let a: HashSet<&ProjPoint> = self.points.iter().collect();
        other.points.iter().all(|p| a.contains(p))
    }

    /// Points sorted by normalized coordinates.
    pub fn sorted_points(&self) -> Vec<ProjPoint> {
        let mut v: Vec<ProjPoint> = self.points.iter().map(ProjPoint::normalized).collect();
        v.sort();
        v
    }
}
