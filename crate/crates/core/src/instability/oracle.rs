use crate::error::{Error, Result};
use crate::exactalg::Mat;
use crate::polygeom::{h0_ideal, is_general_position, HyperplaneChart, PointConfig, ProjPoint};
use crate::steiner::{substituted_matrices, SteinerPresentation, ValidityReport};

/// Outcome of the bundle-side test on one hyperplane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BundleTest {
    pub unstable: bool,
    /// `h^0` of the dual bundle restricted to the hyperplane.
    pub kernel_dim: usize,
    /// The presentation was reported not to be a bundle.
    pub sheaf_mode: bool,
}

/// Stacked `[N'_0^T; ...; N'_{n-1}^T]` of the pencil restricted to the
/// hyperplane with dual coordinates `h`.
pub fn restricted_stack(p: &SteinerPresentation, h: &ProjPoint) -> Result<Mat> {
    if h.field() != p.field() {
        return Err(Error::FieldMismatch(p.field(), h.field()));
    }
    if h.nvars() != p.nvars() {
        return Err(Error::ShapeMismatch(format!(
            "hyperplane in {} coordinates for a pencil in {}",
            h.nvars(),
            p.nvars()
        )));
    }
    let chart = HyperplaneChart::new(h)?;
    let blocks = substituted_matrices(p, &chart.basis);
    let mut stack = blocks[0].transpose();
    for b in &blocks[1..] {
        stack = stack.vstack(&b.transpose())?;
    }
    Ok(stack)
}

/// Whether the hyperplane `h` is unstable for the bundle presented by `p`:
/// a nonzero `v` with `v^T N(x) = 0` for every `x` on the hyperplane.
///
/// `validity`, when given, decides the sheaf-mode flag; without it the
/// presentation is taken to be a bundle.
pub fn unstable_test_bundle(p: &SteinerPresentation, h: &ProjPoint, validity: Option<&ValidityReport>) -> Result<BundleTest> {
    let stack = restricted_stack(p, h)?;
    let kernel_dim = p.total() - stack.rank();
    Ok(BundleTest {
        unstable: kernel_dim > 0,
        kernel_dim,
        sheaf_mode: validity.is_some_and(|v| !v.valid),
    })
}

/// Ideal-side test for a fixed point set: general position is checked once.
#[derive(Clone, Debug)]
pub struct IdealOracle {
    z: PointConfig,
    r: usize,
}

impl IdealOracle {
    pub fn new(z: &PointConfig, r: usize) -> Result<Self> {
        if z.n() != 2 {
            return Err(Error::Precondition(format!("point sets in the plane only, got P^{}", z.n())));
        }
        let gp = is_general_position(z, r)?;
        if let Some(v) = gp.violation() {
            return Err(Error::Precondition(v));
        }
        Ok(IdealOracle { z: z.clone(), r })
    }

    pub fn config(&self) -> &PointConfig {
        &self.z
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Points of `Z` are unstable; otherwise `l` is unstable iff some curve
    /// of degree `r+2` passes through `Z` and `l`.
    pub fn is_unstable(&self, l: &ProjPoint) -> Result<bool> {
        if l.field() != self.z.field() {
            return Err(Error::FieldMismatch(self.z.field(), l.field()));
        }
        if l.nvars() != 3 {
            return Err(Error::ShapeMismatch("dual point of the plane expected".into()));
        }
        if self.z.contains(l) {
            return Ok(true);
        }
        Ok(h0_ideal(&self.z.with_point(l)?, self.r + 2) > 0)
    }
}

pub fn unstable_test_ideal(z: &PointConfig, r: usize, l: &ProjPoint) -> Result<bool> {
    IdealOracle::new(z, r)?.is_unstable(l)
}
