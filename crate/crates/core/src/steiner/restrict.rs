use super::presentation::{point_strings, Provenance, SteinerPresentation};
use crate::error::{Error, Result};
use crate::exactalg::Mat;
use crate::polygeom::{HyperplaneChart, ProjPoint};

/// Pencil matrices after the substitution `X = S t`: `N'_j = sum_i S_ij N_i`.
pub fn substituted_matrices(p: &SteinerPresentation, s: &Mat) -> Vec<Mat> {
    (0..s.cols())
        .map(|j| {
            let mut acc = Mat::zeros(p.field(), p.total(), p.m());
            for (i, n) in p.matrices().iter().enumerate() {
                let c = s.get(i, j);
                if !c.is_zero() {
                    acc = acc.add(&n.scale(c)).expect("same shape");
                }
            }
            acc
        })
        .collect()
}

/// Restriction to the linear subspace spanned by the columns of `basis`.
pub fn restrict_to_subspace(p: &SteinerPresentation, basis: &Mat) -> Result<SteinerPresentation> {
    restrict_with(p, basis, None)
}

fn restrict_with(p: &SteinerPresentation, basis: &Mat, hyperplane: Option<&ProjPoint>) -> Result<SteinerPresentation> {
    if basis.field() != p.field() {
        return Err(Error::FieldMismatch(p.field(), basis.field()));
    }
    if basis.rows() != p.nvars() || basis.cols() == 0 {
        return Err(Error::ShapeMismatch(format!(
            "substitution {}x{} for {} variables",
            basis.rows(),
            basis.cols(),
            p.nvars()
        )));
    }
    if basis.rank() != basis.cols() {
        return Err(Error::Degenerate("subspace basis is not independent".into()));
    }
    SteinerPresentation::new(
        substituted_matrices(p, basis),
        Provenance::Restricted {
            parent: Box::new(p.provenance().clone()),
            substitution: basis.to_string_rows(),
            hyperplane: hyperplane.map(point_strings),
        },
    )
}

/// Restriction to the hyperplane with dual coordinates `h`, in the chart of
/// [`HyperplaneChart`].
pub fn restrict_to_hyperplane(p: &SteinerPresentation, h: &ProjPoint) -> Result<SteinerPresentation> {
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
    if p.nvars() < 3 {
        return Err(Error::Precondition("restriction of a pencil on a line".into()));
    }
    let chart = HyperplaneChart::new(h)?;
    restrict_with(p, &chart.basis, Some(h))
}
