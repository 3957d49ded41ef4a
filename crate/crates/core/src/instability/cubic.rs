use crate::error::{Error, Result};
use crate::exactalg::{FieldElem, Mat};
use crate::polygeom::{HomForm, HyperplaneChart, MonomialBasis, ProjPoint};

/// Parameter values sampled for the implicitization.
const SAMPLES: usize = 16;

/// Whether `h` is `[u^3 : u^2 v : u v^2 : v^3]` for some `(u, v)`: the
/// 2x2 minors of the Hankel matrix `[[h0,h1,h2],[h1,h2,h3]]` vanish.
pub fn on_twisted_cubic(h: &ProjPoint) -> bool {
    let c = h.coords();
    if c.len() != 4 {
        return false;
    }
    let minor = |i: usize, j: usize| &(&c[i] * &c[j + 1]) - &(&c[j] * &c[i + 1]);
    minor(0, 1).is_zero() && minor(0, 2).is_zero() && minor(1, 2).is_zero()
}

/// Image in the dual plane of the plane `h` of the unstable planes
/// `u^3 X0 + u^2 v X1 + u v^2 X2 + v^3 X3 = 0`, as points `Lambda^T c(u, v)`.
pub fn projected_curve_point(chart: &HyperplaneChart, u: &FieldElem, v: &FieldElem) -> Vec<FieldElem> {
    let c = [u.pow(3), &u.pow(2) * v, u * &v.pow(2), v.pow(3)];
    chart.basis.transpose().apply(&c)
}

/// Implicit cubic of the projected curve for the plane with dual
/// coordinates `h`, normalized to leading coefficient 1.
pub fn projected_cubic(h: &ProjPoint) -> Result<HomForm> {
    if h.nvars() != 4 {
        return Err(Error::ShapeMismatch(format!("plane of P^3 expected, got {} coordinates", h.nvars())));
    }
    if on_twisted_cubic(h) {
        return Err(Error::Precondition(format!("{h} lies on the twisted cubic")));
    }
    let field = h.field();
    if let Some(q) = field.order() {
        if q + 1 < 12 {
            return Err(Error::Precondition(format!("F_{q} has too few parameter values")));
        }
    }
    let chart = HyperplaneChart::new(h)?;
    let mut params: Vec<(FieldElem, FieldElem)> = vec![(field.zero(), field.one())];
    let limit = field.order().map_or(SAMPLES, |q| (q as usize).min(SAMPLES));
    params.extend((0..limit).map(|t| (field.one(), field.from_i64(t as i64))));
    let basis = MonomialBasis::new(3, 3);
    let rows: Vec<Vec<FieldElem>> = params
        .iter()
        .map(|(u, v)| basis.evaluate(&projected_curve_point(&chart, u, v)))
        .collect();
    let kernel = Mat::from_rows(field, rows)?.kernel_vectors();
    if kernel.len() != 1 {
        return Err(Error::Degenerate(format!("{} cubics through the projected curve", kernel.len())));
    }
    Ok(HomForm::new(field, 3, 3, kernel.into_iter().next().expect("one"))?.normalized())
}
