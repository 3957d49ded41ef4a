use super::presentation::{point_strings, Provenance, SteinerPresentation};
use crate::error::{Error, Result};
use crate::exactalg::{CokernelProjection, Field, Mat};
use crate::polygeom::{eval_matrix, is_general_position, HomForm, MonomialBasis, PointConfig};

/// Presentation of `E_{r+1}(Z)` from a point set in the dual space.
///
/// With `pi_d` the cokernel projection of the degree-`d` evaluation matrix,
/// multiplication by `Y_i` induces `M_i = pi_{r+1} diag(z_i) lift_r` from
/// `H^1(J_Z(r))` to `H^1(J_Z(r+1))`; the pencil is `N_i = M_i^T`.
pub fn build_logarithmic(z: &PointConfig, r: usize) -> Result<SteinerPresentation> {
    let gp = is_general_position(z, r)?;
    if let Some(v) = gp.violation() {
        return Err(Error::Precondition(v));
    }
    let low = eval_matrix(z, r).cokernel_projection();
    let high = eval_matrix(z, r + 1).cokernel_projection();
    let (tau, m) = (low.selected.len(), high.selected.len());
    let field = z.field();
    let matrices = (0..=z.n())
        .map(|i| {
            Mat::from_fn(field, tau, m, |row, col| {
                let s = low.selected[row];
                high.projection.get(col, s) * &z.points()[s].coords()[i]
            })
        })
        .collect();
    SteinerPresentation::new(
        matrices,
        Provenance::Logarithmic {
            r,
            points: z.points().iter().map(point_strings).collect(),
            transposed: true,
        },
    )
}

/// Banded pencil of the Schwarzenberger bundle on `P^n` with `m + 1`
/// trivial summands: column `j` carries `X_0..X_n` in rows `j..j+n`.
pub fn build_schwarzenberger(field: Field, n: usize, m: usize) -> Result<SteinerPresentation> {
    if n == 0 || m < n {
        return Err(Error::Precondition(format!("need 1 <= n <= m, got n = {n}, m = {m}")));
    }
    let cols = m - n + 1;
    let matrices = (0..=n)
        .map(|i| {
            Mat::from_fn(field, m + 1, cols, |row, col| {
                if row == col + i {
                    field.one()
                } else {
                    field.zero()
                }
            })
        })
        .collect();
    SteinerPresentation::new(
        matrices,
        Provenance::Schwarzenberger {
            n,
            m,
            curve: veronese_parametrization(n),
        },
    )
}

fn veronese_parametrization(n: usize) -> String {
    let power = |var: &str, e: usize| match e {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{e}")),
    };
    let terms: Vec<String> = (0..=n)
        .map(|j| {
            let parts: Vec<String> = [power("u", n - j), power("v", j)].into_iter().flatten().collect();
            parts.join("*")
        })
        .collect();
    format!("[{}]", terms.join(" : "))
}

/// Basis of `S_e / f S_{e-d}` by the lexicographically first monomials.
fn quotient_basis(f: &HomForm, e: usize) -> CokernelProjection {
    let field = f.field();
    let target = MonomialBasis::new(f.nvars(), e);
    let d = f.degree();
    if e < d {
        return Mat::zeros(field, target.len(), 0).cokernel_projection();
    }
    let source = MonomialBasis::new(f.nvars(), e - d);
    let terms = MonomialBasis::new(f.nvars(), d);
    let mut mult = Mat::zeros(field, target.len(), source.len());
    for (col, mu) in source.exponents().iter().enumerate() {
        for (nu, c) in terms.exponents().iter().zip(f.coeffs()) {
            if c.is_zero() {
                continue;
            }
            let prod: Vec<u32> = mu.iter().zip(nu).map(|(a, b)| a + b).collect();
            let row = target.position(&prod).expect("degree e monomial");
            let v = mult.get(row, col) + c;
            mult.set(row, col, v);
        }
    }
    mult.cokernel_projection()
}

/// Pushforward presentation of `O_X(a)` for the plane curve `X = {f = 0}`
/// in the dual plane: `N_i` is multiplication by `Y_i` from sections of
/// `O_X(a-1)` to sections of `O_X(a)`.
pub fn build_curve_twist(f: &HomForm, a: usize) -> Result<SteinerPresentation> {
    if f.nvars() != 3 {
        return Err(Error::Precondition(format!("plane curve expected, got {} variables", f.nvars())));
    }
    if f.is_zero() {
        return Err(Error::Degenerate("zero form".into()));
    }
    let d = f.degree();
    if d == 0 {
        return Err(Error::Degenerate("nonzero constant defines the empty curve".into()));
    }
    if a + 1 < d || a == 0 {
        return Err(Error::Precondition(format!(
            "twist a = {a} must satisfy a >= max(1, deg - 1) = {}",
            (d - 1).max(1)
        )));
    }
    let field = f.field();
    let high = quotient_basis(f, a);
    let low = quotient_basis(f, a - 1);
    let low_monos = MonomialBasis::new(3, a - 1);
    let high_monos = MonomialBasis::new(3, a);
    let (tau, m) = (high.selected.len(), low.selected.len());
    let matrices = (0..3)
        .map(|i| {
            Mat::from_fn(field, tau, m, |row, col| {
                let mut e = low_monos.exponents()[low.selected[col]].clone();
                e[i] += 1;
                let pos = high_monos.position(&e).expect("degree a monomial");
                high.projection.get(row, pos).clone()
            })
        })
        .collect();
    SteinerPresentation::new(
        matrices,
        Provenance::Curve {
            form: f.to_string(),
            degree: d,
            twist: a,
        },
    )
}
