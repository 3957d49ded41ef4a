use super::oracle::{unstable_test_bundle, IdealOracle};
use super::report::{WKind, WMethod, WReport};
use crate::error::{Error, Result};
use crate::exactalg::Mat;
use crate::polygeom::{eval_matrix, h0_ideal, h1_ideal, linear_system, projective_points, HomForm, PointConfig, ProjPoint};
use crate::steiner::{linear_minors, SteinerPresentation, ValidityReport};

/// W from the point set alone: `t = h^0(J_Z(r+2))` forms through `Z`.
pub fn classify_w_ideal(z: &PointConfig, r: usize) -> Result<WReport> {
    IdealOracle::new(z, r)?;
    let t = h0_ideal(z, r + 2);
    let kind = match t {
        0 => WKind::Finite(z.sorted_points()),
        1 => WKind::Curve {
            form: linear_system(z, r + 2).remove(0).normalized(),
            degree: r + 2,
        },
        _ => WKind::WholeSpace,
    };
    let mut report = WReport::new(kind, WMethod::IdealSide, h1_ideal(z, r + 1), h1_ideal(z, r), 2);
    report.check("general_position", true);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanDomain {
    /// Every point of the dual plane over the prime field.
    Exhaustive,
    Points(Vec<ProjPoint>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WScan {
    /// Unstable points of the domain, sorted.
    pub found: Vec<ProjPoint>,
    pub domain_size: usize,
    pub report: WReport,
}

/// Runs the bundle-side test over `domain` and classifies the result.
///
/// A curve is reported when the unstable points lie on a unique form of
/// degree `rank(E)` whose zero set in the domain is exactly those points.
pub fn scan_w_bundle(p: &SteinerPresentation, domain: &ScanDomain, validity: Option<&ValidityReport>) -> Result<WScan> {
    if p.nvars() != 3 {
        return Err(Error::Precondition("W is classified on the plane only".into()));
    }
    let points = match domain {
        ScanDomain::Exhaustive => {
            if !p.field().is_prime_field() {
                return Err(Error::Strategy("exhaustive scan needs a prime field".into()));
            }
            let mut v = projective_points(p.field(), 2)?;
            v.sort();
            v
        }
        ScanDomain::Points(v) => {
            let mut v: Vec<ProjPoint> = v.iter().map(ProjPoint::normalized).collect();
            v.sort();
            v.dedup();
            v
        }
    };
    let mut found = Vec::new();
    for y in &points {
        if unstable_test_bundle(p, y, validity)?.unstable {
            found.push(y.clone());
        }
    }
    found.sort();
    let degree = p.rank();
    let exhaustive = matches!(domain, ScanDomain::Exhaustive);
    let mut checks: Vec<(&str, bool)> = Vec::new();
    if let Some(v) = validity {
        checks.push(("bundle_validated", v.valid));
    }
    let kind = if !points.is_empty() && found.len() == points.len() {
        WKind::WholeSpace
    } else {
        match fit_curve(&found, degree, &points)? {
            Some((form, ok)) => {
                checks.push(("curve_fit_verified", ok));
                if ok {
                    WKind::Curve { form, degree }
                } else {
                    WKind::Finite(found.clone())
                }
            }
            None => WKind::Finite(found.clone()),
        }
    };
    if exhaustive {
        if let WKind::Finite(f) = &kind {
            // a degree-d plane curve has at most d q + 1 points over F_q
            let q = p.field().order().expect("prime field") as usize;
            checks.push(("classification_coherent", f.len() <= degree * q + 1));
        } else {
            checks.push(("classification_coherent", true));
        }
        if p.m() >= 1 && p.total() == 2 * p.m() {
            let agrees = match determinant_locus(p)? {
                Some(d) if d.is_zero() => matches!(kind, WKind::WholeSpace),
                Some(d) => points.iter().filter(|y| d.eval(y.coords()).is_zero()).cloned().collect::<Vec<_>>() == found,
                None => matches!(kind, WKind::WholeSpace),
            };
            checks.push(("determinant_agrees", agrees));
        }
    }
    let mut report = WReport::new(kind, WMethod::BundleScan, p.m(), p.total(), 2);
    for (name, ok) in checks {
        report.check(name, ok);
    }
    Ok(WScan {
        found,
        domain_size: points.len(),
        report,
    })
}

/// Unique form of `degree` through `found`, and whether its zero set in
/// `domain` equals `found`.
fn fit_curve(found: &[ProjPoint], degree: usize, domain: &[ProjPoint]) -> Result<Option<(HomForm, bool)>> {
    if found.is_empty() {
        return Ok(None);
    }
    let z = PointConfig::new(found[0].field(), 2, found.to_vec())?;
    let kernel = eval_matrix(&z, degree).kernel_vectors();
    if kernel.len() != 1 {
        return Ok(None);
    }
    let form = HomForm::new(z.field(), 3, degree, kernel.into_iter().next().expect("one"))?.normalized();
    let zeros: Vec<&ProjPoint> = domain.iter().filter(|y| form.eval(y.coords()).is_zero()).collect();
    let ok = zeros.len() == found.len() && zeros.iter().zip(found).all(|(a, b)| *a == b);
    Ok(Some((form, ok)))
}

/// For `total = 2m` on the plane: `det(sum y_i K_i)` where the columns of
/// `[K_0; K_1; K_2]` span the kernel of `[N_0 N_1 N_2]`. Its zero set is W.
/// `None` when the dual bundle has global sections (every line unstable).
pub fn determinant_locus(p: &SteinerPresentation) -> Result<Option<HomForm>> {
    let m = p.m();
    if p.nvars() != 3 || m == 0 || p.total() != 2 * m {
        return Err(Error::Precondition(format!(
            "determinant locus needs a plane pencil with total = 2m, got total {} and m {}",
            p.total(),
            m
        )));
    }
    let n = p.matrices();
    let wide = n[0].hstack(&n[1])?.hstack(&n[2])?;
    let k = wide.kernel_basis();
    if k.cols() != m {
        return Ok(None);
    }
    let blocks: Vec<Mat> = (0..3)
        .map(|i| k.select_rows(&(i * m..(i + 1) * m).collect::<Vec<_>>()))
        .collect();
    let minors = linear_minors(&blocks)?;
    Ok(Some(match minors.into_iter().next() {
        Some(d) => d.normalized(),
        None => HomForm::zero(p.field(), 3, m),
    }))
}
