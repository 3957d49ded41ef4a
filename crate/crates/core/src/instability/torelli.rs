use serde::Serialize;

use super::classify::classify_w_ideal;
use super::report::WReportJson;
use crate::error::{Error, Result};
use crate::polygeom::{h0_ideal, is_general_position, linear_system, PointConfig};
use crate::steiner::{build_logarithmic, is_isomorphic, IsoOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorelliCase {
    /// Isomorphic and the point sets coincide.
    EqualSets,
    /// Isomorphic, distinct, on a common curve of degree `r+2`.
    CommonCurve,
    NotIsomorphic,
    /// Isomorphic, distinct, and on no common curve.
    Violation,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorelliReport {
    pub case: TorelliCase,
    pub isomorphic: bool,
    pub iso: IsoOutcome,
    /// Forms of degree `r+2` through both sets (first one when several).
    pub common_curve: Option<String>,
    pub common_curves: usize,
    pub note: Option<String>,
    pub distinguishing: Option<String>,
    pub w_first: WReportJson,
    pub w_second: WReportJson,
}

impl TorelliReport {
    pub fn dichotomy_holds(&self) -> bool {
        self.case != TorelliCase::Violation
    }
}

fn check_config(z: &PointConfig, r: usize, label: &str, errors: &mut Vec<String>) -> Result<()> {
    if z.n() != 2 {
        errors.push(format!("{label}: not in the plane"));
        return Ok(());
    }
    if let Some(v) = is_general_position(z, r)?.violation() {
        errors.push(format!("{label}: {v}"));
    }
    Ok(())
}

/// Builds both bundles, decides isomorphism, and places the pair in one of
/// the two cases: equal sets, or sets on a common curve of degree `r+2`.
pub fn torelli_compare(z1: &PointConfig, z2: &PointConfig, r: usize, trials: usize, seed: u64) -> Result<TorelliReport> {
    if z1.field() != z2.field() {
        return Err(Error::FieldMismatch(z1.field(), z2.field()));
    }
    let mut errors = Vec::new();
    if z1.len() != z2.len() {
        errors.push(format!("sizes differ: {} vs {}", z1.len(), z2.len()));
    }
    check_config(z1, r, "first", &mut errors)?;
    check_config(z2, r, "second", &mut errors)?;
    if !errors.is_empty() {
        return Err(Error::Precondition(errors.join("; ")));
    }
    let p1 = build_logarithmic(z1, r)?;
    let p2 = build_logarithmic(z2, r)?;
    let iso = is_isomorphic(&p1, &p2, trials, seed)?;
    let w1 = classify_w_ideal(z1, r)?;
    let w2 = classify_w_ideal(z2, r)?;
    let union = z1.union(z2)?;
    let curves = linear_system(&union, r + 2);
    debug_assert_eq!(curves.len(), h0_ideal(&union, r + 2));
    let common_curve = curves.first().map(|f| f.normalized().to_string());
    let (case, note, distinguishing) = if iso.isomorphic {
        if z1.same_set(z2) {
            (TorelliCase::EqualSets, None, None)
        } else if !curves.is_empty() {
            (
                TorelliCase::CommonCurve,
                Some(format!(
                    "both bundles are the pushforward of a rank-one sheaf on the curve {} of degree {}",
                    common_curve.as_deref().unwrap_or_default(),
                    r + 2
                )),
                None,
            )
        } else {
            (TorelliCase::Violation, None, None)
        }
    } else {
        let reason = if w1.kind != w2.kind {
            format!("unstable loci differ ({} vs {})", w1.kind.name(), w2.kind.name())
        } else {
            format!("no invertible element in a hom space of dimension {}", iso.hom_dim)
        };
        (TorelliCase::NotIsomorphic, None, Some(reason))
    };
    Ok(TorelliReport {
        case,
        isomorphic: iso.isomorphic,
        iso,
        common_curve,
        common_curves: curves.len(),
        note,
        distinguishing,
        w_first: w1.to_json_value(),
        w_second: w2.to_json_value(),
    })
}
