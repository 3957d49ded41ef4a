use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::polygeom::{HomForm, ProjPoint};

/// Shape of the set of unstable hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WKind {
    /// Exactly these points (sorted, normalized).
    Finite(Vec<ProjPoint>),
    /// The zero set of a single form of the given degree.
    Curve { form: HomForm, degree: usize },
    WholeSpace,
}

impl WKind {
    pub fn name(&self) -> &'static str {
        match self {
            WKind::Finite(_) => "finite",
            WKind::Curve { .. } => "curve",
            WKind::WholeSpace => "whole_space",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WMethod {
    IdealSide,
    BundleScan,
}

impl WMethod {
    pub fn name(&self) -> &'static str {
        match self {
            WMethod::IdealSide => "ideal-side",
            WMethod::BundleScan => "bundle-scan",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WReport {
    pub kind: WKind,
    pub method: WMethod,
    /// `m n - total + 1`; may be negative.
    pub expected_codimension: i64,
    pub cross_checks: BTreeMap<String, bool>,
}

impl WReport {
    pub fn new(kind: WKind, method: WMethod, m: usize, total: usize, n: usize) -> Self {
        WReport {
            kind,
            method,
            expected_codimension: expected_codimension(m, total, n),
            cross_checks: BTreeMap::new(),
        }
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.cross_checks.insert(name.to_string(), ok);
    }

    /// All recorded cross-checks passed.
    pub fn checks_pass(&self) -> bool {
        self.cross_checks.values().all(|&b| b)
    }

    pub fn to_json_value(&self) -> WReportJson {
        let (points, curve) = match &self.kind {
            WKind::Finite(p) => (p.iter().map(ProjPoint::to_strings).collect(), None),
            WKind::Curve { form, degree } => (
                vec![],
                Some(CurveJson {
                    degree: *degree,
                    coefficients: form.coeffs().iter().map(ToString::to_string).collect(),
                    equation: form.to_string(),
                }),
            ),
            WKind::WholeSpace => (vec![], None),
        };
        WReportJson {
            kind: self.kind.name().into(),
            points,
            curve,
            method: self.method.name().into(),
            expected_codimension: self.expected_codimension,
            cross_checks: self.cross_checks.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain data")
    }
}

pub fn expected_codimension(m: usize, total: usize, n: usize) -> i64 {
    (m * n) as i64 - total as i64 + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub degree: usize,
    /// In the degree-lexicographic monomial order.
    pub coefficients: Vec<String>,
    pub equation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WReportJson {
    pub kind: String,
    pub points: Vec<Vec<String>>,
    pub curve: Option<CurveJson>,
    pub method: String,
    pub expected_codimension: i64,
    pub cross_checks: BTreeMap<String, bool>,
}
