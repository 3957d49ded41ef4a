//! Unstable hyperplanes of Steiner bundles: the bundle-side kernel test,
//! the ideal-side test on point sets, classification of the unstable locus
//! in the plane, splitting types on lines, and the comparison of two point
//! sets through their bundles.

mod classify;
mod cubic;
mod oracle;
mod report;
mod secant;
mod splitting;
mod torelli;

pub use classify::{classify_w_ideal, determinant_locus, scan_w_bundle, ScanDomain, WScan};
pub use cubic::{on_twisted_cubic, projected_cubic, projected_curve_point};
pub use oracle::{restricted_stack, unstable_test_bundle, unstable_test_ideal, BundleTest, IdealOracle};
pub use report::{expected_codimension, CurveJson, WKind, WMethod, WReport, WReportJson};
pub use secant::{secant_pencil_check, SecantViolation};
pub use splitting::{line_pencil, splitting_type, SplittingType};
pub use torelli::{torelli_compare, TorelliCase, TorelliReport};
