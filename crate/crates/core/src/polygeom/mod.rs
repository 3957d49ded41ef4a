//! Homogeneous forms, projective points and duality, and the cohomology of
//! ideal sheaves of finite point sets computed from evaluation matrices.

mod config;
mod form;
mod ideal;
mod point;

pub use config::PointConfig;
pub use form::{binomial, monomial_count, monomials, HomForm, MonomialBasis};
pub use ideal::{
    eval_matrix, h0_ideal, h1_ideal, hyperplane_section, is_general_position,
    is_general_position_sampled, linear_system, max_secant, secant_lines, GeneralPosition,
    HyperplaneSection, SecantLine, DEFAULT_GP_SAMPLES,
};
pub use point::{dual_line_through, incidence, projective_points, random_point, HyperplaneChart, ProjPoint};
