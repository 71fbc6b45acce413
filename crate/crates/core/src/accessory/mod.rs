//! Accessory parameters of the Okubo system: charts, the cubic blocks of the
//! resolvent, the reduced difference systems and the special values.

pub mod chart;
pub mod difference;
pub mod special;

pub use chart::{
    check_admissible, epsilon_delta, is_admissible, normalize_projective, parametrize_a1,
    recover_chart, AccessoryChart, ChartFile, EpsilonDelta,
};
pub use difference::{
    a12_a21_closed_form, cross_products, cubic_blocks, difference_systems,
    leading_cross_closed_form, leading_cross_coefficients, resolvent_adjugate, substantially_same,
    substantially_same_dual, CrossProduct, CubicBlockDecomposition, DifferenceSystem2, Direction,
    PointPair, SameVerdict, SystemLabel,
};
pub use special::{
    branch_factors, branch_products_lambda_form, branch_r, build_d1, conditional_identity_residual,
    d_condition_rewrite_residuals, delta_factorization_residual, on_special_locus, realize,
    realized_a1_lambda_form, realized_exponents, solve_accessory, special_matrix, Branch,
    Realization, Solution,
};
