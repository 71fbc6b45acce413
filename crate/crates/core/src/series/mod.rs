//! Floating-point and exact series: Gauss functions, the product vectors and
//! local Frobenius solutions of Okubo systems.

pub mod field;
pub mod hyp;
pub mod local;
pub mod vectors;

pub use field::Field;
pub use hyp::{hyp2f1, hyp2f1_full, Hyp2f1};
pub use local::{
    check_disc, circle_samples, evaluate, exponents_at, local_series, recurrence, recurrence_defect,
    recurrence_holds_exactly, residual_report, system_residual, BasePoint, Coefficients, EvalReport,
    Mode, SeriesSolution, Variable,
};
pub use vectors::{
    product_vector_w, u_chain_residual, v_from_shifted, v_from_w, v_vector, w_residual, ProductVector,
    VReport,
};
