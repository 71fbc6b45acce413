//! The hypergeometric-product system and its Okubo normal form.

pub mod lambda;
pub mod params;
pub mod systems;

pub use lambda::{lambda, LambdaIndex, Sign};
pub use params::{GammaMode, HGParams, ParamFile};
pub use systems::{
    a0_closed_form, build_okubo_zero, build_p, build_product_system, build_r, check_block_form,
    det_p_closed_form, det_r_closed_form, infinity_charpoly_closed_form, okubo_t,
    okubo_tilde_lambda_form, okubo_tilde_residues, okubo_zero_residues, p_inverse_closed_form,
    poly_with_roots, riemann_scheme, rp_inverse_closed_form, sample_params, spectral_form,
    Exponents, FuchsianSystem, OkuboSystem,
};
