//! Floating-point evaluation of the analytic objects and numeric checks of
//! their modular transformation laws.

mod eval;
mod special;
mod suite;

pub use eval::{
    eval_affine_character, eval_big_f, eval_e, eval_eta, eval_fp, eval_level_theta, eval_massless_iso0, eval_mu,
    eval_psi, eval_r, eval_rp, eval_rpa, eval_series_at, eval_theta, mordell, mordell_cosh, mordell_level1,
    mordell_sinh, mordell_tanh, s_matrix, sqrt_i_over_tau, zwegers_mordell_at_zero,
};
pub use special::{erf, erfc, erfcx, integrate, integrate_line};
pub use suite::{
    default_samples, identity_names, is_finite_difference, run_identity_suite, ComplexNumber, IdentityCheckResult,
    SamplePoint,
};
