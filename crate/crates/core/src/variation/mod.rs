//! Collision variations: the kernel `Phi_alpha`, parabolic collision
//! trajectories, standard variations and the certified inequalities.

mod certify;
mod phi;
mod trajectory;

pub use certify::{
    f_poly, lemma_le2_certificate, linspace, phi_monotonicity, phi_symmetry, verify_collinear_triple, verify_pi6,
    verify_triple_lagrange, CollinearCase, CollinearRow, Le2Certificate, VerifyRow, COLLINEAR_HEADER, LE2_HEADER, LE2_P,
    VERIFY_HEADER,
};
pub use phi::{beta_fn, phi, phi_quadrature, phi_series, s_function, theta_bar, PhiMethod, PhiResult};
pub use trajectory::{
    beta_exponent, delta_action_leading, delta_action_numeric, g0, is_g0_fixed, norm, ParabolicTrajectory,
    StandardVariation, VariationGrid,
};
