//! Spectral loops, the action functional and its equivariant minimization.

mod central;
mod diagnostics;
mod functional;
mod loops;
mod minimize;

pub use central::{
    central_config_residual, euler_central_config, lagrange_central_config, lagrange_min_action, lagrange_min_inertia,
    lagrange_potential,
};
pub use diagnostics::{
    angular_momentum, boundary_times, collision_report, equilateral_defect, inertial_angular_momentum, moment_of_inertia,
    newton_residual, relative_spread, symmetrization_defect, CollisionEvent, CollisionKind,
};
pub use functional::{
    action, action_gradient, default_quad_points, equivariance_defect, equivariant_project, kinetic, min_pair_distance,
    potential, potential_gradient, ActionEvaluator,
};
pub use loops::{Loop, SpectralGrid};
pub use minimize::{dense_min_distance, minimize, MinimizeOptions, MinimizeResult};
