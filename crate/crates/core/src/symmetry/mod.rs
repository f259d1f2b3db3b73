//! Finite subgroups of O(2) x O(2) x S3 acting on time, plane and body labels.

mod catalog;
mod group;
mod o2;
mod perm;

pub use catalog::{known_homographic_minimizer, named_generators, named_group, NAMES, TABLE_ROWS};
pub use group::{
    com_projector, config_action, config_matrix, ActionType, Configuration, FundamentalDomain, GroupElement,
    HypothesesReport, Masses, ModeProjector, SymmetryGroup, DEFAULT_CAP,
};
pub use o2::{parse_turn, turn_to_f64, unit, wrap, O2Elem, O2Kind, Turn};
pub use perm::Perm3;
