//! Predicates of the symmetry-group taxonomy and the catalog table.

mod collisions;
mod frame;
mod modes;
mod report;

pub use collisions::{is_bound_to_collisions, isotropy_subgroups, CollisionVerdict, REFUTE_DISTANCE};
pub use frame::{rotating_frame_reduce, rotating_frame_unreduce};
pub use modes::{coercivity_profile, equivariant_mode_space, is_coercive, CoercivityProfile, ModeSpace};
pub use report::{build_table, classify, ClassificationReport, TableRow, CSV_HEADER};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::Result;
use crate::symmetry::{GroupElement, Masses, SymmetryGroup};

/// `det rho = det tau` on every element.
pub fn is_type_r(group: &SymmetryGroup) -> bool {
    group.elements().iter().all(|g| g.tau.det() == g.rho.det())
}

/// Subgroup generated by the redundant elements.
pub fn redundant_subgroup(group: &SymmetryGroup) -> SymmetryGroup {
    let gens: Vec<GroupElement> = group.elements().iter().copied().filter(|g| g.is_redundant()).collect();
    group.subgroup(gens)
}

/// Values at generic times lie on one complex line.
pub fn is_homographic(group: &SymmetryGroup, masses: &Masses) -> Result<bool> {
    let basis = group.core().fixed_config_space(masses)?;
    if basis.len() <= 1 {
        return Ok(true);
    }
    let m = DMatrix::<Complex64>::from_fn(3, basis.len(), |i, k| basis[k][i]);
    let sv = m.singular_values();
    let top = sv.max();
    Ok(sv.iter().filter(|&&s| s > 1e-9 * top).count() <= 1)
}

fn subgroup_has_rcp(k: &SymmetryGroup) -> bool {
    if k.order() == 1 {
        return true;
    }
    if k.elements().iter().any(|g| g.rho.det() != 1) {
        return false;
    }
    for i1 in 0..3 {
        for i2 in i1 + 1..3 {
            let ok = k.elements().iter().all(|g| {
                let fixes = g.sigma.apply(i1) == i1 || g.sigma.apply(i2) == i2;
                !fixes || g.rho.is_identity()
            });
            if ok {
                return true;
            }
        }
    }
    false
}

/// Rotating circle property on the core and every time-isotropy subgroup.
pub fn has_rcp(group: &SymmetryGroup) -> bool {
    isotropy_subgroups(group).iter().all(subgroup_has_rcp)
}
