//! Change of rotating frame that removes pure time shifts acting on the plane.
//!
//! Sign convention: a group `G` read in the frame `omega` is turned into
//! `G'` with `rho'(g) = rot(-D a(g)) rho(g)` and `omega + D`, where `a(g)` is the
//! turn of `tau(g)` and the integer `D` solves `D ≡ b (mod c)` for the shortest
//! time shift `rot(1/c)` with `rho = rot(b/c)`. Against the kinetic term
//! `|x' - i omega x|^2` used in [`crate::action`] this is the mirror image, so a
//! reduced pair `(G', omega')` corresponds to the action problem at `-omega'`
//! for the conjugated group (identical whenever `G'` is mirror symmetric).

use num_traits::Zero;

use super::is_type_r;
use crate::error::{Error, Result};
use crate::symmetry::{wrap, GroupElement, O2Elem, SymmetryGroup, Turn};

fn shift_rho(g: &GroupElement, d: Turn) -> GroupElement {
    GroupElement { rho: O2Elem::rot(-d * g.tau.turn).compose(&g.rho), ..*g }
}

fn scale_tau(g: &GroupElement, r: i64) -> GroupElement {
    let turn = wrap(g.tau.turn * Turn::from_integer(r));
    let tau = if g.tau.is_reflection() { O2Elem::refl(turn) } else { O2Elem::rot(turn) };
    GroupElement { tau, ..*g }
}

pub fn rotating_frame_reduce(group: &SymmetryGroup, omega: Turn) -> Result<(SymmetryGroup, Turn)> {
    if !is_type_r(group) {
        return Err(Error::NotTypeR);
    }
    let c = group.tau_image().iter().filter(|t| !t.is_reflection()).count() as i64;
    let mut delta = Turn::zero();
    if c > 1 {
        let step = O2Elem::rot(Turn::new(1, c));
        let g = group.elements().iter().find(|g| g.tau == step).expect("cyclic time image has a generator");
        let b_turn = g.rho.turn * Turn::from_integer(c);
        if !b_turn.is_integer() {
            return Err(Error::IrrationalFrame(format!("rho of the shortest time shift is {} with c = {c}", g.rho)));
        }
        let mut b = b_turn.to_integer();
        if 2 * b > c {
            b -= c;
        }
        delta = Turn::from_integer(b);
    }
    let shifted: Vec<GroupElement> = group.elements().iter().map(|g| shift_rho(g, delta)).collect();
    let r = shifted.iter().filter(|g| g.is_redundant()).count() as i64 + 1;
    let mut quotient: Vec<GroupElement> = shifted.iter().map(|g| scale_tau(g, r)).collect();
    quotient.sort();
    quotient.dedup();
    let mut gens: Vec<GroupElement> = group.generators().iter().map(|g| scale_tau(&shift_rho(g, delta), r)).collect();
    gens.dedup();
    let reduced = SymmetryGroup::from_parts(quotient, gens);
    Ok((reduced, (omega + delta) / Turn::from_integer(r)))
}

/// Inverse of [`rotating_frame_reduce`] for a reduced group in frame
/// `omega = p/q`: returns the inertial group (frame 0).
pub fn rotating_frame_unreduce(reduced: &SymmetryGroup, omega: Turn) -> Result<SymmetryGroup> {
    let q = *omega.denom();
    let p = Turn::from_integer(*omega.numer());
    if q <= 0 {
        return Err(Error::IrrationalFrame(format!("bad frame {omega}")));
    }
    let lift = |g: &GroupElement, k: i64| -> GroupElement {
        let turn = (g.tau.turn + Turn::from_integer(k)) / Turn::from_integer(q);
        let tau = if g.tau.is_reflection() { O2Elem::refl(turn) } else { O2Elem::rot(turn) };
        GroupElement { tau, rho: O2Elem::rot(p * turn).compose(&g.rho), sigma: g.sigma }
    };
    let mut elements = Vec::with_capacity(reduced.order() * q as usize);
    for g in reduced.elements() {
        for k in 0..q {
            elements.push(lift(g, k));
        }
    }
    let mut gens: Vec<GroupElement> = reduced.generators().iter().map(|g| lift(g, 0)).collect();
    if q > 1 {
        gens.push(lift(&GroupElement::identity(), 1));
    }
    Ok(SymmetryGroup::from_parts(elements, gens))
}
