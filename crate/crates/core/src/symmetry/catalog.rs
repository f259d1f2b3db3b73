//! The named groups.

use super::group::{GroupElement, SymmetryGroup, DEFAULT_CAP};
use super::o2::{O2Elem, Turn};
use super::perm::Perm3;
use crate::error::{Error, Result};

pub const NAMES: [&str; 12] = [
    "trivial",
    "line",
    "choreo21",
    "isosceles",
    "hill",
    "choreo3",
    "lagrange",
    "c6",
    "d6",
    "d12",
    "example_bound1",
    "example_bound2",
];

/// Catalog keys of the ten trivial-core groups, in table order, with display names.
pub const TABLE_ROWS: [(&str, &str); 10] = [
    ("trivial", "Trivial"),
    ("line", "Line"),
    ("choreo21", "2-1-choreo"),
    ("isosceles", "Isosceles"),
    ("hill", "Hill"),
    ("choreo3", "3-choreo"),
    ("lagrange", "Lagrange"),
    ("c6", "C6"),
    ("d6", "D6"),
    ("d12", "D12"),
];

/// Whether the global minimizer is known to be homographic (only an expected
/// value; not computed).
pub fn known_homographic_minimizer(name: &str) -> Option<bool> {
    match name {
        "trivial" | "isosceles" | "choreo3" | "lagrange" => Some(true),
        "line" | "choreo21" | "hill" | "c6" | "d6" | "d12" => Some(false),
        _ => None,
    }
}

fn r(n: i64, d: i64) -> O2Elem {
    O2Elem::rot(Turn::new(n, d))
}

fn m(n: i64, d: i64) -> O2Elem {
    O2Elem::refl(Turn::new(n, d))
}

fn p(s: &str) -> Perm3 {
    Perm3::parse(s).expect("static cycle")
}

fn el(tau: O2Elem, rho: O2Elem, sigma: &str) -> GroupElement {
    GroupElement::new(tau, rho, p(sigma))
}

pub fn named_generators(name: &str) -> Result<Vec<GroupElement>> {
    let id = r(0, 1);
    Ok(match name {
        "trivial" => vec![],
        "line" => vec![el(m(0, 1), m(0, 1), "()")],
        "choreo21" => vec![el(r(1, 2), id, "(12)")],
        "isosceles" => vec![el(m(0, 1), m(0, 1), "(12)")],
        "hill" => vec![el(r(1, 2), id, "(12)"), el(m(0, 1), m(0, 1), "()")],
        "choreo3" => vec![el(r(1, 3), id, "(123)")],
        "lagrange" => vec![el(r(1, 3), id, "(123)"), el(m(0, 1), m(0, 1), "(12)")],
        "c6" => vec![el(r(1, 6), m(0, 1), "(123)")],
        "d6" => vec![el(r(1, 3), id, "(132)"), el(m(0, 1), r(1, 2), "(12)")],
        "d12" => vec![el(r(1, 6), m(0, 1), "(123)"), el(m(0, 1), r(1, 2), "(12)")],
        "example_bound1" => vec![el(m(0, 1), id, "(12)")],
        "example_bound2" => vec![
            el(id, r(1, 3), "(123)"),
            el(id, m(0, 1), "(12)"),
            el(r(1, 2), r(1, 2), "()"),
        ],
        _ => return Err(Error::UnknownName(name.to_string())),
    })
}

pub fn named_group(name: &str) -> Result<SymmetryGroup> {
    SymmetryGroup::generate(&named_generators(name)?, DEFAULT_CAP)
}
