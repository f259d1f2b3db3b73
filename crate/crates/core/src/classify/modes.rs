//! Pure Fourier modes `t -> c e^{int}` admitted by a group.

use std::fmt;

use nalgebra::DMatrix;
use num_integer::Integer;

use crate::error::Result;
use crate::symmetry::{unit, Configuration, GroupElement, Masses, SymmetryGroup};
use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct ModeSpace {
    pub n: i64,
    /// Real orthonormal basis (coordinates `re c1, im c1, ...`).
    pub basis: Vec<Configuration>,
}

impl ModeSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Real 6x6 matrix of `c -> (g·(c e^{int}))_n` when `g` keeps mode `n` in place.
fn pure_mode_matrix(g: &GroupElement, n: i64) -> DMatrix<f64> {
    let mut a = DMatrix::<f64>::zeros(6, 6);
    for i in 0..3 {
        let (src, _, conj, phase) = g.mode_source(i, n);
        let ph = unit(phase);
        let (p, q) = (ph.re, ph.im);
        let s = if conj { -1.0 } else { 1.0 };
        a[(2 * i, 2 * src)] = p;
        a[(2 * i, 2 * src + 1)] = -q * s;
        a[(2 * i + 1, 2 * src)] = q;
        a[(2 * i + 1, 2 * src + 1)] = p * s;
    }
    a
}

fn keeps_mode(g: &GroupElement, n: i64) -> bool {
    n == 0 || g.tau.is_reflection() == g.rho.is_reflection()
}

/// Basis of the configurations `c` with `t -> c e^{int}` equivariant.
///
/// Solved as the null space of the generator constraints plus the center of
/// mass rows.
pub fn equivariant_mode_space(group: &SymmetryGroup, masses: &Masses, n: i64) -> Result<ModeSpace> {
    group.check_masses(masses)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for g in group.generators() {
        if keeps_mode(g, n) {
            let a = pure_mode_matrix(g, n) - DMatrix::<f64>::identity(6, 6);
            for r in 0..6 {
                rows.push(a.row(r).iter().copied().collect());
            }
        } else {
            // g sends mode n to -n, where an equivariant pure mode has nothing
            for r in 0..6 {
                let mut e = vec![0.0; 6];
                e[r] = 1.0;
                rows.push(e);
            }
        }
    }
    for c in 0..2 {
        let mut e = vec![0.0; 6];
        for i in 0..3 {
            e[2 * i + c] = masses[i];
        }
        rows.push(e);
    }
    while rows.len() < 6 {
        rows.push(vec![0.0; 6]);
    }
    let m = DMatrix::from_fn(rows.len(), 6, |r, c| rows[r][c]);
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let scale = svd.singular_values.max().max(1.0);
    let mut basis = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s <= 1e-10 * scale {
            let v = vt.row(k);
            basis.push([Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]), Complex64::new(v[4], v[5])]);
        }
    }
    Ok(ModeSpace { n, basis })
}

/// True iff the kinetic form with weights `(n - omega)^2` is positive definite
/// on equivariant loops.
pub fn is_coercive(group: &SymmetryGroup, masses: &Masses, omega: f64) -> Result<bool> {
    group.check_masses(masses)?;
    if omega.fract() != 0.0 || !omega.is_finite() {
        return Ok(true);
    }
    Ok(equivariant_mode_space(group, masses, omega as i64)?.dim() == 0)
}

/// Integers `omega` at which coercivity fails, described by residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoercivityProfile {
    pub zero_excluded: bool,
    pub modulus: i64,
    /// Residues `r` in `[0, modulus)` such that every nonzero `n ≡ r` is excluded.
    pub residues: Vec<i64>,
}

impl CoercivityProfile {
    pub fn excludes(&self, n: i64) -> bool {
        if n == 0 {
            self.zero_excluded
        } else {
            self.residues.contains(&n.mod_floor(&self.modulus))
        }
    }
}

impl fmt::Display for CoercivityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        write!(f, "zero:{} nonzero:{{{}}} mod {}", if self.zero_excluded { "yes" } else { "no" }, r.join(","), self.modulus)
    }
}

pub fn coercivity_profile(group: &SymmetryGroup, masses: &Masses) -> Result<CoercivityProfile> {
    let modulus = group.time_modulus();
    let zero_excluded = equivariant_mode_space(group, masses, 0)?.dim() > 0;
    let mut residues = Vec::new();
    for r in 0..modulus {
        // a nonzero representative of the class
        let n = if r == 0 { modulus } else { r };
        if equivariant_mode_space(group, masses, n)?.dim() > 0 {
            residues.push(r);
        }
    }
    Ok(CoercivityProfile { zero_excluded, modulus, residues })
}
