//! Bound-to-collisions verdicts.

use std::fmt;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::Result;
use crate::symmetry::{config_action, Masses, ModeProjector, SymmetryGroup};

#[derive(Clone, Debug, PartialEq)]
pub enum CollisionVerdict {
    /// Structural argument; the string names it.
    Proved(String),
    /// An equivariant loop of unit size keeps this minimum pairwise distance.
    Refuted(f64),
    /// Search found nothing better than this distance.
    Suspected(f64),
}

impl fmt::Display for CollisionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CollisionVerdict::Proved(why) => write!(f, "proved({why})"),
            CollisionVerdict::Refuted(d) => write!(f, "refuted(min_distance={d:.4e})"),
            CollisionVerdict::Suspected(d) => write!(f, "suspected(min_distance={d:.4e})"),
        }
    }
}

pub const REFUTE_DISTANCE: f64 = 1e-3;
const SEEDS: u64 = 8;
const N_MAX: usize = 4;
const GRID: usize = 48;
const CHECK_GRID: usize = 512;
const STEPS: usize = 300;

/// Isotropy subgroups of the time action: the core and every reflection time.
pub fn isotropy_subgroups(group: &SymmetryGroup) -> Vec<SymmetryGroup> {
    let mut out = vec![group.core()];
    for s in group.reflection_times() {
        let h = group.time_isotropy(s);
        if !out.iter().any(|k: &SymmetryGroup| k.same_elements(&h)) {
            out.push(h);
        }
    }
    out
}

fn structural(group: &SymmetryGroup, masses: &Masses) -> Result<Option<String>> {
    for h in isotropy_subgroups(group) {
        let basis = h.fixed_config_space(masses)?;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if basis.iter().all(|b| (b[i] - b[j]).norm() < 1e-10) {
                return Ok(Some(format!("isotropy of order {} fixes only configurations with x{}=x{}", h.order(), i + 1, j + 1)));
            }
        }
    }
    let core_space = group.core().fixed_config_space(masses)?;
    if core_space.len() == 1 {
        let xi = core_space[0];
        for g in group.elements() {
            if g.tau.is_reflection() {
                continue;
            }
            let gx = config_action(g, &xi);
            if (0..3).all(|i| (gx[i] + xi[i]).norm() < 1e-10) {
                return Ok(Some(format!("core space is a line reversed by {g}")));
            }
        }
    }
    Ok(None)
}

struct Searcher {
    proj: ModeProjector,
    masses: Masses,
    width: usize,
}

impl Searcher {
    fn project(&self, c: &[Complex64]) -> Vec<Complex64> {
        let mut p = self.proj.apply(c);
        let mm: f64 = self.masses.0.iter().map(|m| m * m).sum();
        for n in 0..self.width {
            let s: Complex64 = (0..3).map(|i| p[i * self.width + n] * self.masses[i]).sum();
            for i in 0..3 {
                p[i * self.width + n] -= s * (self.masses[i] / mm);
            }
        }
        p
    }

    fn normalize(&self, c: &mut [Complex64]) -> bool {
        let norm: f64 = (0..3)
            .map(|i| self.masses[i] * c[i * self.width..(i + 1) * self.width].iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum::<f64>()
            .sqrt();
        if norm < 1e-12 {
            return false;
        }
        c.iter_mut().for_each(|z| *z /= norm);
        true
    }

    fn eval(&self, c: &[Complex64], t: f64) -> [Complex64; 3] {
        let mut x = [Complex64::new(0.0, 0.0); 3];
        for (i, xi) in x.iter_mut().enumerate() {
            for k in 0..self.width {
                let n = k as f64 - N_MAX as f64;
                *xi += c[i * self.width + k] * Complex64::from_polar(1.0, n * t);
            }
        }
        x
    }

    fn min_distance(&self, c: &[Complex64], grid: usize) -> f64 {
        let mut best = f64::INFINITY;
        for k in 0..grid {
            let x = self.eval(c, std::f64::consts::TAU * k as f64 / grid as f64);
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                best = best.min((x[i] - x[j]).norm());
            }
        }
        best
    }

    /// Repulsion energy sum of `1/d^2` over the grid, and its coefficient gradient.
    fn energy(&self, c: &[Complex64]) -> (f64, Vec<Complex64>) {
        let mut e = 0.0;
        let mut grad = vec![Complex64::new(0.0, 0.0); c.len()];
        for k in 0..GRID {
            let t = std::f64::consts::TAU * k as f64 / GRID as f64;
            let x = self.eval(c, t);
            let mut gx = [Complex64::new(0.0, 0.0); 3];
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let z = x[i] - x[j];
                let d2 = z.norm_sqr();
                e += 1.0 / d2;
                let g = -2.0 * z / (d2 * d2);
                gx[i] += g;
                gx[j] -= g;
            }
            for i in 0..3 {
                for kk in 0..self.width {
                    let n = kk as f64 - N_MAX as f64;
                    grad[i * self.width + kk] += gx[i] * Complex64::from_polar(1.0, -n * t);
                }
            }
        }
        (e, grad)
    }

    fn run(&self, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut c: Vec<Complex64> = (0..3 * self.width)
            .map(|k| {
                let n = (k % self.width) as f64 - N_MAX as f64;
                let s = 1.0 / (1.0 + n * n);
                Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)) * s
            })
            .collect();
        c = self.project(&c);
        if !self.normalize(&mut c) {
            return 0.0;
        }
        let (mut e, _) = self.energy(&c);
        let mut step = 1e-3;
        for _ in 0..STEPS {
            if self.min_distance(&c, CHECK_GRID) >= REFUTE_DISTANCE * 10.0 {
                break;
            }
            let (_, g) = self.energy(&c);
            let g = self.project(&g);
            let mut accepted = false;
            for _ in 0..30 {
                let mut trial: Vec<Complex64> = c.iter().zip(&g).map(|(a, b)| a - b * step).collect();
                if !self.normalize(&mut trial) {
                    break;
                }
                let (et, _) = self.energy(&trial);
                if et.is_finite() && et < e {
                    c = trial;
                    e = et;
                    step *= 2.0;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        self.min_distance(&c, CHECK_GRID)
    }
}

/// Three-valued bound-to-collisions test.
pub fn is_bound_to_collisions(group: &SymmetryGroup, masses: &Masses) -> Result<CollisionVerdict> {
    group.check_masses(masses)?;
    if let Some(why) = structural(group, masses)? {
        return Ok(CollisionVerdict::Proved(why));
    }
    let s = Searcher { proj: ModeProjector::new(group, N_MAX), masses: *masses, width: 2 * N_MAX + 1 };
    let best = (0..SEEDS).into_par_iter().map(|seed| s.run(seed)).collect::<Vec<_>>().into_iter().fold(0.0, f64::max);
    Ok(if best >= REFUTE_DISTANCE { CollisionVerdict::Refuted(best) } else { CollisionVerdict::Suspected(best) })
}
