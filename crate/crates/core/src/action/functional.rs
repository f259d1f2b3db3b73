use std::f64::consts::TAU;

use num_complex::Complex64;

use super::loops::{project_com, Loop, SpectralGrid};
use crate::error::{Error, Result};
use crate::symmetry::{Configuration, Masses, ModeProjector, SymmetryGroup};

pub(crate) const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// `sum_{i<j} m_i m_j / |x_i - x_j|^alpha`; `+inf` at a collision.
pub fn potential(x: &Configuration, alpha: f64, masses: &Masses) -> f64 {
    let mut u = 0.0;
    for (i, j) in PAIRS {
        let r = (x[i] - x[j]).norm();
        if r == 0.0 {
            return f64::INFINITY;
        }
        u += masses[i] * masses[j] * r.powf(-alpha);
    }
    u
}

/// `dU/dx_i` as complex numbers (`d/d re + i d/d im`).
pub fn potential_gradient(x: &Configuration, alpha: f64, masses: &Masses) -> Option<Configuration> {
    let mut g = [Complex64::new(0.0, 0.0); 3];
    for (i, j) in PAIRS {
        let z = x[i] - x[j];
        let r2 = z.norm_sqr();
        if r2 == 0.0 {
            return None;
        }
        let f = -alpha * masses[i] * masses[j] * r2.powf(-alpha / 2.0 - 1.0);
        g[i] += z * f;
        g[j] -= z * f;
    }
    Some(g)
}

pub fn min_pair_distance(x: &Configuration) -> f64 {
    PAIRS.iter().map(|&(i, j)| (x[i] - x[j]).norm()).fold(f64::INFINITY, f64::min)
}

pub fn default_quad_points(n_max: usize) -> usize {
    4 * n_max + 4
}

/// `2 pi sum (m_i / 2)(n - omega)^2 |c_{i,n}|^2`.
pub fn kinetic(l: &Loop, omega: f64) -> f64 {
    let nm = l.n_max as i64;
    let mut k = 0.0;
    for i in 0..3 {
        for n in -nm..=nm {
            k += 0.5 * l.masses[i] * (n as f64 - omega).powi(2) * l.coeff(i, n).norm_sqr();
        }
    }
    TAU * k
}

/// Evaluator of the action and its gradient on a fixed grid.
#[derive(Clone, Debug)]
pub struct ActionEvaluator {
    pub masses: Masses,
    pub n_max: usize,
    pub omega: f64,
    pub alpha: f64,
    grid: SpectralGrid,
}

impl ActionEvaluator {
    pub fn new(masses: Masses, n_max: usize, omega: f64, alpha: f64, quad_points: usize) -> Self {
        let points = quad_points.max(default_quad_points(n_max));
        ActionEvaluator { masses, n_max, omega, alpha, grid: SpectralGrid::new(n_max, points) }
    }

    pub fn grid(&self) -> &SpectralGrid {
        &self.grid
    }

    fn kinetic_weight(&self, body: usize, k: usize) -> f64 {
        let n = k as f64 - self.n_max as f64;
        self.masses[body] * (n - self.omega).powi(2)
    }

    pub fn value(&self, c: &[Complex64]) -> f64 {
        let w = 2 * self.n_max + 1;
        let kin: f64 = (0..3 * w).map(|k| 0.5 * self.kinetic_weight(k / w, k % w) * c[k].norm_sqr()).sum();
        let pot: f64 = self.grid.eval(c, 0).iter().map(|x| potential(x, self.alpha, &self.masses)).sum();
        TAU * (kin + pot / self.grid.points() as f64)
    }

    /// Value and unconstrained gradient (`dA/d re c + i dA/d im c`).
    pub fn value_and_gradient(&self, c: &[Complex64]) -> Result<(f64, Vec<Complex64>)> {
        let w = 2 * self.n_max + 1;
        let xs = self.grid.eval(c, 0);
        let mut pot = 0.0;
        let mut gs = Vec::with_capacity(xs.len());
        for x in &xs {
            pot += potential(x, self.alpha, &self.masses);
            gs.push(potential_gradient(x, self.alpha, &self.masses).ok_or(Error::CollisionOnGrid)?);
        }
        let m = self.grid.points() as f64;
        let mut grad = self.grid.adjoint(&gs);
        let mut kin = 0.0;
        for k in 0..3 * w {
            let wt = self.kinetic_weight(k / w, k % w);
            kin += 0.5 * wt * c[k].norm_sqr();
            grad[k] = TAU * (grad[k] / m + c[k] * wt);
        }
        Ok((TAU * (kin + pot / m), grad))
    }

    pub fn min_grid_distance(&self, c: &[Complex64]) -> f64 {
        self.grid.eval(c, 0).iter().map(min_pair_distance).fold(f64::INFINITY, f64::min)
    }
}

/// Action with the kinetic part exact in modes and the potential on a uniform grid.
pub fn action(l: &Loop, omega: f64, alpha: f64, quad_points: usize) -> f64 {
    ActionEvaluator::new(l.masses, l.n_max, omega, alpha, quad_points).value(&l.modes)
}

/// Gradient of [`action`] projected onto the center-of-mass constraint.
pub fn action_gradient(l: &Loop, omega: f64, alpha: f64, quad_points: usize) -> Result<Vec<Complex64>> {
    let (_, mut g) = ActionEvaluator::new(l.masses, l.n_max, omega, alpha, quad_points).value_and_gradient(&l.modes)?;
    project_com(&l.masses, l.width(), &mut g);
    Ok(g)
}

/// Group average of the loop action.
pub fn equivariant_project(l: &Loop, group: &SymmetryGroup) -> Result<Loop> {
    group.check_masses(&l.masses)?;
    let p = ModeProjector::new(group, l.n_max);
    Ok(Loop { modes: p.apply(&l.modes), ..l.clone() })
}

/// Largest equivariance defect `|x(g t) - g x(t)|` over `samples` times and all elements.
pub fn equivariance_defect(l: &Loop, group: &SymmetryGroup, samples: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for k in 0..samples {
        let t = TAU * k as f64 / samples as f64;
        let x = l.eval(t);
        for g in group.elements() {
            let gt = g.tau.apply_time_f64(t);
            let y = l.eval(gt);
            for j in 0..3 {
                let i = g.sigma.apply(j);
                worst = worst.max((y[i] - g.rho.apply(x[j])).norm());
            }
        }
    }
    worst
}
