use std::collections::VecDeque;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::functional::{min_pair_distance, ActionEvaluator};
use super::loops::{project_com, Loop, SpectralGrid};
use crate::classify::is_coercive;
use crate::error::{Error, Result};
use crate::symmetry::{Masses, ModeProjector, SymmetryGroup};

#[derive(Clone, Debug)]
pub struct MinimizeOptions {
    pub tol_grad: f64,
    pub max_iter: usize,
    /// Potential quadrature points; at least `4N + 4` are used.
    pub quad_points: Option<usize>,
    /// Independent seeds tried (`seed, seed + 1, ...`); the lowest action wins.
    pub restarts: usize,
    pub history: usize,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions { tol_grad: 1e-8, max_iter: 6000, quad_points: None, restarts: 8, history: 12 }
    }
}

#[derive(Clone, Debug)]
pub struct MinimizeResult {
    pub loop_: Loop,
    pub action: f64,
    pub gradient_norm: f64,
    pub iterations: usize,
    pub min_pair_distance: f64,
    pub converged: bool,
    pub seed: u64,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.re * y.re + x.im * y.im).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(y: &[Complex64], a: f64, x: &[Complex64]) -> Vec<Complex64> {
    y.iter().zip(x).map(|(u, v)| u + v * a).collect()
}

/// Minimum pairwise distance sampled on `max(2048, 16 N)` times.
pub fn dense_min_distance(l: &Loop) -> f64 {
    let grid = SpectralGrid::new(l.n_max, (16 * l.n_max).max(2048));
    grid.eval(&l.modes, 0).iter().map(min_pair_distance).fold(f64::INFINITY, f64::min)
}

struct Problem<'a> {
    eval: ActionEvaluator,
    proj: ModeProjector,
    masses: &'a Masses,
    width: usize,
    precond: Vec<f64>,
}

impl Problem<'_> {
    fn project(&self, c: &[Complex64]) -> Vec<Complex64> {
        let mut p = self.proj.apply(c);
        project_com(self.masses, self.width, &mut p);
        p
    }

    fn value_grad(&self, c: &[Complex64]) -> Option<(f64, Vec<Complex64>)> {
        let (f, g) = self.eval.value_and_gradient(c).ok()?;
        if !f.is_finite() {
            return None;
        }
        Some((f, self.project(&g)))
    }

    fn scale(&self, c: &[Complex64]) -> f64 {
        let w = self.width;
        (0..c.len()).map(|k| self.masses[k / w] * c[k].norm_sqr()).sum::<f64>().sqrt()
    }

    fn seed(&self, seed: u64) -> Vec<Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nm = (self.width / 2) as f64;
        for _ in 0..64 {
            let raw: Vec<Complex64> = (0..3 * self.width)
                .map(|k| {
                    let n = (k % self.width) as f64 - nm;
                    let s = 1.0 / (1.0 + n * n);
                    Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)) * s
                })
                .collect();
            let c = self.project(&raw);
            let sc = self.scale(&c);
            if sc < 1e-8 {
                continue;
            }
            let c: Vec<Complex64> = c.iter().map(|z| z / sc).collect();
            if self.eval.min_grid_distance(&c) < 1e-3 {
                continue;
            }
            // best dilation for A(l c) = l^2 K + l^-alpha V
            let kin = crate::action::functional::kinetic(
                &Loop { masses: *self.masses, n_max: self.width / 2, modes: c.clone() },
                self.eval.omega,
            );
            let pot = self.eval.value(&c) - kin;
            let alpha = self.eval.alpha;
            let lam = if kin > 1e-12 { (alpha * pot / (2.0 * kin)).powf(1.0 / (alpha + 2.0)) } else { 1.0 };
            return c.iter().map(|z| z * lam).collect();
        }
        vec![Complex64::new(0.0, 0.0); 3 * self.width]
    }

    fn precondition(&self, q: &[Complex64]) -> Vec<Complex64> {
        let r: Vec<Complex64> = q.iter().zip(&self.precond).map(|(z, d)| z / d).collect();
        self.project(&r)
    }

    fn run(&self, start: Vec<Complex64>, opts: &MinimizeOptions) -> (Vec<Complex64>, f64, f64, usize, bool) {
        let mut x = start;
        let Some((mut f, mut g)) = self.value_grad(&x) else {
            return (x, f64::INFINITY, f64::INFINITY, 0, false);
        };
        let mut hist: VecDeque<(Vec<Complex64>, Vec<Complex64>, f64)> = VecDeque::new();
        let mut gnorm = norm(&g);
        let mut it = 0;
        while it < opts.max_iter {
            if gnorm <= opts.tol_grad {
                return (x, f, gnorm, it, true);
            }
            it += 1;
            // two-loop recursion
            let mut q = g.clone();
            let mut alphas = Vec::with_capacity(hist.len());
            for (s, y, rho) in hist.iter().rev() {
                let a = rho * dot(s, &q);
                q = axpy(&q, -a, y);
                alphas.push(a);
            }
            let mut r = self.precondition(&q);
            if let Some((s, y, _)) = hist.back() {
                let hy = self.precondition(y);
                r.iter_mut().for_each(|z| *z *= dot(s, y) / dot(y, &hy));
            }
            for ((s, y, rho), a) in hist.iter().zip(alphas.iter().rev()) {
                let b = rho * dot(y, &r);
                r = axpy(&r, a - b, s);
            }
            let mut d: Vec<Complex64> = r.iter().map(|z| -z).collect();
            let mut slope = dot(&g, &d);
            if slope >= 0.0 {
                hist.clear();
                d = self.precondition(&g).iter().map(|z| -z).collect();
                slope = dot(&g, &d);
            }
            let scale = self.scale(&x);
            let guard = 1e-4 * scale;
            let mut step = if hist.is_empty() { (0.1 * scale / norm(&d).max(1e-300)).min(1.0) } else { 1.0 };
            let mut accepted = None;
            for _ in 0..50 {
                let xt = axpy(&x, step, &d);
                if self.eval.min_grid_distance(&xt) >= guard {
                    if let Some((ft, gt)) = self.value_grad(&xt) {
                        let armijo = ft <= f + 1e-4 * step * slope;
                        // at the rounding floor of f accept any step that shrinks the gradient
                        let flat = (ft - f).abs() <= 1e-13 * f.abs().max(1.0) && norm(&gt) < gnorm;
                        if armijo || flat {
                            accepted = Some((xt, ft, gt));
                            break;
                        }
                    }
                }
                step *= 0.5;
            }
            let Some((xn, fn_, gn)) = accepted else {
                if hist.is_empty() {
                    return (x, f, gnorm, it, false);
                }
                hist.clear();
                continue;
            };
            let s: Vec<Complex64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
            let y: Vec<Complex64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
            let sy = dot(&s, &y);
            if sy > 1e-14 * norm(&s) * norm(&y) {
                hist.push_back((s, y, 1.0 / sy));
                if hist.len() > opts.history {
                    hist.pop_front();
                }
            }
            x = xn;
            f = fn_;
            g = gn;
            gnorm = norm(&g);
        }
        let done = gnorm <= opts.tol_grad;
        (x, f, gnorm, it, done)
    }
}

/// Minimize the action over loops equivariant under `group`.
pub fn minimize(
    group: &SymmetryGroup,
    masses: &Masses,
    omega: f64,
    alpha: f64,
    n_max: usize,
    seed: u64,
    opts: &MinimizeOptions,
) -> Result<MinimizeResult> {
    if !is_coercive(group, masses, omega)? {
        return Err(Error::NotCoercive(omega));
    }
    let quad = opts.quad_points.unwrap_or(0);
    let width = 2 * n_max + 1;
    let precond = (0..3 * width)
        .map(|k| {
            let n = (k % width) as f64 - n_max as f64;
            TAU * masses[k / width] * ((n - omega).powi(2) + 1.0)
        })
        .collect();
    let prob = Problem {
        eval: ActionEvaluator::new(*masses, n_max, omega, alpha, quad),
        proj: ModeProjector::new(group, n_max),
        masses,
        width,
        precond,
    };
    let mut best: Option<MinimizeResult> = None;
    for k in 0..opts.restarts.max(1) as u64 {
        let s = seed.wrapping_add(k);
        let start = prob.seed(s);
        let (x, f, gnorm, iters, converged) = prob.run(start, opts);
        let l = Loop { masses: *masses, n_max, modes: x };
        let res = MinimizeResult {
            min_pair_distance: dense_min_distance(&l),
            loop_: l,
            action: f,
            gradient_norm: gnorm,
            iterations: iters,
            converged,
            seed: s,
        };
        let better = match &best {
            None => true,
            Some(b) => (res.converged, -res.action) > (b.converged, -b.action),
        };
        if better {
            best = Some(res);
        }
    }
    Ok(best.expect("at least one start"))
}
