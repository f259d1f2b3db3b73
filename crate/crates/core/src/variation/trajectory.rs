//! Parabolic collision trajectories, standard variations and the action change.

use num_complex::Complex64;

use super::phi::s_function;
use crate::action::{euler_central_config, lagrange_central_config};
use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_breaks};
use crate::symmetry::{config_action, Configuration, GroupElement, Masses, O2Elem, Perm3, Turn};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Time reflection, mirror across the first axis, bodies 1 and 2 exchanged.
pub fn g0() -> GroupElement {
    let m = O2Elem::refl(Turn::from_integer(0));
    GroupElement::new(m, m, Perm3::parse("(12)").expect("static cycle"))
}

pub fn is_g0_fixed(delta: &Configuration) -> bool {
    let g = config_action(&g0(), delta);
    let scale = delta.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    (0..3).all(|i| (g[i] - delta[i]).norm() <= 1e-12 * scale)
}

pub fn norm(x: &Configuration) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Exponent `2/(2+alpha)`.
pub fn beta_exponent(alpha: f64) -> f64 {
    2.0 / (2.0 + alpha)
}

fn cluster_pairs(cluster: &[usize]) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for (a, &i) in cluster.iter().enumerate() {
        for &j in &cluster[a + 1..] {
            v.push((i, j));
        }
    }
    v
}

/// `m_i^-1 dU_k/dx_i` for the bodies of the cluster.
fn cluster_accelerations(x: &Configuration, cluster: &[usize], alpha: f64, masses: &Masses) -> Configuration {
    let mut a = [ZERO; 3];
    for (i, j) in cluster_pairs(cluster) {
        let d = x[i] - x[j];
        let r = d.norm();
        let f = d * (-alpha * masses[i] * masses[j] * r.powf(-alpha - 2.0));
        a[i] += f / masses[i];
        a[j] -= f / masses[j];
    }
    a
}

/// `lambda` with `a_i = -lambda x_i`, and the relative residual of that fit.
fn central_fit(x: &Configuration, cluster: &[usize], alpha: f64, masses: &Masses) -> (f64, f64) {
    let a = cluster_accelerations(x, cluster, alpha, masses);
    let ii: f64 = cluster.iter().map(|&k| masses[k] * x[k].norm_sqr()).sum();
    let lam = -cluster.iter().map(|&k| masses[k] * (a[k].conj() * x[k]).re).sum::<f64>() / ii;
    let res: f64 = cluster.iter().map(|&k| masses[k] * (a[k] + x[k] * lam).norm_sqr()).sum::<f64>().sqrt();
    let an: f64 = cluster.iter().map(|&k| masses[k] * a[k].norm_sqr()).sum::<f64>().sqrt();
    (lam, res / an)
}

/// `q_i(t) = |t|^(2/(2+alpha)) xi_i` for `i` in the cluster.
#[derive(Clone, Debug)]
pub struct ParabolicTrajectory {
    pub xi: Configuration,
    pub alpha: f64,
    pub cluster: Vec<usize>,
}

impl ParabolicTrajectory {
    /// Recenters `xi` on the cluster's center of mass, checks that it is a
    /// central configuration of the cluster and rescales it so that `q` solves
    /// `m_i q_i'' = dU_k/dx_i` for `t != 0`.
    pub fn new(xi: Configuration, alpha: f64, cluster: &[usize], masses: &Masses) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::Domain(format!("alpha = {alpha} outside (0, 2)")));
        }
        let mut cl: Vec<usize> = cluster.to_vec();
        cl.sort_unstable();
        cl.dedup();
        if cl.len() < 2 || cl.iter().any(|&i| i > 2) {
            return Err(Error::Domain(format!("cluster {cluster:?}")));
        }
        let mt: f64 = cl.iter().map(|&i| masses[i]).sum();
        let com: Complex64 = cl.iter().map(|&i| xi[i] * masses[i]).sum::<Complex64>() / mt;
        let mut x = [ZERO; 3];
        for &i in &cl {
            x[i] = xi[i] - com;
        }
        for (i, j) in cluster_pairs(&cl) {
            if x[i] == x[j] {
                return Err(Error::ZeroSeparation);
            }
        }
        let (lam, res) = central_fit(&x, &cl, alpha, masses);
        if res > 1e-8 || lam <= 0.0 {
            return Err(Error::Domain(format!("not a central configuration (residual {res:e})")));
        }
        let b = beta_exponent(alpha);
        let s = (lam / (b * (1.0 - b))).powf(1.0 / (alpha + 2.0));
        x.iter_mut().for_each(|z| *z *= s);
        Ok(ParabolicTrajectory { xi: x, alpha, cluster: cl })
    }

    /// Equilateral triple collision.
    pub fn lagrange(masses: &Masses, alpha: f64) -> Result<Self> {
        Self::new(lagrange_central_config(masses), alpha, &[0, 1, 2], masses)
    }

    /// Collinear triple collision with `central` in the middle.
    pub fn euler(masses: &Masses, central: usize, alpha: f64) -> Result<Self> {
        Self::new(euler_central_config(masses, central, alpha)?, alpha, &[0, 1, 2], masses)
    }

    /// Collision of bodies 1 and 2 along `direction`.
    pub fn binary(masses: &Masses, direction: Complex64, alpha: f64) -> Result<Self> {
        let mut xi = [ZERO; 3];
        xi[0] = direction * masses[1];
        xi[1] = -direction * masses[0];
        Self::new(xi, alpha, &[0, 1], masses)
    }

    pub fn eval(&self, t: f64) -> Configuration {
        let p = t.abs().powf(beta_exponent(self.alpha));
        let mut x = [ZERO; 3];
        for &i in &self.cluster {
            x[i] = self.xi[i] * p;
        }
        x
    }

    pub fn velocity(&self, t: f64) -> Configuration {
        let b = beta_exponent(self.alpha);
        let p = b * t.abs().powf(b - 1.0) * t.signum();
        let mut x = [ZERO; 3];
        for &i in &self.cluster {
            x[i] = self.xi[i] * p;
        }
        x
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        cluster_pairs(&self.cluster)
    }

    /// Relative residual of the Newton equations at time `t != 0`.
    pub fn newton_residual(&self, t: f64, masses: &Masses) -> f64 {
        let b = beta_exponent(self.alpha);
        let x = self.eval(t);
        let a = cluster_accelerations(&x, &self.cluster, self.alpha, masses);
        let acc = b * (b - 1.0) * t.abs().powf(b - 2.0);
        let num: f64 = self.cluster.iter().map(|&i| (self.xi[i] * acc - a[i]).norm_sqr()).sum();
        let den: f64 = self.cluster.iter().map(|&i| a[i].norm_sqr()).sum();
        (num / den).sqrt()
    }
}

/// `v(t) = delta` for `|t| <= T - |delta|`, `(T - |t|) delta/|delta|` on the ramp, `0` beyond `T`.
#[derive(Clone, Copy, Debug)]
pub struct StandardVariation {
    pub delta: Configuration,
    pub t: f64,
}

impl StandardVariation {
    pub fn new(delta: Configuration, t: f64) -> Result<Self> {
        if !(t > norm(&delta)) {
            return Err(Error::Domain(format!("T = {t} must exceed |delta| = {}", norm(&delta))));
        }
        Ok(StandardVariation { delta, t })
    }

    pub fn size(&self) -> f64 {
        norm(&self.delta)
    }

    pub fn eval(&self, t: f64) -> Configuration {
        let d = self.size();
        let a = t.abs();
        if a >= self.t || d == 0.0 {
            [ZERO; 3]
        } else if a <= self.t - d {
            self.delta
        } else {
            self.delta.map(|z| z * ((self.t - a) / d))
        }
    }
}

/// Leading term of the action change as `|delta| -> 0`:
/// `2 sum_{i<j} m_i m_j S(xi_i - xi_j, -(delta_i - delta_j))`, where `S` is
/// homogeneous of degree `1 - alpha/2` in its second argument. The pair
/// separation of `q + v` is `xi_ij t^beta + delta_ij`, hence the minus sign.
pub fn delta_action_leading(q: &ParabolicTrajectory, delta: &Configuration, masses: &Masses, g0_mode: bool) -> Result<f64> {
    if g0_mode && !is_g0_fixed(delta) {
        return Err(Error::NonEquivariantDelta);
    }
    let alpha = q.alpha;
    let mut total = 0.0;
    for (i, j) in q.pairs() {
        let d = delta[i] - delta[j];
        let r = d.norm();
        if r == 0.0 {
            continue;
        }
        let s = s_function(q.xi[i] - q.xi[j], -d / r, alpha)?;
        total += masses[i] * masses[j] * r.powf(1.0 - alpha / 2.0) * s;
    }
    Ok(2.0 * total)
}

/// Accuracy controls for [`delta_action_numeric`].
#[derive(Clone, Copy, Debug)]
pub struct VariationGrid {
    pub rel_tol: f64,
    /// Geometric breakpoints per decade around the collision scale.
    pub per_decade: usize,
    pub max_pieces: usize,
}

impl Default for VariationGrid {
    fn default() -> Self {
        VariationGrid { rel_tol: 1e-11, per_decade: 2, max_pieces: 4000 }
    }
}

/// `int_{-T}^{T} [L_k(q+v) - L_k(q)] dt` for the kinetic plus potential
/// Lagrangian of the cluster. The integrand is even in `t`. On the plateau the
/// pair integrals are taken in `u = t^beta`, which removes the cusp at `t = 0`,
/// and the unperturbed term is integrated in closed form.
pub fn delta_action_numeric(q: &ParabolicTrajectory, v: &StandardVariation, masses: &Masses, grid: &VariationGrid) -> Result<f64> {
    let d = v.size();
    if d == 0.0 {
        return Ok(0.0);
    }
    let alpha = q.alpha;
    let b = beta_exponent(alpha);
    let tt = v.t;
    let t1 = tt - d;
    let mut err = 0.0;
    let mut ok = true;

    // kinetic part, nonzero on the ramps only
    let qa = q.eval(t1);
    let qb = q.eval(tt);
    let mut kin = 0.0;
    for &i in &q.cluster {
        let dq = qb[i] - qa[i];
        kin += masses[i] * (-(dq.conj() * v.delta[i]).re / d + 0.5 * v.delta[i].norm_sqr() / d);
    }

    let mut pot = 0.0;
    for (i, j) in q.pairs() {
        let xi = q.xi[i] - q.xi[j];
        let dl = v.delta[i] - v.delta[j];
        if dl.norm() == 0.0 {
            continue;
        }
        let mm = masses[i] * masses[j];
        let xn = xi.norm();

        // plateau, u = t^beta, dt = (1/beta) u^(alpha/2) du
        let umax = t1.powf(b);
        let f = |u: f64| -> f64 {
            if u <= 0.0 {
                return 0.0;
            }
            (xi * u + dl).norm().powf(-alpha) * u.powf(alpha / 2.0) / b
        };
        let scale = dl.norm() / xn;
        let mut pts = vec![0.0, umax];
        let ustar = -(xi.conj() * dl).re / (xn * xn);
        let step = 10f64.powf(1.0 / grid.per_decade.max(1) as f64);
        let mut w = scale * 1e-3;
        while w < umax {
            pts.push(w);
            if ustar > 0.0 {
                for p in [ustar - w, ustar + w] {
                    if p > 0.0 && p < umax {
                        pts.push(p);
                    }
                }
            }
            w *= step;
        }
        if ustar > 0.0 && ustar < umax {
            pts.push(ustar);
        }
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup();
        let r1 = integrate_breaks(f, &pts, 0.0, grid.rel_tol, grid.max_pieces);
        let free = xn.powf(-alpha) * t1.powf(1.0 - alpha * b) / (1.0 - alpha * b);

        // ramp
        let g = |t: f64| -> f64 {
            let s = t.powf(b);
            let vv = dl * ((tt - t) / d);
            (xi * s + vv).norm().powf(-alpha) - (xi * s).norm().powf(-alpha)
        };
        let r2 = integrate(g, t1, tt, 0.0, grid.rel_tol);
        ok &= r1.converged && r2.converged;
        err += mm * (r1.abs_err + r2.abs_err);
        pot += mm * (r1.value - free + r2.value);
    }
    if !ok {
        return Err(Error::GridTooCoarse(2.0 * err));
    }
    Ok(2.0 * (kin + pot))
}
