//! The collision kernel `Phi_alpha(theta)` and the pair function `S`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_breaks};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiMethod {
    Quadrature,
    Series,
}

impl PhiMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            PhiMethod::Quadrature => "quadrature",
            PhiMethod::Series => "series",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PhiResult {
    pub theta: f64,
    pub alpha: f64,
    pub value: f64,
    pub method: PhiMethod,
    pub est_error: f64,
}

/// Euler beta function through log-gamma.
pub fn beta_fn(z: f64, w: f64) -> Result<f64> {
    if !(z > 0.0 && w > 0.0) || !z.is_finite() || !w.is_finite() {
        return Err(Error::Domain(format!("beta({z}, {w})")));
    }
    Ok((ln_gamma(z) + ln_gamma(w) - ln_gamma(z + w)).exp())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 2.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("alpha = {alpha} outside (0, 2)")))
    }
}

const ABS_TOL: f64 = 1e-13;
const REL_TOL: f64 = 1e-13;
const MAX_PIECES: usize = 4000;

/// Quadrature in `u = t^(2/(alpha+2))`:
/// `Phi = (alpha+2)/2 * int_0^inf [u^(alpha/2) |u - e^(i theta)|^(-alpha) - u^(-alpha/2)] du`.
/// On `[0,2]` the second term is integrated in closed form; on `[2,inf)` the
/// substitution `u = v^(-2/alpha)` gives a bounded integrand on a finite interval.
/// Depends on `theta` only through `cos theta`, so `theta = 0` is admitted for
/// `alpha < 1`, where the integral still converges.
fn phi_quad_raw(alpha: f64, theta: f64) -> (f64, f64, bool) {
    let (s, c) = theta.sin_cos();
    let s = s.abs();
    let h = alpha / 2.0;

    let near = |u: f64| -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        let d2 = (u - c) * (u - c) + s * s;
        u.powf(h) * d2.powf(-h)
    };
    let mut pts = vec![0.0, 2.0];
    if c > 0.0 {
        for p in [c - 4.0 * s, c - s, c - 0.1 * s, c, c + 0.1 * s, c + s, c + 4.0 * s] {
            if p > 0.0 && p < 2.0 {
                pts.push(p);
            }
        }
        // near-singular peak of width sin(theta) around u = cos(theta)
        if s < 1e-2 {
            let mut w = s;
            while w < 0.5 {
                for p in [c - w, c + w] {
                    if p > 0.0 && p < 2.0 {
                        pts.push(p);
                    }
                }
                w *= 4.0;
            }
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let head = integrate_breaks(near, &pts, ABS_TOL, REL_TOL, MAX_PIECES);
    let sub = 2f64.powf(1.0 - h) / (1.0 - h);

    // u = 1/w, w = v^(2/alpha):  (2/alpha) v^(-2/alpha) [(1 - 2 w c + w^2)^(-alpha/2) - 1]
    let vmax = 0.5f64.powf(h);
    let tail_f = |v: f64| -> f64 {
        if v <= 0.0 {
            return 2.0 * c;
        }
        let w = v.powf(1.0 / h);
        let b = (-h * (w * (w - 2.0 * c)).ln_1p()).exp_m1();
        b / h * v.powf(-1.0 / h)
    };
    let tail = integrate(tail_f, 0.0, vmax, ABS_TOL, REL_TOL);

    let k = (alpha + 2.0) / 2.0;
    let value = k * (head.value - sub + tail.value);
    let err = k * (head.abs_err + tail.abs_err) + 4.0 * f64::EPSILON * k * sub;
    (value, err, head.converged && tail.converged)
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < TAU {
        Ok(())
    } else {
        Err(Error::ThetaOutOfRange(theta))
    }
}

pub fn phi_quadrature(alpha: f64, theta: f64) -> Result<PhiResult> {
    check_alpha(alpha)?;
    check_theta(theta)?;
    let (value, est_error, converged) = phi_quad_raw(alpha, theta);
    if !converged {
        return Err(Error::GridTooCoarse(est_error));
    }
    Ok(PhiResult { theta, alpha, value, method: PhiMethod::Quadrature, est_error })
}

pub fn phi(alpha: f64, theta: f64) -> Result<f64> {
    phi_quadrature(alpha, theta).map(|r| r.value)
}

/// Series in powers of `cos theta`:
/// `Phi = alpha(alpha+2)/2 [ beta(a,a)/(alpha-2)
///   + (1/alpha) sum_k C(-alpha/2,k) (-2 cos theta)^k (alpha+2k)/(alpha+2k-2) beta(a+k/2,a+k/2) ]`
/// with `a = (alpha+2)/4`. For `cos theta < 0` the terms alternate and the
/// partial sums are accelerated by repeated averaging.
pub fn phi_series(alpha: f64, theta: f64, terms: usize) -> Result<PhiResult> {
    check_alpha(alpha)?;
    check_theta(theta)?;
    if terms == 0 {
        return Err(Error::Domain("terms must be positive".into()));
    }
    let c = theta.cos();
    if c >= 1.0 - 1e-9 && alpha >= 1.0 {
        return Err(Error::SeriesDiverges(c));
    }
    let a = (alpha + 2.0) / 4.0;
    let lnb = |x: f64| 2.0 * ln_gamma(x) - ln_gamma(2.0 * x);
    let zero = lnb(a).exp() / (alpha - 2.0);

    // log|C(-alpha/2, k)| by recurrence, sign (-1)^k
    let mut ln_binom = 0.0;
    let mut partial = Vec::with_capacity(terms + 1);
    let mut last = [0.0f64; 2];
    let mut sum = 0.0;
    partial.push(sum);
    for k in 1..=terms {
        let kf = k as f64;
        ln_binom += ((alpha / 2.0 + kf - 1.0) / kf).ln();
        // C(-alpha/2,k)(-2c)^k = |C| (2c)^k
        let mag = ln_binom + kf * (2.0 * c.abs()).ln() + lnb(a + kf / 2.0);
        let sign = if c < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
        let t = sign * mag.exp() * (alpha + 2.0 * kf) / (alpha + 2.0 * kf - 2.0);
        sum += t;
        partial.push(sum);
        last = [last[1], t];
    }

    let (tail, est) = if c < 0.0 && terms >= 4 {
        // repeated averaging of the last partial sums
        let m = (terms / 2).min(40);
        let mut row: Vec<f64> = partial[partial.len() - m - 1..].to_vec();
        let mut prev = row[row.len() - 1];
        let mut diff = f64::INFINITY;
        while row.len() > 1 {
            row = row.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
            let cur = row[row.len() - 1];
            diff = (cur - prev).abs();
            prev = cur;
        }
        (prev, diff)
    } else {
        let r = if last[0] != 0.0 { (last[1] / last[0]).abs() } else { c.abs() };
        let r = r.max(c.abs());
        let est = if r < 1.0 { last[1].abs() * r / (1.0 - r) } else { f64::INFINITY };
        (sum, est)
    };
    if !est.is_finite() {
        return Err(Error::SeriesDiverges(c));
    }
    let k = alpha * (alpha + 2.0) / 2.0;
    let value = k * (zero + tail / alpha);
    Ok(PhiResult {
        theta,
        alpha,
        value,
        method: PhiMethod::Series,
        est_error: (k / alpha) * est + 1e-15 * value.abs(),
    })
}

/// `S(xi, delta_hat) = |xi|^(-1-alpha/2) Phi_alpha(theta)`, `cos theta = <xi/|xi|, delta_hat>`.
pub fn s_function(xi: Complex64, delta_hat: Complex64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let r = xi.norm();
    if r == 0.0 {
        return Err(Error::ZeroSeparation);
    }
    let dn = delta_hat.norm();
    if (dn - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("|delta_hat| = {dn}")));
    }
    let c = ((xi.conj() * delta_hat).re / (r * dn)).clamp(-1.0, 1.0);
    let theta = c.acos();
    let p = if theta == 0.0 {
        if alpha >= 1.0 {
            f64::INFINITY
        } else {
            phi_quad_raw(alpha, 0.0).0
        }
    } else {
        phi(alpha, theta)?
    };
    Ok(r.powf(-1.0 - alpha / 2.0) * p)
}

/// The zero of `Phi_alpha` in `(0, pi)`.
pub fn theta_bar(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let (mut lo, mut hi) = (1e-6, PI);
    let flo = phi(alpha, lo)?;
    let fhi = phi(alpha, hi)?;
    if !(flo > 0.0 && fhi < 0.0) {
        return Err(Error::RootNotBracketed { lo, hi });
    }
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if phi(alpha, mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    if root >= PI / 2.0 {
        return Err(Error::RootNotBracketed { lo: 0.0, hi: PI / 2.0 });
    }
    Ok(root)
}
