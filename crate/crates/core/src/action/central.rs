use std::f64::consts::TAU;

use num_complex::Complex64;

use super::functional::{potential, potential_gradient};
use crate::error::{Error, Result};
use crate::symmetry::{Configuration, Masses};

fn normalize(mut x: Configuration, masses: &Masses) -> Configuration {
    let com: Complex64 = (0..3).map(|i| x[i] * masses[i]).sum::<Complex64>() / masses.total();
    x.iter_mut().for_each(|z| *z -= com);
    let i: f64 = (0..3).map(|k| masses[k] * x[k].norm_sqr()).sum();
    let s = 1.0 / i.sqrt();
    x.iter_mut().for_each(|z| *z *= s);
    x
}

/// Equilateral triangle, center of mass at the origin, `sum m_i |x_i|^2 = 1`.
pub fn lagrange_central_config(masses: &Masses) -> Configuration {
    let x = [0, 1, 2].map(|k| Complex64::from_polar(1.0, TAU * k as f64 / 3.0));
    normalize(x, masses)
}

/// Accelerations `m_i^-1 dU/dx_i`.
fn accelerations(x: &Configuration, alpha: f64, masses: &Masses) -> Configuration {
    let g = potential_gradient(x, alpha, masses).expect("distinct positions");
    [0, 1, 2].map(|i| g[i] / masses[i])
}

/// Collinear central configuration with body `central` between the other two.
pub fn euler_central_config(masses: &Masses, central: usize, alpha: f64) -> Result<Configuration> {
    let others: Vec<usize> = (0..3).filter(|&i| i != central).collect();
    let (a, b) = (others[0], others[1]);
    let place = |s: f64| -> Configuration {
        let mut x = [Complex64::new(0.0, 0.0); 3];
        x[a] = Complex64::new(0.0, 0.0);
        x[central] = Complex64::new(s, 0.0);
        x[b] = Complex64::new(1.0, 0.0);
        x
    };
    // a central configuration has accelerations affine in position with one slope
    let f = |s: f64| -> f64 {
        let x = place(s);
        let acc = accelerations(&x, alpha, masses);
        (acc[central].re - acc[a].re) / s - (acc[b].re - acc[a].re)
    };
    let (mut lo, mut hi) = (1e-9, 1.0 - 1e-9);
    let (flo, fhi) = (f(lo), f(hi));
    if flo.signum() == fhi.signum() {
        return Err(Error::RootNotBracketed { lo, hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid).signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    Ok(normalize(place(0.5 * (lo + hi)), masses))
}

/// Norm of the gradient of `U` restricted to `{I = 1}` and the center-of-mass plane,
/// measured in the mass metric.
pub fn central_config_residual(x: &Configuration, alpha: f64, masses: &Masses) -> f64 {
    let acc = accelerations(x, alpha, masses);
    let i: f64 = (0..3).map(|k| masses[k] * x[k].norm_sqr()).sum();
    let lam = -(0..3).map(|k| masses[k] * (acc[k].conj() * x[k]).re).sum::<f64>() / i;
    (0..3).map(|k| masses[k] * (acc[k] + x[k] * lam).norm_sqr()).sum::<f64>().sqrt()
}

/// Potential of the normalized Lagrange configuration.
pub fn lagrange_potential(masses: &Masses, alpha: f64) -> f64 {
    potential(&lagrange_central_config(masses), alpha, masses)
}

/// Stationary value over rigid circular Lagrange motions at frequency `k` nearest `omega`:
/// `2 pi [(c/2) I + U0 I^(-alpha/2)]` with `c = (k - omega)^2`, `I = (alpha U0 / c)^(2/(alpha+2))`.
pub fn lagrange_min_action(omega: f64, alpha: f64, masses: &Masses) -> Result<f64> {
    let k = omega.round();
    if omega == k {
        return Err(Error::OmegaInteger(omega));
    }
    let c = (k - omega).powi(2);
    let u0 = lagrange_potential(masses, alpha);
    let i = lagrange_min_inertia(omega, alpha, masses)?;
    debug_assert!(i > 0.0);
    Ok(TAU * (0.5 * c * i + u0 * i.powf(-alpha / 2.0)))
}

pub fn lagrange_min_inertia(omega: f64, alpha: f64, masses: &Masses) -> Result<f64> {
    let k = omega.round();
    if omega == k {
        return Err(Error::OmegaInteger(omega));
    }
    let c = (k - omega).powi(2);
    Ok((alpha * lagrange_potential(masses, alpha) / c).powf(2.0 / (alpha + 2.0)))
}
