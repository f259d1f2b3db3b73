#![allow(dead_code)]

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use symorb::symmetry::{turn_to_f64, O2Kind};
use symorb::{GroupElement, Masses};

/// Time map of `tau` on the circle in radians, straight from its geometric meaning.
pub fn time_map(g: &GroupElement, t: f64) -> f64 {
    let a = TAU * turn_to_f64(g.tau.turn);
    match g.tau.kind {
        O2Kind::Rotation => t + a,
        O2Kind::Reflection => a - t,
    }
}

/// `rho` as a 2x2 matrix built from the angle.
pub fn plane_map(g: &GroupElement, z: Complex64) -> Complex64 {
    let a = TAU * turn_to_f64(g.rho.turn);
    let (c, s) = (a.cos(), a.sin());
    let m = match g.rho.kind {
        O2Kind::Rotation => [[c, -s], [s, c]],
        O2Kind::Reflection => [[c, s], [s, -c]],
    };
    Complex64::new(m[0][0] * z.re + m[0][1] * z.im, m[1][0] * z.re + m[1][1] * z.im)
}

pub fn inverse_time(g: &GroupElement, t: f64) -> f64 {
    let a = TAU * turn_to_f64(g.tau.turn);
    match g.tau.kind {
        O2Kind::Rotation => t - a,
        O2Kind::Reflection => a - t,
    }
}

/// Loop given by coefficients over `modes`: body-major, `c[i * modes.len() + k]`.
pub fn eval(c: &[Complex64], modes: &[i64], t: f64) -> [Complex64; 3] {
    let w = modes.len();
    let mut x = [Complex64::new(0.0, 0.0); 3];
    for i in 0..3 {
        for (k, &n) in modes.iter().enumerate() {
            x[i] += c[i * w + k] * Complex64::from_polar(1.0, n as f64 * t);
        }
    }
    x
}

/// `(g x)(t) = rho x_{sigma^-1 i}(tau^-1 t)` evaluated by sampling and refit by a DFT
/// onto the same mode set.
pub fn act_sampled(g: &GroupElement, c: &[Complex64], modes: &[i64]) -> Vec<Complex64> {
    let samples = 64;
    let w = modes.len();
    let mut out = vec![Complex64::new(0.0, 0.0); c.len()];
    let inv = g.sigma.inverse();
    for s in 0..samples {
        let t = TAU * s as f64 / samples as f64;
        let x = eval(c, modes, inverse_time(g, t));
        for i in 0..3 {
            let y = plane_map(g, x[inv.apply(i)]);
            for (k, &n) in modes.iter().enumerate() {
                out[i * w + k] += y * Complex64::from_polar(1.0 / samples as f64, -(n as f64) * t);
            }
        }
    }
    out
}

/// Real matrix of a real-linear map on complex vectors.
pub fn real_matrix(dim: usize, f: impl Fn(&[Complex64]) -> Vec<Complex64>) -> DMatrix<f64> {
    let mut m = DMatrix::<f64>::zeros(2 * dim, 2 * dim);
    for col in 0..2 * dim {
        let mut e = vec![Complex64::new(0.0, 0.0); dim];
        e[col / 2] = if col % 2 == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 1.0) };
        let y = f(&e);
        for (r, z) in y.iter().enumerate() {
            m[(2 * r, col)] = z.re;
            m[(2 * r + 1, col)] = z.im;
        }
    }
    m
}

pub fn null_dim(rows: &DMatrix<f64>) -> usize {
    let cols = rows.ncols();
    let padded = if rows.nrows() < cols {
        let mut p = DMatrix::<f64>::zeros(cols, cols);
        p.rows_mut(0, rows.nrows()).copy_from(rows);
        p
    } else {
        rows.clone()
    };
    let sv = padded.singular_values();
    sv.iter().filter(|&&s| s < 1e-8).count()
}

/// Dimension of the pure mode `n` space by averaging over all elements on the
/// `(n, -n)` pair and cutting with the center of mass and `c_{-n} = 0`.
pub fn pure_mode_dim_oracle(elements: &[GroupElement], masses: &Masses, n: i64) -> usize {
    let modes: Vec<i64> = if n == 0 { vec![0] } else { vec![n, -n] };
    let w = modes.len();
    let dim = 3 * w;
    let mut avg = DMatrix::<f64>::zeros(2 * dim, 2 * dim);
    for g in elements {
        avg += real_matrix(dim, |c| act_sampled(g, c, &modes));
    }
    avg /= elements.len() as f64;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let resid = DMatrix::<f64>::identity(2 * dim, 2 * dim) - avg;
    for r in 0..2 * dim {
        rows.push(resid.row(r).iter().copied().collect());
    }
    for k in 0..w {
        for part in 0..2 {
            let mut e = vec![0.0; 2 * dim];
            for i in 0..3 {
                e[2 * (i * w + k) + part] = masses[i];
            }
            rows.push(e);
        }
    }
    if n != 0 {
        for i in 0..3 {
            for part in 0..2 {
                let mut e = vec![0.0; 2 * dim];
                e[2 * (i * w + 1) + part] = 1.0;
                rows.push(e);
            }
        }
    }
    let m = DMatrix::from_fn(rows.len(), 2 * dim, |r, c| rows[r][c]);
    null_dim(&m)
}
