use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::Zero;

use crate::symmetry::{Configuration, Masses};

/// Planar three-body loop of period `2 pi` stored as Fourier modes
/// `c_{i,n}`, `|n| <= n_max`, laid out as `i * (2 n_max + 1) + (n + n_max)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Loop {
    pub masses: Masses,
    pub n_max: usize,
    pub modes: Vec<Complex64>,
}

impl Loop {
    pub fn zeros(masses: Masses, n_max: usize) -> Self {
        Loop { masses, n_max, modes: vec![Complex64::zero(); 3 * (2 * n_max + 1)] }
    }

    pub fn width(&self) -> usize {
        2 * self.n_max + 1
    }

    pub fn index(&self, body: usize, n: i64) -> usize {
        body * self.width() + (n + self.n_max as i64) as usize
    }

    pub fn coeff(&self, body: usize, n: i64) -> Complex64 {
        self.modes[self.index(body, n)]
    }

    pub fn set(&mut self, body: usize, n: i64, c: Complex64) {
        let k = self.index(body, n);
        self.modes[k] = c;
    }

    /// Relative equilibrium `x_i(t) = e^{ikt} xi_i`.
    pub fn rigid(masses: Masses, n_max: usize, xi: &Configuration, k: i64) -> Self {
        let mut l = Loop::zeros(masses, n_max);
        for (i, z) in xi.iter().enumerate() {
            l.set(i, k, *z);
        }
        l
    }

    /// Same loop with more or fewer modes.
    pub fn resized(&self, n_max: usize) -> Self {
        let mut l = Loop::zeros(self.masses, n_max);
        let m = n_max.min(self.n_max) as i64;
        for i in 0..3 {
            for n in -m..=m {
                l.set(i, n, self.coeff(i, n));
            }
        }
        l
    }

    /// `d`-th time derivative at `t`.
    pub fn eval_derivative(&self, t: f64, d: u32) -> Configuration {
        let mut x = [Complex64::zero(); 3];
        let nm = self.n_max as i64;
        for (i, xi) in x.iter_mut().enumerate() {
            for n in -nm..=nm {
                let f = Complex64::new(0.0, n as f64).powu(d);
                *xi += f * self.coeff(i, n) * Complex64::from_polar(1.0, n as f64 * t);
            }
        }
        x
    }

    pub fn eval(&self, t: f64) -> Configuration {
        self.eval_derivative(t, 0)
    }

    /// Mass-weighted `L^2` size, `sqrt(sum m_i |c_{i,n}|^2)`: the root mean moment of inertia.
    pub fn scale(&self) -> f64 {
        let w = self.width();
        (0..3)
            .map(|i| self.masses[i] * self.modes[i * w..(i + 1) * w].iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest `|sum_i m_i c_{i,n}|` over modes.
    pub fn center_of_mass_defect(&self) -> f64 {
        let nm = self.n_max as i64;
        (-nm..=nm)
            .map(|n| (0..3).map(|i| self.coeff(i, n) * self.masses[i]).sum::<Complex64>().norm())
            .fold(0.0, f64::max)
    }

    pub fn project_center_of_mass(&mut self) {
        project_com(&self.masses, self.width(), &mut self.modes);
    }

    /// Shift in time: `x(t) -> x(t + s)`.
    pub fn time_shifted(&self, s: f64) -> Self {
        let mut l = self.clone();
        let nm = self.n_max as i64;
        for i in 0..3 {
            for n in -nm..=nm {
                let k = l.index(i, n);
                l.modes[k] *= Complex64::from_polar(1.0, n as f64 * s);
            }
        }
        l
    }

    pub fn rotated(&self, phi: f64) -> Self {
        let r = Complex64::from_polar(1.0, phi);
        Loop { modes: self.modes.iter().map(|z| z * r).collect(), ..self.clone() }
    }

    /// Samples `t, x1, x2, x3` on `m` uniform times.
    pub fn sample(&self, m: usize) -> Vec<(f64, Configuration)> {
        let grid = SpectralGrid::new(self.n_max, m);
        grid.eval(&self.modes, 0).into_iter().enumerate().map(|(k, x)| (grid.time(k), x)).collect()
    }
}

/// Per-mode orthogonal projection onto `sum_i m_i c_{i,n} = 0`.
pub(crate) fn project_com(masses: &Masses, width: usize, c: &mut [Complex64]) {
    let mm: f64 = masses.0.iter().map(|m| m * m).sum();
    for n in 0..width {
        let s: Complex64 = (0..3).map(|i| c[i * width + n] * masses[i]).sum();
        for i in 0..3 {
            c[i * width + n] -= s * (masses[i] / mm);
        }
    }
}

/// Uniform time grid with precomputed `e^{int}`.
#[derive(Clone, Debug)]
pub struct SpectralGrid {
    n_max: usize,
    points: usize,
    tw: Vec<Complex64>,
}

impl SpectralGrid {
    pub fn new(n_max: usize, points: usize) -> Self {
        let nm = n_max as i64;
        let mut tw = Vec::with_capacity(points * (2 * n_max + 1));
        for k in 0..points {
            let t = TAU * k as f64 / points as f64;
            for n in -nm..=nm {
                tw.push(Complex64::from_polar(1.0, n as f64 * t));
            }
        }
        SpectralGrid { n_max, points, tw }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn time(&self, k: usize) -> f64 {
        TAU * k as f64 / self.points as f64
    }

    /// `d`-th derivative of the loop at every grid time.
    pub fn eval(&self, c: &[Complex64], d: u32) -> Vec<Configuration> {
        let w = 2 * self.n_max + 1;
        let nm = self.n_max as i64;
        let factor: Vec<Complex64> = (-nm..=nm).map(|n| Complex64::new(0.0, n as f64).powu(d)).collect();
        let scaled: Vec<Complex64> = (0..3 * w).map(|k| c[k] * factor[k % w]).collect();
        (0..self.points)
            .map(|k| {
                let row = &self.tw[k * w..(k + 1) * w];
                let mut x = [Complex64::zero(); 3];
                for (i, xi) in x.iter_mut().enumerate() {
                    *xi = row.iter().zip(&scaled[i * w..(i + 1) * w]).map(|(e, z)| e * z).sum();
                }
                x
            })
            .collect()
    }

    /// Adjoint of evaluation: `G_{i,n} = sum_k g_i(t_k) e^{-i n t_k}`.
    pub fn adjoint(&self, g: &[Configuration]) -> Vec<Complex64> {
        let w = 2 * self.n_max + 1;
        let mut out = vec![Complex64::zero(); 3 * w];
        for (k, gk) in g.iter().enumerate() {
            let row = &self.tw[k * w..(k + 1) * w];
            for i in 0..3 {
                for (j, e) in row.iter().enumerate() {
                    out[i * w + j] += gk[i] * e.conj();
                }
            }
        }
        out
    }
}
