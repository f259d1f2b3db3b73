//! Closed-form Euler and Hill test paths, equal unit masses.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::action::Loop;
use crate::error::{Error, Result};
use crate::symmetry::Masses;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EulerParams {
    pub r: f64,
    pub k: i64,
    pub omega: f64,
    pub alpha: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HillParams {
    pub r: f64,
    pub d: f64,
    pub k: i64,
    pub omega: f64,
}

/// `2 pi [R^2 (k - omega)^2 + 2 / R^alpha + 1 / (2R)^alpha]`.
pub fn euler_orbit_action(p: &EulerParams) -> f64 {
    TAU * (p.r * p.r * (p.k as f64 - p.omega).powi(2) + 2.0 * p.r.powf(-p.alpha) + (2.0 * p.r).powf(-p.alpha))
}

/// Minimizing radius and value at `alpha = 1`.
pub fn euler_min_action(omega: f64, k: i64) -> Result<(f64, f64)> {
    let c = (k as f64 - omega).powi(2);
    if c == 0.0 {
        return Err(Error::DegenerateFrequency);
    }
    let r = (5.0 / (4.0 * c)).cbrt();
    Ok((r, TAU * 1.5 * (25.0 * c).cbrt() / 2f64.cbrt()))
}

/// `x1 = R e^{ikt}, x2 = -x1, x3 = 0`.
pub fn euler_loop(p: &EulerParams, n_max: usize) -> Loop {
    let mut l = Loop::zeros(Masses::unit(), n_max);
    l.set(0, p.k, Complex64::new(p.r, 0.0));
    l.set(1, p.k, Complex64::new(-p.r, 0.0));
    l
}

/// `x1 = d + R e^{ikt}, x2 = d - R e^{ikt}, x3 = -2d`.
pub fn hill_loop(p: &HillParams, n_max: usize) -> Loop {
    let mut l = Loop::zeros(Masses::unit(), n_max);
    let mut add = |i: usize, n: i64, z: f64| {
        let c = l.coeff(i, n);
        l.set(i, n, c + z);
    };
    add(0, 0, p.d);
    add(0, p.k, p.r);
    add(1, 0, p.d);
    add(1, p.k, -p.r);
    add(2, 0, -2.0 * p.d);
    l
}

fn check_geometry(p: &HillParams) -> Result<()> {
    if !(p.r > 0.0 && p.r < 3.0 * p.d) {
        return Err(Error::GeometryViolated { r: p.r, d: p.d });
    }
    Ok(())
}

/// Trapezoid mean over a period with halving until two levels agree.
fn periodic_mean(f: impl Fn(f64) -> f64, points: usize) -> f64 {
    let mean = |m: usize| (0..m).map(|j| f(TAU * j as f64 / m as f64)).sum::<f64>() / m as f64;
    let mut m = points.max(8);
    let mut prev = mean(m);
    for _ in 0..8 {
        m *= 2;
        let next = mean(m);
        if (next - prev).abs() <= 4e-15 * next.abs() {
            return next;
        }
        prev = next;
    }
    prev
}

/// `(1/2 pi) int dt / |1 + eps e^{it}|`.
pub fn hill_mean_inverse_distance(eps: f64, points: usize) -> f64 {
    periodic_mean(|t| 1.0 / (Complex64::new(1.0, 0.0) + Complex64::from_polar(eps, t)).norm(), points)
}

/// Test-path action with the third-body terms averaged by quadrature.
///
/// Both `1/|3d + R e^{ikt}|` and `1/|3d - R e^{ikt}|` are integrated, which
/// coincides with twice the first when `k != 0`.
pub fn hill_test_action(p: &HillParams, quad_points: usize) -> Result<f64> {
    check_geometry(p)?;
    let (d3, r) = (3.0 * p.d, p.r);
    let k = p.k as f64;
    let third = periodic_mean(
        |t| {
            let e = Complex64::from_polar(r, k * t);
            1.0 / (d3 + e).norm() + 1.0 / (d3 - e).norm()
        },
        quad_points,
    );
    let w = p.omega;
    Ok(TAU * (3.0 * w * w * p.d * p.d + r * r * (k - w).powi(2) + 1.0 / (2.0 * r) + third))
}

/// Logarithmic upper bound on the test-path action, for `k != 0`.
pub fn hill_action_upper_bound(p: &HillParams) -> Result<f64> {
    check_geometry(p)?;
    if p.k == 0 {
        return Err(Error::Domain("the logarithmic bound needs k != 0".into()));
    }
    let w = p.omega;
    let eps2 = (p.r / (3.0 * p.d)).powi(2);
    let avg = 1.0 - 0.5 * (1.0 - eps2).ln();
    Ok(TAU * (3.0 * w * w * p.d * p.d + p.r * p.r * (p.k as f64 - w).powi(2) + 1.0 / (2.0 * p.r) + 2.0 / (3.0 * p.d) * avg))
}

fn golden(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut e = a + g * (b - a);
    let (mut fc, mut fe) = (f(c), f(e));
    for _ in 0..iters {
        if fc < fe {
            b = e;
            e = c;
            fe = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + g * (b - a);
            fe = f(e);
        }
    }
    if fc < fe {
        (c, fc)
    } else {
        (e, fe)
    }
}

/// Golden-section minimum of `f` on `[a, b]`: `(argmin, min)`.
pub fn golden_section(f: impl Fn(f64) -> f64, a: f64, b: f64, iters: usize) -> (f64, f64) {
    golden(f, a, b, iters)
}

/// Best test path of winding `k` at `omega`: `(R, d, action)` by nested golden
/// sections over `ln d` and `R / 3d`.
pub fn hill_optimize(k: i64, omega: f64, quad_points: usize) -> (f64, f64, f64) {
    let at = |ld: f64, eps: f64| {
        let d = ld.exp();
        hill_test_action(&HillParams { r: 3.0 * d * eps, d, k, omega }, quad_points).unwrap_or(f64::INFINITY)
    };
    let inner = |ld: f64| golden(|e| at(ld, e), 1e-3, 0.97, 40);
    let (ld, _) = golden(|ld| inner(ld).1, (0.02f64).ln(), (200f64).ln(), 40);
    let (eps, v) = inner(ld);
    let d = ld.exp();
    (3.0 * d * eps, d, v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    EulerK0,
    EulerK1,
    HillK0,
    HillK1,
    Minimizer,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::EulerK0 => "euler_k0",
            Branch::EulerK1 => "euler_k1",
            Branch::HillK0 => "hill_k0",
            Branch::HillK1 => "hill_k1",
            Branch::Minimizer => "minimizer",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Bound,
    Quadrature,
    Descent,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Bound => "bound",
            Method::Quadrature => "quadrature",
            Method::Descent => "descent",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow {
    pub omega: f64,
    pub branch: Branch,
    pub value: f64,
    pub method: Method,
}

pub const SCAN_HEADER: &str = "omega,branch,value,method";

impl ScanRow {
    pub fn csv(&self) -> String {
        format!("{},{},{:.17e},{}", self.omega, self.branch.as_str(), self.value, self.method.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineComparison {
    pub omega: f64,
    /// Euler minima for `k = 0, 1`.
    pub euler: [f64; 2],
    /// Best quadrature test path for `k = 0, 1`.
    pub hill_quad: [f64; 2],
    /// Logarithmic bound at the `k = 1` optimum.
    pub hill_bound: f64,
    pub winner: Branch,
}

impl LineComparison {
    pub fn rows(&self) -> Vec<ScanRow> {
        let w = self.omega;
        vec![
            ScanRow { omega: w, branch: Branch::EulerK0, value: self.euler[0], method: Method::ClosedForm },
            ScanRow { omega: w, branch: Branch::EulerK1, value: self.euler[1], method: Method::ClosedForm },
            ScanRow { omega: w, branch: Branch::HillK0, value: self.hill_quad[0], method: Method::Quadrature },
            ScanRow { omega: w, branch: Branch::HillK1, value: self.hill_quad[1], method: Method::Quadrature },
            ScanRow { omega: w, branch: Branch::HillK1, value: self.hill_bound, method: Method::Bound },
        ]
    }
}

pub const DEFAULT_QUAD: usize = 512;

/// Euler and test-path levels for the line symmetry on a grid in `(0, 1)`.
pub fn line_symmetry_comparison(omega_grid: &[f64]) -> Result<Vec<LineComparison>> {
    if let Some(&w) = omega_grid.iter().find(|w| !(**w > 0.0 && **w < 1.0)) {
        return Err(Error::Domain(format!("omega {w} outside (0, 1)")));
    }
    Ok(omega_grid
        .par_iter()
        .map(|&w| {
            let euler = [euler_min_action(w, 0).expect("w not 0").1, euler_min_action(w, 1).expect("w not 1").1];
            let h0 = hill_optimize(0, w, 256);
            let h1 = hill_optimize(1, w, 256);
            let hill_bound = hill_action_upper_bound(&HillParams { r: h1.0, d: h1.1, k: 1, omega: w }).expect("optimum is admissible");
            let cands = [(Branch::EulerK0, euler[0]), (Branch::EulerK1, euler[1]), (Branch::HillK0, h0.2), (Branch::HillK1, h1.2)];
            let winner = cands.iter().min_by(|a, b| a.1.total_cmp(&b.1)).expect("nonempty").0;
            LineComparison { omega: w, euler, hill_quad: [h0.2, h1.2], hill_bound, winner }
        })
        .collect())
}

/// The test path `R = 1, d = 4/5`.
pub const CHOREO21_R: f64 = 1.0;
pub const CHOREO21_D: f64 = 0.8;

#[derive(Clone, Debug, PartialEq)]
pub struct Choreo21Comparison {
    pub omega: f64,
    pub euler_k1: f64,
    pub hill_k1: f64,
    pub hill_k1_bound: f64,
    /// `A_H - A_E` with the quadrature test path.
    pub difference: f64,
    /// Central finite difference of `difference` in `omega`.
    pub derivative: f64,
    /// `2 pi (146/25 omega - 2 + (25/2)^(1/3) (1 - omega)^(-1/3))`.
    pub derivative_closed: f64,
}

impl Choreo21Comparison {
    pub fn rows(&self) -> Vec<ScanRow> {
        let w = self.omega;
        vec![
            ScanRow { omega: w, branch: Branch::EulerK1, value: self.euler_k1, method: Method::ClosedForm },
            ScanRow { omega: w, branch: Branch::HillK1, value: self.hill_k1, method: Method::Quadrature },
            ScanRow { omega: w, branch: Branch::HillK1, value: self.hill_k1_bound, method: Method::Bound },
        ]
    }
}

/// Windings allowed for Euler orbits and test paths under the half-period
/// exchange of bodies 1 and 2.
pub fn choreo21_admits(k: i64) -> bool {
    k.rem_euclid(2) == 1
}

fn choreo21_difference(w: f64) -> f64 {
    let p = HillParams { r: CHOREO21_R, d: CHOREO21_D, k: 1, omega: w };
    hill_test_action(&p, DEFAULT_QUAD).expect("fixed admissible path") - euler_min_action(w, 1).expect("w < 1").1
}

/// Odd-winding levels at the fixed test path on a grid in `[0, 1/2]`.
pub fn choreo21_comparison(omega_grid: &[f64]) -> Result<Vec<Choreo21Comparison>> {
    if let Some(&w) = omega_grid.iter().find(|w| !(**w >= 0.0 && **w <= 0.5)) {
        return Err(Error::Domain(format!("omega {w} outside [0, 1/2]")));
    }
    let h = 1e-4;
    Ok(omega_grid
        .par_iter()
        .map(|&w| {
            let p = HillParams { r: CHOREO21_R, d: CHOREO21_D, k: 1, omega: w };
            let euler_k1 = euler_min_action(w, 1).expect("w < 1").1;
            let hill_k1 = hill_test_action(&p, DEFAULT_QUAD).expect("fixed admissible path");
            Choreo21Comparison {
                omega: w,
                euler_k1,
                hill_k1,
                hill_k1_bound: hill_action_upper_bound(&p).expect("k = 1"),
                difference: hill_k1 - euler_k1,
                derivative: (choreo21_difference(w + h) - choreo21_difference(w - h)) / (2.0 * h),
                derivative_closed: TAU * (146.0 / 25.0 * w - 2.0 + (12.5f64).cbrt() * (1.0 - w).powf(-1.0 / 3.0)),
            }
        })
        .collect())
}
