//! Numerical and exact checks of the inequalities that exclude collisions.

use std::f64::consts::{PI, TAU};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::phi::{phi, s_function};
use crate::error::Result;

pub const VERIFY_HEADER: &str = "alpha,gamma_or_theta,value,margin,pass";
pub const COLLINEAR_HEADER: &str = "case,mu,alpha,gamma_or_theta,value,margin,pass";

/// One evaluated inequality `value < 0` (or `|value| < tol`); `margin > 0` means pass.
#[derive(Clone, Copy, Debug)]
pub struct VerifyRow {
    pub alpha: f64,
    pub gamma_or_theta: f64,
    pub value: f64,
    pub margin: f64,
}

impl VerifyRow {
    fn negative(alpha: f64, x: f64, value: f64) -> Self {
        VerifyRow { alpha, gamma_or_theta: x, value, margin: -value }
    }

    pub fn pass(&self) -> bool {
        self.margin > 0.0
    }

    pub fn csv(&self) -> String {
        format!("{},{},{:.17e},{:.6e},{}", self.alpha, self.gamma_or_theta, self.value, self.margin, self.pass())
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

/// `Phi(theta) - Phi(2 pi - theta)` on `n` interior points of `(0, pi)`.
pub fn phi_symmetry(alphas: &[f64], n: usize, tol: f64) -> Result<Vec<VerifyRow>> {
    let pts: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| (1..=n).map(move |k| (a, PI * k as f64 / (n + 1) as f64)))
        .collect();
    pts.par_iter()
        .map(|&(a, t)| {
            let v = phi(a, t)? - phi(a, TAU - t)?;
            Ok(VerifyRow { alpha: a, gamma_or_theta: t, value: v, margin: tol - v.abs() })
        })
        .collect()
}

/// Successive differences `Phi(theta_{k+1}) - Phi(theta_k)` on a grid of `(0, pi]`.
pub fn phi_monotonicity(alphas: &[f64], n: usize) -> Result<Vec<VerifyRow>> {
    let thetas: Vec<f64> = (1..=n).map(|k| PI * k as f64 / n as f64).collect();
    let rows: Result<Vec<Vec<VerifyRow>>> = alphas
        .par_iter()
        .map(|&a| {
            let vals: Result<Vec<f64>> = thetas.iter().map(|&t| phi(a, t)).collect();
            let vals = vals?;
            Ok((1..n).map(|k| VerifyRow::negative(a, thetas[k], vals[k] - vals[k - 1])).collect())
        })
        .collect();
    Ok(rows?.into_iter().flatten().collect())
}

/// `Phi(pi/6) + Phi(7 pi/6)`.
pub fn verify_pi6(alphas: &[f64]) -> Result<Vec<VerifyRow>> {
    alphas
        .par_iter()
        .map(|&a| Ok(VerifyRow::negative(a, PI / 6.0, phi(a, PI / 6.0)? + phi(a, 7.0 * PI / 6.0)?)))
        .collect()
}

/// `Phi(2 pi/3 + gamma) + Phi(2 pi/3 - gamma)` over the product grid.
pub fn verify_triple_lagrange(alphas: &[f64], gammas: &[f64]) -> Result<Vec<VerifyRow>> {
    let pts: Vec<(f64, f64)> = alphas.iter().flat_map(|&a| gammas.iter().map(move |&g| (a, g))).collect();
    pts.par_iter()
        .map(|&(a, g)| {
            let c = 2.0 * PI / 3.0;
            Ok(VerifyRow::negative(a, g, phi(a, c + g)? + phi(a, c - g)?))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CollinearCase {
    /// Body 2 between bodies 1 and 3; body 3 moves outward along the line.
    SecondBetween,
    /// Body 3 between bodies 1 and 2; bodies 1 and 2 move by `-delta` and `+delta`.
    ThirdBetween,
}

impl CollinearCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            CollinearCase::SecondBetween => "second_between",
            CollinearCase::ThirdBetween => "third_between",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CollinearRow {
    pub case: CollinearCase,
    pub mu: f64,
    pub row: VerifyRow,
}

impl CollinearRow {
    pub fn csv(&self) -> String {
        format!("{},{},{}", self.case.as_str(), self.mu, self.row.csv())
    }
}

fn pair_sum(xi: &[Complex64; 3], delta: &[Complex64; 3], alpha: f64) -> Result<f64> {
    let mut total = 0.0;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let d = delta[i] - delta[j];
        let r = d.norm();
        if r == 0.0 {
            continue;
        }
        total += r.powf(1.0 - alpha / 2.0) * s_function(xi[i] - xi[j], -d / r, alpha)?;
    }
    Ok(2.0 * total)
}

/// Summed pair contributions for collinear triple collisions with unit masses.
/// In the first case `xi = (1, mu, -(1+mu))` and `delta_3 = -1`; in the second
/// `xi = (1, -(1+mu), mu)` and `delta = (-e, e, 0)` with `e = e^{i theta}`,
/// `theta` the angle between `xi_1 - xi_2` and `e`.
pub fn verify_collinear_triple(alpha: f64, mus: &[f64], thetas: &[f64]) -> Result<Vec<CollinearRow>> {
    let c = |x: f64| Complex64::new(x, 0.0);
    let mut jobs = Vec::new();
    for &mu in mus {
        jobs.push((CollinearCase::SecondBetween, mu, PI));
        for &t in thetas {
            jobs.push((CollinearCase::ThirdBetween, mu, t));
        }
    }
    jobs.par_iter()
        .map(|&(case, mu, t)| {
            let (xi, delta) = match case {
                CollinearCase::SecondBetween => ([c(1.0), c(mu), c(-(1.0 + mu))], [c(0.0), c(0.0), c(-1.0)]),
                CollinearCase::ThirdBetween => {
                    let e = Complex64::from_polar(1.0, t);
                    ([c(1.0), c(-(1.0 + mu)), c(mu)], [-e, e, c(0.0)])
                }
            };
            let v = pair_sum(&xi, &delta, alpha)?;
            Ok(CollinearRow { case, mu, row: VerifyRow::negative(alpha, t, v) })
        })
        .collect()
}

type Poly = Vec<BigRational>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_else(BigRational::zero) + b.get(i).cloned().unwrap_or_else(BigRational::zero))
        .collect()
}

fn poly_scale(a: &Poly, s: &BigRational) -> Poly {
    a.iter().map(|x| x * s).collect()
}

fn poly_eval(a: &Poly, x: &BigRational) -> BigRational {
    a.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Coefficients of `p(a + b u)` in `u`.
fn poly_shift(a: &Poly, shift: &BigRational, scale: &BigRational) -> Poly {
    let lin: Poly = vec![shift.clone(), scale.clone()];
    let mut out: Poly = vec![BigRational::zero()];
    for c in a.iter().rev() {
        out = poly_add(&poly_mul(&out, &lin), &vec![c.clone()]);
    }
    out.truncate(a.len());
    out
}

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `f_k(x) = C(-x,k)^2 / (x+k-1) * 4^k (k!)^2 / (2k)!`, a polynomial in `x`:
/// `[x(x+1)...(x+k-2)]^2 (x+k-1) 4^k / (2k)!`.
pub fn f_poly(k: i64) -> Vec<BigRational> {
    let mut p: Poly = vec![BigRational::one()];
    for j in 0..k - 1 {
        let lin = vec![q(j, 1), BigRational::one()];
        p = poly_mul(&p, &poly_mul(&lin, &lin));
    }
    p = poly_mul(&p, &vec![q(k - 1, 1), BigRational::one()]);
    let c = BigRational::new(BigInt::from(4).pow(k as u32), factorial(2 * k));
    poly_scale(&p, &c)
}

/// Printed coefficients of `p`, constant term first.
pub const LE2_P: [i64; 9] = [1024, -3264, 4596, -756, 1749, 684, 366, 72, 9];

#[derive(Clone, Debug)]
pub struct Le2Certificate {
    pub tail_bound: BigRational,
    pub tail_ok: bool,
    /// `4480 [1 + (x-1)(sum_{k<=4} f_k(x)(3/4)^k + 27/35)]`.
    pub p_derived: Vec<BigRational>,
    pub p_matches: bool,
    pub p_at_one: BigRational,
    pub shifted_taylor: Vec<BigRational>,
    pub taylor_positive: bool,
    /// `p(x) >= 1024 (1 - 10x/3 + 4x^2 - x^3)` on `[0,1]`, coefficientwise.
    pub cubic_dominated: bool,
    pub cubic_x0: f64,
    pub cubic_min: f64,
    pub cubic_ok: bool,
}

impl Le2Certificate {
    pub fn passed(&self) -> bool {
        self.tail_ok && self.p_matches && self.taylor_positive && self.cubic_dominated && self.cubic_ok
    }

    pub fn lines(&self) -> Vec<String> {
        vec![
            format!("tail_bound,{},27/35,{}", self.tail_bound, self.tail_ok),
            format!("p_coefficients,{},{},{}", join(self.p_derived.iter()), join(LE2_P.iter()), self.p_matches),
            format!("p_at_1,{},4480,{}", self.p_at_one, self.p_at_one == q(4480, 1)),
            format!("shifted_taylor,{},positive,{}", join(self.shifted_taylor.iter()), self.taylor_positive),
            format!("cubic_dominated,,,{}", self.cubic_dominated),
            format!("cubic_min,{:.17e},x0={:.17e},{}", self.cubic_min, self.cubic_x0, self.cubic_ok),
        ]
    }
}

fn join<T: ToString>(it: impl Iterator<Item = T>) -> String {
    it.map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

pub const LE2_HEADER: &str = "step,computed,expected,pass";

pub fn lemma_le2_certificate() -> Le2Certificate {
    let r34 = q(3, 4);
    let tail_bound = poly_eval(&f_poly(5), &BigRational::one()) * r34.pow(5) * q(4, 1);
    let tail_ok = tail_bound == q(27, 35);

    let mut sum: Poly = vec![q(27, 35)];
    for k in 1..=4 {
        sum = poly_add(&sum, &poly_scale(&f_poly(k), &r34.pow(k as i32)));
    }
    let inner = poly_add(&vec![BigRational::one()], &poly_mul(&vec![q(-1, 1), BigRational::one()], &sum));
    let p_derived = poly_scale(&inner, &q(4480, 1));
    let printed: Poly = LE2_P.iter().map(|&c| q(c, 1)).collect();
    let p_matches = p_derived == printed;
    let p_at_one = poly_eval(&printed, &BigRational::one());

    let shifted_taylor = poly_shift(&printed, &q(1, 2), &q(1, 2));
    let taylor_positive = shifted_taylor.iter().all(|c| c.is_positive());

    let cubic = [q(1, 1), q(-10, 3), q(4, 1), q(-1, 1)].map(|c| c * q(1024, 1));
    let cubic_dominated = (0..4).all(|i| printed[i] >= cubic[i]) && printed[4..].iter().all(|c| !c.is_negative());
    let s6 = 6f64.sqrt();
    let cubic_x0 = (4.0 - s6) / 3.0;
    let cubic_at = |x: f64| 1.0 - 10.0 / 3.0 * x + 4.0 * x * x - x * x * x;
    let closed = 35.0 / 27.0 - 4.0 / 9.0 * s6;
    let slope = -10.0 / 3.0 + 8.0 * cubic_x0 - 3.0 * cubic_x0 * cubic_x0;
    let cubic_min = cubic_at(cubic_x0);
    let cubic_ok = closed > 0.0 && (cubic_min - closed).abs() < 1e-14 && slope.abs() < 1e-14 && cubic_at(1.0) > 0.0;

    Le2Certificate {
        tail_bound,
        tail_ok,
        p_derived,
        p_matches,
        p_at_one,
        shifted_taylor,
        taylor_positive,
        cubic_dominated,
        cubic_x0,
        cubic_min,
        cubic_ok,
    }
}
