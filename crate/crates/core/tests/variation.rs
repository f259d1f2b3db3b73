use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use statrs::function::gamma::gamma;
use symorb::variation::*;
use symorb::{Error, Masses};

const Z: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Double-exponential quadrature of the defining integral in `t` over `(0, inf)`.
fn phi_oracle(alpha: f64, theta: f64) -> f64 {
    let p = 2.0 / (alpha + 2.0);
    let cs = theta.cos();
    let f = |t: f64| -> f64 {
        let s = t.powf(p);
        if s < 1.0 {
            (s * s - 2.0 * cs * s + 1.0).powf(-alpha / 2.0) - t.powf(-alpha * p)
        } else {
            // factor out s^-alpha to avoid cancellation for large t
            let w = 1.0 / s;
            s.powf(-alpha) * (-alpha / 2.0 * (w * (w - 2.0 * cs)).ln_1p()).exp_m1()
        }
    };
    let h = 1.0 / 256.0;
    let mut sum = 0.0;
    let mut k: f64 = -7.0 / h;
    while k * h <= 7.0 {
        let x: f64 = k * h;
        let t = (PI / 2.0 * x.sinh()).exp();
        let dt = t * PI / 2.0 * x.cosh();
        if t > 0.0 && t.is_finite() && dt.is_finite() {
            let v = f(t) * dt;
            if v.is_finite() {
                sum += v;
            }
        }
        k += 1.0;
    }
    sum * h
}

#[test]
fn beta_values() {
    assert!((beta_fn(1.0, 1.0).unwrap() - 1.0).abs() < 1e-12);
    assert!((beta_fn(2.0, 1.0).unwrap() - 0.5).abs() < 1e-12);
    let (z, w) = (0.7, 1.3);
    let lhs = beta_fn(z + 1.0, w).unwrap();
    let rhs = z / (z + w) * beta_fn(z, w).unwrap();
    assert!((lhs / rhs - 1.0).abs() < 1e-12);
    assert!(matches!(beta_fn(0.0, 1.0), Err(Error::Domain(_))));
    assert!(matches!(beta_fn(1.0, -2.0), Err(Error::Domain(_))));
}

#[test]
fn beta_duplication_identity() {
    // beta(x+n, x+n) = 4^-n C(-x, n) / C(-x-1/2, n) beta(x, x)
    let binom = |a: f64, n: usize| (0..n).fold(1.0, |acc, k| acc * (a - k as f64) / (k + 1) as f64);
    let (x, n) = (0.75, 2usize);
    let lhs = beta_fn(x + n as f64, x + n as f64).unwrap();
    let rhs = binom(-x, n) / binom(-x - 0.5, n) / 4f64.powi(n as i32) * beta_fn(x, x).unwrap();
    assert!((lhs / rhs - 1.0).abs() < 1e-12);
}

#[test]
fn phi_quadrature_matches_direct_integral() {
    for &alpha in &[0.5, 1.0, 1.5] {
        for &theta in &[PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, 5.0 * PI / 6.0, PI] {
            let q = phi_quadrature(alpha, theta).unwrap();
            let o = phi_oracle(alpha, theta);
            assert!((q.value - o).abs() < 1e-8 * (1.0 + o.abs()), "{alpha} {theta}: {} vs {o}", q.value);
            assert!(q.est_error >= 0.0 && q.est_error < 1e-9);
            assert_eq!(q.method, PhiMethod::Quadrature);
        }
    }
}

#[test]
fn phi_closed_forms() {
    // alpha = 1, theta = pi: -(3/2) int u^(-1/2)/(1+u) du = -3 pi/2
    assert!((phi(1.0, PI).unwrap() + 1.5 * PI).abs() < 1e-11);
    // at theta = pi/2 only the zero-order term of the series survives
    for &alpha in &[0.25, 0.5, 1.0, 1.5, 1.9] {
        let a = (alpha + 2.0) / 4.0;
        let b = gamma(a) * gamma(a) / gamma(2.0 * a);
        let exact = alpha * (alpha + 2.0) / 2.0 / (alpha - 2.0) * b;
        assert!((phi(alpha, PI / 2.0).unwrap() - exact).abs() < 1e-10 * exact.abs());
        let s = phi_series(alpha, PI / 2.0, 1).unwrap();
        assert!((s.value - exact).abs() < 1e-12 * exact.abs());
    }
}

#[test]
fn phi_rejects_bad_theta() {
    assert!(matches!(phi_quadrature(1.0, 0.0), Err(Error::ThetaOutOfRange(_))));
    assert!(matches!(phi_quadrature(1.0, TAU), Err(Error::ThetaOutOfRange(_))));
    assert!(matches!(phi_quadrature(1.0, -0.5), Err(Error::ThetaOutOfRange(_))));
}

#[test]
fn phi_symmetric_about_pi() {
    let rows = phi_symmetry(&[0.5, 1.0, 1.5], 17, 1e-10).unwrap();
    assert_eq!(rows.len(), 51);
    assert!(rows.iter().all(|r| r.pass()), "{rows:?}");
    let d = phi(1.0, 2.0 * PI / 3.0).unwrap() - phi(1.0, 4.0 * PI / 3.0).unwrap();
    assert!(d.abs() < 1e-10);
}

#[test]
fn phi_decreasing_on_zero_pi() {
    let p = |t| phi(1.0, t).unwrap();
    assert!(p(PI) < p(PI / 2.0) && p(PI / 2.0) < p(PI / 4.0));
    let rows = phi_monotonicity(&[0.25, 0.5, 1.0, 1.5, 1.75], 40).unwrap();
    assert!(rows.iter().all(|r| r.pass()));
}

#[test]
fn phi_blows_up_at_zero() {
    // Phi ~ (alpha+2)/2 sqrt(pi) Gamma((alpha-1)/2)/Gamma(alpha/2) theta^(1-alpha)
    let alpha = 1.5;
    let lead = (alpha + 2.0) / 2.0 * PI.sqrt() * gamma((alpha - 1.0) / 2.0) / gamma(alpha / 2.0);
    let mut prev = f64::INFINITY;
    for &t in &[1e-2, 1e-3, 1e-4, 1e-5, 1e-6] {
        let v = phi(alpha, t).unwrap();
        let rel = (v * t.powf(alpha - 1.0) / lead - 1.0).abs();
        assert!(rel < prev);
        prev = rel;
    }
    assert!(prev < 2e-3);
    assert!(phi(alpha, 1e-5).unwrap() > 1e3);
    assert!(phi(alpha, 1e-2).unwrap() > phi(alpha, 1e-1).unwrap());
}

#[test]
fn series_agrees_with_quadrature() {
    for &alpha in &[0.5, 1.0, 1.5] {
        let mut t = PI / 3.0;
        while t <= 5.0 * PI / 3.0 + 1e-12 {
            let s = phi_series(alpha, t, 60).unwrap();
            let q = phi_quadrature(alpha, t).unwrap();
            assert!((s.value - q.value).abs() < 1e-6, "{alpha} {t}");
            assert_eq!(s.method, PhiMethod::Series);
            t += PI / 12.0;
        }
    }
    let s = phi_series(1.0, 2.0 * PI / 3.0, 60).unwrap();
    assert!((s.value - phi(1.0, 2.0 * PI / 3.0).unwrap()).abs() < 1e-6);
    let s = phi_series(1.0, PI, 60).unwrap();
    assert!((s.value - phi(1.0, PI).unwrap()).abs() < 1e-6);
    assert!(s.est_error >= 0.0);
}

#[test]
fn series_diverges_at_zero_angle() {
    assert!(matches!(phi_series(1.5, 1e-6, 60), Err(Error::SeriesDiverges(_))));
}

#[test]
fn theta_bar_brackets() {
    let tb = theta_bar(1.0).unwrap();
    assert!(tb > 0.0 && tb < PI / 2.0);
    assert!(phi(1.0, tb + 0.1).unwrap() < 0.0);
    assert!(phi(1.0, tb - 0.1).unwrap() > 0.0);
    assert!(phi(1.0, tb).unwrap().abs() < 1e-8);
    for &alpha in &[0.25, 0.75, 1.25, 1.75] {
        let tb = theta_bar(alpha).unwrap();
        assert!(tb < PI / 2.0);
        assert!(phi(alpha, tb + 0.05).unwrap() < 0.0);
        if tb > 0.05 {
            assert!(phi(alpha, tb - 0.05).unwrap() > 0.0);
        }
    }
}

#[test]
fn s_function_properties() {
    let alpha = 1.0;
    let xi = c(0.6, -0.8) * 1.7;
    let perp = c(0.8, 0.6);
    let s = s_function(xi, perp, alpha).unwrap();
    assert!(s < 0.0);
    assert!((s - 1.7f64.powf(-1.5) * phi(alpha, PI / 2.0).unwrap()).abs() < 1e-12);
    let anti = -xi / xi.norm();
    let smin = s_function(xi, anti, alpha).unwrap();
    for k in 0..24 {
        let d = Complex64::from_polar(1.0, TAU * k as f64 / 24.0 + 0.01);
        assert!(s_function(xi, d, alpha).unwrap() >= smin);
    }
    let s2 = s_function(xi * 2.0, perp, alpha).unwrap();
    assert!((s2 - 2f64.powf(-1.0 - alpha / 2.0) * s).abs() < 1e-12 * s.abs());
    assert!(matches!(s_function(Z, perp, alpha), Err(Error::ZeroSeparation)));
}

fn lagrange(alpha: f64) -> (ParabolicTrajectory, Masses) {
    let m = Masses::unit();
    (ParabolicTrajectory::lagrange(&m, alpha).unwrap(), m)
}

#[test]
fn parabolic_trajectory_eval() {
    let (q, m) = lagrange(1.0);
    assert!(q.eval(0.0).iter().all(|z| z.norm() == 0.0));
    let x1 = q.eval(1.0);
    assert!((0..3).all(|i| (x1[i] - q.xi[i]).norm() < 1e-15));
    let b = 2.0 / 3.0;
    for &(lam, t) in &[(2.0, 0.3), (0.1, 1.7), (7.0, -0.4)] {
        let a = q.eval(lam * t);
        let bq = q.eval(t);
        for i in 0..3 {
            assert!((a[i] - bq[i] * lam.powf(b)).norm() < 1e-12 * a[i].norm().max(1.0));
        }
    }
    for &t in &[0.01, 0.5, 3.0] {
        assert!(q.newton_residual(t, &m) < 1e-12);
    }
    let qe = ParabolicTrajectory::euler(&m, 2, 1.0).unwrap();
    assert!(qe.newton_residual(0.7, &m) < 1e-10);
    let qb = ParabolicTrajectory::binary(&m, c(0.0, 1.0), 1.5).unwrap();
    assert!(qb.newton_residual(0.2, &m) < 1e-12);
    assert_eq!(qb.eval(1.0)[2], Z);
}

#[test]
fn parabolic_rejects_non_central() {
    let m = Masses::unit();
    let xi = [c(1.0, 0.0), c(0.0, 0.3), c(-1.0, -0.3)];
    assert!(ParabolicTrajectory::new(xi, 1.0, &[0, 1, 2], &m).is_err());
}

#[test]
fn standard_variation_profile() {
    let delta = [c(0.01, 0.0), c(0.0, -0.02), Z];
    let v = StandardVariation::new(delta, 1.0).unwrap();
    let d = v.size();
    assert_eq!(v.eval(0.0), delta);
    assert_eq!(v.eval(1.0), [Z; 3]);
    assert_eq!(v.eval(-2.0), [Z; 3]);
    let knee = 1.0 - d;
    let l = v.eval(knee - 1e-13);
    let r = v.eval(knee + 1e-13);
    assert!((0..3).all(|i| (l[i] - r[i]).norm() < 1e-12));
    let mid = v.eval(-(1.0 - d / 2.0));
    assert!((mid[1] - delta[1] * 0.5).norm() < 1e-15);
    assert!(StandardVariation::new(delta, 0.01).is_err());
}

#[test]
fn equivariant_variation_commutes_with_g0() {
    use symorb::symmetry::config_action;
    let g = g0();
    let m = Masses::unit();
    // bodies 1, 2 mirror images across the first axis, body 3 on it
    let q = ParabolicTrajectory::lagrange(&m, 1.0).unwrap();
    let xi = [q.xi[1], q.xi[2], q.xi[0]];
    let q = ParabolicTrajectory::new(xi, 1.0, &[0, 1, 2], &m).unwrap();
    let delta = [c(0.003, 0.004), c(0.003, -0.004), c(-0.002, 0.0)];
    assert!(is_g0_fixed(&delta));
    let v = StandardVariation::new(delta, 1.0).unwrap();
    for &t in &[0.0, 0.2, 0.9999, 1.3] {
        let y = |s: f64| {
            let a = q.eval(s);
            let b = v.eval(s);
            [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
        };
        let lhs = y(-t);
        let rhs = config_action(&g, &y(t));
        assert!((0..3).all(|i| (lhs[i] - rhs[i]).norm() < 1e-14), "{t}");
    }
    assert!(delta_action_leading(&q, &delta, &m, true).is_ok());
    let bad = [c(0.003, 0.004), Z, Z];
    assert!(matches!(delta_action_leading(&q, &bad, &m, true), Err(Error::NonEquivariantDelta)));
}

#[test]
fn leading_binary_negative() {
    let m = Masses::unit();
    for &alpha in &[0.5, 1.0, 1.5] {
        for &phi_dir in &[0.3, 1.0, 2.0] {
            let q = ParabolicTrajectory::binary(&m, Complex64::from_polar(1.0, phi_dir), alpha).unwrap();
            let xi12 = q.xi[0] - q.xi[1];
            for k in 0..=8 {
                let theta = PI / 2.0 + PI / 2.0 * k as f64 / 8.0;
                let e = xi12 / xi12.norm() * Complex64::from_polar(1e-2, theta);
                let delta = [-e, e, Z];
                let v = delta_action_leading(&q, &delta, &m, false).unwrap();
                assert!(v < 0.0);
                // -delta_12 = 2e makes angle theta with xi_12
                let oracle = 2.0 * (2e-2f64).powf(1.0 - alpha / 2.0) * xi12.norm().powf(-1.0 - alpha / 2.0) * phi(alpha, theta).unwrap();
                assert!((v - oracle).abs() < 1e-12 * oracle.abs());
            }
        }
    }
}

#[test]
fn leading_lagrange_triple() {
    for &alpha in &[0.5, 1.0, 1.5] {
        let (q, m) = lagrange(alpha);
        let h = q.xi[2] / q.xi[2].norm();
        let side = (q.xi[0] - q.xi[2]).norm();
        for k in 0..=6 {
            let gamma = PI / 2.0 * k as f64 / 6.0;
            let d = 1e-3;
            let mut delta = [Z; 3];
            delta[2] = h * Complex64::from_polar(d, gamma);
            let v = delta_action_leading(&q, &delta, &m, false).unwrap();
            let pair = |t: f64| phi(alpha, t).unwrap();
            let oracle = 2.0 * d.powf(1.0 - alpha / 2.0) * side.powf(-1.0 - alpha / 2.0)
                * (pair(5.0 * PI / 6.0 + gamma) + pair(5.0 * PI / 6.0 - gamma));
            assert!((v - oracle).abs() < 1e-12 * oracle.abs(), "{alpha} {gamma}");
            assert!(v < 0.0);
            let mut half = delta;
            half[2] *= 0.5;
            let vh = delta_action_leading(&q, &half, &m, false).unwrap();
            assert!((vh / v - 0.5f64.powf(1.0 - alpha / 2.0)).abs() < 1e-12);
        }
    }
}

/// Brute force: `t = s^4` on the plateau, composite Simpson, plus the ramps.
fn delta_action_oracle(q: &ParabolicTrajectory, v: &StandardVariation, m: &Masses) -> f64 {
    let alpha = q.alpha;
    let lag = |x: &[Complex64; 3], xd: &[Complex64; 3]| -> f64 {
        let mut l = 0.0;
        for &i in &q.cluster {
            l += 0.5 * m[i] * xd[i].norm_sqr();
        }
        for (i, j) in q.pairs() {
            l += m[i] * m[j] * (x[i] - x[j]).norm().powf(-alpha);
        }
        l
    };
    let d = v.size();
    let plateau = |t: f64| -> f64 {
        let x = q.eval(t);
        let xd = q.velocity(t);
        let y = [x[0] + v.delta[0], x[1] + v.delta[1], x[2] + v.delta[2]];
        lag(&y, &xd) - lag(&x, &xd)
    };
    let ramp = |t: f64| -> f64 {
        let x = q.eval(t);
        let xd = q.velocity(t);
        let w = v.eval(t);
        let y = [x[0] + w[0], x[1] + w[1], x[2] + w[2]];
        let yd = [xd[0] - v.delta[0] / d, xd[1] - v.delta[1] / d, xd[2] - v.delta[2] / d];
        lag(&y, &yd) - lag(&x, &xd)
    };
    let simpson = |f: &dyn Fn(f64) -> f64, a: f64, b: f64, n: usize| -> f64 {
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for k in 1..n {
            s += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    };
    let t1 = v.t - d;
    let s1 = t1.powf(0.25);
    let pl = simpson(&|s: f64| if s == 0.0 { 0.0 } else { plateau(s.powi(4)) * 4.0 * s.powi(3) }, 0.0, s1, 2_000_000);
    let rp = simpson(&ramp, t1, v.t, 2000);
    2.0 * (pl + rp)
}

#[test]
fn numeric_matches_brute_force() {
    let (q, m) = lagrange(1.0);
    let h = q.xi[2] / q.xi[2].norm();
    let mut delta = [Z; 3];
    delta[2] = h * 1e-2;
    let v = StandardVariation::new(delta, 1.0).unwrap();
    let a = delta_action_numeric(&q, &v, &m, &VariationGrid::default()).unwrap();
    let b = delta_action_oracle(&q, &v, &m);
    assert!((a - b).abs() < 1e-6 * a.abs(), "{a} {b}");
}

#[test]
fn numeric_over_leading_tends_to_one() {
    let m = Masses::unit();
    let (q, _) = lagrange(1.0);
    let h = q.xi[2] / q.xi[2].norm();
    let mut delta = [Z; 3];
    delta[2] = h * 1e-3;
    let v = StandardVariation::new(delta, 1.0).unwrap();
    let r = delta_action_numeric(&q, &v, &m, &VariationGrid::default()).unwrap() / delta_action_leading(&q, &delta, &m, false).unwrap();
    assert!((0.95..=1.05).contains(&r), "{r}");

    let qb = ParabolicTrajectory::binary(&m, c(0.0, 1.0), 1.0).unwrap();
    let e = c(0.0, -1e-3);
    let delta = [-e, e, Z];
    let v = StandardVariation::new(delta, 1.0).unwrap();
    let r = delta_action_numeric(&qb, &v, &m, &VariationGrid::default()).unwrap() / delta_action_leading(&qb, &delta, &m, false).unwrap();
    assert!((0.95..=1.05).contains(&r), "{r}");
}

#[test]
fn numeric_zero_and_sign() {
    let m = Masses::unit();
    for &alpha in &[0.5, 1.0, 1.5] {
        let (q, _) = lagrange(alpha);
        let v0 = StandardVariation::new([Z; 3], 1.0).unwrap();
        assert_eq!(delta_action_numeric(&q, &v0, &m, &VariationGrid::default()).unwrap(), 0.0);
        let h = q.xi[2] / q.xi[2].norm();
        let mut delta = [Z; 3];
        delta[2] = h * 1e-2;
        let v = StandardVariation::new(delta, 1.0).unwrap();
        assert!(delta_action_numeric(&q, &v, &m, &VariationGrid::default()).unwrap() < 0.0);

        let qb = ParabolicTrajectory::binary(&m, c(0.0, 1.0), alpha).unwrap();
        let e = c(0.0, -1e-2);
        let v = StandardVariation::new([-e, e, Z], 1.0).unwrap();
        assert!(delta_action_numeric(&qb, &v, &m, &VariationGrid::default()).unwrap() < 0.0);
    }
}

#[test]
fn triple_lagrange_sweep() {
    let alphas = linspace(0.25, 1.75, 21);
    let gammas = linspace(0.0, PI / 2.0, 21);
    let rows = verify_triple_lagrange(&alphas, &gammas).unwrap();
    assert_eq!(rows.len(), 441);
    assert!(rows.iter().all(|r| r.pass()));
    // for gamma <= pi/6 both summands are negative on their own
    for &a in &alphas {
        for &g in &linspace(0.0, PI / 6.0, 5) {
            assert!(phi(a, 2.0 * PI / 3.0 + g).unwrap() < 0.0);
            assert!(phi(a, 2.0 * PI / 3.0 - g).unwrap() < 0.0);
        }
    }
    let end = verify_triple_lagrange(&[1.0], &[PI / 2.0]).unwrap()[0].value;
    let pi6 = verify_pi6(&[1.0]).unwrap()[0].value;
    assert!((end - pi6).abs() < 1e-12);
}

#[test]
fn pi6_sum_negative() {
    let rows = verify_pi6(&linspace(0.25, 1.75, 7)).unwrap();
    assert!(rows.iter().all(|r| r.pass()));
}

#[test]
fn collinear_sweep() {
    let thetas = linspace(PI / 2.0, PI, 5);
    let rows = verify_collinear_triple(1.0, &[0.0, 0.25, 0.5, 0.75, 0.9], &thetas).unwrap();
    assert_eq!(rows.len(), 5 * 6);
    assert!(rows.iter().all(|r| r.row.pass()));
    // symmetric Euler configuration, delta orthogonal to the line
    let r = verify_collinear_triple(1.0, &[0.0], &[PI / 2.0]).unwrap();
    let orth = r.iter().find(|r| r.case == CollinearCase::ThirdBetween).unwrap();
    let oracle = 2.0 * (2f64.powf(0.5) * 2f64.powf(-1.5) + 2.0 * 1.0) * phi(1.0, PI / 2.0).unwrap();
    assert!((orth.row.value - oracle).abs() < 1e-12 * oracle.abs());
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn le2_certificate() {
    assert_eq!(f_poly(1), vec![q(0, 1), q(2, 1)]);
    // f_5(1) = C(-1,5)^2 / 5 * 4^5 (5!)^2 / 10!
    let f5: BigRational = f_poly(5).iter().fold(BigRational::zero(), |a, c| a + c);
    assert_eq!(f5, q(1, 5) * q(1024 * 14400, 3628800));
    let cert = lemma_le2_certificate();
    assert_eq!(cert.tail_bound, q(27, 35));
    assert_eq!(cert.p_at_one, q(4480, 1));
    assert!(cert.p_matches);
    assert_eq!(cert.shifted_taylor.len(), 9);
    assert!(cert.taylor_positive);
    assert!(cert.shifted_taylor.iter().all(|c| *c > BigRational::zero()));
    assert!((cert.cubic_x0 - (4.0 - 6f64.sqrt()) / 3.0).abs() < 1e-15);
    assert!(cert.cubic_min > 0.0);
    assert!(cert.passed());
    // expansion at 1/2 evaluated at u = 1 gives p(1)
    let sum: BigRational = cert.shifted_taylor.iter().fold(BigRational::zero(), |a, c| a + c);
    assert_eq!(sum, q(4480, 1));
    assert!(cert.shifted_taylor[0] != BigRational::one());
}
