use std::f64::consts::TAU;

use num_complex::Complex64;

use super::functional::{potential_gradient, PAIRS};
use super::loops::{Loop, SpectralGrid};
use crate::error::{Error, Result};
use crate::symmetry::{turn_to_f64, ModeProjector, SymmetryGroup};

/// `J(t) = sum m_i x_i x x'_i` on `samples` uniform times.
pub fn angular_momentum(l: &Loop, samples: usize) -> Vec<f64> {
    inertial_angular_momentum(l, 0.0, samples)
}

/// Angular momentum of the inertial motion behind a loop in the frame `omega`,
/// `sum m_i x_i x (x'_i - i omega x_i)`; constant along solutions.
pub fn inertial_angular_momentum(l: &Loop, omega: f64, samples: usize) -> Vec<f64> {
    let grid = SpectralGrid::new(l.n_max, samples);
    let x = grid.eval(&l.modes, 0);
    let v = grid.eval(&l.modes, 1);
    x.iter()
        .zip(&v)
        .map(|(x, v)| {
            (0..3)
                .map(|i| l.masses[i] * (x[i].conj() * (v[i] - Complex64::new(0.0, omega) * x[i])).im)
                .sum()
        })
        .collect()
}

/// Moment of inertia `sum m_i |x_i|^2` on `samples` uniform times.
pub fn moment_of_inertia(l: &Loop, samples: usize) -> Vec<f64> {
    l.sample(samples).iter().map(|(_, x)| (0..3).map(|i| l.masses[i] * x[i].norm_sqr()).sum()).collect()
}

/// Largest `|m x'' - 2 i m omega x' - m omega^2 x - grad U|` on a grid of `4N + 4`
/// (at least 256) points, derivatives taken spectrally.
pub fn newton_residual(l: &Loop, omega: f64, alpha: f64) -> Result<f64> {
    let grid = SpectralGrid::new(l.n_max, (4 * l.n_max + 4).max(256));
    let x = grid.eval(&l.modes, 0);
    let v = grid.eval(&l.modes, 1);
    let a = grid.eval(&l.modes, 2);
    let mut worst: f64 = 0.0;
    let iw = Complex64::new(0.0, omega);
    for k in 0..grid.points() {
        let g = potential_gradient(&x[k], alpha, &l.masses).ok_or(Error::CollisionOnGrid)?;
        for i in 0..3 {
            let m = l.masses[i];
            let r = a[k][i] * m - v[k][i] * iw * (2.0 * m) - x[k][i] * (m * omega * omega) - g[i];
            worst = worst.max(r.norm());
        }
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CollisionKind {
    Interior,
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CollisionEvent {
    /// Time in `[0, 2 pi)`.
    pub time: f64,
    pub pair: (usize, usize),
    pub distance: f64,
    pub kind: CollisionKind,
}

/// Times (radians) forming the boundary of the fundamental domain and its translates.
pub fn boundary_times(group: &SymmetryGroup) -> Vec<f64> {
    let refl = group.reflection_times();
    if refl.is_empty() {
        let q = group.quotient_order();
        (0..q).map(|k| TAU * k as f64 / q as f64).collect()
    } else {
        refl.iter().map(|&s| TAU * turn_to_f64(s)).collect()
    }
}

fn circle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Local minima of pair distances below `threshold`, located on a dense grid
/// and refined by golden section.
pub fn collision_report(l: &Loop, group: &SymmetryGroup, threshold: f64) -> Vec<CollisionEvent> {
    let m = (16 * l.n_max).max(2048);
    let h = TAU / m as f64;
    let samples = l.sample(m);
    let bounds = boundary_times(group);
    let mut out = Vec::new();
    for (i, j) in PAIRS {
        let d: Vec<f64> = samples.iter().map(|(_, x)| (x[i] - x[j]).norm()).collect();
        for k in 0..m {
            let (dp, dn) = (d[(k + m - 1) % m], d[(k + 1) % m]);
            if d[k] > dp || d[k] > dn || (d[k] == dp && k > 0) {
                continue;
            }
            let dist = |t: f64| {
                let x = l.eval(t);
                (x[i] - x[j]).norm()
            };
            let (mut a, mut b) = (samples[k].0 - h, samples[k].0 + h);
            let gr = 0.5 * (5f64.sqrt() - 1.0);
            for _ in 0..60 {
                let c = b - gr * (b - a);
                let e = a + gr * (b - a);
                if dist(c) < dist(e) {
                    b = e;
                } else {
                    a = c;
                }
            }
            let mut t = (0.5 * (a + b)).rem_euclid(TAU);
            if t >= TAU {
                t = 0.0;
            }
            let dmin = dist(t);
            if dmin >= threshold {
                continue;
            }
            let kind = if bounds.iter().any(|&s| circle_gap(s, t) < 2.0 * h) {
                CollisionKind::Boundary
            } else {
                CollisionKind::Interior
            };
            out.push(CollisionEvent { time: t, pair: (i, j), distance: dmin, kind });
        }
    }
    out.sort_by(|a, b| a.time.total_cmp(&b.time));
    out
}

fn rel_defect(l: &Loop, p: &ModeProjector) -> f64 {
    let y = p.apply(&l.modes);
    let num: f64 = l.modes.iter().zip(&y).map(|(a, b)| (a - b).norm_sqr()).sum();
    let den: f64 = l.modes.iter().map(|a| a.norm_sqr()).sum();
    (num / den).sqrt()
}

/// `|x - P x| / |x|` for the projector of `group`, minimized over plane rotations
/// and time shifts by multiples of `1/shifts` of the period.
pub fn symmetrization_defect(l: &Loop, group: &SymmetryGroup, shifts: usize) -> f64 {
    let p = ModeProjector::new(group, l.n_max);
    let mut best = f64::INFINITY;
    for s in 0..shifts.max(1) {
        let shifted = l.time_shifted(TAU * s as f64 / shifts.max(1) as f64);
        let f = |phi: f64| rel_defect(&shifted.rotated(phi), &p);
        let coarse = 720;
        let (mut k_best, mut v_best) = (0, f64::INFINITY);
        for k in 0..coarse {
            let v = f(TAU * k as f64 / coarse as f64);
            if v < v_best {
                (k_best, v_best) = (k, v);
            }
        }
        let h = TAU / coarse as f64;
        let (mut a, mut b) = (TAU * k_best as f64 / coarse as f64 - h, TAU * k_best as f64 / coarse as f64 + h);
        let gr = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..80 {
            let c = b - gr * (b - a);
            let e = a + gr * (b - a);
            if f(c) < f(e) {
                b = e;
            } else {
                a = c;
            }
        }
        best = best.min(f(0.5 * (a + b))).min(v_best);
    }
    best
}

/// Largest relative spread of the three side lengths over `samples` times.
pub fn equilateral_defect(l: &Loop, samples: usize) -> f64 {
    l.sample(samples)
        .iter()
        .map(|(_, x)| {
            let s = PAIRS.map(|(i, j)| (x[i] - x[j]).norm());
            let mean = (s[0] + s[1] + s[2]) / 3.0;
            (s.iter().cloned().fold(f64::MIN, f64::max) - s.iter().cloned().fold(f64::MAX, f64::min)) / mean
        })
        .fold(0.0, f64::max)
}

/// `(max - min) / mean` of a sampled quantity.
pub fn relative_spread(v: &[f64]) -> f64 {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    let hi = v.iter().cloned().fold(f64::MIN, f64::max);
    let lo = v.iter().cloned().fold(f64::MAX, f64::min);
    (hi - lo) / mean.abs().max(f64::MIN_POSITIVE)
}
