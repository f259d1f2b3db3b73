//! Fixtures shared by the benchmarks.

use num_complex::Complex64;
use symorb::action::{lagrange_central_config, Loop};
use symorb::Masses;

/// Rigid Lagrange rotation with a small fixed wobble in every higher mode.
pub fn wobbly_lagrange(n_max: usize) -> Loop {
    let m = Masses::unit();
    let mut l = Loop::rigid(m, n_max, &lagrange_central_config(&m), 1);
    let nm = n_max as i64;
    for i in 0..3 {
        for n in (-nm..=nm).filter(|n| *n != 1 && *n != 0) {
            let a = (7 * i as i64 + 3 * n) as f64;
            let z = Complex64::new(a.sin(), a.cos()) * (0.01 / (n * n) as f64);
            l.set(i, n, l.coeff(i, n) + z);
        }
    }
    l.project_center_of_mass();
    l
}
