//! Orbit files: JSON with a sha256 checksum over the payload.
//!
//! Floats are written in shortest round-trip form, so a load reproduces every
//! mode bit for bit (at most 17 significant digits are needed).

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use symorb::action::{inertial_angular_momentum, Loop, MinimizeResult};
use symorb::{Masses, SymmetryGroup};

use crate::CliError;

pub const FORMAT: &str = "symorb-orbit/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitPayload {
    pub format: String,
    pub alpha: f64,
    pub omega: f64,
    pub masses: [f64; 3],
    pub group: Vec<String>,
    pub group_order: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub seed: u64,
    pub converged: bool,
    pub iterations: usize,
    /// `[body, n, re, im]`, body-major.
    pub modes: Vec<(usize, i64, f64, f64)>,
    pub action: f64,
    pub gradient_norm: f64,
    pub angular_momentum: f64,
    pub min_pair_distance: f64,
}

#[derive(Serialize, Deserialize)]
struct OrbitFile {
    #[serde(flatten)]
    payload: OrbitPayload,
    checksum: String,
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub payload: OrbitPayload,
    pub loop_: Loop,
    pub group: SymmetryGroup,
}

fn checksum(p: &OrbitPayload) -> String {
    let text = serde_json::to_string(p).expect("plain data serializes");
    hex::encode(Sha256::digest(text.as_bytes()))
}

impl Orbit {
    pub fn from_result(res: &MinimizeResult, group: &SymmetryGroup, omega: f64, alpha: f64) -> Orbit {
        let l = &res.loop_;
        let nm = l.n_max as i64;
        let modes = (0..3).flat_map(|i| (-nm..=nm).map(move |n| (i, n))).map(|(i, n)| {
            let z = l.coeff(i, n);
            (i, n, z.re, z.im)
        });
        let j = inertial_angular_momentum(l, omega, 256);
        let payload = OrbitPayload {
            format: FORMAT.into(),
            alpha,
            omega,
            masses: l.masses.0,
            group: group.generator_strings(),
            group_order: group.order(),
            n: l.n_max,
            seed: res.seed,
            converged: res.converged,
            iterations: res.iterations,
            modes: modes.collect(),
            action: res.action,
            gradient_norm: res.gradient_norm,
            angular_momentum: j.iter().sum::<f64>() / j.len() as f64,
            min_pair_distance: res.min_pair_distance,
        };
        Orbit { payload, loop_: l.clone(), group: group.clone() }
    }

    pub fn to_json(&self) -> String {
        let file = OrbitFile { checksum: checksum(&self.payload), payload: self.payload.clone() };
        serde_json::to_string(&file).expect("plain data serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Orbit, CliError> {
        let file: OrbitFile = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
        let want = checksum(&file.payload);
        if want != file.checksum {
            return Err(CliError::ChecksumMismatch { stored: file.checksum, computed: want });
        }
        let p = file.payload;
        if p.format != FORMAT {
            return Err(CliError::Schema(format!("unknown format `{}`", p.format)));
        }
        let masses = Masses::new(p.masses).map_err(|e| CliError::Schema(e.to_string()))?;
        let nm = p.n as i64;
        let mut l = Loop::zeros(masses, p.n);
        let mut seen = vec![false; l.modes.len()];
        if p.modes.len() != seen.len() {
            return Err(CliError::Schema(format!("expected {} modes, found {}", seen.len(), p.modes.len())));
        }
        for &(i, n, re, im) in &p.modes {
            if i > 2 || n.abs() > nm {
                return Err(CliError::Schema(format!("mode ({i}, {n}) out of range")));
            }
            let k = l.index(i, n);
            if std::mem::replace(&mut seen[k], true) {
                return Err(CliError::Schema(format!("mode ({i}, {n}) repeated")));
            }
            l.modes[k] = Complex64::new(re, im);
        }
        let gens = SymmetryGroup::parse_generators(&p.group.join("\n")).map_err(|e| CliError::Schema(e.to_string()))?;
        let group = SymmetryGroup::generate(&gens, symorb::symmetry::DEFAULT_CAP).map_err(|e| CliError::Schema(e.to_string()))?;
        if group.order() != p.group_order {
            return Err(CliError::Schema(format!("group closes to order {}, file says {}", group.order(), p.group_order)));
        }
        Ok(Orbit { payload: p, loop_: l, group })
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json()).map_err(|e| CliError::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Orbit, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Orbit::from_json(&text)
    }
}

pub const TRAJECTORY_HEADER: &str = "t,x1re,x1im,x2re,x2im,x3re,x3im";

/// Sampled trajectory on `m` equally spaced times.
pub fn trajectory_csv(l: &Loop, m: usize) -> String {
    let mut s = String::from(TRAJECTORY_HEADER);
    s.push('\n');
    for (t, x) in l.sample(m) {
        s.push_str(&format!("{t:.17e}"));
        for z in x {
            s.push_str(&format!(",{:.17e},{:.17e}", z.re, z.im));
        }
        s.push('\n');
    }
    s
}
