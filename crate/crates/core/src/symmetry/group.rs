use std::collections::HashSet;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::o2::{unit, wrap, O2Elem, Turn};
use super::perm::Perm3;
use crate::error::{Error, Result};

/// Three planar positions as complex numbers.
pub type Configuration = [Complex64; 3];

pub const DEFAULT_CAP: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Masses(pub [f64; 3]);

impl Masses {
    pub fn new(m: [f64; 3]) -> Result<Self> {
        if m.iter().all(|&x| x > 0.0 && x.is_finite()) {
            Ok(Masses(m))
        } else {
            Err(Error::Domain(format!("masses must be positive, got {m:?}")))
        }
    }

    pub fn unit() -> Self {
        Masses([1.0; 3])
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl std::ops::Index<usize> for Masses {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub tau: O2Elem,
    pub rho: O2Elem,
    pub sigma: Perm3,
}

impl GroupElement {
    pub fn new(tau: O2Elem, rho: O2Elem, sigma: Perm3) -> Self {
        GroupElement { tau, rho, sigma }
    }

    pub fn identity() -> Self {
        GroupElement { tau: O2Elem::identity(), rho: O2Elem::identity(), sigma: Perm3::identity() }
    }

    pub fn is_identity(&self) -> bool {
        self.tau.is_identity() && self.rho.is_identity() && self.sigma.is_identity()
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            tau: self.tau.compose(&other.tau),
            rho: self.rho.compose(&other.rho),
            sigma: self.sigma.compose(&other.sigma),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { tau: self.tau.inverse(), rho: self.rho.inverse(), sigma: self.sigma.inverse() }
    }

    /// Redundant: a nontrivial time shift acting trivially on plane and indices.
    pub fn is_redundant(&self) -> bool {
        !self.tau.is_reflection() && !self.tau.is_identity() && self.rho.is_identity() && self.sigma.is_identity()
    }

    /// Where the coefficient `(body, m)` of `g·x` comes from.
    ///
    /// Returns `(source body, source mode, conjugate?, phase turn)` so that
    /// `(g·x)_{body,m} = e^{2 pi i phase} · [conj] c_{source body, source mode}`.
    pub fn mode_source(&self, body: usize, m: i64) -> (usize, i64, bool, Turn) {
        let src = self.sigma.inverse().apply(body);
        let flip = self.tau.is_reflection() != self.rho.is_reflection();
        let src_mode = if flip { -m } else { m };
        let phase = wrap(self.rho.turn - self.tau.turn * Turn::from_integer(m));
        (src, src_mode, self.rho.is_reflection(), phase)
    }

    pub fn parse(line: &str) -> Result<GroupElement> {
        let mut tau = None;
        let mut rho = None;
        let mut sigma = None;
        // split on the three `key=` markers, values may contain spaces
        let mut rest = line.trim();
        while !rest.is_empty() {
            let eq = rest.find('=').ok_or_else(|| Error::Parse(format!("missing `=` in `{line}`")))?;
            let key = rest[..eq].trim();
            let after = &rest[eq + 1..];
            let next = ["tau=", "rho=", "sigma="]
                .iter()
                .filter_map(|k| find_key(after, k))
                .min()
                .unwrap_or(after.len());
            let value = after[..next].trim();
            match key {
                "tau" => tau = Some(O2Elem::parse(value)?),
                "rho" => rho = Some(O2Elem::parse(value)?),
                "sigma" => sigma = Some(Perm3::parse(value)?),
                _ => return Err(Error::Parse(format!("unknown key `{key}`"))),
            }
            rest = after[next..].trim();
        }
        match (tau, rho, sigma) {
            (Some(tau), Some(rho), Some(sigma)) => Ok(GroupElement { tau, rho, sigma }),
            _ => Err(Error::Parse(format!("generator needs tau, rho and sigma: `{line}`"))),
        }
    }
}

fn find_key(s: &str, key: &str) -> Option<usize> {
    let mut from = 0;
    while let Some(p) = s[from..].find(key) {
        let at = from + p;
        if at == 0 || s.as_bytes()[at - 1].is_ascii_whitespace() {
            return Some(at);
        }
        from = at + 1;
    }
    None
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau={} rho={} sigma={}", self.tau, self.rho, self.sigma)
    }
}

/// Apply `g` to a configuration: `(g x)_i = rho(g) x_{sigma(g)^{-1} i}`.
pub fn config_action(g: &GroupElement, x: &Configuration) -> Configuration {
    let inv = g.sigma.inverse();
    [g.rho.apply(x[inv.apply(0)]), g.rho.apply(x[inv.apply(1)]), g.rho.apply(x[inv.apply(2)])]
}

#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    elements: Vec<GroupElement>,
    generators: Vec<GroupElement>,
}

#[derive(Clone, Debug)]
pub struct FundamentalDomain {
    /// Endpoints in turns of the period.
    pub t0: Turn,
    pub t1: Turn,
    pub h0: SymmetryGroup,
    pub h1: SymmetryGroup,
}

impl FundamentalDomain {
    pub fn length(&self) -> Turn {
        self.t1 - self.t0
    }
    pub fn t0_radians(&self) -> f64 {
        std::f64::consts::TAU * super::o2::turn_to_f64(self.t0)
    }
    pub fn t1_radians(&self) -> f64 {
        std::f64::consts::TAU * super::o2::turn_to_f64(self.t1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypothesesReport {
    pub hh1_joint_kernel_trivial: bool,
    pub hh2_spans_plane: bool,
    pub hh3_no_redundant: bool,
}

impl SymmetryGroup {
    pub fn generate(gens: &[GroupElement], cap: usize) -> Result<SymmetryGroup> {
        let mut elements = vec![GroupElement::identity()];
        let mut seen: HashSet<GroupElement> = elements.iter().copied().collect();
        let mut frontier = 0;
        while frontier < elements.len() {
            let a = elements[frontier];
            frontier += 1;
            for g in gens {
                let b = a.compose(g);
                if seen.insert(b) {
                    elements.push(b);
                    if elements.len() > cap {
                        return Err(Error::ClosureOverflow { cap });
                    }
                }
            }
        }
        Ok(SymmetryGroup { elements, generators: gens.to_vec() })
    }

    /// Group from a known closed element list and a generating subset.
    pub(crate) fn from_parts(elements: Vec<GroupElement>, generators: Vec<GroupElement>) -> SymmetryGroup {
        let mut g = Self::from_elements(elements);
        g.generators = generators.into_iter().filter(|e| !e.is_identity()).collect();
        g
    }

    /// Group from a known closed element list (used for subgroups and quotients).
    fn from_elements(mut elements: Vec<GroupElement>) -> SymmetryGroup {
        if let Some(p) = elements.iter().position(|e| e.is_identity()) {
            elements.swap(0, p);
        }
        let generators = elements.iter().copied().filter(|e| !e.is_identity()).collect();
        SymmetryGroup { elements, generators }
    }

    /// Subgroup generated by a subset of elements.
    pub fn subgroup(&self, gens: Vec<GroupElement>) -> SymmetryGroup {
        Self::generate(&gens, self.order()).expect("subgroup of a finite group")
    }

    pub fn trivial() -> SymmetryGroup {
        SymmetryGroup { elements: vec![GroupElement::identity()], generators: Vec::new() }
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.contains(g)
    }

    /// Equality as sets of elements.
    pub fn same_elements(&self, other: &SymmetryGroup) -> bool {
        let mut a = self.elements.clone();
        let mut b = other.elements.clone();
        a.sort();
        b.sort();
        a == b
    }

    pub fn filter(&self, pred: impl Fn(&GroupElement) -> bool) -> SymmetryGroup {
        Self::from_elements(self.elements.iter().copied().filter(|g| pred(g)).collect())
    }

    /// `ker tau`.
    pub fn core(&self) -> SymmetryGroup {
        self.filter(|g| g.tau.is_identity())
    }

    /// Distinct images `tau(G)`, i.e. the quotient acting on the time circle.
    pub fn tau_image(&self) -> Vec<O2Elem> {
        let mut v: Vec<O2Elem> = self.elements.iter().map(|g| g.tau).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn quotient_order(&self) -> usize {
        self.tau_image().len()
    }

    pub fn action_type(&self) -> ActionType {
        let img = self.tau_image();
        let refl = img.iter().filter(|t| t.is_reflection()).count();
        if refl == 0 {
            ActionType::Cyclic
        } else if img.len() == 2 {
            ActionType::Brake
        } else {
            ActionType::Dihedral
        }
    }

    /// Orbits of `{1,2,3}` (zero-based), sorted by size then by smallest index.
    pub fn transitive_decomposition(&self) -> Vec<Vec<usize>> {
        let mut orbit_of = [usize::MAX; 3];
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for i in 0..3 {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let mut o: Vec<usize> = self.elements.iter().map(|g| g.sigma.apply(i)).collect();
            o.sort();
            o.dedup();
            for &j in &o {
                orbit_of[j] = orbits.len();
            }
            orbits.push(o);
        }
        orbits.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        orbits
    }

    /// Isotropy at time `s` (turns of the period).
    pub fn time_isotropy(&self, s: Turn) -> SymmetryGroup {
        self.filter(|g| g.tau.fixes_time(s))
    }

    /// All times (in turns) whose isotropy is larger than the core.
    pub fn reflection_times(&self) -> Vec<Turn> {
        let mut v: Vec<Turn> = self.tau_image().iter().flat_map(|t| t.fixed_times()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn fundamental_domain(&self) -> FundamentalDomain {
        let qo = self.quotient_order() as i64;
        let times = self.reflection_times();
        if times.is_empty() {
            let h = self.core();
            FundamentalDomain { t0: Turn::zero(), t1: Turn::new(1, qo), h0: h.clone(), h1: h }
        } else {
            let t0 = times[0];
            let t1 = if times.len() > 1 { times[1] } else { t0 + Turn::one() };
            FundamentalDomain { t0, t1, h0: self.time_isotropy(t0), h1: self.time_isotropy(t1) }
        }
    }

    pub fn check_masses(&self, masses: &Masses) -> Result<()> {
        for g in &self.elements {
            for i in 0..3 {
                let j = g.sigma.apply(i);
                if masses[i] != masses[j] {
                    return Err(Error::IncompatibleMasses);
                }
            }
        }
        Ok(())
    }

    /// Averaging projector on configurations, as a 6x6 real matrix in the
    /// coordinates `(re x1, im x1, re x2, im x2, re x3, im x3)`.
    pub fn config_averaging_matrix(&self) -> DMatrix<f64> {
        let mut p = DMatrix::<f64>::zeros(6, 6);
        for g in &self.elements {
            p += config_matrix(g);
        }
        p / self.order() as f64
    }

    /// Real orthonormal basis of the center-of-mass-zero configurations fixed by the group.
    pub fn fixed_config_space(&self, masses: &Masses) -> Result<Vec<Configuration>> {
        self.check_masses(masses)?;
        let p = self.config_averaging_matrix() * com_projector(masses);
        // symmetrize against rounding, P and Q commute so P Q is an orthogonal projector
        let sym = (&p + p.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym);
        let mut basis = Vec::new();
        for (k, &lam) in eig.eigenvalues.iter().enumerate() {
            if lam > 0.5 {
                let v = eig.eigenvectors.column(k);
                basis.push([
                    Complex64::new(v[0], v[1]),
                    Complex64::new(v[2], v[3]),
                    Complex64::new(v[4], v[5]),
                ]);
            }
        }
        Ok(basis)
    }

    /// Lowest common multiple of the denominators of all tau turns.
    pub fn time_modulus(&self) -> i64 {
        self.elements.iter().fold(1i64, |acc, g| acc.lcm(g.tau.turn.denom()))
    }

    pub fn validate_hypotheses(&self) -> HypothesesReport {
        let hh1 = self
            .elements
            .iter()
            .all(|g| g.is_identity() || !(g.tau.is_identity() && g.rho.is_identity() && g.sigma.is_identity()));
        let hh3 = !self.elements.iter().any(|g| g.is_redundant());
        HypothesesReport { hh1_joint_kernel_trivial: hh1, hh2_spans_plane: self.spans_plane_heuristic(), hh3_no_redundant: hh3 }
    }

    /// Heuristic for hh2: values of a random equivariant loop span the plane.
    fn spans_plane_heuristic(&self) -> bool {
        let n_max = 3usize;
        let width = 2 * n_max + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let coeffs: Vec<Complex64> = (0..3 * width)
            .map(|_| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
            .collect();
        let proj = ModeProjector::new(self, n_max).apply(&coeffs);
        let mut m = [[0.0f64; 2]; 2];
        let samples = 64;
        for k in 0..samples {
            let t = std::f64::consts::TAU * k as f64 / samples as f64;
            for body in 0..3 {
                let mut z = Complex64::zero();
                for (j, n) in (-(n_max as i64)..=n_max as i64).enumerate() {
                    z += proj[body * width + j] * Complex64::from_polar(1.0, n as f64 * t);
                }
                m[0][0] += z.re * z.re;
                m[0][1] += z.re * z.im;
                m[1][1] += z.im * z.im;
            }
        }
        let tr = m[0][0] + m[1][1];
        let det = m[0][0] * m[1][1] - m[0][1] * m[0][1];
        tr > 0.0 && det > 1e-10 * tr * tr
    }

    /// Each element paired with its parsed-text form, for serialization.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }

    /// Parse a group file: one generator per line, `#` starts a comment.
    pub fn parse_generators(text: &str) -> Result<Vec<GroupElement>> {
        let mut gens = Vec::new();
        for raw in text.lines() {
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            if line.trim().is_empty() {
                continue;
            }
            gens.push(GroupElement::parse(line)?);
        }
        Ok(gens)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionType {
    Cyclic,
    Brake,
    Dihedral,
}

impl fmt::Display for ActionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionType::Cyclic => "cyclic",
            ActionType::Brake => "brake",
            ActionType::Dihedral => "dihedral",
        })
    }
}

/// 6x6 real matrix of `config_action(g, ·)`.
pub fn config_matrix(g: &GroupElement) -> DMatrix<f64> {
    let r = g.rho.matrix();
    let mut m = DMatrix::<f64>::zeros(6, 6);
    for j in 0..3 {
        let i = g.sigma.apply(j);
        for a in 0..2 {
            for b in 0..2 {
                m[(2 * i + a, 2 * j + b)] = r[a][b];
            }
        }
    }
    m
}

/// Orthogonal projector onto `sum m_i x_i = 0` in the 6 real coordinates.
pub fn com_projector(masses: &Masses) -> DMatrix<f64> {
    let mm: f64 = masses.0.iter().map(|m| m * m).sum();
    let mut q = DMatrix::<f64>::identity(6, 6);
    for i in 0..3 {
        for j in 0..3 {
            for c in 0..2 {
                q[(2 * i + c, 2 * j + c)] -= masses[i] * masses[j] / mm;
            }
        }
    }
    q
}

/// Group average acting on Fourier coefficients `c_{i,n}`, `|n| <= n_max`,
/// laid out as `i * (2 n_max + 1) + (n + n_max)`.
#[derive(Clone, Debug)]
pub struct ModeProjector {
    n_max: usize,
    /// Per element, per target slot: (source slot, conjugate?, phase).
    maps: Vec<Vec<(usize, bool, Complex64)>>,
}

impl ModeProjector {
    pub fn new(group: &SymmetryGroup, n_max: usize) -> Self {
        let width = 2 * n_max + 1;
        let nm = n_max as i64;
        let maps = group
            .elements()
            .iter()
            .map(|g| {
                let mut v = Vec::with_capacity(3 * width);
                for body in 0..3 {
                    for n in -nm..=nm {
                        let (src, sm, conj, phase) = g.mode_source(body, n);
                        v.push((src * width + (sm + nm) as usize, conj, unit(phase)));
                    }
                }
                v
            })
            .collect();
        ModeProjector { n_max, maps }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn apply(&self, c: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::zero(); c.len()];
        for map in &self.maps {
            for (k, &(src, conj, ph)) in map.iter().enumerate() {
                let v = if conj { c[src].conj() } else { c[src] };
                out[k] += ph * v;
            }
        }
        let inv = 1.0 / self.maps.len() as f64;
        out.iter_mut().for_each(|z| *z *= inv);
        out
    }

    /// Action of a single element (index into the group's element list).
    pub fn act(&self, element: usize, c: &[Complex64]) -> Vec<Complex64> {
        self.maps[element]
            .iter()
            .map(|&(src, conj, ph)| ph * if conj { c[src].conj() } else { c[src] })
            .collect()
    }
}
