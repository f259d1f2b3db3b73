//! Exact elements of O(2).
//!
//! Both kinds are parametrized by a rational turn `t` in `[0,1)`. In complex
//! notation a rotation is `z -> e^{2 pi i t} z` and a reflection is
//! `z -> e^{2 pi i t} conj(z)`, i.e. the mirror across the line at angle `pi t`.

use std::fmt;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Turn = Ratio<i64>;

/// Reduce a turn into `[0,1)`.
pub fn wrap(t: Turn) -> Turn {
    t - t.floor()
}

/// `e^{2 pi i t}` with the turn reduced exactly before going to floats.
pub fn unit(t: Turn) -> Complex64 {
    let w = wrap(t);
    let a = std::f64::consts::TAU * (*w.numer() as f64) / (*w.denom() as f64);
    Complex64::new(a.cos(), a.sin())
}

pub fn turn_to_f64(t: Turn) -> f64 {
    *t.numer() as f64 / *t.denom() as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum O2Kind {
    Rotation,
    Reflection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct O2Elem {
    pub kind: O2Kind,
    pub turn: Turn,
}

impl O2Elem {
    pub fn rot(turn: Turn) -> Self {
        O2Elem { kind: O2Kind::Rotation, turn: wrap(turn) }
    }

    pub fn refl(turn: Turn) -> Self {
        O2Elem { kind: O2Kind::Reflection, turn: wrap(turn) }
    }

    pub fn identity() -> Self {
        Self::rot(Turn::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.kind == O2Kind::Rotation && self.turn.is_zero()
    }

    pub fn is_reflection(&self) -> bool {
        self.kind == O2Kind::Reflection
    }

    pub fn det(&self) -> i32 {
        match self.kind {
            O2Kind::Rotation => 1,
            O2Kind::Reflection => -1,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &O2Elem) -> O2Elem {
        use O2Kind::*;
        match (self.kind, other.kind) {
            (Rotation, Rotation) => Self::rot(self.turn + other.turn),
            (Rotation, Reflection) => Self::refl(self.turn + other.turn),
            (Reflection, Rotation) => Self::refl(self.turn - other.turn),
            (Reflection, Reflection) => Self::rot(self.turn - other.turn),
        }
    }

    pub fn inverse(&self) -> O2Elem {
        match self.kind {
            O2Kind::Rotation => Self::rot(-self.turn),
            O2Kind::Reflection => *self,
        }
    }

    pub fn order(&self) -> i64 {
        match self.kind {
            O2Kind::Rotation => *self.turn.denom(),
            O2Kind::Reflection => 2,
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        let u = unit(self.turn);
        match self.kind {
            O2Kind::Rotation => u * z,
            O2Kind::Reflection => u * z.conj(),
        }
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        let u = unit(self.turn);
        match self.kind {
            O2Kind::Rotation => [[u.re, -u.im], [u.im, u.re]],
            O2Kind::Reflection => [[u.re, u.im], [u.im, -u.re]],
        }
    }

    /// Action on the time circle, with time measured in turns of the period.
    pub fn apply_time(&self, s: Turn) -> Turn {
        match self.kind {
            O2Kind::Rotation => wrap(s + self.turn),
            O2Kind::Reflection => wrap(self.turn - s),
        }
    }

    /// Same as [`apply_time`](Self::apply_time) for a time in radians.
    pub fn apply_time_f64(&self, t: f64) -> f64 {
        let a = std::f64::consts::TAU * turn_to_f64(self.turn);
        match self.kind {
            O2Kind::Rotation => t + a,
            O2Kind::Reflection => a - t,
        }
    }

    pub fn fixes_time(&self, s: Turn) -> bool {
        self.apply_time(s) == wrap(s)
    }

    /// Times (in turns) fixed by a reflection of the circle.
    pub fn fixed_times(&self) -> Vec<Turn> {
        match self.kind {
            O2Kind::Rotation => Vec::new(),
            O2Kind::Reflection => {
                let half = Turn::new(1, 2);
                let mut v = vec![wrap(self.turn * half), wrap(self.turn * half + half)];
                v.sort();
                v
            }
        }
    }

    pub fn parse(s: &str) -> Result<O2Elem> {
        let s = s.trim();
        let (kind, rest) = if let Some(r) = s.strip_prefix("rot") {
            (O2Kind::Rotation, r)
        } else if let Some(r) = s.strip_prefix("ref") {
            (O2Kind::Reflection, r)
        } else {
            return Err(Error::Parse(format!("expected `rot p/q` or `ref p/q`, got `{s}`")));
        };
        let turn = parse_turn(rest.trim())?;
        Ok(match kind {
            O2Kind::Rotation => Self::rot(turn),
            O2Kind::Reflection => Self::refl(turn),
        })
    }
}

pub fn parse_turn(s: &str) -> Result<Turn> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Turn::new(n, d))
}

impl fmt::Display for O2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            O2Kind::Rotation => "rot",
            O2Kind::Reflection => "ref",
        };
        if self.turn.denom().is_one() {
            write!(f, "{k} {}", self.turn.numer())
        } else {
            write!(f, "{k} {}/{}", self.turn.numer(), self.turn.denom())
        }
    }
}
