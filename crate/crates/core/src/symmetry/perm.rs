use std::fmt;

use crate::error::{Error, Result};

/// Permutation of the three body indices, stored zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm3(pub [usize; 3]);

impl Perm3 {
    pub fn identity() -> Self {
        Perm3([0, 1, 2])
    }

    pub fn from_images(images: [usize; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &i in &images {
            if i > 2 || seen[i] {
                return Err(Error::Parse(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm3(images))
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm3) -> Perm3 {
        Perm3([self.0[other.0[0]], self.0[other.0[1]], self.0[other.0[2]]])
    }

    pub fn inverse(&self) -> Perm3 {
        let mut inv = [0; 3];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm3(inv)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn order(&self) -> usize {
        let mut p = *self;
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Parse cycle notation such as `()`, `(12)`, `(1,3)`, `(123)` or `(12)(3)`.
    pub fn parse(s: &str) -> Result<Perm3> {
        let s = s.trim();
        let bad = |why: &str| Error::Parse(format!("bad cycle `{s}`: {why}"));
        if s.is_empty() {
            return Err(bad("empty"));
        }
        let mut img = [0usize, 1, 2];
        let mut used = [false; 3];
        let mut rest = s;
        while !rest.is_empty() {
            let inner_end = rest.find(')').ok_or_else(|| bad("unbalanced"))?;
            if !rest.starts_with('(') {
                return Err(bad("expected `(`"));
            }
            let body = &rest[1..inner_end];
            rest = &rest[inner_end + 1..];
            let mut cyc = Vec::new();
            for c in body.chars() {
                match c {
                    '1'..='3' => {
                        let i = c as usize - '1' as usize;
                        if used[i] {
                            return Err(bad("repeated index"));
                        }
                        used[i] = true;
                        cyc.push(i);
                    }
                    ',' | ' ' => {}
                    _ => return Err(bad("unexpected character")),
                }
            }
            for k in 0..cyc.len() {
                img[cyc[k]] = cyc[(k + 1) % cyc.len()];
            }
        }
        Ok(Perm3(img))
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; 3];
        let mut out = Vec::new();
        for start in 0..3 {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut j = self.0[start];
            while j != start {
                seen[j] = true;
                c.push(j);
                j = self.0[j];
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for Perm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cyc: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cyc.is_empty() {
            return write!(f, "()");
        }
        for c in cyc {
            write!(f, "(")?;
            for i in c {
                write!(f, "{}", i + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
