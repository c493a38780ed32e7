//! Permutations on {0, ..., n-1} in image-vector form, with parsing and
//! printing of the usual 1-based cycle notation.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("cycle notation parse error: {0}")]
    Parse(String),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated within a cycle expression")]
    RepeatedPoint(usize),
    #[error("image vector is not a bijection")]
    NotBijective,
}

/// A permutation of {0, ..., n-1}; `images[i]` is the image of point `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<u16>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if (im as usize) >= n || seen[im as usize] {
                return Err(PermError::NotBijective);
            }
            seen[im as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// `self * other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other
                .images
                .iter()
                .map(|&p| self.images[p as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u16;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &im)| i == im as usize)
    }

    pub fn order(&self) -> u64 {
        let mut ord = 1u64;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = cur.compose(self);
            ord += 1;
        }
        ord
    }

    pub fn pow(&self, e: i64) -> Perm {
        let n = self.degree();
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Parse 1-based cycle notation such as `"(1 2 3)(4 5)"`.
    /// `"()"`, `"e"`, `"id"` and the empty string denote the identity.
    pub fn parse(s: &str, degree: usize) -> Result<Self, PermError> {
        let t = s.trim();
        if t.is_empty() || t == "()" || t == "e" || t == "id" {
            return Ok(Perm::identity(degree));
        }
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut used = vec![false; degree];
        let mut rest = t;
        while !rest.is_empty() {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(PermError::Parse(format!("expected '(' at \"{rest}\"")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| PermError::Parse("unbalanced parenthesis".into()))?;
            let inner = &rest[1..close];
            rest = &rest[close + 1..];
            let pts: Vec<usize> = inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|w| !w.is_empty())
                .map(|w| {
                    w.parse::<usize>()
                        .map_err(|_| PermError::Parse(format!("bad point \"{w}\"")))
                })
                .collect::<Result<_, _>>()?;
            if pts.is_empty() {
                continue;
            }
            for &p in &pts {
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if used[p - 1] {
                    return Err(PermError::RepeatedPoint(p));
                }
                used[p - 1] = true;
            }
            for i in 0..pts.len() {
                let from = pts[i] - 1;
                let to = pts[(i + 1) % pts.len()] - 1;
                images[from] = to as u16;
            }
        }
        Ok(Perm { images })
    }

    /// 1-based cycle notation; fixed points omitted, identity printed as `"()"`.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cyc.push(p);
                p = self.apply(p);
            }
            out.push('(');
            out.push_str(
                &cyc.iter()
                    .map(|q| (q + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_roundtrip() {
        let p = Perm::parse("(1 2 3)(4 5)", 6).unwrap();
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(2), 0);
        assert_eq!(p.apply(3), 4);
        assert_eq!(p.apply(5), 5);
        assert_eq!(p.cycle_string(), "(1 2 3)(4 5)");
        let q = Perm::parse(&p.cycle_string(), 6).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn compose_applies_rightmost_first() {
        let a = Perm::parse("(1 2)", 3).unwrap();
        let b = Perm::parse("(2 3)", 3).unwrap();
        // (a*b)(2) = a(b(2)) = a(3) = 3
        assert_eq!(a.compose(&b).apply(1), 2);
        assert_eq!(a.compose(&b).cycle_string(), "(1 2 3)");
    }

    #[test]
    fn inverse_and_order() {
        let p = Perm::parse("(1 2 3 4)", 4).unwrap();
        assert_eq!(p.order(), 4);
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.pow(2).cycle_string(), "(1 3)(2 4)");
    }

    #[test]
    fn parse_errors() {
        assert!(Perm::parse("(1 7)", 4).is_err());
        assert!(Perm::parse("(1 1)", 4).is_err());
        assert!(Perm::parse("(1 2", 4).is_err());
    }
}
