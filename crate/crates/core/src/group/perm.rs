use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., degree-1}` stored as its image list.
///
/// Products compose left to right: `a.mul(&b)` applies `a` first, then `b`.
/// The text form is 1-based disjoint-cycle notation, e.g. `(1 2 3)(4 5)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u32]>);

impl Perm {
    pub fn identity(degree: u32) -> Self {
        Perm((0..degree).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::Input(format!(
                    "image list {images:?} is not a permutation"
                )));
            }
            seen[i] = true;
        }
        Ok(Perm(images.into_boxed_slice()))
    }

    /// Build from 1-based cycles on `degree` points.
    pub fn from_cycles(degree: u32, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree).collect();
        let mut used = vec![false; degree as usize];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a == 0 || a > degree {
                    return Err(Error::Input(format!(
                        "point {a} outside 1..{degree}"
                    )));
                }
                if used[a as usize - 1] {
                    return Err(Error::Input(format!(
                        "point {a} repeated in cycle notation"
                    )));
                }
                used[a as usize - 1] = true;
                let b = cycle[(i + 1) % cycle.len()];
                images[a as usize - 1] = b - 1;
            }
        }
        Perm::from_images(images)
    }

    /// Parse disjoint-cycle notation such as `(1 2 3)(4,5)` or `()`.
    pub fn parse_cycles(degree: u32, text: &str) -> Result<Self> {
        let text = text.trim();
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Input(format!("expected `(` in `{text}`")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Input(format!("unclosed cycle in `{text}`")))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u32>()
                        .map_err(|_| Error::Input(format!("bad point `{s}` in `{text}`")))
                })
                .collect::<Result<Vec<u32>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Perm::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.0[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Apply `self`, then `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.0.len(), other.0.len());
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Perm(inv.into_boxed_slice())
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// `h^-1 * self * h`.
    pub fn conjugate_by(&self, h: &Perm) -> Perm {
        h.inverse().mul(self).mul(h)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1, |acc, c| crate::arith::lcm(acc, c.len() as u64))
    }

    pub fn first_moved_point(&self) -> Option<u32> {
        self.0
            .iter()
            .enumerate()
            .find(|(i, &v)| *i as u32 != v)
            .map(|(i, _)| i as u32)
    }

    /// Nontrivial cycles, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.0[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// The permutation on `offset + degree(self)`.. extended by fixed points
    /// before and after; used for direct products.
    pub fn shifted(&self, offset: u32, total_degree: u32) -> Perm {
        let mut images: Vec<u32> = (0..total_degree).collect();
        for (i, &v) in self.0.iter().enumerate() {
            images[offset as usize + i] = offset + v;
        }
        Perm(images.into_boxed_slice())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Perm::parse_cycles(5, "(1 2 3)(4,5)").unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.order(), 6);
        assert!(Perm::parse_cycles(3, "()").unwrap().is_identity());
        assert!(Perm::parse_cycles(3, "(1 4)").is_err());
        assert!(Perm::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Perm::parse_cycles(3, "(1 2").is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::parse_cycles(3, "(1 2)").unwrap();
        let b = Perm::parse_cycles(3, "(2 3)").unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.mul(&b).apply(0), 2);
        assert_eq!(a.mul(&a.inverse()), Perm::identity(3));
        assert_eq!(a.mul(&b).pow(3), Perm::identity(3));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
    }
}
