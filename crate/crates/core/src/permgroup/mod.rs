//! Concrete permutation groups.
//!
//! Products follow the "apply the left factor first" convention: for
//! permutations `x` and `y`, `x.then(&y)` (and the group product `x * y`)
//! maps a point `i` to `y(x(i))`. Cycle notation is the exception: a string
//! such as `"(1 2)(2 3)"` is read as a composition of functions, so the
//! rightmost cycle acts first.

mod builders;
mod group;
mod quotient;
mod spec;

pub use builders::{direct_product, named_group, BUILDERS};
pub use group::{BasicInvariants, FiniteGroup, DEFAULT_ORDER_CAP};
pub use quotient::{quotient, Epimorphism};
pub use spec::GroupSpec;

use std::fmt;

use crate::{GroupError, Result};

/// A bijection on the points `0..degree`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &i in &images {
            let i = i as usize;
            if i >= degree || seen[i] {
                return Err(GroupError::NotAPermutation { degree });
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation, e.g. `"(1 2 3)(4 5)"`.
    ///
    /// Cycles need not be disjoint; they are composed right to left, so in
    /// `"(1 2)(2 3)"` the cycle `(2 3)` acts first. Points may be separated by
    /// spaces or commas. The empty string and `"()"` give the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let malformed = |reason: &str| GroupError::MalformedCycles {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| malformed("expected '('"))?;
            let close = body.find(')').ok_or_else(|| malformed("missing ')'"))?;
            let mut cycle = Vec::new();
            for tok in body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
            {
                let point: usize = tok
                    .parse()
                    .map_err(|_| malformed(&format!("bad point {tok:?}")))?;
                if point == 0 || point > degree {
                    return Err(GroupError::PointOutOfRange { point, degree });
                }
                if cycle.contains(&(point - 1)) {
                    return Err(malformed(&format!("point {point} repeated in a cycle")));
                }
                cycle.push(point - 1);
            }
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }

        let mut acc = Permutation::identity(degree);
        for cycle in cycles.iter().rev() {
            let mut c = Permutation::identity(degree);
            for (i, &p) in cycle.iter().enumerate() {
                c.images[p] = cycle[(i + 1) % cycle.len()] as u32;
            }
            acc = acc.then(&c);
        }
        Ok(acc)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Extends to `degree + shift + tail` points, acting on `shift..shift+degree`.
    pub fn embed(&self, shift: usize, total: usize) -> Permutation {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[shift + i] = shift as u32 + j;
        }
        Permutation { images }
    }

    /// Disjoint-cycle notation with 1-based points; `"()"` for the identity.
    pub fn to_cycles(&self) -> String {
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            out.push('(');
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&(p + 1).to_string());
                p = self.image(p);
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self.to_cycles())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition() {
        let p = Permutation::parse_cycles("(1 2)", 3).unwrap();
        assert_eq!(p.images(), &[1, 0, 2]);
    }

    #[test]
    fn empty_text_is_identity() {
        let p = Permutation::parse_cycles("", 4).unwrap();
        assert!(p.is_identity());
        assert_eq!(p.degree(), 4);
        assert!(Permutation::parse_cycles("()", 2).unwrap().is_identity());
    }

    #[test]
    fn non_disjoint_cycles_compose_right_to_left() {
        // (2 3) first: 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
        let p = Permutation::parse_cycles("(1 2)(2 3)", 3).unwrap();
        assert_eq!(p.images(), &[1, 2, 0]);
        assert_eq!(p.to_cycles(), "(1 2 3)");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Permutation::parse_cycles("(1 4)", 3),
            Err(GroupError::PointOutOfRange {
                point: 4,
                degree: 3
            })
        );
        assert!(matches!(
            Permutation::parse_cycles("(1 2", 3),
            Err(GroupError::MalformedCycles { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("1 2", 3),
            Err(GroupError::MalformedCycles { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("(1 x)", 3),
            Err(GroupError::MalformedCycles { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("(1 2 1)", 3),
            Err(GroupError::MalformedCycles { .. })
        ));
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_images(vec![1, 0]).is_ok());
    }

    #[test]
    fn then_and_inverse() {
        let a = Permutation::parse_cycles("(1 2 3)", 3).unwrap();
        let b = Permutation::parse_cycles("(1 2)", 3).unwrap();
        // a first: 1 -> 2 -> 1, 2 -> 3 -> 3, 3 -> 1 -> 2
        assert_eq!(a.then(&b).to_cycles(), "(2 3)");
        assert!(a.then(&a.inverse()).is_identity());
    }

    #[test]
    fn cycle_round_trip() {
        let p = Permutation::parse_cycles("(1 5 2)(3 4)", 6).unwrap();
        assert_eq!(Permutation::parse_cycles(&p.to_cycles(), 6).unwrap(), p);
    }
}
