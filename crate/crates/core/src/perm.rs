//! Permutations of `{0, .., n-1}` acting on the right.
//!
//! A product `a * b` first applies `a`, then `b`, so that `i^(ab) = (i^a)^b`.
//! Conjugation is `a^b = b⁻¹ a b`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

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

    /// Builds a permutation from 0-based images, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::Parse(format!(
                    "image list is not a bijection on {n} points"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of the given degree from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let p = p as usize;
                if p >= degree {
                    return Err(Error::DegreeMismatch {
                        expected: degree,
                        found: p + 1,
                    });
                }
                if touched[p] {
                    return Err(Error::Parse(format!(
                        "point {} appears twice in cycle notation",
                        p + 1
                    )));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)`; entries may be
    /// separated by commas or whitespace. `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let cycles = parse_cycle_list(text)?;
        if let Some(max) = cycles.iter().flatten().max() {
            if *max as usize >= degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: *max as usize + 1,
                });
            }
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    /// `self^by = by⁻¹ · self · by`.
    pub fn conjugate_by(&self, by: &Permutation) -> Self {
        // i^(b⁻¹ a b): the point by(i) goes to by(a(i)).
        let mut images = vec![0u32; self.degree()];
        for (i, &ai) in self.images.iter().enumerate() {
            images[by.images[i] as usize] = by.images[ai as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
    }

    /// Disjoint cycles (length ≥ 2), each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Lengths of all cycles including fixed points.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.images[p] as usize;
            }
            out.push(len);
        }
        out
    }

    /// Cycle type as `(length, multiplicity)`, longest cycles first.
    pub fn cycle_type(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for l in self.cycle_lengths() {
            *counts.entry(l).or_insert(0usize) += 1;
        }
        counts.into_iter().rev().collect()
    }

    pub fn cycle_type_string(&self) -> String {
        cycle_type_string(&self.cycle_type())
    }
}

pub fn cycle_type_string(ct: &[(usize, usize)]) -> String {
    ct.iter()
        .map(|(l, m)| format!("{l}^{m}"))
        .collect::<Vec<_>>()
        .join(" ")
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Parses 1-based cycle notation into 0-based cycles.
pub fn parse_cycle_list(text: &str) -> Result<Vec<Vec<u32>>> {
    let text = text.trim();
    let mut cycles = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in cycle notation: {text:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unterminated cycle in {text:?}")))?;
        let body = &open[..close];
        let entries: Vec<&str> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let mut cycle = Vec::with_capacity(entries.len());
        for e in entries {
            let v: u32 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad point {e:?} in cycle notation")))?;
            if v == 0 {
                return Err(Error::Parse("points are 1-based; found 0".into()));
            }
            cycle.push(v - 1);
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    #[test]
    fn product_applies_left_factor_first() {
        let a = p(3, "(1,2)");
        let b = p(3, "(2,3)");
        // 1 -> 2 -> 3, 2 -> 1 -> 1, 3 -> 3 -> 2
        assert_eq!(&a * &b, p(3, "(1,3,2)"));
    }

    #[test]
    fn conjugation_matches_definition() {
        let a = p(3, "(1,2)");
        let t = p(3, "(1,2,3)");
        let direct = &(&t.inverse() * &a) * &t;
        assert_eq!(a.conjugate_by(&t), direct);
        assert_eq!(a.conjugate_by(&t), p(3, "(2,3)"));
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let x = p(12, "(1,2,3)(4,5,6)(7,8,9)(10,11,12)");
        assert_eq!(x.to_string(), "(1,2,3)(4,5,6)(7,8,9)(10,11,12)");
        assert_eq!(x.order(), 3);
        assert_eq!(p(5, "(1 2)(3 4 5)").order(), 6);
        assert_eq!(p(4, "()"), Permutation::identity(4));
    }

    #[test]
    fn parse_rejects_out_of_range_points() {
        assert!(matches!(
            Permutation::parse_cycles(3, "(1,4)"),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(Permutation::parse_cycles(3, "(1,2,1)").is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn cycle_type_counts_fixed_points() {
        let x = p(6, "(1,2)(3,4)");
        assert_eq!(x.cycle_type(), vec![(2, 2), (1, 2)]);
        assert_eq!(x.cycle_type_string(), "2^2 1^2");
    }

    #[test]
    fn pow_and_inverse() {
        let x = p(7, "(1,2,3,4,5,6,7)");
        assert_eq!(x.pow(7), Permutation::identity(7));
        assert_eq!(x.pow(6), x.inverse());
    }
}
