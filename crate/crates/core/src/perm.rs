//! Permutations of the points `1..=n`.
//!
//! Externally every point is 1-based, matching cycle notation. Internally the
//! image table is 0-based. Composition applies the right operand first:
//! `p.compose(&q)` maps `x` to `p(q(x))`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest degree representable by the compact image table.
pub const MAX_DEGREE: usize = u16::MAX as usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("degree {0} exceeds the supported maximum {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("image table is not a bijection of 1..={0}")]
    NotABijection(usize),
    #[error("malformed cycle notation: {0}")]
    Syntax(String),
    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),
    #[error("point {point} exceeds declared degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("cannot shrink a permutation of degree {from} to degree {to}")]
    CannotShrink { from: usize, to: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_even(self) -> bool {
        self == Parity::Even
    }

    /// Parity of a product given the parities of the factors.
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A bijection of `{1..n}` stored as its 0-based image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(
            (1..=MAX_DEGREE).contains(&degree),
            "degree {degree} out of range"
        );
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[i]` is the image of
    /// point `i + 1`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        check_degree(degree)?;
        let mut seen = vec![false; degree];
        let mut table = Vec::with_capacity(degree);
        for &img in images {
            if img == 0 || img > degree || seen[img - 1] {
                return Err(PermError::NotABijection(degree));
            }
            seen[img - 1] = true;
            table.push((img - 1) as u16);
        }
        Ok(Permutation {
            images: table.into_boxed_slice(),
        })
    }

    /// Builds a permutation from 0-based images without validation beyond a
    /// debug-mode bijection check.
    pub(crate) fn from_raw(images: Box<[u16]>) -> Self {
        let p = Permutation { images };
        debug_assert!(p.is_bijection());
        p
    }

    /// Builds a permutation of the given degree from disjoint cycles over
    /// 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        check_degree(degree)?;
        let mut table: Vec<u16> = (0..degree as u16).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (i, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(PermError::PointOutOfRange { point: pt, degree });
                }
                if seen[pt - 1] {
                    return Err(PermError::RepeatedPoint(pt));
                }
                seen[pt - 1] = true;
                let next = cycle[(i + 1) % cycle.len()];
                if next == 0 || next > degree {
                    return Err(PermError::PointOutOfRange { point: next, degree });
                }
                table[pt - 1] = (next - 1) as u16;
            }
        }
        Ok(Permutation {
            images: table.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    /// 0-based image lookup.
    #[inline]
    pub(crate) fn image0(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.images
    }

    /// 1-based image table.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `x -> self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        let images = other.images.iter().map(|&x| self.images[x as usize]).collect();
        Permutation::from_raw(images)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()].into_boxed_slice();
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Permutation::from_raw(images)
    }

    /// `g * self * g^-1`, computed in one pass.
    #[inline]
    pub(crate) fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut images = vec![0u16; self.degree()].into_boxed_slice();
        for (i, &x) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation::from_raw(images)
    }

    /// `self^exp` for a non-negative exponent.
    pub fn pow(&self, exp: u32) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        result
    }

    /// Embeds into a larger degree by fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Result<Permutation, PermError> {
        if degree < self.degree() {
            return Err(PermError::CannotShrink {
                from: self.degree(),
                to: degree,
            });
        }
        check_degree(degree)?;
        let images = self
            .images
            .iter()
            .copied()
            .chain(self.degree() as u16..degree as u16)
            .collect();
        Ok(Permutation::from_raw(images))
    }

    /// Moves every point up by `offset`, producing a permutation of degree
    /// `offset + self.degree()` that fixes `1..=offset`.
    pub fn shift(&self, offset: usize) -> Result<Permutation, PermError> {
        let degree = offset + self.degree();
        check_degree(degree)?;
        let images = (0..offset as u16)
            .chain(self.images.iter().map(|&x| x + offset as u16))
            .collect();
        Ok(Permutation::from_raw(images))
    }

    /// Smallest moved point (1-based), if any.
    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i != x as usize)
            .map(|(i, _)| i + 1)
    }

    /// Disjoint cycles over 1-based points, each starting at its smallest
    /// point, ordered by that point. Fixed points are omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut seen = vec![false; self.degree()];
        let mut parts = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            parts.push(len);
        }
        CycleType::from_parts(parts)
    }

    pub fn parity(&self) -> Parity {
        self.cycle_type().parity()
    }

    /// Uniform random element of `S_n` via an unbiased Fisher-Yates shuffle.
    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Permutation {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        images.shuffle(rng);
        Permutation::from_raw(images.into_boxed_slice())
    }

    fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        self.images.iter().all(|&x| {
            let x = x as usize;
            x < seen.len() && !std::mem::replace(&mut seen[x], true)
        })
    }

    /// Cycle notation without the degree annotation, e.g. `(1,2,3)(4,5)`.
    pub fn cycles_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (i, pt) in c.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&pt.to_string());
            }
            s.push(')');
        }
        s
    }

    /// Parses a cycle expression (no degree annotation) against a known
    /// degree.
    pub fn parse_cycles_with_degree(degree: usize, text: &str) -> Result<Self, PermError> {
        let cycles = parse_cycle_list(text)?;
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Permutation::from_cycles(degree, &refs)
    }
}

fn check_degree(degree: usize) -> Result<(), PermError> {
    if degree == 0 {
        Err(PermError::ZeroDegree)
    } else if degree > MAX_DEGREE {
        Err(PermError::DegreeTooLarge(degree))
    } else {
        Ok(())
    }
}

/// Parses `deg=n` followed by a cycle expression.
pub fn parse_cycles(text: &str) -> Result<Permutation, PermError> {
    let (degree, rest) = split_degree(text)?;
    Permutation::parse_cycles_with_degree(degree, rest)
}

/// `deg=n (a,b,...)(...)`; the identity prints as `deg=n ()`.
pub fn format_cycles(p: &Permutation) -> String {
    format!("deg={} {}", p.degree(), p.cycles_string())
}

/// Splits a leading `deg=n` annotation from the remaining text.
pub(crate) fn split_degree(text: &str) -> Result<(usize, &str), PermError> {
    let text = text.trim();
    let rest = text
        .strip_prefix("deg=")
        .ok_or_else(|| PermError::Syntax("expected leading 'deg=<n>'".into()))?;
    let end = rest
        .find(|c: char| !c.is_ascii_digit())
        .unwrap_or(rest.len());
    if end == 0 {
        return Err(PermError::Syntax("missing degree after 'deg='".into()));
    }
    let degree: usize = rest[..end]
        .parse()
        .map_err(|_| PermError::Syntax(format!("bad degree '{}'", &rest[..end])))?;
    check_degree(degree)?;
    Ok((degree, &rest[end..]))
}

/// Parses `(1,2,3)(4,5)` into point lists. `()` yields no cycles.
fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>, PermError> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(PermError::Syntax("empty cycle expression".into()));
    }
    while !rest.is_empty() {
        let inner_start = rest
            .strip_prefix('(')
            .ok_or_else(|| PermError::Syntax(format!("expected '(' at '{rest}'")))?;
        let close = inner_start
            .find(')')
            .ok_or_else(|| PermError::Syntax("unclosed '('".into()))?;
        let inner = inner_start[..close].trim();
        if !inner.is_empty() {
            let points = inner
                .split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    tok.parse::<usize>()
                        .map_err(|_| PermError::Syntax(format!("bad point '{tok}'")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            cycles.push(points);
        }
        rest = inner_start[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_cycles(self))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", format_cycles(self))
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_cycles(s)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_cycles(self))
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_cycles(&s).map_err(serde::de::Error::custom)
    }
}

/// A partition of the degree recording cycle lengths, fixed points included,
/// sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    /// Canonicalizes (sorts descending). Zero parts are dropped.
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn even_part_count(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 0).count()
    }

    /// Even iff `degree - cycle count` is even, i.e. the number of
    /// even-length cycles is even.
    pub fn parity(&self) -> Parity {
        if (self.degree() - self.parts.len()).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}
