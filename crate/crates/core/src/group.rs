//! Permutation groups given by generators, backed by a stabilizer chain.
//!
//! The chain is built with a deterministic Schreier-Sims procedure. Each new
//! base point is the smallest point moved by the strong generator that forced
//! the new level, so equal canonical generator lists always yield identical
//! chains.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{split_degree, PermError, Permutation};

/// Default bound on the number of elements materialized for enumeration.
pub const DEFAULT_ELEMENT_CAP: u64 = 200_000;

/// Default bound on the degree of constructed groups.
pub const DEFAULT_MAX_DEGREE: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("group order {order} exceeds the element cap {cap}")]
    OrderExceedsCap { order: BigUint, cap: u64 },
    #[error("combined degree {degree} exceeds the maximum degree {max}")]
    DegreeExceedsMax { degree: usize, max: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
}

/// One level of the stabilizer chain.
#[derive(Clone, Debug)]
struct Level {
    /// 0-based base point.
    base: usize,
    /// Strong generators fixing all earlier base points.
    gens: Vec<Permutation>,
    /// Orbit of `base` in discovery order.
    orbit: Vec<usize>,
    /// `transversal[x]` maps `base` to `x` when `x` is in the orbit.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base];
        let mut queue = VecDeque::from([self.base]);
        while let Some(x) = queue.pop_front() {
            for s in &self.gens {
                let y = s.image0(x);
                if self.transversal[y].is_none() {
                    let u = s.compose_unchecked(self.transversal[x].as_ref().unwrap());
                    self.transversal[y] = Some(u);
                    self.orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
}

/// An immutable permutation group with an exact order and membership test.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Result<Self, GroupError> {
        Self::from_generators(degree, Vec::new())
    }

    /// The group generated by `gens`, all of which must have degree `degree`.
    ///
    /// Generators are canonicalized first: identities dropped, duplicates
    /// removed, remaining permutations sorted by image table.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(GroupError::ZeroDegree);
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                }
                .into());
            }
        }
        let generators = canonicalize(gens);
        let levels = schreier_sims(degree, &generators);
        let order = levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
        Ok(PermGroup {
            degree,
            generators,
            levels,
            order,
        })
    }

    /// Like [`PermGroup::from_generators`] but takes the degree from the
    /// first generator. Empty input is rejected since the degree is unknown.
    pub fn generated_by(gens: Vec<Permutation>) -> Result<Self, GroupError> {
        let degree = gens.first().map(Permutation::degree).ok_or(GroupError::ZeroDegree)?;
        Self::from_generators(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order as `u64` when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    /// 1-based base points of the stabilizer chain.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base + 1).collect()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, GroupError> {
        if p.degree() != self.degree {
            return Err(PermError::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            }
            .into());
        }
        Ok(sift(&self.levels, 0, p.clone()).1.is_identity())
    }

    /// Every generator commutes with every other.
    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().enumerate().all(|(i, a)| {
            gens[i + 1..]
                .iter()
                .all(|b| a.compose_unchecked(b) == b.compose_unchecked(a))
        })
    }

    /// All elements, provided the order does not exceed `cap`.
    pub fn elements(&self, cap: u64) -> Result<ElementSet, GroupError> {
        match self.order.to_u64() {
            Some(n) if n <= cap => {}
            _ => {
                return Err(GroupError::OrderExceedsCap {
                    order: self.order.clone(),
                    cap,
                })
            }
        }
        // Every element factors uniquely as u_1 * u_2 * ... * u_k with u_i
        // drawn from the level-i transversal.
        let mut elements = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let reps: Vec<&Permutation> = level
                .orbit
                .iter()
                .map(|&x| level.transversal[x].as_ref().unwrap())
                .collect();
            let mut next = Vec::with_capacity(elements.len() * reps.len());
            for u in &reps {
                for e in &elements {
                    next.push(u.compose_unchecked(e));
                }
            }
            elements = next;
        }
        Ok(ElementSet {
            elements,
            complete: true,
        })
    }

    /// Direct product acting on disjoint blocks: `self` on `1..=deg(self)`,
    /// `other` on the following `deg(other)` points.
    pub fn direct_product(&self, other: &PermGroup, max_degree: usize) -> Result<PermGroup, GroupError> {
        let degree = self.degree + other.degree;
        if degree > max_degree {
            return Err(GroupError::DegreeExceedsMax {
                degree,
                max: max_degree,
            });
        }
        let mut gens = Vec::with_capacity(self.generators.len() + other.generators.len());
        for g in &self.generators {
            gens.push(g.extend_to(degree)?);
        }
        for h in &other.generators {
            gens.push(h.shift(self.degree)?);
        }
        PermGroup::from_generators(degree, gens)
    }

    /// The same generators acting on `degree >= self.degree()` points.
    pub fn extend_to(&self, degree: usize) -> Result<PermGroup, GroupError> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.extend_to(degree))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::from_generators(degree, gens)
    }

    pub fn spec(&self) -> GroupSpec {
        GroupSpec {
            degree: self.degree,
            generators: self.generators.iter().map(Permutation::cycles_string).collect(),
        }
    }

    /// Parses `deg=n g1; g2; ...` where each `gi` is a cycle expression.
    pub fn parse(text: &str) -> Result<PermGroup, GroupError> {
        let (degree, rest) = split_degree(text)?;
        let gens = rest
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Permutation::parse_cycles_with_degree(degree, s))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::from_generators(degree, gens)
    }
}

impl fmt::Display for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deg={}", self.degree)?;
        if self.generators.is_empty() {
            return f.write_str(" ()");
        }
        for (i, g) in self.generators.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { "; " })?;
            f.write_str(&g.cycles_string())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(order={}, {})", self.order, self)
    }
}

impl FromStr for PermGroup {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PermGroup::parse(s)
    }
}

/// Serialized form of a group: degree plus generators in cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<PermGroup, GroupError> {
        let gens = self
            .generators
            .iter()
            .map(|s| Permutation::parse_cycles_with_degree(self.degree, s))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::from_generators(self.degree, gens)
    }
}

/// A list of group elements; `complete` marks a full enumeration.
#[derive(Debug, Clone)]
pub struct ElementSet {
    pub elements: Vec<Permutation>,
    pub complete: bool,
}

impl ElementSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn canonicalize(gens: Vec<Permutation>) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
    gens.sort();
    gens.dedup();
    gens
}

/// Sifts `g` through the chain from level `start`. Returns the level at which
/// sifting stopped (`levels.len()` when it ran through) and the residue.
fn sift(levels: &[Level], start: usize, mut g: Permutation) -> (usize, Permutation) {
    for (i, level) in levels.iter().enumerate().skip(start) {
        let x = g.image0(level.base);
        match &level.transversal[x] {
            Some(u) => g = u.inverse().compose_unchecked(&g),
            None => return (i, g),
        }
    }
    (levels.len(), g)
}

fn schreier_sims(degree: usize, generators: &[Permutation]) -> Vec<Level> {
    let mut levels: Vec<Level> = Vec::new();
    for g in generators {
        if levels.iter().all(|l| g.image0(l.base) == l.base) {
            let base = g.first_moved_point().expect("identity filtered out") - 1;
            levels.push(Level::new(base, degree));
        }
    }
    // Level i holds the generators fixing base points 0..i.
    for g in generators {
        for i in 0..levels.len() {
            if levels[..i].iter().all(|l| g.image0(l.base) == l.base) {
                levels[i].gens.push(g.clone());
            }
        }
    }
    for level in &mut levels {
        level.rebuild_orbit(degree);
    }

    let mut i = levels.len();
    'outer: while i > 0 {
        let lvl = i - 1;
        let orbit = levels[lvl].orbit.clone();
        let gens = levels[lvl].gens.clone();
        for &x in &orbit {
            for s in &gens {
                let ux = levels[lvl].transversal[x].as_ref().unwrap();
                let y = s.image0(x);
                let uy = levels[lvl].transversal[y].as_ref().unwrap();
                let sx = s.compose_unchecked(ux);
                if sx == *uy {
                    continue;
                }
                let schreier = uy.inverse().compose_unchecked(&sx);
                let (stop, residue) = sift(&levels, lvl + 1, schreier);
                if residue.is_identity() {
                    continue;
                }
                if stop == levels.len() {
                    let base = residue.first_moved_point().expect("non-identity residue") - 1;
                    levels.push(Level::new(base, degree));
                }
                for level in levels.iter_mut().take(stop + 1).skip(lvl + 1) {
                    level.gens.push(residue.clone());
                    level.rebuild_orbit(degree);
                }
                i = stop + 1;
                continue 'outer;
            }
        }
        i -= 1;
    }
    levels
}

/// `S_n` generated by `(1,2)` and `(1,2,...,n)`.
pub fn symmetric_group(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[&[1, 2]]).unwrap());
        let cycle: Vec<usize> = (1..=n).collect();
        gens.push(Permutation::from_cycles(n, &[&cycle]).unwrap());
    }
    PermGroup::from_generators(n.max(1), gens).expect("valid generators")
}

/// `A_n` generated by the 3-cycles `(1,2,k)` for `k = 3..=n`.
pub fn alternating_group(n: usize) -> PermGroup {
    let gens = (3..=n)
        .map(|k| Permutation::from_cycles(n, &[&[1, 2, k]]).unwrap())
        .collect();
    PermGroup::from_generators(n.max(1), gens).expect("valid generators")
}

/// `C_n` generated by an `n`-cycle on `n` points.
pub fn cyclic_group(n: usize) -> PermGroup {
    let cycle: Vec<usize> = (1..=n).collect();
    let gens = if n >= 2 {
        vec![Permutation::from_cycles(n, &[&cycle]).unwrap()]
    } else {
        Vec::new()
    };
    PermGroup::from_generators(n.max(1), gens).expect("valid generators")
}
