//! Conjugacy-class counts.
//!
//! The enumerative counter works for any group small enough to list. The
//! symmetric and alternating counters read the partition table instead and
//! never touch group elements.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{GroupError, PermGroup};
use crate::partitions::PartitionTable;
use crate::perm::{CycleType, Parity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("cycle type {0} belongs to an odd permutation")]
    OddCycleType(CycleType),
    #[error("the alternating-group class formula needs n >= 3, got {0}")]
    DegreeTooSmall(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Enumerative,
    CycleTypeSymmetric,
    CycleTypeAlternating,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    #[serde(with = "crate::scalar::decimal")]
    pub k: BigUint,
    pub method: CountMethod,
}

impl ClassCount {
    pub fn k_u64(&self) -> Option<u64> {
        self.k.to_u64()
    }
}

/// Counts orbits of `group` acting on itself by conjugation.
///
/// Orbits are closed under conjugation by the generators only, which reaches
/// the whole class since every element is a word in them.
pub fn count_classes_enumerative(group: &PermGroup, cap: u64) -> Result<ClassCount, ClassError> {
    let elements = group.elements(cap)?.elements;
    let index: HashMap<&[u16], usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.raw(), i))
        .collect();
    let gens = group.generators();
    let mut classified = vec![false; elements.len()];
    let mut classes = 0u64;
    let mut stack = Vec::new();
    for start in 0..elements.len() {
        if classified[start] {
            continue;
        }
        classes += 1;
        classified[start] = true;
        stack.push(start);
        while let Some(i) = stack.pop() {
            for g in gens {
                let conj = elements[i].conjugate_by(g);
                let j = index[conj.raw()];
                if !classified[j] {
                    classified[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    Ok(ClassCount {
        k: BigUint::from(classes),
        method: CountMethod::Enumerative,
    })
}

/// Whether the `S_n` class of an even cycle type splits into two `A_n`
/// classes: all parts odd and pairwise distinct.
pub fn splits_in_alternating(cycle_type: &CycleType) -> Result<bool, ClassError> {
    if cycle_type.parity() == Parity::Odd {
        return Err(ClassError::OddCycleType(cycle_type.clone()));
    }
    let parts = cycle_type.parts();
    Ok(parts.iter().all(|p| p % 2 == 1) && parts.windows(2).all(|w| w[0] != w[1]))
}

/// `k(S_n) = p(n)`.
pub fn count_classes_symmetric(n: usize) -> ClassCount {
    count_classes_symmetric_with(&PartitionTable::build(n), n)
}

pub fn count_classes_symmetric_with(table: &PartitionTable, n: usize) -> ClassCount {
    ClassCount {
        k: table.p(n).clone(),
        method: CountMethod::CycleTypeSymmetric,
    }
}

/// `k(A_n) = 2 alpha(n) + beta(n)` for `n >= 3`.
pub fn count_classes_alternating(n: usize) -> Result<ClassCount, ClassError> {
    count_classes_alternating_with(&PartitionTable::build(n.max(3)), n)
}

pub fn count_classes_alternating_with(
    table: &PartitionTable,
    n: usize,
) -> Result<ClassCount, ClassError> {
    if n < 3 {
        return Err(ClassError::DegreeTooSmall(n));
    }
    Ok(ClassCount {
        k: table.alpha(n) * 2u32 + table.beta(n),
        method: CountMethod::CycleTypeAlternating,
    })
}

/// `k(A_n)` counted directly over cycle types: each even type contributes one
/// class, or two when it splits.
pub fn count_classes_alternating_by_cycle_types(n: usize) -> Result<u64, ClassError> {
    if n < 3 {
        return Err(ClassError::DegreeTooSmall(n));
    }
    let mut total = 0u64;
    for_each_partition(n, &mut |parts| {
        let ct = CycleType::from_parts(parts.to_vec());
        if ct.parity() == Parity::Even {
            total += if splits_in_alternating(&ct).unwrap() { 2 } else { 1 };
        }
    });
    Ok(total)
}

fn for_each_partition(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if rem == 0 {
            f(cur);
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            rec(rem - part, part, cur, f);
            cur.pop();
        }
    }
    rec(n, n, &mut Vec::new(), f);
}

/// `2 k(A_n) >= k(S_n)` in exact arithmetic.
pub fn half_symmetric_bound_holds(table: &PartitionTable, n: usize) -> bool {
    let k_alt = table.alpha(n) * 2u32 + table.beta(n);
    k_alt * 2u32 >= *table.p(n) && !table.p(n).is_zero()
}
