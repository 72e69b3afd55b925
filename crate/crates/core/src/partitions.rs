//! Integer-partition counts and the analytic bounds built on them.
//!
//! `p(n)` comes from Euler's pentagonal-number recurrence, `alpha(n)` (partitions
//! into distinct odd parts) from a 0/1 subset-sum table, and `beta(n)` as the
//! number of partitions with an even number of even parts minus `alpha(n)`.
//! All counts are exact big integers.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::scalar::Real;

/// Exact `p`, `alpha` and `beta` for `0..=max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTable {
    max_n: usize,
    p_values: Vec<BigUint>,
    alpha_values: Vec<BigUint>,
    beta_values: Vec<BigUint>,
}

impl PartitionTable {
    pub fn build(max_n: usize) -> Self {
        let p_values = pentagonal_partition_counts(max_n);
        let alpha_values = distinct_odd_partition_counts(max_n);
        let even_values = even_signature_partition_counts(max_n);
        let beta_values = even_values
            .into_iter()
            .zip(&alpha_values)
            .map(|(e, a)| e - a)
            .collect();
        PartitionTable {
            max_n,
            p_values,
            alpha_values,
            beta_values,
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Number of partitions of `n`, which is also `k(S_n)`.
    pub fn p(&self, n: usize) -> &BigUint {
        &self.p_values[n]
    }

    /// Partitions of `n` into distinct odd parts: the even classes of `S_n`
    /// that split in `A_n`.
    pub fn alpha(&self, n: usize) -> &BigUint {
        &self.alpha_values[n]
    }

    /// Even classes of `S_n` that stay whole in `A_n`.
    pub fn beta(&self, n: usize) -> &BigUint {
        &self.beta_values[n]
    }

    /// Number of cycle types of even permutations of degree `n`.
    pub fn even_cycle_types(&self, n: usize) -> BigUint {
        &self.alpha_values[n] + &self.beta_values[n]
    }

    /// CSV rows `n,p,alpha,beta,maroti_bound,t` with a header line.
    /// `t(n)` is left empty for `n < 3`, the bound for `n = 0`.
    pub fn to_csv<F: Real>(&self) -> String {
        let mut out = String::from("n,p,alpha,beta,maroti_bound,t\n");
        for n in 0..=self.max_n {
            let bound = if n >= 1 {
                maroti_bound::<F>(n).to_string()
            } else {
                String::new()
            };
            let t = if n >= 3 {
                t_of_n::<F>(n).to_string()
            } else {
                String::new()
            };
            let _ = writeln!(
                out,
                "{n},{},{},{},{bound},{t}",
                self.p(n),
                self.alpha(n),
                self.beta(n)
            );
        }
        out
    }
}

fn pentagonal_partition_counts(max_n: usize) -> Vec<BigUint> {
    let mut p: Vec<BigUint> = Vec::with_capacity(max_n + 1);
    p.push(BigUint::one());
    for n in 1..=max_n {
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let acc = if k % 2 == 1 { &mut plus } else { &mut minus };
            *acc += &p[n - g1];
            if g2 <= n {
                *acc += &p[n - g2];
            }
        }
        p.push(plus - minus);
    }
    p
}

fn distinct_odd_partition_counts(max_n: usize) -> Vec<BigUint> {
    let mut dp = vec![BigUint::zero(); max_n + 1];
    dp[0] = BigUint::one();
    for part in (1..=max_n).step_by(2) {
        for s in (part..=max_n).rev() {
            let add = dp[s - part].clone();
            dp[s] += add;
        }
    }
    dp
}

/// Partitions of each `n` with an even number of even parts.
fn even_signature_partition_counts(max_n: usize) -> Vec<BigUint> {
    let mut even = vec![BigUint::zero(); max_n + 1];
    let mut odd = vec![BigUint::zero(); max_n + 1];
    even[0] = BigUint::one();
    for part in 1..=max_n {
        for s in part..=max_n {
            if part % 2 == 1 {
                let (e, o) = (even[s - part].clone(), odd[s - part].clone());
                even[s] += e;
                odd[s] += o;
            } else {
                let (e, o) = (odd[s - part].clone(), even[s - part].clone());
                even[s] += e;
                odd[s] += o;
            }
        }
    }
    even
}

/// `e^{2 sqrt(n)} / 14`, a strict lower bound for `p(n)` when `n >= 1`.
pub fn maroti_bound<F: Real>(n: usize) -> F {
    let two = F::from_f64(2.0).unwrap();
    (two * F::from_usize_exact(n).sqrt()).exp() / F::from_f64(14.0).unwrap()
}

/// Whether `maroti_bound(n) < p(n)`.
///
/// Both sides carry a few ulps of relative slack: the bound for rounding in
/// `exp`, `p(n)` for the integer-to-float conversion.
pub fn maroti_holds<F: Real>(table: &PartitionTable, n: usize) -> bool {
    let eps = F::epsilon();
    let four = F::from_f64(4.0).unwrap();
    let two = F::from_f64(2.0).unwrap();
    let p = F::from_biguint(table.p(n));
    maroti_bound::<F>(n) * (F::one() + four * eps) < p * (F::one() - two * eps)
}

/// `log2(n!/2)` as `sum_{r=3}^{n} log2 r`, never forming `n!`.
pub fn log2_alt_order<F: Real>(n: usize) -> F {
    assert!(n >= 2, "log2_alt_order needs n >= 2");
    (3..=n).fold(F::zero(), |acc, r| acc + F::from_usize_exact(r).log2())
}

/// `log2(n!)` as a sum of logs.
pub fn log2_factorial<F: Real>(n: usize) -> F {
    (2..=n).fold(F::zero(), |acc, r| acc + F::from_usize_exact(r).log2())
}

/// `(n - 2) log2 n`, the upper estimate for `log2 |A_n|`.
pub fn alt_order_log_ceiling<F: Real>(n: usize) -> F {
    F::from_usize_exact(n - 2) * F::from_usize_exact(n).log2()
}

/// `t(n) = e^{2 sqrt(n)} / (28 (n - 2) log2 n)` for `n >= 3`.
pub fn t_of_n<F: Real>(n: usize) -> F {
    assert!(n >= 3, "t(n) needs n >= 3");
    let two = F::from_f64(2.0).unwrap();
    let numerator = (two * F::from_usize_exact(n).sqrt()).exp();
    numerator / (F::from_f64(28.0).unwrap() * alt_order_log_ceiling::<F>(n))
}
