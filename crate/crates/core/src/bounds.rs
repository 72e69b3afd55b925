//! Ratio reports and the mechanical check of the alternating-group bound.
//!
//! The reference threshold `k(A_7) / log2|A_7|` is always recomputed from the
//! class formula, never taken from a constant.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classes::{
    count_classes_alternating_with, count_classes_enumerative, count_classes_symmetric_with,
    half_symmetric_bound_holds, ClassError,
};
use crate::group::PermGroup;
use crate::partitions::{
    alt_order_log_ceiling, log2_alt_order, log2_factorial, maroti_holds, t_of_n, PartitionTable,
};
use crate::scalar::{log2_biguint, Real};

/// Degree of the alternating group attaining the minimum ratio.
pub const REFERENCE_DEGREE: usize = 7;

/// First degree handled by the analytic chain rather than the exact table.
pub const TAIL_START: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("the ratio is undefined for the trivial group")]
    TrivialGroup,
    #[error("group is not Abelian")]
    NotAbelian,
    #[error("group is Abelian, so its ratio is at least 1")]
    Abelian,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification range must reach n >= {TAIL_START}, got {0}")]
    RangeTooShort(usize),
}

/// `k(G) / log2|G|` and its reciprocal for one group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport<F> {
    pub group_label: String,
    #[serde(with = "crate::scalar::decimal")]
    pub order: BigUint,
    #[serde(with = "crate::scalar::decimal")]
    pub k: BigUint,
    pub log2_order: F,
    pub ratio: F,
    pub score: F,
}

impl<F: Real> RatioReport<F> {
    fn new(group_label: String, order: BigUint, k: BigUint, log2_order: F) -> Self {
        let k_real = F::from_biguint(&k);
        RatioReport {
            group_label,
            order,
            k,
            log2_order,
            ratio: k_real / log2_order,
            score: log2_order / k_real,
        }
    }
}

/// `log2` of an exact order, shared by every enumerative ratio so that equal
/// orders always give bit-identical logarithms.
pub fn log2_order<F: Real>(order: &BigUint) -> F {
    match order.to_u64() {
        Some(v) if v < (1u64 << 53) => F::from_u64(v).unwrap().log2(),
        _ => F::from_f64(log2_biguint(order)).unwrap(),
    }
}

/// Ratio report with `k` counted by enumeration.
pub fn ratio_report<F: Real>(
    group: &PermGroup,
    label: &str,
    cap: u64,
) -> Result<RatioReport<F>, BoundError> {
    if group.is_trivial() {
        return Err(BoundError::TrivialGroup);
    }
    let k = count_classes_enumerative(group, cap)?.k;
    Ok(RatioReport::new(
        label.to_string(),
        group.order().clone(),
        k,
        log2_order(group.order()),
    ))
}

/// Ratio report for `A_n` on its natural points via the class formula.
pub fn alternating_ratio_report<F: Real>(
    table: &PartitionTable,
    n: usize,
) -> Result<RatioReport<F>, BoundError> {
    let k = count_classes_alternating_with(table, n)?.k;
    let order: BigUint = (3..=n).map(BigUint::from).product();
    Ok(RatioReport::new(format!("A_{n}"), order, k, log2_alt_order(n)))
}

/// Ratio report for `S_n` on its natural points via `k(S_n) = p(n)`.
pub fn symmetric_ratio_report<F: Real>(
    table: &PartitionTable,
    n: usize,
) -> Result<RatioReport<F>, BoundError> {
    if n < 2 {
        return Err(BoundError::TrivialGroup);
    }
    let k = count_classes_symmetric_with(table, n).k;
    let order: BigUint = (2..=n).map(BigUint::from).product();
    Ok(RatioReport::new(format!("S_{n}"), order, k, log2_factorial(n)))
}

/// `k(A_7) / log2|A_7|` with `k` from the class formula and the logarithm
/// taken the same way as for enumerated groups.
pub fn reference_ratio<F: Real>() -> F {
    let table = PartitionTable::build(REFERENCE_DEGREE);
    let k = count_classes_alternating_with(&table, REFERENCE_DEGREE)
        .expect("degree >= 3")
        .k;
    let order: BigUint = (3..=REFERENCE_DEGREE).map(BigUint::from).product();
    F::from_biguint(&k) / log2_order::<F>(&order)
}

/// `k(A_n) / log2|A_n|` for `n = 3..=11` via the class formula.
pub fn reproduce_table1<F: Real>() -> Vec<(usize, F)> {
    let table = PartitionTable::build(TAIL_START - 1);
    (3..TAIL_START)
        .map(|n| {
            let report = alternating_ratio_report::<F>(&table, n).expect("n >= 3");
            (n, report.ratio)
        })
        .collect()
}

/// `floor(x * 1000)`, i.e. `x` truncated to three decimals and scaled.
pub fn truncate_millis<F: Real>(x: F) -> i64 {
    (x * F::from_f64(1000.0).unwrap()).floor().to_i64().unwrap_or(i64::MIN)
}

/// Outcome of checking the bound for every `3 <= n <= n_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict<F> {
    /// Inclusive range of degrees compared directly against the reference.
    pub n_checked_exactly: (usize, usize),
    pub tail_start: usize,
    pub n_max: usize,
    pub table: Vec<(usize, F)>,
    pub minimum_at: usize,
    pub minimum_ratio: F,
    pub equality_cases: Vec<usize>,
    /// Every small-range ratio is at least the reference ratio.
    pub small_range_ok: bool,
    /// Degrees in the tail whose exact ratio is not above 1.
    pub exact_tail_failures: Vec<usize>,
    /// Degrees in the tail where some link of the analytic chain failed.
    pub chain_failures: Vec<usize>,
    pub holds: bool,
}

/// Checks the bound for all `3 <= n <= n_max`:
///
/// * for `n < 12`, the exact ratios against `ratio(A_7)`;
/// * for `n >= 12`, that the exact ratio exceeds 1;
/// * for `n >= 12`, each link of
///   `ratio >= p(n) / (2 (n-2) log2 n) > t(n) > 1`, using exact `p(n)`.
pub fn verify_theorem<F: Real>(n_max: usize) -> Result<TheoremVerdict<F>, BoundError> {
    if n_max < TAIL_START {
        return Err(BoundError::RangeTooShort(n_max));
    }
    let table = PartitionTable::build(n_max);
    let ratios: Vec<(usize, F)> = (3..=n_max)
        .map(|n| {
            let r = alternating_ratio_report::<F>(&table, n).expect("n >= 3");
            (n, r.ratio)
        })
        .collect();
    let reference = ratios
        .iter()
        .find(|(n, _)| *n == REFERENCE_DEGREE)
        .map(|&(_, r)| r)
        .expect("reference degree in range");

    let small: Vec<(usize, F)> = ratios.iter().copied().filter(|(n, _)| *n < TAIL_START).collect();
    let small_range_ok = small.iter().all(|&(_, r)| r >= reference);

    let (minimum_at, minimum_ratio) = ratios
        .iter()
        .copied()
        .fold((0, F::infinity()), |best, (n, r)| if r < best.1 { (n, r) } else { best });
    let equality_cases: Vec<usize> = ratios
        .iter()
        .filter(|&&(_, r)| r == reference)
        .map(|&(n, _)| n)
        .collect();

    let one = F::one();
    let two = F::from_f64(2.0).unwrap();
    let mut exact_tail_failures = Vec::new();
    let mut chain_failures = Vec::new();
    for &(n, ratio) in ratios.iter().filter(|(n, _)| *n >= TAIL_START) {
        if !(ratio > one && one > reference) {
            exact_tail_failures.push(n);
        }
        let ceiling = alt_order_log_ceiling::<F>(n);
        let via_half = F::from_biguint(table.p(n)) / (two * ceiling);
        let t = t_of_n::<F>(n);
        let chain = half_symmetric_bound_holds(&table, n)
            && log2_alt_order::<F>(n) <= ceiling
            && ratio >= via_half
            && maroti_holds::<F>(&table, n)
            && via_half > t
            && t > one;
        if !chain {
            chain_failures.push(n);
        }
    }

    let holds = small_range_ok
        && exact_tail_failures.is_empty()
        && chain_failures.is_empty()
        && minimum_at == REFERENCE_DEGREE
        && equality_cases == [REFERENCE_DEGREE];
    Ok(TheoremVerdict {
        n_checked_exactly: (3, TAIL_START - 1),
        tail_start: TAIL_START,
        n_max,
        table: small,
        minimum_at,
        minimum_ratio,
        equality_cases,
        small_range_ok,
        exact_tail_failures,
        chain_failures,
        holds,
    })
}

/// For a nontrivial Abelian group: `k(G) = |G|` and the ratio is at least 1.
pub fn abelian_ratio_check<F: Real>(group: &PermGroup, cap: u64) -> Result<bool, BoundError> {
    if !group.is_abelian() {
        return Err(BoundError::NotAbelian);
    }
    let report = ratio_report::<F>(group, "abelian", cap)?;
    Ok(report.k == report.order && report.ratio >= F::one())
}

/// Whether a non-Abelian group has a strictly smaller ratio than `A_7`.
pub fn problem41_check<F: Real>(group: &PermGroup, cap: u64) -> Result<bool, BoundError> {
    if group.is_abelian() {
        return Err(BoundError::Abelian);
    }
    let report = ratio_report::<F>(group, "candidate", cap)?;
    Ok(report.ratio < reference_ratio::<F>())
}

/// For `G` inside `A_n` with a ratio below `ratio(A_7)`, checks `k(G) < k(A_n)`.
pub fn corollary42_check<F: Real>(group: &PermGroup, n: usize, cap: u64) -> Result<bool, BoundError> {
    if group.degree() > n {
        return Err(BoundError::Precondition(format!(
            "degree {} exceeds n = {n}",
            group.degree()
        )));
    }
    if !group.generators().iter().all(|g| g.parity().is_even()) {
        return Err(BoundError::Precondition("group contains odd permutations".into()));
    }
    if !problem41_check::<F>(group, cap)? {
        return Err(BoundError::Precondition(
            "ratio is not below the reference ratio".into(),
        ));
    }
    let embedded = group
        .extend_to(n)
        .map_err(|e| BoundError::Precondition(e.to_string()))?;
    let k_group = count_classes_enumerative(&embedded, cap)?.k;
    let table = PartitionTable::build(n);
    let k_alt = count_classes_alternating_with(&table, n)?.k;
    Ok(!k_group.is_zero() && k_group < k_alt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::mathieu_11;
    use crate::group::{alternating_group, cyclic_group, symmetric_group, DEFAULT_ELEMENT_CAP};

    const CAP: u64 = DEFAULT_ELEMENT_CAP;

    #[test]
    fn ratio_examples() {
        let a7 = ratio_report::<f64>(&alternating_group(7), "A_7", CAP).unwrap();
        assert_eq!(truncate_millis(a7.ratio), 796);
        assert_eq!(a7.k, BigUint::from(9u32));
        let a3 = ratio_report::<f64>(&alternating_group(3), "A_3", CAP).unwrap();
        assert_eq!(truncate_millis(a3.ratio), 1892);
        let c2 = ratio_report::<f64>(&cyclic_group(2), "C_2", CAP).unwrap();
        assert_eq!(c2.ratio, 2.0);
        assert_eq!(c2.score, 0.5);
        assert_eq!(
            ratio_report::<f64>(&PermGroup::trivial(3).unwrap(), "1", CAP).unwrap_err(),
            BoundError::TrivialGroup
        );
    }

    #[test]
    fn ratio_times_score_is_one() {
        let t = PartitionTable::build(30);
        for n in 3..=30 {
            let r = alternating_ratio_report::<f64>(&t, n).unwrap();
            assert!((r.ratio * r.score - 1.0).abs() < 1e-12);
            assert!(r.log2_order > 0.0);
        }
    }

    #[test]
    fn enumerative_and_formula_ratios_agree() {
        let t = PartitionTable::build(8);
        for n in 3..=7 {
            let e = ratio_report::<f64>(&alternating_group(n), "A", CAP).unwrap();
            let f = alternating_ratio_report::<f64>(&t, n).unwrap();
            assert!((e.ratio - f.ratio).abs() <= 1e-12 * f.ratio, "A_{n}");
            let e = ratio_report::<f64>(&symmetric_group(n), "S", CAP).unwrap();
            let f = symmetric_ratio_report::<f64>(&t, n).unwrap();
            assert!((e.ratio - f.ratio).abs() <= 1e-12 * f.ratio, "S_{n}");
        }
    }

    #[test]
    fn table1_spot_values() {
        let rows = reproduce_table1::<f64>();
        assert_eq!(rows.len(), 9);
        let lookup = |n: usize| rows.iter().find(|r| r.0 == n).unwrap().1;
        assert_eq!(truncate_millis(lookup(6)), 824);
        assert_eq!(truncate_millis(lookup(10)), 1154);
        assert_eq!(truncate_millis(lookup(11)), 1278);
    }

    #[test]
    fn verify_small_and_large_ranges() {
        for n_max in [12, 50, 200] {
            let v = verify_theorem::<f64>(n_max).unwrap();
            assert!(v.holds, "n_max={n_max}: {v:?}");
            assert_eq!(v.minimum_at, 7);
            assert_eq!(v.equality_cases, vec![7]);
        }
        assert!(verify_theorem::<f32>(60).unwrap().holds);
        assert_eq!(verify_theorem::<f64>(11).unwrap_err(), BoundError::RangeTooShort(11));
    }

    #[test]
    fn chain_at_twelve() {
        let t = PartitionTable::build(12);
        let r = alternating_ratio_report::<f64>(&t, 12).unwrap();
        assert_eq!(r.k, BigUint::from(43u32));
        assert_eq!(t.alpha(12) * 2u32 + t.beta(12), BigUint::from(43u32));
        assert!(r.ratio > 1.0 && 1.0 > reference_ratio::<f64>());
    }

    #[test]
    fn abelian_checks() {
        assert!(abelian_ratio_check::<f64>(&cyclic_group(2), CAP).unwrap());
        let c6 = PermGroup::parse("deg=5 (1,2); (3,4,5)").unwrap();
        assert!(abelian_ratio_check::<f64>(&c6, CAP).unwrap());
        let r = ratio_report::<f64>(&c6, "C_6", CAP).unwrap();
        assert_eq!(r.k, BigUint::from(6u32));
        assert!((r.ratio - 6.0 / 6f64.log2()).abs() < 1e-12);
        let c2_4 = PermGroup::parse("deg=8 (1,2); (3,4); (5,6); (7,8)").unwrap();
        assert!(abelian_ratio_check::<f64>(&c2_4, CAP).unwrap());
        assert_eq!(ratio_report::<f64>(&c2_4, "V", CAP).unwrap().ratio, 4.0);
        assert_eq!(
            abelian_ratio_check::<f64>(&symmetric_group(3), CAP).unwrap_err(),
            BoundError::NotAbelian
        );
    }

    #[test]
    fn ratio_below_reference_examples() {
        assert!(!problem41_check::<f64>(&alternating_group(7), CAP).unwrap());
        assert!(problem41_check::<f64>(&mathieu_11(), CAP).unwrap());
        assert!(!problem41_check::<f64>(&symmetric_group(5), CAP).unwrap());
        assert_eq!(
            problem41_check::<f64>(&cyclic_group(5), CAP).unwrap_err(),
            BoundError::Abelian
        );
    }

    #[test]
    fn embedding_check_examples() {
        let m11 = mathieu_11();
        assert!(corollary42_check::<f64>(&m11, 11, CAP).unwrap());
        assert!(corollary42_check::<f64>(&m11, 12, CAP).unwrap());
        assert!(matches!(
            corollary42_check::<f64>(&alternating_group(6), 6, CAP),
            Err(BoundError::Precondition(_))
        ));
        assert!(matches!(
            corollary42_check::<f64>(&m11, 10, CAP),
            Err(BoundError::Precondition(_))
        ));
    }

    #[test]
    fn reference_ratio_matches_enumeration() {
        let e = ratio_report::<f64>(&alternating_group(7), "A_7", CAP).unwrap();
        assert_eq!(e.ratio, reference_ratio::<f64>());
    }
}
