//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use conjforge::bounds::{
    alternating_ratio_report, corollary42_check, ratio_report, reference_ratio, reproduce_table1,
    truncate_millis, verify_theorem,
};
use conjforge::classes::{
    count_classes_alternating_with, count_classes_enumerative, count_classes_symmetric_with,
};
use conjforge::fixtures::mathieu_11;
use conjforge::group::{alternating_group, cyclic_group, symmetric_group, DEFAULT_ELEMENT_CAP};
use conjforge::partitions::{maroti_holds, t_of_n};
use conjforge::search::{evolve, SeedGroup};
use conjforge::{PartitionTable, PermGroup, SearchConfig, TheoremVerdict};
use num_bigint::BigUint;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("took {elapsed:?}, limit {limit:?}"),
    )
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_conjforge"))
}

/// Reference ratios for A_3..A_11, truncated to three decimals.
const TABLE1: [(usize, i64); 9] = [
    (3, 1892),
    (4, 1115),
    (5, 846),
    (6, 824),
    (7, 796),
    (8, 979),
    (9, 1030),
    (10, 1154),
    (11, 1278),
];

fn table1_reproduction() -> Outcome {
    let start = Instant::now();
    let rows = reproduce_table1::<f64>();
    let elapsed = start.elapsed();
    ensure(rows.len() == TABLE1.len(), "expected nine rows")?;
    for (&(n, ratio), &(m, expected)) in rows.iter().zip(&TABLE1) {
        ensure(n == m, format!("row order: {n} vs {m}"))?;
        let got = truncate_millis(ratio);
        ensure(got == expected, format!("n={n}: {got} vs {expected}"))?;
    }
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("9/9 rows match ({elapsed:?})"))
}

fn theorem_pipeline() -> Outcome {
    let start = Instant::now();
    let verdict: TheoremVerdict = verify_theorem(200).map_err(|e| e.to_string())?;
    let lib_elapsed = start.elapsed();
    ensure(verdict.holds, format!("verdict does not hold: {verdict:?}"))?;
    ensure(verdict.minimum_at == 7, "minimum not at 7")?;
    ensure(verdict.equality_cases == [7], "equality cases differ from [7]")?;
    ensure(verdict.chain_failures.is_empty(), "analytic chain failed")?;
    within(lib_elapsed, Duration::from_secs(10))?;

    let start = Instant::now();
    let output = bin()
        .args(["verify", "--max-n", "200"])
        .output()
        .map_err(|e| e.to_string())?;
    let cli_elapsed = start.elapsed();
    ensure(output.status.success(), "`verify --max-n 200` exited nonzero")?;
    let stdout = String::from_utf8_lossy(&output.stdout);
    ensure(stdout.contains("minimum at n = 7"), "report lacks 'minimum at n = 7'")?;
    within(cli_elapsed, Duration::from_secs(10))?;
    Ok(format!("holds for 3..=200 (library {lib_elapsed:?}, cli {cli_elapsed:?})"))
}

fn maroti_bound() -> Outcome {
    let start = Instant::now();
    let table = PartitionTable::build(200);
    let failing: Vec<usize> = (1..=200).filter(|&n| !maroti_holds::<f64>(&table, n)).collect();
    let elapsed = start.elapsed();
    ensure(failing.is_empty(), format!("fails at {failing:?}"))?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("holds for 1..=200 ({elapsed:?})"))
}

fn t_function() -> Outcome {
    let t12 = t_of_n::<f64>(12);
    ensure(truncate_millis(t12) == 1016, format!("t(12) = {t12}"))?;
    ensure(t12 > 1.0, "t(12) <= 1")?;
    for n in 12..500 {
        ensure(
            t_of_n::<f64>(n + 1) >= t_of_n::<f64>(n),
            format!("t decreases at n={n}"),
        )?;
    }
    Ok(format!("t(12) = {t12:.6}, monotone on 12..=500"))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let table = PartitionTable::build(500);
    for n in 3..=8 {
        let alt = count_classes_enumerative(&alternating_group(n), DEFAULT_ELEMENT_CAP)
            .map_err(|e| e.to_string())?;
        let alt_formula = count_classes_alternating_with(&table, n).map_err(|e| e.to_string())?;
        ensure(alt.k == alt_formula.k, format!("k(A_{n}): {} vs {}", alt.k, alt_formula.k))?;
        let sym = count_classes_enumerative(&symmetric_group(n), DEFAULT_ELEMENT_CAP)
            .map_err(|e| e.to_string())?;
        let sym_formula = count_classes_symmetric_with(&table, n);
        ensure(sym.k == sym_formula.k, format!("k(S_{n}): {} vs {}", sym.k, sym_formula.k))?;
    }
    for n in 3..=500 {
        ensure(
            table.alpha(n) + table.beta(n) * 2u32 == *table.p(n),
            format!("alpha + 2 beta != p at n={n}"),
        )?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!("A_n and S_n agree for 3..=8, identity to 500 ({elapsed:?})"))
}

fn abelian_fixtures() -> Vec<(String, PermGroup)> {
    let mut groups: Vec<(String, PermGroup)> =
        (1..=30).map(|n| (format!("C_{n}"), cyclic_group(n))).collect();
    // products of cyclic groups on disjoint blocks, listed by cycle lengths
    let products: [&[usize]; 12] = [
        &[2, 2],
        &[2, 2, 2],
        &[2, 2, 2, 2],
        &[2, 2, 2, 2, 2],
        &[2, 2, 2, 2, 2, 2],
        &[3, 3],
        &[2, 4],
        &[4, 4],
        &[4, 4, 4],
        &[2, 4, 8],
        &[8, 8],
        &[2, 32],
    ];
    for lengths in products {
        let mut cycles = Vec::new();
        let mut offset = 0;
        for &len in lengths {
            let pts: Vec<String> = (offset + 1..=offset + len).map(|p| p.to_string()).collect();
            cycles.push(format!("({})", pts.join(",")));
            offset += len;
        }
        let text = format!("deg={offset} {}", cycles.join("; "));
        let label = lengths.iter().map(|l| format!("C_{l}")).collect::<Vec<_>>().join("x");
        groups.push((label, PermGroup::parse(&text).expect("fixture parses")));
    }
    groups
}

fn abelian_property() -> Outcome {
    let fixtures = abelian_fixtures();
    for (label, group) in &fixtures {
        ensure(group.is_abelian(), format!("{label} not Abelian"))?;
        ensure(
            group.order() <= &BigUint::from(64u32),
            format!("{label} order above 64"),
        )?;
        let k = count_classes_enumerative(group, DEFAULT_ELEMENT_CAP)
            .map_err(|e| e.to_string())?
            .k;
        ensure(&k == group.order(), format!("{label}: k = {k}, |G| = {}", group.order()))?;
    }
    Ok(format!("k = |G| for {} Abelian groups", fixtures.len()))
}

fn mathieu_observation() -> Outcome {
    let start = Instant::now();
    let m11 = mathieu_11();
    ensure(m11.order() == &BigUint::from(7920u32), format!("order {}", m11.order()))?;
    let report = ratio_report::<f64>(&m11, "M_11", DEFAULT_ELEMENT_CAP).map_err(|e| e.to_string())?;
    let reference = reference_ratio::<f64>();
    ensure(
        report.ratio < reference,
        format!("ratio {} not below {reference}", report.ratio),
    )?;
    let table = PartitionTable::build(11);
    let k_a11 = alternating_ratio_report::<f64>(&table, 11)
        .map_err(|e| e.to_string())?
        .k;
    ensure(report.k < k_a11, format!("k(M_11) = {} vs k(A_11) = {k_a11}", report.k))?;
    ensure(
        corollary42_check::<f64>(&m11, 11, DEFAULT_ELEMENT_CAP).map_err(|e| e.to_string())?,
        "embedding check returned false",
    )?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "|M_11| = 7920, k = {}, ratio {:.6} < {reference:.6}, k(A_11) = {k_a11} ({elapsed:?})",
        report.k, report.ratio
    ))
}

fn smoke_config(seed: u64, iterations: usize) -> SearchConfig {
    SearchConfig {
        master_seed: seed,
        population_size: 16,
        iterations,
        elite_count: 4,
        max_degree: 10,
        element_cap: 20_000,
        ..SearchConfig::default()
    }
}

fn ga_determinism_and_elitism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config_path = dir.path().join("config.json");
    let config = smoke_config(20_261_015, 20);
    std::fs::write(&config_path, serde_json::to_string(&config).unwrap()).map_err(|e| e.to_string())?;
    let mut logs = Vec::new();
    for (run, workers) in [(0, "1"), (1, "4")] {
        let out = dir.path().join(format!("run{run}.jsonl"));
        let output = bin()
            .arg("search")
            .arg("--config")
            .arg(&config_path)
            .args(["--workers", workers])
            .arg("--out")
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(output.status.success(), "search exited nonzero")?;
        logs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    ensure(logs[0] == logs[1], "JSONL logs differ between runs")?;
    ensure(!logs[0].is_empty(), "empty log")?;

    let report = evolve(&smoke_config(7, 100), 0).map_err(|e| e.to_string())?;
    ensure(report.best_per_generation.len() == 101, "expected 101 records")?;
    let scores: Vec<f64> = report
        .best_per_generation
        .iter()
        .map(|r| r.best_score.unwrap_or(f64::NEG_INFINITY))
        .collect();
    if let Some(w) = scores.windows(2).find(|w| w[1] < w[0]) {
        return Err(format!("best score decreased: {} -> {}", w[0], w[1]));
    }
    Ok(format!(
        "identical logs ({} bytes); 100 generations non-decreasing, final best {:.6}",
        logs[0].len(),
        scores.last().unwrap()
    ))
}

fn ga_convergence() -> Outcome {
    let target = 2520f64.log2() / 9.0;
    let mut finals = Vec::new();
    for seed in [0u64, 1, 2, 0xDEAD_BEEF] {
        let config = SearchConfig {
            master_seed: seed,
            population_size: 16,
            iterations: 3,
            elite_count: 4,
            seed_groups: (3..=12).map(SeedGroup::Alternating).collect(),
            ..SearchConfig::default()
        };
        let report = evolve(&config, 0).map_err(|e| e.to_string())?;
        let best = report.best().ok_or("empty population")?;
        let score = best.score.ok_or("best group unscorable")?;
        ensure(
            (score - target).abs() <= 1e-12,
            format!("seed {seed}: best score {score} vs {target}"),
        )?;
        finals.push(score);
    }

    // unaided runs are reported, not asserted
    let unaided = evolve(&smoke_config(99, 30), 0).map_err(|e| e.to_string())?;
    let found = unaided
        .final_population
        .iter()
        .any(|m| m.order == BigUint::from(2520u32) && m.k == Some(9));
    println!(
        "      note: unaided 30-generation run best score {:?}; A_7-like group present: {found}",
        unaided.best().and_then(|b| b.score)
    );
    Ok(format!("best = score(A_7) = {target:.12} for {} seeds", finals.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 Ratio table for A_3..A_11", table1_reproduction),
        ("2 Bound pipeline (verify --max-n 200)", theorem_pipeline),
        ("3 Maroti bound for 1..=200", maroti_bound),
        ("4 t(12) and monotonicity", t_function),
        ("5 Oracle equivalence", oracle_equivalence),
        ("6 Abelian k = |G|", abelian_property),
        ("7 M_11 observation", mathieu_observation),
        ("8 GA determinism and elitism", ga_determinism_and_elitism),
        ("9 GA convergence with seeded alternating groups", ga_convergence),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
