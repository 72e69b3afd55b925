use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use conjforge::bounds::{
    alternating_ratio_report, ratio_report, reproduce_table1, symmetric_ratio_report, verify_theorem,
};
use conjforge::classes::count_classes_enumerative;
use conjforge::group::DEFAULT_ELEMENT_CAP;
use conjforge::partitions::{log2_alt_order, maroti_bound, t_of_n};
use conjforge::search::evolve;
use conjforge::{PartitionTable, PermGroup, RatioReport, SearchConfig, TheoremVerdict};
use serde_json::json;

const CAP_ENV: &str = "CONJFORGE_ELEMENT_CAP";

fn element_cap() -> Result<u64> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{CAP_ENV} must be a positive integer, got '{v}'")),
        Err(_) => Ok(DEFAULT_ELEMENT_CAP),
    }
}

pub fn table1(csv: bool, json: bool) -> Result<ExitCode> {
    let rows = reproduce_table1::<f64>();
    let table = PartitionTable::build(11);
    if json {
        let entries: Vec<_> = rows.iter().map(|&(n, ratio)| json!({"n": n, "ratio": ratio})).collect();
        println!("{}", serde_json::to_string_pretty(&entries)?);
    } else if csv {
        println!("n,k,log2_order,ratio");
        for &(n, ratio) in &rows {
            let k = table.alpha(n) * 2u32 + table.beta(n);
            println!("{n},{k},{:?},{ratio:?}", log2_alt_order::<f64>(n));
        }
    } else {
        println!("{:>3}  {:>4}  {:>12}  {:>10}", "n", "k", "log2|A_n|", "ratio");
        for &(n, ratio) in &rows {
            let k = table.alpha(n) * 2u32 + table.beta(n);
            println!("{n:>3}  {k:>4}  {:>12.6}  {ratio:>10.6}", log2_alt_order::<f64>(n));
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn verify(max_n: usize, json_only: bool) -> Result<ExitCode> {
    let verdict: TheoremVerdict = verify_theorem(max_n)?;
    if !json_only {
        print_verdict(&verdict);
    }
    println!("{}", serde_json::to_string_pretty(&verdict)?);
    Ok(if verdict.holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn print_verdict(v: &TheoremVerdict) {
    println!("bound k(A_n) >= (k(A_7)/log2|A_7|) log2|A_n| for 3 <= n <= {}", v.n_max);
    println!(
        "exact ratios for n = {}..{}:",
        v.n_checked_exactly.0, v.n_checked_exactly.1
    );
    for (n, r) in &v.table {
        println!("  n = {n:>2}: {r:.6}");
    }
    println!("minimum at n = {} (ratio {:.6})", v.minimum_at, v.minimum_ratio);
    println!("equality cases: {:?}", v.equality_cases);
    println!(
        "small range above reference: {}",
        if v.small_range_ok { "yes" } else { "no" }
    );
    println!(
        "exact ratio > 1 for {} <= n <= {}: {}",
        v.tail_start,
        v.n_max,
        failures_text(&v.exact_tail_failures)
    );
    println!(
        "analytic chain for {} <= n <= {}: {}",
        v.tail_start,
        v.n_max,
        failures_text(&v.chain_failures)
    );
    println!("verdict: {}", if v.holds { "HOLDS" } else { "FAILS" });
}

fn failures_text(failures: &[usize]) -> String {
    if failures.is_empty() {
        "ok".to_string()
    } else {
        format!("failed at {failures:?}")
    }
}

pub fn partitions(max_n: usize, csv: bool) -> Result<ExitCode> {
    let table = PartitionTable::build(max_n);
    if csv {
        print!("{}", table.to_csv::<f64>());
        return Ok(ExitCode::SUCCESS);
    }
    println!(
        "{:>4}  {:>28}  {:>12}  {:>28}  {:>14}  {:>10}",
        "n", "p(n)", "alpha(n)", "beta(n)", "e^(2sqrt n)/14", "t(n)"
    );
    for n in 0..=max_n {
        let bound = if n >= 1 {
            format!("{:.4e}", maroti_bound::<f64>(n))
        } else {
            String::new()
        };
        let t = if n >= 3 {
            format!("{:.6}", t_of_n::<f64>(n))
        } else {
            String::new()
        };
        println!(
            "{n:>4}  {:>28}  {:>12}  {:>28}  {bound:>14}  {t:>10}",
            table.p(n).to_string(),
            table.alpha(n).to_string(),
            table.beta(n).to_string()
        );
    }
    Ok(ExitCode::SUCCESS)
}

pub fn score(
    generators: Option<&str>,
    alternating: Option<usize>,
    symmetric: Option<usize>,
    json: bool,
) -> Result<ExitCode> {
    let report: RatioReport = match (generators, alternating, symmetric) {
        (Some(text), None, None) => {
            let group = PermGroup::parse(text).context("parsing --generators")?;
            ratio_report(&group, text.trim(), element_cap()?)?
        }
        (None, Some(n), None) => alternating_ratio_report(&PartitionTable::build(n.max(3)), n)?,
        (None, None, Some(n)) => symmetric_ratio_report(&PartitionTable::build(n.max(2)), n)?,
        _ => bail!("give exactly one of --generators, --alternating, --symmetric"),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("group: {}", report.group_label);
        println!("order: {}", report.order);
        println!("k: {}", report.k);
        println!("log2_order: {:?}", report.log2_order);
        println!("ratio: {:?}", report.ratio);
        println!("score: {:?}", report.score);
    }
    Ok(ExitCode::SUCCESS)
}

pub fn group_info(generators: &str, json: bool) -> Result<ExitCode> {
    let group = PermGroup::parse(generators).context("parsing --generators")?;
    let cap = element_cap()?;
    let k = match count_classes_enumerative(&group, cap) {
        Ok(c) => Some(c.k),
        Err(_) => None,
    };
    if json {
        let value = json!({
            "degree": group.degree(),
            "order": group.order().to_string(),
            "k": k.as_ref().map(|k| k.to_string()),
            "abelian": group.is_abelian(),
            "generators": group.spec().generators,
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!("degree: {}", group.degree());
        println!("order: {}", group.order());
        match k {
            Some(k) => println!("k: {k}"),
            None => println!("k: not computed (order exceeds element cap {cap})"),
        }
        println!("abelian: {}", group.is_abelian());
    }
    Ok(ExitCode::SUCCESS)
}

pub fn search(
    config_path: &Path,
    workers: usize,
    out: Option<&Path>,
    report_path: Option<&Path>,
) -> Result<ExitCode> {
    let text = fs::read_to_string(config_path)
        .with_context(|| format!("reading {}", config_path.display()))?;
    let config: SearchConfig = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", config_path.display()))?;
    let report = evolve(&config, workers)?;
    let log = report.to_jsonl();
    match out {
        Some(path) => fs::write(path, &log).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(log.as_bytes())?,
    }
    if let Some(path) = report_path {
        fs::write(path, serde_json::to_string_pretty(&report)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(best) = report.best() {
        eprintln!(
            "best after {} generations: degree {} order {} k {} score {}",
            config.iterations,
            best.degree,
            best.order,
            best.k.map_or("-".to_string(), |k| k.to_string()),
            best.score.map_or("unscorable".to_string(), |s| format!("{s:?}")),
        );
    }
    Ok(ExitCode::SUCCESS)
}
