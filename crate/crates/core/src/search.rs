//! Genetic search over permutation groups maximizing `log2|G| / k(G)`.
//!
//! Each generation keeps the `elite_count` best groups and refills the rest of
//! the population from them by crossover (direct product, generator mixing)
//! and mutation of generating sets. Every offspring slot draws from its own
//! random stream keyed by `(master_seed, generation, slot)`, so a run is
//! reproducible for any number of worker threads.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bounds::log2_order;
use crate::classes::{count_classes_alternating_with, count_classes_enumerative};
use crate::group::{
    alternating_group, cyclic_group, symmetric_group, GroupError, PermGroup, DEFAULT_ELEMENT_CAP,
    DEFAULT_MAX_DEGREE,
};
use crate::partitions::PartitionTable;
use crate::perm::Permutation;

/// Attempts per offspring slot before falling back to a fresh random group.
const MAX_ATTEMPTS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("could not start worker pool: {0}")]
    Workers(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossoverRates {
    pub direct_product: f64,
    pub generator_mix: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MutationRates {
    pub drop: f64,
    pub add_random: f64,
    pub commutator_power: f64,
    pub product_power: f64,
}

/// A group placed into the initial population by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedGroup {
    Alternating(usize),
    Symmetric(usize),
    Cyclic(usize),
    /// `deg=n g1; g2; ...`
    Generators(String),
}

impl SeedGroup {
    pub fn build(&self) -> Result<PermGroup, SearchError> {
        Ok(match self {
            SeedGroup::Alternating(n) => alternating_group(*n),
            SeedGroup::Symmetric(n) => symmetric_group(*n),
            SeedGroup::Cyclic(n) => cyclic_group(*n),
            SeedGroup::Generators(text) => PermGroup::parse(text)?,
        })
    }

    fn degree(&self) -> Result<usize, SearchError> {
        Ok(match self {
            SeedGroup::Alternating(n) | SeedGroup::Symmetric(n) | SeedGroup::Cyclic(n) => *n,
            SeedGroup::Generators(_) => self.build()?.degree(),
        })
    }
}

/// Full hyperparameters of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub master_seed: u64,
    pub population_size: usize,
    pub iterations: usize,
    pub elite_count: usize,
    pub max_degree: usize,
    pub element_cap: u64,
    /// Inclusive range for the generator count of random groups.
    pub initial_generator_count: (usize, usize),
    pub seed_groups: Vec<SeedGroup>,
    pub crossover_rates: CrossoverRates,
    pub mutation_rates: MutationRates,
    /// Inclusive range for the exponent in the power mutations.
    pub power_range: (u32, u32),
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            master_seed: 0,
            population_size: 32,
            iterations: 50,
            elite_count: 8,
            max_degree: DEFAULT_MAX_DEGREE,
            element_cap: DEFAULT_ELEMENT_CAP,
            initial_generator_count: (1, 3),
            seed_groups: Vec::new(),
            crossover_rates: CrossoverRates {
                direct_product: 0.1,
                generator_mix: 0.3,
            },
            mutation_rates: MutationRates {
                drop: 0.15,
                add_random: 0.15,
                commutator_power: 0.15,
                product_power: 0.15,
            },
            power_range: (1, 5),
        }
    }
}

impl SearchConfig {
    /// Checks everything [`evolve`] relies on.
    pub fn validate(&self) -> Result<(), SearchError> {
        self.validate_population()?;
        if self.elite_count == 0 || self.elite_count >= self.population_size {
            return Err(SearchError::InvalidConfig(format!(
                "elite_count must satisfy 0 < elite_count < population_size, got {} and {}",
                self.elite_count, self.population_size
            )));
        }
        Ok(())
    }

    /// Checks the fields used to build an initial population.
    pub fn validate_population(&self) -> Result<(), SearchError> {
        let bad = |msg: String| Err(SearchError::InvalidConfig(msg));
        if self.population_size == 0 {
            return bad("population_size must be positive".into());
        }
        if self.max_degree < 3 {
            return bad(format!("max_degree must be at least 3, got {}", self.max_degree));
        }
        if self.element_cap == 0 {
            return bad("element_cap must be positive".into());
        }
        let (lo, hi) = self.initial_generator_count;
        if lo == 0 || lo > hi {
            return bad(format!("initial_generator_count must be 1 <= lo <= hi, got ({lo}, {hi})"));
        }
        let (lo, hi) = self.power_range;
        if lo > hi {
            return bad(format!("power_range is empty: ({lo}, {hi})"));
        }
        let rates = self.operator_weights();
        if let Some(r) = rates.iter().find(|r| !(0.0..=1.0).contains(*r)) {
            return bad(format!("rate {r} outside [0, 1]"));
        }
        if rates.iter().all(|&r| r == 0.0) {
            return bad("at least one crossover or mutation rate must be positive".into());
        }
        if self.seed_groups.len() > self.population_size {
            return bad("more seed groups than population slots".into());
        }
        for seed in &self.seed_groups {
            let degree = seed.degree()?;
            if degree == 0 || degree > self.max_degree {
                return bad(format!("seed group {seed:?} has degree outside 1..={}", self.max_degree));
            }
        }
        Ok(())
    }

    fn operator_weights(&self) -> [f64; 6] {
        let c = self.crossover_rates;
        let m = self.mutation_rates;
        [
            c.direct_product,
            c.generator_mix,
            m.drop,
            m.add_random,
            m.commutator_power,
            m.product_power,
        ]
    }
}

/// Fitness of a group; unscorable groups rank below every scored one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Score {
    Scored(f64),
    Unscorable,
}

impl Score {
    pub fn value(self) -> Option<f64> {
        match self {
            Score::Scored(v) => Some(v),
            Score::Unscorable => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MutationKind {
    Drop,
    AddRandom,
    CommutatorPower,
    ProductPower,
}

/// How an individual entered the population.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Random,
    Seed(SeedGroup),
    DirectProduct { parents: (u64, u64) },
    GeneratorMix { parents: (u64, u64) },
    Mutation { kind: MutationKind, parent: u64 },
    Refill,
}

/// Groups whose class count is known from their construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum KnownFamily {
    Alternating(usize),
    Symmetric(usize),
}

#[derive(Debug, Clone)]
pub struct ScoredGroup {
    pub group: PermGroup,
    pub k: Option<u64>,
    pub score: Score,
    pub provenance: Provenance,
    /// Construction sequence number, unique within a run.
    pub id: u64,
}

impl ScoredGroup {
    fn new(group: PermGroup, provenance: Provenance, id: u64, cap: u64) -> Self {
        let (k, score) = evaluate(&group, cap);
        ScoredGroup {
            group,
            k,
            score,
            provenance,
            id,
        }
    }

    fn known(group: PermGroup, family: KnownFamily, provenance: Provenance, id: u64) -> Self {
        let k = match family {
            KnownFamily::Alternating(n) if n >= 3 => {
                let table = PartitionTable::build(n);
                count_classes_alternating_with(&table, n).ok().and_then(|c| c.k_u64())
            }
            KnownFamily::Symmetric(n) if n >= 2 => PartitionTable::build(n).p(n).to_u64(),
            _ => None,
        };
        let score = match k {
            Some(k) if !group.is_trivial() => Score::Scored(log2_order::<f64>(group.order()) / k as f64),
            _ => Score::Unscorable,
        };
        ScoredGroup {
            group,
            k,
            score,
            provenance,
            id,
        }
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            id: self.id,
            degree: self.group.degree(),
            order: self.group.order().clone(),
            k: self.k,
            score: self.score.value(),
            generators: generator_strings(&self.group),
            provenance: self.provenance.clone(),
        }
    }
}

fn evaluate(group: &PermGroup, cap: u64) -> (Option<u64>, Score) {
    if group.is_trivial() {
        return (Some(1), Score::Unscorable);
    }
    match count_classes_enumerative(group, cap) {
        Ok(c) => {
            let k = c.k_u64().expect("enumerated count fits in u64");
            (Some(k), Score::Scored(log2_order::<f64>(group.order()) / k as f64))
        }
        Err(_) => (None, Score::Unscorable),
    }
}

/// `log2|G| / k(G)`, or unscorable for the trivial group and for groups too
/// large to enumerate within `element_cap`.
pub fn score(group: &PermGroup, element_cap: u64) -> Score {
    evaluate(group, element_cap).1
}

fn generator_strings(group: &PermGroup) -> Vec<String> {
    group.generators().iter().map(Permutation::cycles_string).collect()
}

/// Ranking used for elitism: scored before unscorable, higher score first,
/// then smaller order, then earlier construction.
pub fn rank(a: &ScoredGroup, b: &ScoredGroup) -> Ordering {
    let by_score = match (a.score, b.score) {
        (Score::Scored(x), Score::Scored(y)) => y.partial_cmp(&x).unwrap_or(Ordering::Equal),
        (Score::Scored(_), Score::Unscorable) => Ordering::Less,
        (Score::Unscorable, Score::Scored(_)) => Ordering::Greater,
        (Score::Unscorable, Score::Unscorable) => Ordering::Equal,
    };
    by_score
        .then_with(|| a.group.order().cmp(b.group.order()))
        .then_with(|| a.id.cmp(&b.id))
}

/// The random stream for one population slot.
pub fn slot_rng(master_seed: u64, generation: usize, slot: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(((generation as u64) << 32) | slot as u64);
    rng
}

fn random_group<R: Rng>(config: &SearchConfig, rng: &mut R) -> PermGroup {
    let degree = rng.gen_range(3..=config.max_degree);
    let (lo, hi) = config.initial_generator_count;
    let count = rng.gen_range(lo..=hi);
    let gens = (0..count).map(|_| Permutation::random(degree, rng)).collect();
    PermGroup::from_generators(degree, gens).expect("generators share a degree")
}

fn sequence_id(config: &SearchConfig, generation: usize, slot: usize) -> u64 {
    generation as u64 * config.population_size as u64 + slot as u64
}

/// Random groups followed by the configured seed groups, all scored.
pub fn init_population(config: &SearchConfig) -> Result<Vec<ScoredGroup>, SearchError> {
    config.validate_population()?;
    let random_slots = config.population_size - config.seed_groups.len();
    let mut population: Vec<ScoredGroup> = (0..random_slots)
        .into_par_iter()
        .map(|slot| {
            let mut rng = slot_rng(config.master_seed, 0, slot);
            let group = random_group(config, &mut rng);
            ScoredGroup::new(group, Provenance::Random, sequence_id(config, 0, slot), config.element_cap)
        })
        .collect();
    for (i, seed) in config.seed_groups.iter().enumerate() {
        let slot = random_slots + i;
        let id = sequence_id(config, 0, slot);
        let group = seed.build()?;
        let provenance = Provenance::Seed(seed.clone());
        let member = match seed {
            SeedGroup::Alternating(n) => {
                ScoredGroup::known(group, KnownFamily::Alternating(*n), provenance, id)
            }
            SeedGroup::Symmetric(n) => {
                ScoredGroup::known(group, KnownFamily::Symmetric(*n), provenance, id)
            }
            _ => ScoredGroup::new(group, provenance, id, config.element_cap),
        };
        population.push(member);
    }
    Ok(population)
}

/// Direct product of two parents, or `None` when its degree exceeds
/// `max_degree`.
pub fn crossover_direct_product(
    a: &ScoredGroup,
    b: &ScoredGroup,
    max_degree: usize,
    element_cap: u64,
    id: u64,
) -> Option<ScoredGroup> {
    let group = a.group.direct_product(&b.group, max_degree).ok()?;
    Some(ScoredGroup::new(
        group,
        Provenance::DirectProduct {
            parents: (a.id, b.id),
        },
        id,
        element_cap,
    ))
}

/// Uniformly random nonempty subset of `items` (empty when `items` is).
fn random_subset<T: Clone, R: Rng>(items: &[T], rng: &mut R) -> Vec<T> {
    if items.is_empty() {
        return Vec::new();
    }
    if items.len() < 64 {
        let mask = rng.gen_range(1u64..(1u64 << items.len()));
        return items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x.clone())
            .collect();
    }
    loop {
        let pick: Vec<T> = items.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if !pick.is_empty() {
            return pick;
        }
    }
}

/// Group generated by random nonempty generator subsets of both parents,
/// aligned to the larger degree.
pub fn crossover_generator_mix<R: Rng>(
    a: &ScoredGroup,
    b: &ScoredGroup,
    rng: &mut R,
    element_cap: u64,
    id: u64,
) -> ScoredGroup {
    let degree = a.group.degree().max(b.group.degree());
    let mut gens = random_subset(a.group.generators(), rng);
    gens.extend(random_subset(b.group.generators(), rng));
    let gens = gens
        .into_iter()
        .map(|g| g.extend_to(degree).expect("degree only grows"))
        .collect();
    let group = PermGroup::from_generators(degree, gens).expect("aligned generators");
    ScoredGroup::new(
        group,
        Provenance::GeneratorMix {
            parents: (a.id, b.id),
        },
        id,
        element_cap,
    )
}

/// Mutates the generating set of `parent` and rebuilds the group.
///
/// `g` and `h` are drawn with replacement; the exponent is uniform over
/// `power_range`. Mutations needing generators leave a trivial parent
/// unchanged.
pub fn mutate<R: Rng>(
    parent: &ScoredGroup,
    kind: MutationKind,
    rng: &mut R,
    config: &SearchConfig,
    id: u64,
) -> ScoredGroup {
    let degree = parent.group.degree();
    let mut gens = parent.group.generators().to_vec();
    match kind {
        MutationKind::Drop => {
            if !gens.is_empty() {
                let i = rng.gen_range(0..gens.len());
                gens.remove(i);
            }
        }
        MutationKind::AddRandom => gens.push(Permutation::random(degree, rng)),
        MutationKind::CommutatorPower | MutationKind::ProductPower => {
            if !gens.is_empty() {
                let g = gens[rng.gen_range(0..gens.len())].clone();
                let h = gens[rng.gen_range(0..gens.len())].clone();
                let n = rng.gen_range(config.power_range.0..=config.power_range.1);
                gens.push(mutation_word(kind, &g, &h, n));
            }
        }
    }
    let group = PermGroup::from_generators(degree, gens).expect("generators share a degree");
    ScoredGroup::new(
        group,
        Provenance::Mutation {
            kind,
            parent: parent.id,
        },
        id,
        config.element_cap,
    )
}

/// `g h g^-1 h^n` or `(g h)^n`, products read with the right factor applied
/// first.
pub fn mutation_word(kind: MutationKind, g: &Permutation, h: &Permutation, n: u32) -> Permutation {
    match kind {
        MutationKind::CommutatorPower => g
            .compose_unchecked(h)
            .compose_unchecked(&g.inverse())
            .compose_unchecked(&h.pow(n)),
        MutationKind::ProductPower => g.compose_unchecked(h).pow(n),
        _ => panic!("{kind:?} is not a word mutation"),
    }
}

/// Same invariants and mutually containing generator sets.
fn duplicates(candidate: &ScoredGroup, elite: &ScoredGroup) -> bool {
    candidate.group.degree() == elite.group.degree()
        && candidate.group.order() == elite.group.order()
        && candidate.k == elite.k
        && candidate
            .group
            .generators()
            .iter()
            .all(|g| elite.group.contains(g).unwrap_or(false))
        && elite
            .group
            .generators()
            .iter()
            .all(|g| candidate.group.contains(g).unwrap_or(false))
}

fn offspring(config: &SearchConfig, elites: &[ScoredGroup], generation: usize, slot: usize) -> ScoredGroup {
    let mut rng = slot_rng(config.master_seed, generation, slot);
    let id = sequence_id(config, generation, slot);
    let weights = WeightedIndex::new(config.operator_weights()).expect("validated rates");
    for _ in 0..MAX_ATTEMPTS {
        let op = weights.sample(&mut rng);
        let child = match op {
            0 | 1 => {
                let (a, b) = if elites.len() >= 2 {
                    let idx = rand::seq::index::sample(&mut rng, elites.len(), 2);
                    (&elites[idx.index(0)], &elites[idx.index(1)])
                } else {
                    (&elites[0], &elites[0])
                };
                if op == 0 {
                    crossover_direct_product(a, b, config.max_degree, config.element_cap, id)
                } else {
                    Some(crossover_generator_mix(a, b, &mut rng, config.element_cap, id))
                }
            }
            _ => {
                let kind = [
                    MutationKind::Drop,
                    MutationKind::AddRandom,
                    MutationKind::CommutatorPower,
                    MutationKind::ProductPower,
                ][op - 2];
                let parent = elites.choose(&mut rng).expect("at least one elite");
                Some(mutate(parent, kind, &mut rng, config, id))
            }
        };
        if let Some(child) = child {
            if !elites.iter().any(|e| duplicates(&child, e)) {
                return child;
            }
        }
    }
    let group = random_group(config, &mut rng);
    ScoredGroup::new(group, Provenance::Refill, id, config.element_cap)
}

/// Compact description of one individual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub id: u64,
    pub degree: usize,
    #[serde(with = "crate::scalar::decimal")]
    pub order: BigUint,
    pub k: Option<u64>,
    pub score: Option<f64>,
    pub generators: Vec<String>,
    pub provenance: Provenance,
}

/// One JSON-lines log record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub generation: usize,
    pub best_score: Option<f64>,
    #[serde(with = "crate::scalar::decimal")]
    pub best_order: BigUint,
    pub best_k: Option<u64>,
    pub best_degree: usize,
    pub best_generators: Vec<String>,
    pub population_digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub best_per_generation: Vec<GenerationRecord>,
    pub final_population: Vec<GroupSummary>,
    pub config_echo: SearchConfig,
}

impl SearchReport {
    /// The log as JSON lines, one record per generation.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for record in &self.best_per_generation {
            out.push_str(&serde_json::to_string(record).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn best(&self) -> Option<&GroupSummary> {
        self.final_population.first()
    }
}

/// SHA-256 over every individual's id, order, class count and generators.
fn population_digest(population: &[ScoredGroup]) -> String {
    let mut hasher = Sha256::new();
    for member in population {
        let mut line = String::new();
        let _ = writeln!(
            line,
            "{}|{}|{}|{:?}|{}",
            member.id,
            member.group.degree(),
            member.group.order(),
            member.k,
            member.group
        );
        hasher.update(line.as_bytes());
    }
    hasher
        .finalize()
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

fn record(generation: usize, population: &[ScoredGroup]) -> GenerationRecord {
    let best = &population[0];
    GenerationRecord {
        generation,
        best_score: best.score.value(),
        best_order: best.group.order().clone(),
        best_k: best.k,
        best_degree: best.group.degree(),
        best_generators: generator_strings(&best.group),
        population_digest: population_digest(population),
    }
}

/// Runs the search with `workers` threads (0 picks rayon's default).
pub fn evolve(config: &SearchConfig, workers: usize) -> Result<SearchReport, SearchError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SearchError::Workers(e.to_string()))?;
    pool.install(|| evolve_in_pool(config))
}

fn evolve_in_pool(config: &SearchConfig) -> Result<SearchReport, SearchError> {
    let mut population = init_population(config)?;
    population.sort_by(rank);
    let mut records = vec![record(0, &population)];
    for generation in 1..=config.iterations {
        let elites: Vec<ScoredGroup> = population[..config.elite_count].to_vec();
        let children: Vec<ScoredGroup> = (config.elite_count..config.population_size)
            .into_par_iter()
            .map(|slot| offspring(config, &elites, generation, slot))
            .collect();
        population = elites;
        population.extend(children);
        population.sort_by(rank);
        records.push(record(generation, &population));
    }
    Ok(SearchReport {
        best_per_generation: records,
        final_population: population.iter().map(ScoredGroup::summary).collect(),
        config_echo: config.clone(),
    })
}
