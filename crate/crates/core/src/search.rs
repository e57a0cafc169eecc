//! Searching the coloring space for a correct coloring.
//!
//! Two strategies:
//!
//! * **Exhaustive** walks the canonical coloring stream and tests each
//!   coloring. Completing the stream without a hit proves that no correct
//!   `q`-coloring exists.
//! * **Kempe walk** starts from a randomized DSATUR `q`-coloring and applies
//!   random Kempe swaps, restarting when it stops discovering new colorings.
//!   It can only ever report `Found` or `BudgetExhausted`.
//!
//! Both are deterministic for a fixed configuration regardless of the number
//! of worker threads: the exhaustive hit is the lowest stream index, and the
//! walk's hit is the lowest restart index.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chromatic::{k_coloring, random_dsatur, DEFAULT_NODE_BUDGET};
use crate::clique::{clique_unchecked, is_correct_unchecked, KempeClique};
use crate::coloring::Coloring;
use crate::enumerate::enumerate_proper_colorings;
use crate::graph::Graph;
use crate::kempe::{chain_labels, swap_members, ColorPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Exhaustive,
    KempeWalk,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::KempeWalk => "kempe-walk",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "kempe-walk" | "walk" => Ok(Strategy::KempeWalk),
            other => Err(format!("unknown strategy `{other}` (expected exhaustive or kempe-walk)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Exhaustive: cap on colorings taken from the stream.
    pub max_colorings: u64,
    /// Kempe walk: total swaps, split evenly across restarts.
    pub max_swaps: u64,
    pub max_restarts: u32,
    /// Node budget for the exact search used when randomized DSATUR cannot
    /// produce a starting `q`-coloring.
    pub start_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_colorings: u64::MAX,
            max_swaps: 1_000_000,
            max_restarts: 64,
            start_nodes: DEFAULT_NODE_BUDGET,
        }
    }
}

impl SearchBudget {
    fn swaps_per_restart(&self) -> u64 {
        let r = u64::from(self.max_restarts.max(1));
        self.max_swaps.div_ceil(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub strategy: Strategy,
    pub budget: SearchBudget,
    pub seed: u64,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub workers: Option<usize>,
}

impl SearchConfig {
    pub fn new(strategy: Strategy) -> Self {
        SearchConfig {
            strategy,
            budget: SearchBudget::default(),
            seed: 0,
            workers: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub colorings_examined: u64,
    pub swaps: u64,
    pub restarts: u32,
    /// Wall time; excluded from serialized reports so they stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchStatus {
    Found { coloring: Coloring, clique: KempeClique },
    ProvenNonexistent { q: usize },
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    #[serde(flatten)]
    pub status: SearchStatus,
    pub stats: SearchStats,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<(&Coloring, &KempeClique)> {
        match &self.status {
            SearchStatus::Found { coloring, clique } => Some((coloring, clique)),
            _ => None,
        }
    }

    pub fn status_name(&self) -> &'static str {
        match self.status {
            SearchStatus::Found { .. } => "found",
            SearchStatus::ProvenNonexistent { .. } => "proven_nonexistent",
            SearchStatus::BudgetExhausted => "budget_exhausted",
        }
    }

    /// Process exit code: 0 found, 3 proven nonexistent, 1 budget exhausted.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            SearchStatus::Found { .. } => 0,
            SearchStatus::ProvenNonexistent { .. } => 3,
            SearchStatus::BudgetExhausted => 1,
        }
    }
}

/// Runs `f` inside a pool of `workers` threads, or directly when `None`.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

pub fn search_correct_coloring(g: &Graph, q: usize, config: &SearchConfig) -> SearchOutcome {
    let start = Instant::now();
    let mut outcome = with_workers(config.workers, || match config.strategy {
        Strategy::Exhaustive => exhaustive(g, q, &config.budget),
        Strategy::KempeWalk => kempe_walk(g, q, config),
    });
    outcome.stats.elapsed = start.elapsed();
    outcome
}

const CHUNK: usize = 1024;

fn exhaustive(g: &Graph, q: usize, budget: &SearchBudget) -> SearchOutcome {
    let mut stream = enumerate_proper_colorings(g, q);
    let mut stats = SearchStats::default();
    loop {
        let room = budget.max_colorings.saturating_sub(stats.colorings_examined);
        let take = (CHUNK as u64).min(room) as usize;
        let chunk: Vec<Coloring> = stream.by_ref().take(take).collect();
        if chunk.is_empty() {
            return if take == 0 && stream.next().is_some() {
                SearchOutcome {
                    status: SearchStatus::BudgetExhausted,
                    stats,
                }
            } else {
                SearchOutcome {
                    status: SearchStatus::ProvenNonexistent { q },
                    stats,
                }
            };
        }
        if let Some(hit) = chunk.par_iter().position_first(|c| is_correct_unchecked(g, c)) {
            stats.colorings_examined += hit as u64 + 1;
            let coloring = chunk[hit].clone();
            let clique = clique_unchecked(g, &coloring).expect("hit was verified");
            return SearchOutcome {
                status: SearchStatus::Found { coloring, clique },
                stats,
            };
        }
        stats.colorings_examined += chunk.len() as u64;
    }
}

/// Every correct canonical `q`-coloring in stream order, lazily.
pub fn correct_colorings<'g>(g: &'g Graph, q: usize) -> impl Iterator<Item = (Coloring, KempeClique)> + 'g {
    enumerate_proper_colorings(g, q).filter_map(move |c| clique_unchecked(g, &c).map(|k| (c, k)))
}

struct RestartResult {
    found: Option<Coloring>,
    examined: u64,
    swaps: u64,
}

fn restart_seed(seed: u64, restart: u32) -> u64 {
    seed ^ (u64::from(restart) + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn kempe_walk(g: &Graph, q: usize, config: &SearchConfig) -> SearchOutcome {
    let budget = &config.budget;
    let mut stats = SearchStats::default();
    if g.n() == 0 {
        return exhaustive(g, q, budget);
    }
    // Exact fallback start, computed once and only if needed.
    let fallback = std::sync::OnceLock::new();
    let fallback_start = || -> Result<Option<Coloring>, ()> {
        fallback
            .get_or_init(|| k_coloring(g, q, budget.start_nodes).map_err(|_| ()))
            .clone()
    };
    if q == 0 || q < crate::chromatic::greedy_clique(g).len() {
        return SearchOutcome {
            status: SearchStatus::ProvenNonexistent { q },
            stats,
        };
    }
    let restarts = budget.max_restarts.max(1);
    let batch = rayon::current_num_threads().max(1) as u32;
    let mut next = 0u32;
    while next < restarts {
        let end = (next + batch).min(restarts);
        let results: Vec<Result<RestartResult, Option<()>>> = (next..end)
            .into_par_iter()
            .map(|r| walk_once(g, q, restart_seed(config.seed, r), budget, &fallback_start))
            .collect();
        for res in results {
            match res {
                Ok(r) => {
                    stats.restarts += 1;
                    stats.colorings_examined += r.examined;
                    stats.swaps += r.swaps;
                    if let Some(coloring) = r.found {
                        let clique = clique_unchecked(g, &coloring).expect("hit was verified");
                        return SearchOutcome {
                            status: SearchStatus::Found { coloring, clique },
                            stats,
                        };
                    }
                }
                // No proper q-coloring at all.
                Err(None) => {
                    return SearchOutcome {
                        status: SearchStatus::ProvenNonexistent { q },
                        stats: SearchStats::default(),
                    }
                }
                // Could not even produce a starting coloring within budget.
                Err(Some(())) => {
                    return SearchOutcome {
                        status: SearchStatus::BudgetExhausted,
                        stats,
                    }
                }
            }
        }
        next = end;
    }
    SearchOutcome {
        status: SearchStatus::BudgetExhausted,
        stats,
    }
}

/// One seeded restart. `Err(None)` proves there is no proper `q`-coloring;
/// `Err(Some(()))` means the starting-point search ran out of budget.
fn walk_once(
    g: &Graph,
    q: usize,
    seed: u64,
    budget: &SearchBudget,
    fallback: &dyn Fn() -> Result<Option<Coloring>, ()>,
) -> Result<RestartResult, Option<()>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = match (0..16).find_map(|_| random_dsatur(g, q, &mut rng)) {
        Some(c) => c,
        None => match fallback() {
            Ok(Some(c)) => c,
            Ok(None) => return Err(None),
            Err(()) => return Err(Some(())),
        },
    };
    let cap = budget.swaps_per_restart();
    let stagnation_limit = 50 * g.n() as u64;
    let pairs: Vec<ColorPair> = ColorPair::all(q).collect();
    let mut visited = HashSet::new();
    visited.insert(cur.canonical_fingerprint());
    let mut res = RestartResult {
        found: None,
        examined: 1,
        swaps: 0,
    };
    if is_correct_unchecked(g, &cur) {
        res.found = Some(cur);
        return Ok(res);
    }
    if pairs.is_empty() {
        return Ok(res);
    }
    let mut stale = 0u64;
    let mut members = Vec::new();
    while res.swaps < cap && stale < stagnation_limit {
        let pair = pairs[rng.gen_range(0..pairs.len())];
        let (labels, count) = chain_labels(g, &cur, pair);
        res.swaps += 1;
        if count == 0 {
            stale += 1;
            continue;
        }
        let pick = rng.gen_range(0..count);
        members.clear();
        members.extend(g.vertices().filter(|&v| labels[v] == pick));
        swap_members(&mut cur, pair, &members);
        if visited.insert(cur.canonical_fingerprint()) {
            stale = 0;
            res.examined += 1;
            if is_correct_unchecked(g, &cur) {
                res.found = Some(cur);
                return Ok(res);
            }
        } else {
            stale += 1;
        }
    }
    Ok(res)
}
