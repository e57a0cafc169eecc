//! Named reproduction checks with a pass/fail summary.
//!
//! Every clique produced by any check is also run through the strong
//! immersion verifier; [`Harness::immersion_check`] reports on all of them.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chromatic::chromatic_number;
use crate::clique::{find_kempe_clique, verify_strong_immersion, ImmersionReport, KempeClique};
use crate::coloring::remove_color_class;
use crate::corpus::Corpus;
use crate::enumerate::enumerate_proper_colorings;
use crate::generate::{catlin, complete, cycle, path, random_gnp, random_tree, wheel};
use crate::graph::{Graph, Vertex};
use crate::kempe::{
    critical_vertices, eliminate_critical_color, is_critical, kempe_chains, kempe_swap, neighbor_color_count,
    ColorPair, Elimination,
};
use crate::minor::{grow_minor_from_clique, verify_minor_model, MinorReport};
use crate::oracle;
use crate::search::{
    correct_colorings, search_correct_coloring, SearchBudget, SearchConfig, SearchOutcome, SearchStatus, Strategy,
};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {:<28} {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

/// One search run on a named instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub q: usize,
    pub strategy: Strategy,
    pub status: String,
    pub colorings_examined: u64,
    pub swaps: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueSummary {
    pub anchors: Vec<Vertex>,
    pub backbone_lengths: Vec<usize>,
}

/// Everything the checks learned about one named graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub graph: String,
    pub chi: Option<usize>,
    pub searches: Vec<SearchSummary>,
    pub clique: Option<CliqueSummary>,
    pub immersion: Option<ImmersionReport>,
    pub minor: Option<MinorReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub version: String,
    pub checks: Vec<CheckResult>,
    pub instances: Vec<InstanceResult>,
    pub all_passed: bool,
}

/// Graph family used by the elimination and swap-invariance checks: 200 seeded
/// `G(n, p)` graphs with `n` in `2..=12` and `p` cycling through 0.3, 0.5,
/// 0.7.
pub fn random_suite() -> Vec<(String, Graph)> {
    const PS: [f64; 3] = [0.3, 0.5, 0.7];
    (0..200u64)
        .map(|i| {
            let n = 2 + (i as usize % 11);
            let p = PS[i as usize % 3];
            let g = random_gnp(n, p, 1000 + i).expect("valid parameters");
            (format!("gnp:{n},{p},{}", 1000 + i), g)
        })
        .collect()
}

/// Connected graphs on at most 7 vertices for the oracle comparison.
pub fn oracle_suite(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=7);
        let p = rng.gen_range(0.25..0.9);
        let g = random_gnp(n, p, rng.gen()).expect("valid parameters");
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

#[derive(Default)]
pub struct Harness {
    pub seed: u64,
    pub workers: Option<usize>,
    pub koester_budget: SearchBudget,
    /// `(label, strong)` for every clique seen so far.
    immersions: Vec<(String, bool)>,
    instances: Vec<InstanceResult>,
}

/// `"0 failures"` or the count with the first failure spelled out.
fn tally<T: std::fmt::Display>(what: &str, items: &[T]) -> String {
    match items.first() {
        None => format!("0 {what}"),
        Some(first) => format!("{} {what}, first: {first}", items.len()),
    }
}

/// Runs one check and fails it if it overran its time limit.
fn timed(id: u32, name: &str, limit_secs: u64, f: impl FnOnce() -> (bool, String)) -> CheckResult {
    let start = Instant::now();
    let (mut passed, mut detail) = f();
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(limit_secs) {
        passed = false;
        detail.push_str(&format!("; over the {limit_secs}s limit"));
    }
    CheckResult {
        id,
        name: name.to_owned(),
        passed,
        detail,
        elapsed,
    }
}

impl Harness {
    fn config(&self, strategy: Strategy) -> SearchConfig {
        SearchConfig {
            strategy,
            budget: SearchBudget::default(),
            seed: self.seed,
            workers: self.workers,
        }
    }

    fn record(&mut self, label: String, g: &Graph, clique: &KempeClique) -> Option<ImmersionReport> {
        let report = verify_strong_immersion(g, clique).ok();
        let strong = report.as_ref().is_some_and(ImmersionReport::is_strong);
        self.immersions.push((label, strong));
        report
    }

    fn instance(&mut self, graph: &str) -> &mut InstanceResult {
        let at = match self.instances.iter().position(|i| i.graph == graph) {
            Some(at) => at,
            None => {
                self.instances.push(InstanceResult {
                    graph: graph.to_owned(),
                    chi: None,
                    searches: Vec::new(),
                    clique: None,
                    immersion: None,
                    minor: None,
                });
                self.instances.len() - 1
            }
        };
        &mut self.instances[at]
    }

    fn note_search(&mut self, graph: &str, q: usize, strategy: Strategy, out: &SearchOutcome) {
        self.instance(graph).searches.push(SearchSummary {
            q,
            strategy,
            status: out.status_name().to_owned(),
            colorings_examined: out.stats.colorings_examined,
            swaps: out.stats.swaps,
        });
    }

    /// Records a clique found on a named instance, with its immersion report.
    fn note_clique(&mut self, graph: &str, g: &Graph, k: &KempeClique) {
        let report = self.record(graph.to_owned(), g, k);
        let inst = self.instance(graph);
        inst.clique = Some(CliqueSummary {
            anchors: k.anchors.clone(),
            backbone_lengths: k.lengths(),
        });
        inst.immersion = report;
    }

    pub fn instances(&self) -> &[InstanceResult] {
        &self.instances
    }

    pub fn run_all(&mut self) -> HarnessReport {
        let checks = vec![
            self.catlin_chromatic(),
            self.catlin_gap(),
            self.catlin_minor(),
            self.koester(),
            self.elimination_backbones(),
            self.swap_invariance(),
            self.k_critical(),
            self.uniquely_colorable(),
            self.oracle_equivalence(),
            self.immersion_check(),
        ];
        let all_passed = checks.iter().all(|c| c.passed);
        HarnessReport {
            version: SCHEMA_VERSION.into(),
            checks,
            instances: self.instances.clone(),
            all_passed,
        }
    }

    /// 1: chi(C5[K2]) = 5 and chi(C5[K3]) = 8, each under 10 s.
    pub fn catlin_chromatic(&mut self) -> CheckResult {
        let mut chis = Vec::new();
        let r = timed(1, "catlin-chromatic", 20, || {
            let mut notes = Vec::new();
            let mut ok = true;
            for (k, expected) in [(2, 5), (3, 8)] {
                let start = Instant::now();
                let got = chromatic_number(&catlin(2, k).expect("valid")).map(|c| c.k);
                let slow = start.elapsed() >= Duration::from_secs(10);
                ok &= got.as_ref().is_ok_and(|&x| x == expected) && !slow;
                let got = match got {
                    Ok(x) => {
                        chis.push((k, x));
                        x.to_string()
                    }
                    Err(e) => e.to_string(),
                };
                notes.push(format!("catlin(2,{k}) chi {got}, expected {expected}{}", if slow { ", over 10s" } else { "" }));
            }
            (ok, notes.join("; "))
        });
        for (k, x) in chis {
            self.instance(&format!("catlin:2,{k}")).chi = Some(x);
        }
        r
    }

    /// 2: exhaustive search proves no correct 5-coloring of C5[K2] and finds
    /// a correct 6-coloring.
    pub fn catlin_gap(&mut self) -> CheckResult {
        let g = catlin(2, 2).expect("valid");
        let cfg = self.config(Strategy::Exhaustive);
        let mut runs = Vec::new();
        let r = timed(2, "catlin-correct-gap", 300, || {
            let q5 = search_correct_coloring(&g, 5, &cfg);
            let q6 = search_correct_coloring(&g, 6, &cfg);
            let ok5 = q5.status == SearchStatus::ProvenNonexistent { q: 5 };
            let in_time = q5.stats.elapsed + q6.stats.elapsed < Duration::from_secs(300);
            let passed = ok5 && q6.found().is_some() && in_time;
            let detail = format!(
                "q=5 {} after {} colorings; q=6 {} after {} colorings",
                q5.status_name(),
                q5.stats.colorings_examined,
                q6.status_name(),
                q6.stats.colorings_examined
            );
            runs = vec![(5, q5), (6, q6)];
            (passed, detail)
        });
        for (q, out) in &runs {
            self.note_search("catlin:2,2", *q, Strategy::Exhaustive, out);
            if let Some((_, k)) = out.found() {
                self.note_clique("catlin:2,2", &g, k);
            }
        }
        r
    }


    /// 3: a valid K6 model grows from one of the first 100 correct
    /// 6-colorings of C5[K2].
    pub fn catlin_minor(&mut self) -> CheckResult {
        let g = catlin(2, 2).expect("valid");
        let mut seen = Vec::new();
        let mut minor = None;
        let r = timed(3, "catlin-k6-minor", 300, || {
            for (idx, (c, k)) in correct_colorings(&g, 6).take(100).enumerate() {
                seen.push(k.clone());
                if let Some(model) = grow_minor_from_clique(&g, &c, &k) {
                    let report = verify_minor_model(&g, &model);
                    let mut sizes = model.sizes();
                    sizes.sort_unstable();
                    minor = Some(report.clone());
                    return (
                        report.valid && report.hadwiger_lower_bound == 6,
                        format!(
                            "correct coloring #{} {:?} gives branch-set sizes {:?}, bound {}",
                            idx + 1,
                            c.as_slice(),
                            sizes,
                            report.hadwiger_lower_bound
                        ),
                    );
                }
            }
            (false, format!("no model from {} correct colorings", seen.len()))
        });
        for (i, k) in seen.iter().enumerate() {
            self.record(format!("catlin:2,2 correct #{}", i + 1), &g, k);
        }
        self.instance("catlin:2,2").minor = minor;
        r
    }

    /// 4: corpus graph invariants, then a Kempe walk finds a correct
    /// 4-coloring. A q=5 walk is run for the record only.
    pub fn koester(&mut self) -> CheckResult {
        let corpus = Corpus::bundled();
        let mut graph = None;
        let mut chi = None;
        let mut runs = Vec::new();
        let budget = self.koester_budget;
        let cfg = SearchConfig {
            budget,
            ..self.config(Strategy::KempeWalk)
        };
        let r = timed(4, "koester", 600, || {
            let check = match corpus.check("koester") {
                Ok(c) => c,
                Err(e) => return (false, e.to_string()),
            };
            let g = corpus.load("koester").expect("checked above");
            let valid = check.n == 40 && check.degrees == [4] && check.chi == 4;
            chi = Some(check.chi);
            let q4 = search_correct_coloring(&g, 4, &cfg);
            let q5 = search_correct_coloring(&g, 5, &cfg);
            let found = q4.found().is_some();
            let detail = format!(
                "n={} degrees={:?} chi={}; q=4 walk {} after {} swaps/{} restarts; q=5 walk {} after {} swaps (evidence only)",
                check.n,
                check.degrees,
                check.chi,
                q4.status_name(),
                q4.stats.swaps,
                q4.stats.restarts,
                q5.status_name(),
                q5.stats.swaps
            );
            graph = Some(g);
            runs = vec![(4, q4), (5, q5)];
            (valid && found && budget.max_restarts <= 64, detail)
        });
        self.instance("corpus:koester").chi = chi;
        for (q, out) in &runs {
            self.note_search("corpus:koester", *q, Strategy::KempeWalk, out);
            if let (Some(g), Some((_, k))) = (&graph, out.found()) {
                self.note_clique("corpus:koester", g, k);
            }
        }
        r
    }

    /// 5: under exact chromatic colorings, the elimination loop always ends
    /// at a backbone, and backbones of different pairs share no edge.
    pub fn elimination_backbones(&mut self) -> CheckResult {
        timed(5, "elimination-backbones", 300, || {
            let mut failures = Vec::new();
            let mut runs = 0;
            for (label, g) in random_suite() {
                let chi = chromatic_number(&g).expect("small graph");
                let c = chi.witness;
                for a in 1..=chi.k {
                    for b in (1..=chi.k).filter(|&b| b != a) {
                        runs += 1;
                        if let Ok(Elimination::BackboneFound { backbone, coloring, .. }) =
                            eliminate_critical_color(&g, &c, a, b)
                        {
                            if backbone.path.iter().any(|&v| !backbone.pair.contains(coloring.color(v))) {
                                failures.push(format!("{label} ({a},{b}): backbone leaves its chain"));
                            }
                        } else {
                            failures.push(format!("{label} ({a},{b}): no backbone"));
                        }
                    }
                }
            }
            (
                failures.is_empty(),
                format!("{runs} ordered pairs over 200 graphs, {}", tally("failures", &failures)),
            )
        })
    }

    /// 6: chromatic colorings carry a critical vertex of every color (so no
    /// color class can be dissolved), and random Kempe swaps keep colorings
    /// proper, keep member criticality, and undo themselves.
    pub fn swap_invariance(&mut self) -> CheckResult {
        let seed = self.seed;
        timed(6, "critical-coverage-swaps", 120, || {
            let suite = random_suite();
            let mut failures = Vec::new();
            let mut witnesses = Vec::new();
            for (label, g) in &suite {
                let chi = chromatic_number(g).expect("small graph");
                let crit = critical_vertices(g, &chi.witness).expect("proper");
                if crit.len() < chi.k || crit.colors_covered() != chi.k {
                    failures.push(format!("{label}: {} critical vertices over {} colors", crit.len(), crit.colors_covered()));
                }
                for a in 1..=chi.k {
                    if remove_color_class(g, &chi.witness, a).is_ok() {
                        failures.push(format!("{label}: color {a} removable from a chromatic coloring"));
                    }
                }
                if chi.k >= 2 {
                    witnesses.push((label, g, chi.witness));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0b5e);
            let mut swaps = 0;
            while swaps < 1000 && !witnesses.is_empty() {
                let w = rng.gen_range(0..witnesses.len());
                let (label, g, c) = &witnesses[w];
                let q = c.q();
                let pairs: Vec<ColorPair> = ColorPair::all(q).collect();
                let pair = pairs[rng.gen_range(0..pairs.len())];
                let chains = kempe_chains(g, c, pair).expect("proper");
                if chains.is_empty() {
                    continue;
                }
                let chain = &chains[rng.gen_range(0..chains.len())];
                let d = kempe_swap(g, c, chain).expect("fresh chain");
                swaps += 1;
                if d.check_proper(g).is_err() {
                    failures.push(format!("{label}: swap produced an improper coloring"));
                }
                for &v in &chain.members {
                    if neighbor_color_count(g, c, v) != neighbor_color_count(g, &d, v)
                        || is_critical(g, c, v) != is_critical(g, &d, v)
                    {
                        failures.push(format!("{label}: criticality of {v} changed"));
                    }
                }
                let back = kempe_chains(g, &d, pair)
                    .expect("proper")
                    .into_iter()
                    .find(|k| k.members == chain.members);
                match back.map(|k| kempe_swap(g, &d, &k)) {
                    Some(Ok(e)) if &e == c => {}
                    _ => failures.push(format!("{label}: double swap did not restore")),
                }
                // Walk on from the swapped coloring.
                witnesses[w].2 = d;
            }
            (
                failures.is_empty() && swaps == 1000,
                format!("200 chromatic colorings, {swaps} swaps, {}", tally("failures", &failures)),
            )
        })
    }

    /// 7: odd cycles, complete graphs and odd wheels are correctly
    /// colorable at q = chi.
    pub fn k_critical(&mut self) -> CheckResult {
        let family: Vec<(String, Graph)> = [5, 7, 9]
            .iter()
            .map(|&n| (format!("C{n}"), cycle(n).expect("valid")))
            .chain((3..=6).map(|k| (format!("K{k}"), complete(k).expect("valid"))))
            .chain([5, 7].iter().map(|&n| (format!("W{n}"), wheel(n).expect("valid"))))
            .collect();
        let cfg = self.config(Strategy::Exhaustive);
        let mut runs = Vec::new();
        let r = timed(7, "k-critical-family", 120, || {
            let mut bad = Vec::new();
            for (name, g) in &family {
                let chi = chromatic_number(g).expect("small").k;
                let out = search_correct_coloring(g, chi, &cfg);
                if out.found().is_none() {
                    bad.push(format!("{name}: {}", out.status_name()));
                }
                runs.push((name, g, chi, out));
            }
            (bad.is_empty(), format!("{} graphs, {}", family.len(), tally("failures", &bad)))
        });
        for (name, g, chi, out) in runs {
            self.instance(name).chi = Some(chi);
            self.note_search(name, chi, Strategy::Exhaustive, &out);
            if let Some((_, k)) = out.found() {
                self.note_clique(name, g, k);
            }
        }
        r
    }

    /// 8: connected bipartite graphs and complete graphs are correctly
    /// colored by their chromatic coloring.
    pub fn uniquely_colorable(&mut self) -> CheckResult {
        let mut family: Vec<(String, Graph)> = Vec::new();
        family.extend((1..=12).map(|n| (format!("P{n}"), path(n).expect("valid"))));
        family.extend((2..=7).map(|h| (format!("C{}", 2 * h), cycle(2 * h).expect("valid"))));
        for n in 2..=15 {
            for s in 0..3 {
                family.push((format!("tree:{n},{s}"), random_tree(n, s).expect("valid")));
            }
        }
        family.extend((1..=7).map(|k| (format!("K{k}"), complete(k).expect("valid"))));
        let mut found = Vec::new();
        let r = timed(8, "uniquely-colorable", 60, || {
            let mut bad = Vec::new();
            for (name, g) in &family {
                let chi = chromatic_number(g).expect("small");
                match find_kempe_clique(g, &chi.witness) {
                    Ok(Some(k)) => found.push((name.clone(), g.clone(), k)),
                    other => bad.push(format!("{name}: {other:?}")),
                }
            }
            (bad.is_empty(), format!("{} graphs, {}", family.len(), tally("failures", &bad)))
        });
        for (name, g, k) in found {
            self.record(name, &g, &k);
        }
        r
    }

    /// 9: exhaustive search and clique detection agree with brute force on
    /// 300 connected graphs with n <= 7 and q <= 4.
    pub fn oracle_equivalence(&mut self) -> CheckResult {
        let graphs = oracle_suite(300, self.seed ^ 0x0ac1e);
        let cfg = self.config(Strategy::Exhaustive);
        let mut found: Vec<(Graph, KempeClique)> = Vec::new();
        let r = timed(9, "oracle-equivalence", 600, || {
            let mut disagreements = Vec::new();
            let mut colorings = 0u64;
            for (gi, g) in graphs.iter().enumerate() {
                for q in 1..=4 {
                    let out = search_correct_coloring(g, q, &cfg);
                    let expected = oracle::correct_coloring_exists(g, q);
                    let got = match &out.status {
                        SearchStatus::Found { clique, .. } => {
                            found.push((g.clone(), clique.clone()));
                            true
                        }
                        SearchStatus::ProvenNonexistent { .. } => false,
                        SearchStatus::BudgetExhausted => {
                            disagreements.push(format!("graph {gi} q={q}: budget exhausted"));
                            continue;
                        }
                    };
                    if got != expected {
                        disagreements.push(format!("graph {gi} {g:?} q={q}: search {got}, oracle {expected}"));
                    }
                    for c in enumerate_proper_colorings(g, q).filter(|c| c.colors_used() == q) {
                        colorings += 1;
                        let fast = find_kempe_clique(g, &c).expect("proper, all colors used").is_some();
                        if fast != oracle::is_correct(g, c.as_slice(), q) {
                            disagreements.push(format!("graph {gi} q={q} coloring {:?}", c.as_slice()));
                        }
                    }
                }
            }
            (
                disagreements.is_empty(),
                format!(
                    "300 graphs x q=1..4, {colorings} colorings compared, {}",
                    tally("disagreements", &disagreements)
                ),
            )
        });
        for (i, (g, k)) in found.into_iter().enumerate() {
            self.record(format!("oracle #{i}"), &g, &k);
        }
        r
    }

    /// 10: every clique recorded by the other checks is a strong immersion.
    pub fn immersion_check(&mut self) -> CheckResult {
        let total = self.immersions.len();
        let bad: Vec<&String> = self.immersions.iter().filter(|(_, s)| !s).map(|(l, _)| l).collect();
        timed(10, "strong-immersion", 60, || {
            (
                bad.is_empty() && total > 0,
                format!("{total} cliques verified, {}", tally("failures", &bad)),
            )
        })
    }

    pub fn cliques_recorded(&self) -> usize {
        self.immersions.len()
    }
}

/// Anchors of a clique as `color -> vertex` pairs, for reports.
pub fn anchor_list(k: &KempeClique) -> Vec<(usize, Vertex)> {
    k.anchors.iter().enumerate().map(|(i, &v)| (i + 1, v)).collect()
}
