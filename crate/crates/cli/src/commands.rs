use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use kempe_core::chromatic::{chromatic_number_with_budget, ChromaticError, DEFAULT_NODE_BUDGET};
use kempe_core::clique::{find_kempe_clique, verify_strong_immersion, KempeClique};
use kempe_core::coloring::Coloring;
use kempe_core::corpus::Corpus;
use kempe_core::dot::{coloring_dot, minor_dot};
use kempe_core::generate::Family;
use kempe_core::graph::Graph;
use kempe_core::harness::{Harness, SCHEMA_VERSION};
use kempe_core::io::{to_dimacs, Format};
use kempe_core::kempe::{critical_vertices, eliminate_critical_color, find_backbone, kempe_chains, ColorPair, Elimination};
use kempe_core::minor::{grow_minor_from_clique, verify_minor_model, MinorModel};
use kempe_core::search::{
    correct_colorings, search_correct_coloring, SearchBudget, SearchConfig, SearchOutcome, Strategy,
};
use kempe_core::source::{load_graph, GraphSource};

use crate::{Command, CorpusAction, Global, OutputFormat};

/// How many correct colorings `minor` tries when it has to find its own.
const MINOR_ATTEMPTS: usize = 100;

/// A finished command: what to print in each format, and the exit code.
struct Report {
    text: String,
    json: Value,
    dot: Option<String>,
    code: u8,
}

fn supports_dot(cmd: &Command) -> bool {
    !matches!(cmd, Command::Gen | Command::Corpus { .. } | Command::Harness)
}

pub fn run(g: &Global, cmd: &Command) -> Result<u8> {
    if g.format == OutputFormat::Dot && !supports_dot(cmd) {
        bail!("--format dot is not available for this command");
    }
    let report = match cmd {
        Command::Chi => chi(g)?,
        Command::Critical => critical(g)?,
        Command::Chains { pair } => chains(g, *pair)?,
        Command::Backbone { anchors } => backbone(g, *anchors)?,
        Command::Eliminate { colors } => eliminate(g, *colors)?,
        Command::Clique => clique(g)?,
        Command::Search => search(g)?,
        Command::ImmersionVerify => immersion(g)?,
        Command::Minor => minor(g)?,
        Command::Gen => generate(g)?,
        Command::Corpus { action } => corpus(action)?,
        Command::Harness => harness(g)?,
    };
    let body = match g.format {
        OutputFormat::Text => report.text,
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report.json)?;
            s.push('\n');
            s
        }
        OutputFormat::Dot => report.dot.ok_or_else(|| anyhow!("no DOT rendering for this result"))?,
    };
    emit(g.out.as_deref(), &body)?;
    Ok(report.code)
}

fn emit(out: Option<&Path>, body: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn family(g: &Global) -> Result<Option<Family>> {
    let Some(name) = g.family.as_deref() else {
        return Ok(None);
    };
    if name.contains(':') {
        return Ok(Some(name.parse()?));
    }
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| anyhow!("family `{name}` needs --{flag}"));
    let spec = match name {
        "cycle" | "path" | "wheel" => format!("{name}:{}", need(g.n, "n")?),
        "complete" => format!("complete:{}", need(g.k.or(g.n), "k")?),
        "gnp" | "random_gnp" => format!(
            "gnp:{},{},{}",
            need(g.n, "n")?,
            g.p.ok_or_else(|| anyhow!("family `{name}` needs --p"))?,
            g.seed
        ),
        "tree" | "random_tree" => format!("tree:{},{}", need(g.n, "n")?, g.seed),
        "catlin" => format!("catlin:{},{}", need(g.n, "n")?, need(g.k, "k")?),
        other => bail!("unknown family `{other}`"),
    };
    Ok(Some(spec.parse()?))
}

fn graph_source(g: &Global) -> Result<GraphSource> {
    match (g.graph.as_deref(), family(g)?) {
        (Some(_), Some(_)) => bail!("give either --graph or --family, not both"),
        (None, Some(f)) => Ok(GraphSource::Generator(f)),
        (Some("-"), None) => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text).context("reading graph from stdin")?;
            Ok(GraphSource::Text(text))
        }
        (Some(s), None) => Ok(match s.strip_prefix("corpus:") {
            Some(name) => GraphSource::Corpus(name.to_owned()),
            None => {
                let path = PathBuf::from(s);
                match Format::from_path(&path) {
                    Format::Dimacs => GraphSource::Dimacs(path),
                    Format::EdgeList => GraphSource::EdgeList(path),
                }
            }
        }),
        (None, None) => bail!("no graph given: use --graph PATH|-|corpus:NAME or --family"),
    }
}

fn load(g: &Global) -> Result<(Graph, String)> {
    let source = graph_source(g)?;
    let graph = load_graph(&source).with_context(|| format!("loading {source}"))?;
    Ok((graph, source.to_string()))
}

/// Reads `--coloring` and checks it is total and proper for the graph.
fn coloring(g: &Global, graph: &Graph) -> Result<Coloring> {
    let raw = g.coloring.as_deref().ok_or_else(|| anyhow!("this command needs --coloring"))?;
    let text = if raw.trim_start().starts_with('[') {
        raw.to_owned()
    } else {
        std::fs::read_to_string(raw).with_context(|| format!("reading coloring {raw}"))?
    };
    let c = Coloring::from_json(&text, g.q)?;
    c.check_total(graph)?;
    c.check_proper(graph)?;
    Ok(c)
}

fn list(vs: &[usize]) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn clique_text(k: &KempeClique) -> String {
    let mut s = format!("anchors (color: vertex): {}\n", {
        let a: Vec<String> = k.anchors.iter().enumerate().map(|(i, v)| format!("{}:{v}", i + 1)).collect();
        a.join(" ")
    });
    for b in &k.backbones {
        s.push_str(&format!("  {} length {}: {}\n", b.pair, b.length, list(&b.path)));
    }
    s
}

fn clique_dot(graph: &Graph, c: &Coloring, k: &KempeClique) -> String {
    coloring_dot(graph, c, &k.anchors, &k.backbones)
}

fn chi(g: &Global) -> Result<Report> {
    let (graph, name) = load(g)?;
    let budget = g.budget.unwrap_or(DEFAULT_NODE_BUDGET);
    match chromatic_number_with_budget(&graph, budget) {
        Ok(r) => Ok(Report {
            text: format!("{}\n", r.k),
            json: json!({
                "version": SCHEMA_VERSION,
                "graph": name,
                "chi": r.k,
                "witness": r.witness,
                "nodes": r.nodes,
            }),
            dot: Some(coloring_dot(&graph, &r.witness, &[], &[])),
            code: 0,
        }),
        Err(e @ ChromaticError::BudgetExceeded { lower, upper, .. }) => Ok(Report {
            text: format!("{e}\n"),
            json: json!({
                "version": SCHEMA_VERSION,
                "graph": name,
                "status": "budget_exhausted",
                "lower": lower,
                "upper": upper,
            }),
            dot: None,
            code: 1,
        }),
    }
}

fn critical(g: &Global) -> Result<Report> {
    let (graph, name) = load(g)?;
    let c = coloring(g, &graph)?;
    let set = critical_vertices(&graph, &c)?;
    let mut text = String::new();
    for color in 1..=c.q() {
        text.push_str(&format!("color {color}: {}\n", list(set.of_color(color))));
    }
    let per_color: Vec<&[usize]> = (1..=c.q()).map(|color| set.of_color(color)).collect();
    Ok(Report {
        text,
        json: json!({
            "version": SCHEMA_VERSION,
            "graph": name,
            "q": c.q(),
            "critical": per_color,
            "count": set.len(),
            "colors_covered": set.colors_covered(),
        }),
        dot: Some(coloring_dot(&graph, &c, &set.all(), &[])),
        code: 0,
    })
}

fn pair(c: &Coloring, (i, j): (usize, usize)) -> Result<ColorPair> {
    let p = ColorPair::new(i, j).ok_or_else(|| anyhow!("color pair needs two different colors, got {i},{j}"))?;
    p.check(c.q())?;
    Ok(p)
}

fn chains(g: &Global, p: (usize, usize)) -> Result<Report> {
    let (graph, name) = load(g)?;
    let c = coloring(g, &graph)?;
    let p = pair(&c, p)?;
    let chains = kempe_chains(&graph, &c, p)?;
    let text: String = chains.iter().map(|k| format!("{}\n", list(&k.members))).collect();
    Ok(Report {
        text,
        json: json!({ "version": SCHEMA_VERSION, "graph": name, "pair": p, "chains": chains }),
        dot: Some(coloring_dot(&graph, &c, &[], &[])),
        code: 0,
    })
}

fn backbone(g: &Global, (u, v): (usize, usize)) -> Result<Report> {
    let (graph, name) = load(g)?;
    let c = coloring(g, &graph)?;
    let b = find_backbone(&graph, &c, u, v)?;
    let text = match &b {
        Some(b) => format!("{} length {}: {}\n", b.pair, b.length, list(&b.path)),
        None => format!("{u} and {v} are not in a common Kempe chain\n"),
    };
    let dot = coloring_dot(&graph, &c, &[u, v], b.as_slice());
    Ok(Report {
        text,
        json: json!({ "version": SCHEMA_VERSION, "graph": name, "backbone": b }),
        dot: Some(dot),
        code: if b.is_some() { 0 } else { 3 },
    })
}

fn eliminate(g: &Global, (a, b): (usize, usize)) -> Result<Report> {
    let (graph, name) = load(g)?;
    let c = coloring(g, &graph)?;
    let e = eliminate_critical_color(&graph, &c, a, b)?;
    let (text, dot) = match &e {
        Elimination::BackboneFound { backbone, swaps, coloring } => (
            format!(
                "backbone found after {swaps} swap(s): {} {}\ncoloring {}\n",
                backbone.pair,
                list(&backbone.path),
                coloring.to_json()
            ),
            coloring_dot(&graph, coloring, &[backbone.anchors.0, backbone.anchors.1], std::slice::from_ref(backbone)),
        ),
        Elimination::AllEliminated { coloring, swaps } => (
            format!("no critical vertex of color {a} left after {swaps} swap(s)\ncoloring {}\n", coloring.to_json()),
            coloring_dot(&graph, coloring, &[], &[]),
        ),
    };
    Ok(Report {
        text,
        json: json!({ "version": SCHEMA_VERSION, "graph": name, "result": e }),
        dot: Some(dot),
        code: 0,
    })
}

fn clique(g: &Global) -> Result<Report> {
    let (graph, name) = load(g)?;
    let c = coloring(g, &graph)?;
    let k = find_kempe_clique(&graph, &c)?;
    Ok(Report {
        text: match &k {
            Some(k) => format!("Kempe clique with {} backbones\n{}", k.backbones.len(), clique_text(k)),
            None => "no Kempe clique: the coloring is not correct\n".into(),
        },
        dot: Some(match &k {
            Some(k) => clique_dot(&graph, &c, k),
            None => coloring_dot(&graph, &c, &[], &[]),
        }),
        code: if k.is_some() { 0 } else { 3 },
        json: json!({ "version": SCHEMA_VERSION, "graph": name, "found": k.is_some(), "clique": k }),
    })
}

fn search_config(g: &Global) -> Result<SearchConfig> {
    let strategy: Strategy = g.strategy.parse().map_err(|e: String| anyhow!(e))?;
    let mut budget = SearchBudget::default();
    if let Some(b) = g.budget {
        match strategy {
            Strategy::Exhaustive => budget.max_colorings = b,
            Strategy::KempeWalk => budget.max_swaps = b,
        }
    }
    if let Some(r) = g.restarts {
        budget.max_restarts = u32::try_from(r).context("--restarts is too large")?;
    }
    Ok(SearchConfig {
        strategy,
        budget,
        seed: g.seed,
        workers: g.workers,
    })
}

fn q_values(g: &Global) -> Result<Vec<usize>> {
    match (g.q, g.q_range.as_deref()) {
        (Some(_), Some(_)) => bail!("give either --q or --q-range, not both"),
        (Some(q), None) => Ok(vec![q]),
        (None, Some(r)) => {
            let (lo, hi) = r
                .split_once("..=")
                .or_else(|| r.split_once(".."))
                .or_else(|| r.split_once('-'))
                .ok_or_else(|| anyhow!("--q-range must look like 3..6"))?;
            let lo: usize = lo.trim().parse().context("--q-range start")?;
            let hi: usize = hi.trim().parse().context("--q-range end")?;
            if lo > hi {
                bail!("--q-range {r} is empty");
            }
            Ok((lo..=hi).collect())
        }
        (None, None) => bail!("this command needs --q or --q-range"),
    }
}

#[derive(Serialize)]
struct SearchRun<'a> {
    q: usize,
    strategy: Strategy,
    seed: u64,
    #[serde(flatten)]
    outcome: &'a SearchOutcome,
}

fn search(g: &Global) -> Result<Report> {
    let qs = q_values(g)?;
    let config = search_config(g)?;
    let (graph, name) = load(g)?;
    let mut outcomes = Vec::new();
    for &q in &qs {
        let out = search_correct_coloring(&graph, q, &config);
        let done = out.found().is_some();
        outcomes.push((q, out));
        if done {
            break;
        }
    }
    let mut text = String::new();
    for (q, o) in &outcomes {
        text.push_str(&format!(
            "q={q}: {} ({} colorings, {} swaps, {} restarts)\n",
            o.status_name(),
            o.stats.colorings_examined,
            o.stats.swaps,
            o.stats.restarts
        ));
        if let Some((c, k)) = o.found() {
            text.push_str(&format!("coloring {}\n{}", c.to_json(), clique_text(k)));
        }
    }
    let found = outcomes.iter().find_map(|(_, o)| o.found());
    let code = if found.is_some() {
        0
    } else if outcomes.iter().any(|(_, o)| o.exit_code() == 1) {
        1
    } else {
        3
    };
    let runs: Vec<SearchRun> = outcomes
        .iter()
        .map(|(q, o)| SearchRun {
            q: *q,
            strategy: config.strategy,
            seed: config.seed,
            outcome: o,
        })
        .collect();
    let json = if runs.len() == 1 && g.q_range.is_none() {
        let mut v = json!({ "version": SCHEMA_VERSION, "graph": name });
        if let (Value::Object(m), Value::Object(r)) = (&mut v, serde_json::to_value(&runs[0])?) {
            m.extend(r);
        }
        v
    } else {
        json!({ "version": SCHEMA_VERSION, "graph": name, "runs": runs })
    };
    Ok(Report {
        text,
        json,
        dot: found.map(|(c, k)| clique_dot(&graph, c, k)),
        code,
    })
}

fn immersion(g: &Global) -> Result<Report> {
    let (graph, name) = load(g)?;
    let c = coloring(g, &graph)?;
    let Some(k) = find_kempe_clique(&graph, &c)? else {
        return Ok(Report {
            text: "no Kempe clique: the coloring is not correct\n".into(),
            json: json!({ "version": SCHEMA_VERSION, "graph": name, "found": false }),
            dot: Some(coloring_dot(&graph, &c, &[], &[])),
            code: 3,
        });
    };
    let report = verify_strong_immersion(&graph, &k)?;
    let strong = report.is_strong();
    Ok(Report {
        text: format!(
            "edge-disjoint: {}\nanchors internal-free: {}\nstrong immersion: {}\n{}",
            report.edge_disjoint,
            report.anchors_internal_free,
            strong,
            clique_text(&k)
        ),
        dot: Some(clique_dot(&graph, &c, &k)),
        json: json!({ "version": SCHEMA_VERSION, "graph": name, "found": true, "clique": k, "report": report }),
        code: if strong { 0 } else { 1 },
    })
}

fn minor(g: &Global) -> Result<Report> {
    let (graph, name) = load(g)?;
    let model: Option<(Coloring, MinorModel)> = if g.coloring.is_some() {
        let c = coloring(g, &graph)?;
        let Some(k) = find_kempe_clique(&graph, &c)? else {
            return Ok(Report {
                text: "no Kempe clique: the coloring is not correct\n".into(),
                json: json!({ "version": SCHEMA_VERSION, "graph": name, "found": false }),
                dot: None,
                code: 3,
            });
        };
        grow_minor_from_clique(&graph, &c, &k).map(|m| (c, m))
    } else {
        let q = g.q.ok_or_else(|| anyhow!("minor needs --coloring or --q"))?;
        correct_colorings(&graph, q)
            .take(MINOR_ATTEMPTS)
            .find_map(|(c, k)| grow_minor_from_clique(&graph, &c, &k).map(|m| (c, m)))
    };
    let Some((c, m)) = model else {
        return Ok(Report {
            text: "minor growth gave up\n".into(),
            json: json!({ "version": SCHEMA_VERSION, "graph": name, "found": false }),
            dot: None,
            code: 1,
        });
    };
    let r = verify_minor_model(&graph, &m);
    let mut text = format!("K{} minor model, valid: {}\n", m.q, r.valid);
    for (i, set) in m.branch_sets.iter().enumerate() {
        text.push_str(&format!("  set {} (seed {}): {}\n", i + 1, m.seeds[i], list(set)));
    }
    Ok(Report {
        text,
        json: json!({
            "version": SCHEMA_VERSION,
            "graph": name,
            "found": true,
            "coloring": c,
            "q": m.q,
            "branch_sets": m.branch_sets,
            "seeds": m.seeds,
            "valid": r.valid,
            "hadwiger_lower_bound": r.hadwiger_lower_bound,
        }),
        dot: Some(minor_dot(&graph, &m)),
        code: if r.valid { 0 } else { 1 },
    })
}

fn generate(g: &Global) -> Result<Report> {
    if g.graph.is_some() {
        bail!("gen takes --family, not --graph");
    }
    let fam = family(g)?.ok_or_else(|| anyhow!("gen needs --family"))?;
    let graph = fam.generate()?;
    Ok(Report {
        text: to_dimacs(&graph, Some(&fam.to_string())),
        json: json!({
            "version": SCHEMA_VERSION,
            "family": fam.to_string(),
            "n": graph.n(),
            "edges": graph.edges().collect::<Vec<_>>(),
        }),
        dot: None,
        code: 0,
    })
}

fn corpus(action: &CorpusAction) -> Result<Report> {
    let corpus = Corpus::bundled();
    match action {
        CorpusAction::List => {
            let text = corpus
                .entries()
                .iter()
                .map(|e| format!("{:<12} n={:<3} {}\n", e.name, e.n, e.description))
                .collect();
            Ok(Report {
                text,
                json: json!({ "version": SCHEMA_VERSION, "graphs": corpus.entries() }),
                dot: None,
                code: 0,
            })
        }
        CorpusAction::Check { name } => {
            let names: Vec<String> = match name {
                Some(n) => {
                    corpus.entry(n)?;
                    vec![n.clone()]
                }
                None => corpus.entries().iter().map(|e| e.name.clone()).collect(),
            };
            let mut text = String::new();
            let mut results = Vec::new();
            let mut ok = true;
            for n in &names {
                match corpus.check(n) {
                    Ok(r) => {
                        text.push_str(&format!(
                            "{n}: ok n={} edges={} degrees={:?} chi={}\n",
                            r.n, r.edges, r.degrees, r.chi
                        ));
                        results.push(json!({ "name": n, "ok": true, "report": r }));
                    }
                    Err(e) => {
                        ok = false;
                        text.push_str(&format!("{n}: FAILED {e}\n"));
                        results.push(json!({ "name": n, "ok": false, "error": e.to_string() }));
                    }
                }
            }
            Ok(Report {
                text,
                json: json!({ "version": SCHEMA_VERSION, "results": results }),
                dot: None,
                code: if ok { 0 } else { 1 },
            })
        }
    }
}

fn harness(g: &Global) -> Result<Report> {
    let mut h = Harness::default();
    h.seed = g.seed;
    h.workers = g.workers;
    if let Some(b) = g.budget {
        h.koester_budget.max_swaps = b;
    }
    if let Some(r) = g.restarts {
        h.koester_budget.max_restarts = u32::try_from(r).context("--restarts is too large")?;
    }
    let report = h.run_all();
    let mut text: String = report.checks.iter().map(|c| format!("{}\n", c.line())).collect();
    let passed = report.checks.iter().filter(|c| c.passed).count();
    text.push_str(&format!("{passed}/{} checks passed\n", report.checks.len()));
    Ok(Report {
        text,
        json: serde_json::to_value(&report)?,
        dot: None,
        code: if report.all_passed { 0 } else { 1 },
    })
}
