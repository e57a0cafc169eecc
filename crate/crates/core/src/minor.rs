//! Growing complete-minor models from the anchors of a Kempe clique.
//!
//! Each anchor seeds a branch set. Color pairs are handled shortest backbone
//! first: a pair whose branch sets already touch needs nothing, otherwise
//! internal backbone vertices are handed to the two sets so the sets become
//! adjacent along the backbone. Bounded backtracking revisits both the split
//! points and the order in which open pairs are handled, since one pair's
//! split can make another pair adjacent for free. Failure means only that
//! the heuristic gave up.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::clique::KempeClique;
use crate::coloring::Coloring;
use crate::graph::{Graph, Vertex};
use crate::kempe::ColorPair;

/// Default backtracking node limit for [`grow_minor_from_clique`].
pub const DEFAULT_GROWTH_NODES: u64 = 10_000;

/// Branch sets witnessing a `K_q` minor. Index `c - 1` belongs to color `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    pub q: usize,
    /// Sorted vertex sets.
    pub branch_sets: Vec<Vec<Vertex>>,
    pub seeds: Vec<Vertex>,
}

impl MinorModel {
    /// Keeps only the branch sets at the given positions.
    pub fn restrict(&self, keep: &[usize]) -> MinorModel {
        MinorModel {
            q: keep.len(),
            branch_sets: keep.iter().map(|&i| self.branch_sets[i].clone()).collect(),
            seeds: keep.iter().map(|&i| self.seeds[i]).collect(),
        }
    }

    /// Sizes of the branch sets, in color order.
    pub fn sizes(&self) -> Vec<usize> {
        self.branch_sets.iter().map(Vec::len).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MinorViolation {
    WrongSetCount { q: usize, sets: usize, seeds: usize },
    VertexOutOfRange { set: usize, vertex: Vertex },
    Overlap { first: usize, second: usize, vertex: Vertex },
    Disconnected { set: usize },
    EmptySet { set: usize },
    SeedMissing { set: usize, seed: Vertex },
    NotAdjacent { first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorReport {
    pub valid: bool,
    pub violations: Vec<MinorViolation>,
    /// `q` for a valid model, 0 otherwise.
    pub hadwiger_lower_bound: usize,
}

fn connected_within(g: &Graph, set: &[Vertex], member: &[bool]) -> bool {
    let Some(&start) = set.first() else {
        return true;
    };
    let mut seen = std::collections::HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if member[w] && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == set.len()
}

pub fn verify_minor_model(g: &Graph, model: &MinorModel) -> MinorReport {
    let mut violations = Vec::new();
    let q = model.q;
    if model.branch_sets.len() != q || model.seeds.len() != q {
        violations.push(MinorViolation::WrongSetCount {
            q,
            sets: model.branch_sets.len(),
            seeds: model.seeds.len(),
        });
        return MinorReport {
            valid: false,
            violations,
            hadwiger_lower_bound: 0,
        };
    }
    let n = g.n();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (s, set) in model.branch_sets.iter().enumerate() {
        if set.is_empty() {
            violations.push(MinorViolation::EmptySet { set: s });
        }
        for &v in set {
            if v >= n {
                violations.push(MinorViolation::VertexOutOfRange { set: s, vertex: v });
                continue;
            }
            match owner[v] {
                Some(first) if first != s => violations.push(MinorViolation::Overlap {
                    first,
                    second: s,
                    vertex: v,
                }),
                _ => owner[v] = Some(s),
            }
        }
        if !set.contains(&model.seeds[s]) {
            violations.push(MinorViolation::SeedMissing {
                set: s,
                seed: model.seeds[s],
            });
        }
        let mut member = vec![false; n];
        for &v in set.iter().filter(|&&v| v < n) {
            member[v] = true;
        }
        let inside: Vec<Vertex> = set.iter().copied().filter(|&v| v < n).collect();
        if !connected_within(g, &inside, &member) {
            violations.push(MinorViolation::Disconnected { set: s });
        }
    }
    let mut touching = vec![vec![false; q]; q];
    for (s, set) in model.branch_sets.iter().enumerate() {
        for &u in set.iter().filter(|&&u| u < n) {
            for &w in g.neighbors(u) {
                for (t, other) in model.branch_sets.iter().enumerate() {
                    if t != s && other.contains(&w) {
                        touching[s][t] = true;
                    }
                }
            }
        }
    }
    for s in 0..q {
        for t in s + 1..q {
            if !touching[s][t] {
                violations.push(MinorViolation::NotAdjacent { first: s, second: t });
            }
        }
    }
    let valid = violations.is_empty();
    MinorReport {
        valid,
        violations,
        hadwiger_lower_bound: if valid { q } else { 0 },
    }
}

/// One way to make a pair adjacent: vertices handed to set `i` and to set `j`.
#[derive(Debug, Clone)]
struct Assignment {
    to_i: Vec<Vertex>,
    to_j: Vec<Vertex>,
}

struct Grower<'a> {
    g: &'a Graph,
    q: usize,
    /// Pairs in processing order, with their backbone paths.
    pairs: Vec<(ColorPair, &'a [Vertex])>,
    owner: Vec<Option<usize>>,
    /// Ownership states already explored without success.
    dead: HashSet<Vec<Option<usize>>>,
    nodes: u64,
    limit: u64,
}

impl Grower<'_> {
    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.g.vertices().any(|u| {
            self.owner[u] == Some(a) && self.g.neighbors(u).iter().any(|&w| self.owner[w] == Some(b))
        })
    }

    fn usable(&self, v: Vertex, set: usize) -> bool {
        self.owner[v].is_none() || self.owner[v] == Some(set)
    }

    /// Candidate assignments for one pair, fewest newly claimed vertices
    /// first, then the most even split of them between the two sets.
    /// `path` runs from the `i` anchor to the `j` anchor.
    fn candidates(&self, i: usize, j: usize, path: &[Vertex]) -> Vec<Assignment> {
        let inner = &path[1..path.len() - 1];
        let len = inner.len();
        let mut out: Vec<(usize, usize, Assignment)> = Vec::new();
        // Prefix-only: extend set i along the path until it touches set j.
        for s in 1..=len {
            let prefix = &inner[..s];
            if !prefix.iter().all(|&v| self.usable(v, i)) {
                break;
            }
            let touches = self.g.neighbors(prefix[s - 1]).iter().any(|&w| self.owner[w] == Some(j));
            if touches {
                out.push((self.fresh(prefix), 0, Assignment { to_i: prefix.to_vec(), to_j: Vec::new() }));
                break;
            }
        }
        // Suffix-only: extend set j backwards until it touches set i.
        for s in (0..len).rev() {
            let suffix = &inner[s..];
            if !suffix.iter().all(|&v| self.usable(v, j)) {
                break;
            }
            let touches = self.g.neighbors(suffix[0]).iter().any(|&w| self.owner[w] == Some(i));
            if touches {
                out.push((self.fresh(suffix), 1, Assignment { to_i: Vec::new(), to_j: suffix.to_vec() }));
                break;
            }
        }
        // Full splits: prefix to i, the rest to j.
        for s in 0..=len {
            let (pre, suf) = inner.split_at(s);
            if pre.iter().all(|&v| self.usable(v, i)) && suf.iter().all(|&v| self.usable(v, j)) {
                let fresh = self.fresh(pre) + self.fresh(suf);
                out.push((fresh, 2 + s, Assignment { to_i: pre.to_vec(), to_j: suf.to_vec() }));
            }
        }
        out.sort_by_key(|(fresh, rank, a)| (*fresh, self.fresh(&a.to_i).max(self.fresh(&a.to_j)), *rank));
        out.into_iter().map(|(_, _, a)| a).collect()
    }

    fn fresh(&self, vs: &[Vertex]) -> usize {
        vs.iter().filter(|&&v| self.owner[v].is_none()).count()
    }

    fn apply(&mut self, i: usize, j: usize, a: &Assignment) -> Vec<Vertex> {
        let mut claimed = Vec::new();
        for (set, vs) in [(i, &a.to_i), (j, &a.to_j)] {
            for &v in vs {
                if self.owner[v].is_none() {
                    self.owner[v] = Some(set);
                    claimed.push(v);
                }
            }
        }
        claimed
    }

    fn undo(&mut self, claimed: &[Vertex]) {
        for &v in claimed {
            self.owner[v] = None;
        }
    }

    /// `None` when the node limit is hit. Every open pair is a branching
    /// option, shortest backbone first. Each step claims at least one fresh
    /// vertex, so states never repeat along a branch and a revisited state
    /// is known to fail.
    fn solve(&mut self) -> Option<bool> {
        let open: Vec<(usize, usize, &[Vertex])> = self
            .pairs
            .iter()
            .map(|&(p, path)| (p.i() - 1, p.j() - 1, path))
            .filter(|&(i, j, _)| !self.adjacent(i, j))
            .collect();
        if open.is_empty() {
            return Some(true);
        }
        if !self.dead.insert(self.owner.clone()) {
            return Some(false);
        }
        for (i, j, path) in open {
            for a in self.candidates(i, j, path) {
                self.nodes += 1;
                if self.nodes > self.limit {
                    return None;
                }
                let claimed = self.apply(i, j, &a);
                debug_assert!(!claimed.is_empty());
                match self.solve() {
                    Some(true) => return Some(true),
                    Some(false) => self.undo(&claimed),
                    None => return None,
                }
            }
        }
        Some(false)
    }

    fn model(&self, seeds: Vec<Vertex>) -> MinorModel {
        let mut branch_sets = vec![Vec::new(); self.q];
        for v in self.g.vertices() {
            if let Some(s) = self.owner[v] {
                branch_sets[s].push(v);
            }
        }
        MinorModel {
            q: self.q,
            branch_sets,
            seeds,
        }
    }
}

pub fn grow_minor_from_clique(g: &Graph, c: &Coloring, clique: &KempeClique) -> Option<MinorModel> {
    grow_minor_with_limit(g, c, clique, DEFAULT_GROWTH_NODES)
}

/// Growth with an explicit backtracking node limit. The returned model has
/// always passed [`verify_minor_model`].
pub fn grow_minor_with_limit(g: &Graph, c: &Coloring, clique: &KempeClique, limit: u64) -> Option<MinorModel> {
    if clique.validate(g).is_err() || c.len() != g.n() {
        return None;
    }
    let q = clique.q;
    let mut owner = vec![None; g.n()];
    for (s, &a) in clique.anchors.iter().enumerate() {
        debug_assert_eq!(c.color(a), s + 1);
        owner[a] = Some(s);
    }
    let mut pairs: Vec<(ColorPair, &[Vertex])> = clique.backbones.iter().map(|b| (b.pair, b.path.as_slice())).collect();
    pairs.sort_by_key(|&(p, path)| (path.len(), p));
    let mut grower = Grower {
        g,
        q,
        pairs,
        owner,
        dead: HashSet::new(),
        nodes: 0,
        limit,
    };
    if grower.solve() != Some(true) {
        return None;
    }
    let model = grower.model(clique.anchors.clone());
    verify_minor_model(g, &model).valid.then_some(model)
}
