//! Exact chromatic number by DSATUR branch-and-bound.
//!
//! A greedy clique gives the lower bound and plain DSATUR the upper bound.
//! Each candidate `k` between them is then decided exactly by backtracking,
//! with the clique pre-colored `1..=ω` to break palette symmetry.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, Coloring};
use crate::graph::{Graph, Vertex};

/// Default node budget for exact searches.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChromaticError {
    #[error("exact search exceeded its budget of {budget} nodes (chi is in {lower}..={upper})")]
    BudgetExceeded { budget: u64, lower: usize, upper: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chromatic {
    pub k: usize,
    pub witness: Coloring,
    /// Search nodes spent across all decision runs.
    pub nodes: u64,
}

/// Greedy maximal clique: every vertex is tried as a seed and the clique
/// grows by the highest-degree compatible vertex (lowest id on ties).
pub fn greedy_clique(g: &Graph) -> Vec<Vertex> {
    let mut best: Vec<Vertex> = Vec::new();
    for seed in g.vertices() {
        let mut clique = vec![seed];
        let mut cands: Vec<Vertex> = g.neighbors(seed).to_vec();
        while !cands.is_empty() {
            let &pick = cands
                .iter()
                .max_by(|&&a, &&b| g.degree(a).cmp(&g.degree(b)).then(b.cmp(&a)))
                .expect("nonempty");
            clique.push(pick);
            cands.retain(|&v| v != pick && g.has_edge(pick, v));
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

/// DSATUR greedy coloring: repeatedly colors the vertex with most distinct
/// neighbor colors (then highest degree, then lowest id) with the smallest
/// available color.
pub fn dsatur(g: &Graph) -> Coloring {
    let n = g.n();
    let mut colors = vec![0usize; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0usize; n];
    let mut q = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == 0)
            .max_by(|&a, &b| sat[a].cmp(&sat[b]).then(g.degree(a).cmp(&g.degree(b))).then(b.cmp(&a)))
            .expect("uncolored vertex remains");
        let c = (1..).find(|&c| !seen[v].get(c).copied().unwrap_or(false)).expect("unbounded");
        colors[v] = c;
        q = q.max(c);
        for &u in g.neighbors(v) {
            if seen[u].len() <= c {
                seen[u].resize(c + 1, false);
            }
            if !seen[u][c] {
                seen[u][c] = true;
                sat[u] += 1;
            }
        }
    }
    Coloring::from_raw(q, colors)
}

/// Randomized DSATUR restricted to a palette of `q` colors: saturation ties
/// are broken at random and each vertex takes a uniformly random available
/// color. Returns `None` when some vertex runs out of colors.
pub fn random_dsatur<R: Rng>(g: &Graph, q: usize, rng: &mut R) -> Option<Coloring> {
    let n = g.n();
    let mut colors = vec![0usize; n];
    let mut count = vec![0u32; n * (q + 1)];
    let mut sat = vec![0usize; n];
    for _ in 0..n {
        let best = (0..n).filter(|&v| colors[v] == 0).map(|v| sat[v]).max()?;
        let ties: Vec<Vertex> = (0..n).filter(|&v| colors[v] == 0 && sat[v] == best).collect();
        let v = ties[rng.gen_range(0..ties.len())];
        let free: Vec<Color> = (1..=q).filter(|&c| count[v * (q + 1) + c] == 0).collect();
        if free.is_empty() {
            return None;
        }
        let c = free[rng.gen_range(0..free.len())];
        colors[v] = c;
        for &u in g.neighbors(v) {
            let slot = &mut count[u * (q + 1) + c];
            if *slot == 0 {
                sat[u] += 1;
            }
            *slot += 1;
        }
    }
    Some(Coloring::from_raw(q, colors))
}

/// Backtracking state for deciding `k`-colorability.
struct Decider<'g> {
    g: &'g Graph,
    k: usize,
    colors: Vec<Color>,
    /// `count[v * (k + 1) + c]` = neighbors of `v` with color `c`.
    count: Vec<u32>,
    sat: Vec<usize>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl<'g> Decider<'g> {
    fn new(g: &'g Graph, k: usize, budget: u64) -> Self {
        Decider {
            g,
            k,
            colors: vec![0; g.n()],
            count: vec![0; g.n() * (k + 1)],
            sat: vec![0; g.n()],
            nodes: 0,
            budget,
        }
    }

    fn assign(&mut self, v: Vertex, c: Color) {
        self.colors[v] = c;
        for &u in self.g.neighbors(v) {
            let slot = &mut self.count[u * (self.k + 1) + c];
            if *slot == 0 {
                self.sat[u] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: Vertex) {
        let c = self.colors[v];
        self.colors[v] = 0;
        for &u in self.g.neighbors(v) {
            let slot = &mut self.count[u * (self.k + 1) + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[u] -= 1;
            }
        }
    }

    fn pick(&self) -> Option<Vertex> {
        (0..self.g.n()).filter(|&v| self.colors[v] == 0).max_by(|&a, &b| {
            self.sat[a]
                .cmp(&self.sat[b])
                .then(self.g.degree(a).cmp(&self.g.degree(b)))
                .then(b.cmp(&a))
        })
    }

    fn search(&mut self, max_used: Color) -> Step {
        let Some(v) = self.pick() else {
            return Step::Found;
        };
        if self.sat[v] >= self.k {
            return Step::Exhausted;
        }
        let limit = self.k.min(max_used + 1);
        for c in 1..=limit {
            if self.count[v * (self.k + 1) + c] != 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            self.assign(v, c);
            match self.search(max_used.max(c)) {
                Step::Exhausted => self.unassign(v),
                done => return done,
            }
        }
        Step::Exhausted
    }
}

/// Decides whether `g` has a proper coloring with at most `k` colors. The
/// vertices of `clique` are pre-colored `1..=clique.len()`.
fn decide(g: &Graph, k: usize, clique: &[Vertex], budget: u64) -> (Option<Vec<Color>>, u64, bool) {
    if clique.len() > k {
        return (None, 0, false);
    }
    let mut d = Decider::new(g, k, budget);
    for (i, &v) in clique.iter().enumerate() {
        d.assign(v, i + 1);
    }
    match d.search(clique.len()) {
        Step::Found => (Some(d.colors), d.nodes, false),
        Step::Exhausted => (None, d.nodes, false),
        Step::OutOfBudget => (None, d.nodes, true),
    }
}

/// Exact `k`-colorability with a node budget. `Ok(None)` is a proof that no
/// proper `k`-coloring exists.
pub fn k_coloring(g: &Graph, k: usize, budget: u64) -> Result<Option<Coloring>, ChromaticError> {
    if g.n() == 0 {
        return Ok(Some(Coloring::from_raw(k, Vec::new())));
    }
    if k == 0 {
        return Ok(None);
    }
    let clique = greedy_clique(g);
    let (found, _, out) = decide(g, k, &clique, budget);
    if out {
        return Err(ChromaticError::BudgetExceeded {
            budget,
            lower: clique.len(),
            upper: g.n(),
        });
    }
    Ok(found.map(|c| Coloring::from_raw(k, c)))
}

pub fn chromatic_number(g: &Graph) -> Result<Chromatic, ChromaticError> {
    chromatic_number_with_budget(g, DEFAULT_NODE_BUDGET)
}

/// Exact chromatic number and a witness coloring using exactly `k` colors.
/// The empty graph has `k = 0`.
pub fn chromatic_number_with_budget(g: &Graph, budget: u64) -> Result<Chromatic, ChromaticError> {
    if g.n() == 0 {
        return Ok(Chromatic {
            k: 0,
            witness: Coloring::from_raw(0, Vec::new()),
            nodes: 0,
        });
    }
    let upper = dsatur(g);
    let clique = greedy_clique(g);
    let lower = clique.len();
    let mut nodes = 0u64;
    for k in lower..upper.q() {
        let (found, spent, out) = decide(g, k, &clique, budget.saturating_sub(nodes));
        nodes += spent;
        if out {
            return Err(ChromaticError::BudgetExceeded {
                budget,
                lower: k,
                upper: upper.q(),
            });
        }
        if let Some(colors) = found {
            return Ok(Chromatic {
                k,
                witness: Coloring::from_raw(k, colors),
                nodes,
            });
        }
    }
    Ok(Chromatic {
        k: upper.q(),
        witness: upper,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;
    use crate::generate::{catlin, complete, cycle, random_gnp, wheel};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn chi(g: &Graph) -> usize {
        let r = chromatic_number(g).unwrap();
        assert!(is_proper(g, &r.witness).unwrap());
        assert_eq!(r.witness.q(), r.k);
        assert_eq!(r.witness.colors_used(), r.k);
        r.k
    }

    #[test]
    fn small_values() {
        assert_eq!(chi(&Graph::empty(0)), 0);
        assert_eq!(chi(&Graph::empty(4)), 1);
        assert_eq!(chi(&cycle(4).unwrap()), 2);
        assert_eq!(chi(&cycle(5).unwrap()), 3);
        assert_eq!(chi(&complete(6).unwrap()), 6);
        assert_eq!(chi(&wheel(5).unwrap()), 4);
        assert_eq!(chi(&wheel(6).unwrap()), 3);
    }

    #[test]
    fn catlin_values() {
        assert_eq!(chi(&catlin(2, 2).unwrap()), 5);
        assert_eq!(chi(&catlin(2, 3).unwrap()), 8);
        assert_eq!(chi(&catlin(1, 2).unwrap()), 6);
    }

    #[test]
    fn budget_is_reported() {
        let g = catlin(2, 3).unwrap();
        assert!(matches!(
            chromatic_number_with_budget(&g, 10),
            Err(ChromaticError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn k_coloring_decisions() {
        let g = cycle(5).unwrap();
        assert!(k_coloring(&g, 2, DEFAULT_NODE_BUDGET).unwrap().is_none());
        let c = k_coloring(&g, 3, DEFAULT_NODE_BUDGET).unwrap().unwrap();
        assert!(is_proper(&g, &c).unwrap());
    }

    #[test]
    fn dsatur_is_proper_and_deterministic() {
        for seed in 0..20 {
            let g = random_gnp(12, 0.4, seed).unwrap();
            let c = dsatur(&g);
            assert!(is_proper(&g, &c).unwrap());
            assert_eq!(c, dsatur(&g));
        }
    }

    #[test]
    fn random_dsatur_respects_palette() {
        let g = cycle(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            if let Some(c) = random_dsatur(&g, 4, &mut rng) {
                assert!(is_proper(&g, &c).unwrap());
                assert_eq!(c.q(), 4);
            }
        }
        assert!(random_dsatur(&complete(4).unwrap(), 3, &mut rng).is_none());
    }

    #[test]
    fn greedy_clique_is_a_clique() {
        for seed in 0..10 {
            let g = random_gnp(14, 0.5, seed).unwrap();
            let c = greedy_clique(&g);
            for (i, &u) in c.iter().enumerate() {
                for &v in &c[i + 1..] {
                    assert!(g.has_edge(u, v));
                }
            }
        }
    }
}
