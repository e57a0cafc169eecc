//! Kempe cliques and the strong-immersion check.
//!
//! A coloring with palette `q` is *correct* when one critical vertex per
//! color can be chosen so that every two chosen anchors lie in the same
//! Kempe chain of their color pair. The anchors together with one backbone
//! per pair form a Kempe clique.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, Coloring, ColoringError};
use crate::graph::{Graph, Vertex};
use crate::kempe::{backbone_unchecked, chain_labels, critical_vertices, Backbone, ColorPair, CriticalSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliqueError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("color {0} labels no vertex, so the coloring cannot be correct")]
    UnusedColor(Color),
    #[error("malformed clique: {0}")]
    Malformed(String),
}

/// One anchor per color and one backbone per color pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempeClique {
    pub q: usize,
    /// `anchors[c - 1]` is the critical vertex chosen for color `c`.
    pub anchors: Vec<Vertex>,
    /// Backbones in [`ColorPair::all`] order.
    pub backbones: Vec<Backbone>,
}

impl KempeClique {
    pub fn anchor(&self, c: Color) -> Vertex {
        self.anchors[c - 1]
    }

    pub fn backbone(&self, pair: ColorPair) -> &Backbone {
        &self.backbones[pair.index(self.q)]
    }

    /// Backbone lengths in pair order.
    pub fn lengths(&self) -> Vec<usize> {
        self.backbones.iter().map(|b| b.length).collect()
    }

    /// Checks the structural invariants against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), CliqueError> {
        let bad = |m: String| Err(CliqueError::Malformed(m));
        let q = self.q;
        if self.anchors.len() != q {
            return bad(format!("{} anchors for palette {q}", self.anchors.len()));
        }
        if let Some(&v) = self.anchors.iter().find(|&&v| v >= g.n()) {
            return bad(format!("anchor {v} outside the graph"));
        }
        let mut sorted = self.anchors.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return bad("anchors are not distinct".into());
        }
        let expected = q * q.saturating_sub(1) / 2;
        if self.backbones.len() != expected {
            return bad(format!("{} backbones, expected {expected}", self.backbones.len()));
        }
        for (pair, b) in ColorPair::all(q).zip(&self.backbones) {
            if b.pair != pair {
                return bad(format!("backbone for {} found where {pair} belongs", b.pair));
            }
            let ends = (self.anchor(pair.i()), self.anchor(pair.j()));
            if b.anchors != ends {
                return bad(format!("backbone {pair} anchored at {:?}, expected {ends:?}", b.anchors));
            }
            if b.path.first() != Some(&ends.0) || b.path.last() != Some(&ends.1) {
                return bad(format!("backbone {pair} path does not join its anchors"));
            }
            if b.length + 1 != b.path.len() {
                return bad(format!("backbone {pair} length {} disagrees with its path", b.length));
            }
            if let Some(w) = b.path.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
                return bad(format!("backbone {pair} uses non-edge ({}, {})", w[0], w[1]));
            }
            let mut seen = b.path.clone();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return bad(format!("backbone {pair} path is not simple"));
            }
        }
        Ok(())
    }
}

/// Chain labels for every color pair, indexed by [`ColorPair::index`].
pub(crate) struct PairLabels {
    q: usize,
    labels: Vec<Vec<usize>>,
}

impl PairLabels {
    pub(crate) fn new(g: &Graph, c: &Coloring) -> Self {
        let q = c.q();
        let labels = ColorPair::all(q).map(|p| chain_labels(g, c, p).0).collect();
        PairLabels { q, labels }
    }

    fn same_chain(&self, a: Color, u: Vertex, b: Color, v: Vertex) -> bool {
        let p = ColorPair::new(a, b).expect("distinct colors");
        let l = &self.labels[p.index(self.q)];
        l[u] == l[v]
    }
}

/// Backtracking search for an anchor transversal. Colors are visited by
/// ascending candidate count (then color), candidates by vertex id.
fn transversal(crit: &CriticalSet, labels: &PairLabels) -> Option<Vec<Vertex>> {
    let q = crit.q();
    if q == 0 {
        return Some(Vec::new());
    }
    let mut order: Vec<Color> = (1..=q).collect();
    order.sort_by_key(|&c| (crit.of_color(c).len(), c));
    if crit.of_color(order[0]).is_empty() {
        return None;
    }
    let mut chosen = vec![usize::MAX; q];

    fn rec(depth: usize, order: &[Color], crit: &CriticalSet, labels: &PairLabels, chosen: &mut [Vertex]) -> bool {
        let Some(&color) = order.get(depth) else {
            return true;
        };
        for &cand in crit.of_color(color) {
            let fits = order[..depth]
                .iter()
                .all(|&d| labels.same_chain(color, cand, d, chosen[d - 1]));
            if fits {
                chosen[color - 1] = cand;
                if rec(depth + 1, order, crit, labels, chosen) {
                    return true;
                }
            }
        }
        chosen[color - 1] = usize::MAX;
        false
    }

    rec(0, &order, crit, labels, &mut chosen).then_some(chosen)
}

fn check_all_used(c: &Coloring) -> Result<(), CliqueError> {
    match c.first_unused() {
        Some(color) => Err(CliqueError::UnusedColor(color)),
        None => Ok(()),
    }
}

/// Looks for a Kempe clique in `c`. `Ok(None)` means `c` is proper and uses
/// every color but is not a correct coloring.
pub fn find_kempe_clique(g: &Graph, c: &Coloring) -> Result<Option<KempeClique>, CliqueError> {
    c.check_proper(g)?;
    check_all_used(c)?;
    Ok(clique_unchecked(g, c))
}

/// [`find_kempe_clique`] for a coloring already known to be proper. Returns
/// `None` for colorings with an unused color.
pub(crate) fn clique_unchecked(g: &Graph, c: &Coloring) -> Option<KempeClique> {
    if c.first_unused().is_some() {
        return None;
    }
    let crit = critical_vertices(g, c).expect("caller guarantees a proper coloring");
    if crit.colors_covered() < c.q() {
        return None;
    }
    let labels = PairLabels::new(g, c);
    let anchors = transversal(&crit, &labels)?;
    let backbones = ColorPair::all(c.q())
        .map(|p| {
            backbone_unchecked(g, c, p, anchors[p.i() - 1], anchors[p.j() - 1])
                .expect("transversal anchors share a chain")
        })
        .collect();
    Some(KempeClique {
        q: c.q(),
        anchors,
        backbones,
    })
}

/// Fast yes/no variant used inside searches.
pub(crate) fn is_correct_unchecked(g: &Graph, c: &Coloring) -> bool {
    if c.first_unused().is_some() {
        return false;
    }
    let crit = critical_vertices(g, c).expect("caller guarantees a proper coloring");
    crit.colors_covered() == c.q() && transversal(&crit, &PairLabels::new(g, c)).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ImmersionViolation {
    SharedEdge {
        first: ColorPair,
        second: ColorPair,
        edge: (Vertex, Vertex),
    },
    AnchorInternal {
        anchor: Vertex,
        pair: ColorPair,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImmersionReport {
    pub edge_disjoint: bool,
    pub anchors_internal_free: bool,
    pub violations: Vec<ImmersionViolation>,
}

impl ImmersionReport {
    pub fn is_strong(&self) -> bool {
        self.edge_disjoint && self.anchors_internal_free
    }
}

/// Checks that the backbones of `clique` are pairwise edge-disjoint and that
/// no anchor sits strictly inside any backbone.
pub fn verify_strong_immersion(g: &Graph, clique: &KempeClique) -> Result<ImmersionReport, CliqueError> {
    clique.validate(g)?;
    let mut violations = Vec::new();
    let mut owner: std::collections::BTreeMap<(Vertex, Vertex), ColorPair> = Default::default();
    for b in &clique.backbones {
        for e in b.edges() {
            if let Some(&first) = owner.get(&e) {
                violations.push(ImmersionViolation::SharedEdge {
                    first,
                    second: b.pair,
                    edge: e,
                });
            } else {
                owner.insert(e, b.pair);
            }
        }
    }
    let edge_disjoint = violations.is_empty();
    let mut anchors_internal_free = true;
    for b in &clique.backbones {
        for &v in b.internal() {
            if clique.anchors.contains(&v) {
                anchors_internal_free = false;
                violations.push(ImmersionViolation::AnchorInternal { anchor: v, pair: b.pair });
            }
        }
    }
    Ok(ImmersionReport {
        edge_disjoint,
        anchors_internal_free,
        violations,
    })
}
