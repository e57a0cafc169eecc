//! Critical vertices, Kempe chains, Kempe swaps and backbones.
//!
//! Criticality is always measured against the coloring's palette: a vertex
//! of color `i` is critical when its neighborhood shows all `q - 1` other
//! colors.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, Coloring, ColoringError};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KempeError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("invalid color pair ({i}, {j}) for palette 1..={q}")]
    InvalidPair { i: Color, j: Color, q: usize },
    #[error("chain was computed for a different graph or coloring")]
    StaleChain,
    #[error("vertex {0} is not critical")]
    NotCritical(Vertex),
    #[error("anchors {0} and {1} share color {2}")]
    SameColorAnchors(Vertex, Vertex, Color),
    #[error("vertex {v} outside 0..{n}")]
    VertexOutOfRange { v: Vertex, n: usize },
}

/// An unordered pair of distinct colors, stored with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(Color, Color)", into = "(Color, Color)")]
pub struct ColorPair {
    i: Color,
    j: Color,
}

impl ColorPair {
    /// Normalizes the order. `None` when the colors coincide or one is 0.
    pub fn new(a: Color, b: Color) -> Option<Self> {
        if a == b || a == 0 || b == 0 {
            None
        } else {
            Some(ColorPair { i: a.min(b), j: a.max(b) })
        }
    }

    pub fn i(self) -> Color {
        self.i
    }

    pub fn j(self) -> Color {
        self.j
    }

    pub fn contains(self, c: Color) -> bool {
        c == self.i || c == self.j
    }

    /// The other color of the pair.
    pub fn partner(self, c: Color) -> Color {
        if c == self.i {
            self.j
        } else {
            self.i
        }
    }

    /// Errors unless both colors are in `1..=q`.
    pub fn check(self, q: usize) -> Result<(), KempeError> {
        if self.j <= q {
            Ok(())
        } else {
            Err(KempeError::InvalidPair { i: self.i, j: self.j, q })
        }
    }

    /// All `(q² − q) / 2` pairs in lexicographic order.
    pub fn all(q: usize) -> impl Iterator<Item = ColorPair> {
        (1..=q).flat_map(move |i| (i + 1..=q).map(move |j| ColorPair { i, j }))
    }

    /// Position of the pair in [`ColorPair::all`].
    pub fn index(self, q: usize) -> usize {
        let (i, j) = (self.i - 1, self.j - 1);
        i * (2 * q - i - 1) / 2 + (j - i - 1)
    }
}

impl TryFrom<(Color, Color)> for ColorPair {
    type Error = String;

    fn try_from((a, b): (Color, Color)) -> Result<Self, Self::Error> {
        ColorPair::new(a, b).ok_or_else(|| format!("({a}, {b}) is not a pair of distinct colors"))
    }
}

impl From<ColorPair> for (Color, Color) {
    fn from(p: ColorPair) -> Self {
        (p.i, p.j)
    }
}

impl fmt::Display for ColorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// Number of distinct colors among the neighbors of `v`.
pub fn neighbor_color_count(g: &Graph, c: &Coloring, v: Vertex) -> usize {
    let mut seen = vec![false; c.q() + 1];
    let mut count = 0;
    for &u in g.neighbors(v) {
        let cu = c.color(u);
        if !seen[cu] {
            seen[cu] = true;
            count += 1;
        }
    }
    count
}

/// `true` when `v` sees every palette color other than its own. Assumes `c`
/// is proper, so `v`'s own color never shows up among its neighbors.
pub fn is_critical(g: &Graph, c: &Coloring, v: Vertex) -> bool {
    c.q() >= 1 && neighbor_color_count(g, c, v) == c.q() - 1
}

/// Critical vertices grouped by color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalSet {
    q: usize,
    by_color: Vec<Vec<Vertex>>,
}

impl CriticalSet {
    pub fn q(&self) -> usize {
        self.q
    }

    /// Critical vertices of color `c`, ascending.
    pub fn of_color(&self, c: Color) -> &[Vertex] {
        &self.by_color[c - 1]
    }

    /// All critical vertices, ascending.
    pub fn all(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.by_color.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn len(&self) -> usize {
        self.by_color.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Colors with at least one critical vertex.
    pub fn colors_covered(&self) -> usize {
        self.by_color.iter().filter(|v| !v.is_empty()).count()
    }

    pub fn contains(&self, v: Vertex, color: Color) -> bool {
        color >= 1 && color <= self.q && self.by_color[color - 1].binary_search(&v).is_ok()
    }
}

pub fn critical_vertices(g: &Graph, c: &Coloring) -> Result<CriticalSet, KempeError> {
    c.check_proper(g)?;
    let mut by_color = vec![Vec::new(); c.q()];
    for v in g.vertices() {
        if is_critical(g, c, v) {
            by_color[c.color(v) - 1].push(v);
        }
    }
    Ok(CriticalSet { q: c.q(), by_color })
}

/// Identifies the graph and exact coloring a chain was computed against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainContext {
    pub graph: u64,
    pub coloring: u64,
}

impl ChainContext {
    pub fn of(g: &Graph, c: &Coloring) -> Self {
        ChainContext {
            graph: g.fingerprint(),
            coloring: c.fingerprint(),
        }
    }
}

/// A connected component of the subgraph induced by two color classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempeChain {
    pub pair: ColorPair,
    /// Members in ascending id order.
    pub members: Vec<Vertex>,
    #[serde(skip_serializing)]
    #[serde(default = "ChainContext::detached")]
    pub context: ChainContext,
}

impl ChainContext {
    fn detached() -> Self {
        ChainContext { graph: 0, coloring: 0 }
    }
}

impl KempeChain {
    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Labels every vertex colored `pair.i` or `pair.j` with the index of its
/// chain; chains are numbered by their smallest member. Other vertices get
/// `usize::MAX`.
pub(crate) fn chain_labels(g: &Graph, c: &Coloring, pair: ColorPair) -> (Vec<usize>, usize) {
    let mut label = vec![usize::MAX; g.n()];
    let mut next = 0;
    let mut stack = Vec::new();
    for s in g.vertices() {
        if label[s] != usize::MAX || !pair.contains(c.color(s)) {
            continue;
        }
        label[s] = next;
        stack.push(s);
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if label[w] == usize::MAX && pair.contains(c.color(w)) {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    (label, next)
}

/// All `(i, j)`-Kempe chains, ordered by smallest member.
pub fn kempe_chains(g: &Graph, c: &Coloring, pair: ColorPair) -> Result<Vec<KempeChain>, KempeError> {
    c.check_proper(g)?;
    pair.check(c.q())?;
    let context = ChainContext::of(g, c);
    let (label, count) = chain_labels(g, c, pair);
    let mut chains: Vec<KempeChain> = (0..count)
        .map(|_| KempeChain {
            pair,
            members: Vec::new(),
            context,
        })
        .collect();
    for v in g.vertices() {
        if label[v] != usize::MAX {
            chains[label[v]].members.push(v);
        }
    }
    Ok(chains)
}

/// The `(i, j)`-chain containing `v`, where `v` must be colored `i` or `j`.
pub fn chain_of(g: &Graph, c: &Coloring, pair: ColorPair, v: Vertex) -> Result<KempeChain, KempeError> {
    c.check_proper(g)?;
    pair.check(c.q())?;
    if v >= g.n() {
        return Err(KempeError::VertexOutOfRange { v, n: g.n() });
    }
    let mut members = Vec::new();
    if pair.contains(c.color(v)) {
        let mut seen = vec![false; g.n()];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            members.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] && pair.contains(c.color(w)) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
    }
    Ok(KempeChain {
        pair,
        members,
        context: ChainContext::of(g, c),
    })
}

/// Exchanges the two colors on the members of `chain`.
///
/// The chain must have been computed against exactly this graph and
/// coloring; otherwise [`KempeError::StaleChain`] is returned.
pub fn kempe_swap(g: &Graph, c: &Coloring, chain: &KempeChain) -> Result<Coloring, KempeError> {
    if chain.context != ChainContext::of(g, c) {
        return Err(KempeError::StaleChain);
    }
    let pair = chain.pair;
    if chain
        .members
        .iter()
        .any(|&v| v >= g.n() || !pair.contains(c.color(v)))
    {
        return Err(KempeError::StaleChain);
    }
    let mut out = c.clone();
    for &v in &chain.members {
        out.set(v, pair.partner(c.color(v)));
    }
    Ok(out)
}

/// Swap without context bookkeeping, for hot loops that just computed the
/// chain from `c` themselves.
pub(crate) fn swap_members(c: &mut Coloring, pair: ColorPair, members: &[Vertex]) {
    for &v in members {
        let cv = c.color(v);
        c.set(v, pair.partner(cv));
    }
}

/// A path inside one Kempe chain joining two critical anchors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Backbone {
    pub pair: ColorPair,
    /// `(X_i, X_j)`: anchor of color `pair.i()` first.
    pub anchors: (Vertex, Vertex),
    /// Vertex sequence from `anchors.0` to `anchors.1`.
    pub path: Vec<Vertex>,
    /// Number of edges on the path.
    pub length: usize,
}

impl Backbone {
    pub fn internal(&self) -> &[Vertex] {
        if self.path.len() <= 2 {
            &[]
        } else {
            &self.path[1..self.path.len() - 1]
        }
    }

    /// Path edges normalized to `(min, max)`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.path.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1])))
    }
}

/// Shortest path between `from` and `to` through vertices colored `i` or
/// `j`, taking the smallest-id next vertex at every step.
pub(crate) fn chain_path(g: &Graph, c: &Coloring, pair: ColorPair, from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
    // Distances from `to`, then walk greedily down from `from`.
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    dist[to] = 0;
    queue.push_back(to);
    while let Some(u) = queue.pop_front() {
        if u == from {
            break;
        }
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX && pair.contains(c.color(w)) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    if dist[from] == usize::MAX {
        return None;
    }
    let mut path = vec![from];
    let mut cur = from;
    while cur != to {
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| dist[w] != usize::MAX && dist[w] + 1 == dist[cur])
            .expect("BFS layers are consistent");
        path.push(cur);
    }
    Some(path)
}

/// Backbone between two critical vertices of distinct colors, or `None` when
/// they lie in different chains of their color pair.
pub fn find_backbone(g: &Graph, c: &Coloring, xi: Vertex, xj: Vertex) -> Result<Option<Backbone>, KempeError> {
    c.check_proper(g)?;
    for v in [xi, xj] {
        if v >= g.n() {
            return Err(KempeError::VertexOutOfRange { v, n: g.n() });
        }
        if !is_critical(g, c, v) {
            return Err(KempeError::NotCritical(v));
        }
    }
    let (ci, cj) = (c.color(xi), c.color(xj));
    let Some(pair) = ColorPair::new(ci, cj) else {
        return Err(KempeError::SameColorAnchors(xi, xj, ci));
    };
    let (a, b) = if ci < cj { (xi, xj) } else { (xj, xi) };
    Ok(backbone_unchecked(g, c, pair, a, b))
}

/// [`find_backbone`] without validation. `a` has color `pair.i()`.
pub(crate) fn backbone_unchecked(g: &Graph, c: &Coloring, pair: ColorPair, a: Vertex, b: Vertex) -> Option<Backbone> {
    chain_path(g, c, pair, a, b).map(|path| Backbone {
        pair,
        anchors: (a, b),
        length: path.len() - 1,
        path,
    })
}

/// Result of running the swap loop that tries to clear the critical
/// vertices of one color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Elimination {
    /// A critical `a`-vertex shares its `(a, b)`-chain with a critical
    /// `b`-vertex; swapping would only trade the two anchors.
    BackboneFound {
        backbone: Backbone,
        swaps: usize,
        coloring: Coloring,
    },
    /// No critical vertex of color `a` is left.
    AllEliminated { coloring: Coloring, swaps: usize },
}

impl Elimination {
    pub fn swaps(&self) -> usize {
        match self {
            Elimination::BackboneFound { swaps, .. } | Elimination::AllEliminated { swaps, .. } => *swaps,
        }
    }

    pub fn coloring(&self) -> &Coloring {
        match self {
            Elimination::BackboneFound { coloring, .. } | Elimination::AllEliminated { coloring, .. } => coloring,
        }
    }
}

/// Repeatedly takes the lowest-id critical vertex of color `a`. If its
/// `(a, b)`-chain holds a critical `b`-vertex, the backbone between them is
/// returned; otherwise the chain is swapped, which turns every critical
/// `a`-vertex in it into a critical `b`-vertex.
pub fn eliminate_critical_color(g: &Graph, c: &Coloring, a: Color, b: Color) -> Result<Elimination, KempeError> {
    c.check_proper(g)?;
    let pair = ColorPair::new(a, b).ok_or(KempeError::InvalidPair { i: a, j: b, q: c.q() })?;
    pair.check(c.q())?;
    let mut cur = c.clone();
    let initial = cur.class(a).into_iter().filter(|&v| is_critical(g, &cur, v)).count();
    let mut swaps = 0;
    loop {
        let Some(x) = cur.class(a).into_iter().find(|&v| is_critical(g, &cur, v)) else {
            return Ok(Elimination::AllEliminated { coloring: cur, swaps });
        };
        let chain = chain_of(g, &cur, pair, x)?;
        let partner = chain
            .members
            .iter()
            .copied()
            .find(|&v| cur.color(v) == b && is_critical(g, &cur, v));
        if let Some(y) = partner {
            let (lo, hi) = if a < b { (x, y) } else { (y, x) };
            let backbone = backbone_unchecked(g, &cur, pair, lo, hi).expect("anchors share a chain");
            return Ok(Elimination::BackboneFound {
                backbone,
                swaps,
                coloring: cur,
            });
        }
        cur = kempe_swap(g, &cur, &chain)?;
        swaps += 1;
        assert!(swaps <= initial, "each swap removes at least one critical vertex of color {a}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle};

    fn c5() -> (Graph, Coloring) {
        (cycle(5).unwrap(), Coloring::new(3, vec![1, 2, 1, 2, 3]).unwrap())
    }

    #[test]
    fn pair_basics() {
        let p = ColorPair::new(3, 1).unwrap();
        assert_eq!((p.i(), p.j()), (1, 3));
        assert_eq!(p.partner(1), 3);
        assert!(ColorPair::new(2, 2).is_none());
        let all: Vec<_> = ColorPair::all(4).collect();
        assert_eq!(all.len(), 6);
        for (k, p) in all.iter().enumerate() {
            assert_eq!(p.index(4), k);
        }
    }

    #[test]
    fn critical_on_k4_and_c5() {
        let g = complete(4).unwrap();
        let c = Coloring::new(4, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(critical_vertices(&g, &c).unwrap().all(), vec![0, 1, 2, 3]);
        let (g, c) = c5();
        let cs = critical_vertices(&g, &c).unwrap();
        assert_eq!(cs.all(), vec![0, 3, 4]);
        assert_eq!(cs.of_color(1), &[0]);
        assert_eq!(cs.of_color(2), &[3]);
        assert_eq!(cs.of_color(3), &[4]);
    }

    #[test]
    fn critical_rejects_improper() {
        let g = cycle(5).unwrap();
        let c = Coloring::new(3, vec![1, 2, 1, 2, 1]).unwrap();
        assert!(matches!(critical_vertices(&g, &c), Err(KempeError::Coloring(_))));
    }

    #[test]
    fn chains_on_c5() {
        let (g, c) = c5();
        let p12 = kempe_chains(&g, &c, ColorPair::new(1, 2).unwrap()).unwrap();
        assert_eq!(p12.len(), 1);
        assert_eq!(p12[0].members, vec![0, 1, 2, 3]);
        let p13 = kempe_chains(&g, &c, ColorPair::new(1, 3).unwrap()).unwrap();
        assert_eq!(p13.iter().map(|k| k.members.clone()).collect::<Vec<_>>(), vec![vec![0, 4], vec![2]]);
        assert!(matches!(
            kempe_chains(&g, &c, ColorPair::new(1, 4).unwrap()),
            Err(KempeError::InvalidPair { .. })
        ));
    }

    #[test]
    fn isolated_vertex_is_singleton_chain() {
        let g = Graph::empty(1);
        let c = Coloring::new(2, vec![1]).unwrap();
        let chains = kempe_chains(&g, &c, ColorPair::new(1, 2).unwrap()).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].members, vec![0]);
    }

    #[test]
    fn swap_on_c5() {
        let (g, c) = c5();
        let chain = kempe_chains(&g, &c, ColorPair::new(1, 2).unwrap()).unwrap().remove(0);
        let d = kempe_swap(&g, &c, &chain).unwrap();
        assert_eq!(d.as_slice(), &[2, 1, 2, 1, 3]);
        assert!(d.check_proper(&g).is_ok());
        for &v in &chain.members {
            assert_eq!(is_critical(&g, &c, v), is_critical(&g, &d, v));
        }
        // The old chain is stale against the new coloring.
        assert_eq!(kempe_swap(&g, &d, &chain).unwrap_err(), KempeError::StaleChain);
        let again = kempe_chains(&g, &d, ColorPair::new(1, 2).unwrap()).unwrap().remove(0);
        assert_eq!(again.members, chain.members);
        assert_eq!(kempe_swap(&g, &d, &again).unwrap(), c);
    }

    #[test]
    fn even_cycle_global_exchange() {
        let g = cycle(6).unwrap();
        let c = Coloring::new(2, vec![1, 2, 1, 2, 1, 2]).unwrap();
        let chains = kempe_chains(&g, &c, ColorPair::new(1, 2).unwrap()).unwrap();
        assert_eq!(chains.len(), 1);
        let d = kempe_swap(&g, &c, &chains[0]).unwrap();
        assert_eq!(d.as_slice(), &[2, 1, 2, 1, 2, 1]);
    }

    #[test]
    fn backbone_on_c5() {
        let (g, c) = c5();
        let b = find_backbone(&g, &c, 0, 3).unwrap().unwrap();
        assert_eq!(b.path, vec![0, 1, 2, 3]);
        assert_eq!(b.length, 3);
        assert_eq!(b.internal(), &[1, 2]);
        // Reversed argument order gives the same, color-oriented backbone.
        assert_eq!(find_backbone(&g, &c, 3, 0).unwrap().unwrap(), b);
        assert_eq!(find_backbone(&g, &c, 2, 3).unwrap_err(), KempeError::NotCritical(2));
    }

    #[test]
    fn backbone_on_k4() {
        let g = complete(4).unwrap();
        let c = Coloring::new(4, vec![1, 2, 3, 4]).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    assert_eq!(find_backbone(&g, &c, u, v).unwrap().unwrap().length, 1);
                }
            }
        }
    }

    #[test]
    fn backbone_same_color_rejected() {
        let g = complete(3).unwrap();
        let g2 = Graph::from_edges(4, g.edges().chain([(0, 3), (1, 3)])).unwrap();
        // Vertex 3 and vertex 2 both color 3 and critical.
        let c = Coloring::new(3, vec![1, 2, 3, 3]).unwrap();
        assert!(matches!(
            find_backbone(&g2, &c, 2, 3),
            Err(KempeError::SameColorAnchors(2, 3, 3))
        ));
    }

    #[test]
    fn backbone_lexicographic_shortest() {
        // 0 (color 1) to 5 (color 2) via either 1-2 or 3-4.
        let g = Graph::from_edges(6, [(0, 3), (3, 4), (4, 5), (0, 1), (1, 2), (2, 5)]).unwrap();
        let c = Coloring::new(2, vec![1, 2, 1, 2, 1, 2]).unwrap();
        let path = chain_path(&g, &c, ColorPair::new(1, 2).unwrap(), 0, 5).unwrap();
        assert_eq!(path, vec![0, 1, 2, 5]);
    }

    #[test]
    fn eliminate_on_k4() {
        let g = complete(4).unwrap();
        let c = Coloring::new(4, vec![1, 2, 3, 4]).unwrap();
        match eliminate_critical_color(&g, &c, 1, 2).unwrap() {
            Elimination::BackboneFound { backbone, swaps, .. } => {
                assert_eq!(swaps, 0);
                assert_eq!(backbone.length, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn eliminate_non_chromatic_c5() {
        let g = cycle(5).unwrap();
        let c = Coloring::new(4, vec![1, 2, 1, 2, 4]).unwrap();
        assert_eq!(
            eliminate_critical_color(&g, &c, 4, 3).unwrap(),
            Elimination::AllEliminated { coloring: c, swaps: 0 }
        );
    }

    #[test]
    fn eliminate_swaps_when_chain_has_no_partner() {
        // Path 0-1-2 colored 1,2,3 plus pendant 3 on vertex 2 colored 1.
        // q = 3. Vertex 1 (color 2) sees {1,3}: critical. Vertex 2 (color 3)
        // sees {2,1}: critical. Vertices 0 and 3 (color 1) each see one
        // color: not critical.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = Coloring::new(3, vec![1, 2, 3, 1]).unwrap();
        // (2,1) loop: X_2 = 1, its (1,2)-chain {0,1} has no critical 1-vertex.
        let out = eliminate_critical_color(&g, &c, 2, 1).unwrap();
        match out {
            Elimination::AllEliminated { coloring, swaps } => {
                assert_eq!(swaps, 1);
                assert_eq!(coloring.as_slice(), &[2, 1, 3, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
