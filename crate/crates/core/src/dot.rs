//! Graphviz export.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::coloring::Coloring;
use crate::graph::{Graph, Vertex};
use crate::kempe::Backbone;
use crate::minor::MinorModel;

const PALETTE: &[&str] = &[
    "#e41a1c", "#377eb8", "#4daf4a", "#ffff33", "#ff7f00", "#a65628", "#f781bf", "#999999", "#66c2a5",
    "#fc8d62", "#8da0cb", "#e78ac3",
];

fn fill(c: usize) -> String {
    match PALETTE.get(c - 1) {
        Some(hex) => (*hex).to_owned(),
        // Spread extra colors around the hue circle.
        None => format!("{:.3} 0.6 0.9", ((c as f64) * 0.618_034).fract()),
    }
}

/// Colored graph. `anchors` are drawn as boxes; edges of `backbones` are
/// drawn thick and purple.
pub fn coloring_dot(g: &Graph, c: &Coloring, anchors: &[Vertex], backbones: &[Backbone]) -> String {
    let ribbon: HashSet<(Vertex, Vertex)> = backbones.iter().flat_map(|b| b.edges()).collect();
    let mut out = String::from("graph G {\n  node [style=filled, shape=circle];\n");
    for v in g.vertices() {
        let shape = if anchors.contains(&v) { ", shape=box, penwidth=2" } else { "" };
        let _ = writeln!(
            out,
            "  {v} [label=\"{v}:{}\", fillcolor=\"{}\"{shape}];",
            c.color(v),
            fill(c.color(v))
        );
    }
    for (u, v) in g.edges() {
        if ribbon.contains(&(u, v)) {
            let _ = writeln!(out, "  {u} -- {v} [color=purple, penwidth=4];");
        } else {
            let _ = writeln!(out, "  {u} -- {v};");
        }
    }
    out.push_str("}\n");
    out
}

/// Branch sets as clusters; vertices outside every set are grey.
pub fn minor_dot(g: &Graph, model: &MinorModel) -> String {
    let mut owner = vec![None; g.n()];
    for (s, set) in model.branch_sets.iter().enumerate() {
        for &v in set {
            owner[v] = Some(s);
        }
    }
    let mut out = String::from("graph G {\n  node [style=filled, shape=circle];\n");
    for (s, set) in model.branch_sets.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{} {{\n    label=\"{}\";", s + 1, s + 1);
        for &v in set {
            let shape = if model.seeds.get(s) == Some(&v) { ", shape=box" } else { "" };
            let _ = writeln!(out, "    {v} [fillcolor=\"{}\"{shape}];", fill(s + 1));
        }
        out.push_str("  }\n");
    }
    for v in g.vertices().filter(|&v| owner[v].is_none()) {
        let _ = writeln!(out, "  {v} [fillcolor=\"#dddddd\"];");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique::find_kempe_clique;
    use crate::generate::cycle;

    #[test]
    fn backbone_edges_are_emphasized() {
        let g = cycle(5).unwrap();
        let c = Coloring::new(3, vec![1, 2, 1, 2, 3]).unwrap();
        let k = find_kempe_clique(&g, &c).unwrap().unwrap();
        let dot = coloring_dot(&g, &c, &k.anchors, &k.backbones);
        assert!(dot.starts_with("graph G {"));
        assert_eq!(dot.matches("purple").count(), 5);
        assert_eq!(dot.matches("shape=box").count(), 3);
    }

    #[test]
    fn clusters() {
        let g = cycle(5).unwrap();
        let m = MinorModel {
            q: 3,
            branch_sets: vec![vec![0, 1], vec![2, 3], vec![4]],
            seeds: vec![0, 3, 4],
        };
        let dot = minor_dot(&g, &m);
        assert_eq!(dot.matches("subgraph cluster_").count(), 3);
    }
}
