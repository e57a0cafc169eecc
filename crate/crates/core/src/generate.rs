//! Graph families: cycles, complete graphs, paths, wheels, seeded random
//! graphs, random trees, and the lexicographic product used for Catlin's
//! construction.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphError, Vertex};

/// A parameterized graph family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `C_n`, `n >= 3`.
    Cycle { n: usize },
    /// `K_k`, `k >= 1`.
    Complete { k: usize },
    /// `P_n` on `n >= 1` vertices.
    Path { n: usize },
    /// Hub vertex 0 joined to a rim cycle `1..=n`; `n >= 3`, so `n + 1`
    /// vertices. Odd `n` gives a 4-critical wheel.
    Wheel { n: usize },
    /// Erdős–Rényi `G(n, p)` drawn from a ChaCha8 stream seeded with `seed`.
    RandomGnp { n: usize, p: f64, seed: u64 },
    /// Uniform random recursive tree: vertex `v > 0` attaches to a uniformly
    /// chosen earlier vertex.
    RandomTree { n: usize, seed: u64 },
    /// Catlin's graph `C_{2n+1}[K_k]`.
    Catlin { n: usize, k: usize },
}

impl Family {
    pub fn generate(&self) -> Result<Graph, GraphError> {
        match *self {
            Family::Cycle { n } => cycle(n),
            Family::Complete { k } => complete(k),
            Family::Path { n } => path(n),
            Family::Wheel { n } => wheel(n),
            Family::RandomGnp { n, p, seed } => random_gnp(n, p, seed),
            Family::RandomTree { n, seed } => random_tree(n, seed),
            Family::Catlin { n, k } => catlin(n, k),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Cycle { n } => write!(f, "cycle:{n}"),
            Family::Complete { k } => write!(f, "complete:{k}"),
            Family::Path { n } => write!(f, "path:{n}"),
            Family::Wheel { n } => write!(f, "wheel:{n}"),
            Family::RandomGnp { n, p, seed } => write!(f, "gnp:{n},{p},{seed}"),
            Family::RandomTree { n, seed } => write!(f, "tree:{n},{seed}"),
            Family::Catlin { n, k } => write!(f, "catlin:{n},{k}"),
        }
    }
}

/// Parses `name:arg,arg,...`, e.g. `cycle:5`, `gnp:8,0.5,7`, `catlin:2,2`.
impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: String| GraphError::InvalidParams(msg);
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let args: Vec<&str> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',').map(str::trim).collect()
        };
        let int = |i: usize| -> Result<usize, GraphError> {
            let a = args
                .get(i)
                .ok_or_else(|| bad(format!("`{name}` needs argument {}", i + 1)))?;
            a.parse().map_err(|_| bad(format!("`{a}` is not a non-negative integer")))
        };
        let arity = |k: usize| -> Result<(), GraphError> {
            if args.len() == k {
                Ok(())
            } else {
                Err(bad(format!("`{name}` takes {k} argument(s), got {}", args.len())))
            }
        };
        let fam = match name {
            "cycle" => {
                arity(1)?;
                Family::Cycle { n: int(0)? }
            }
            "complete" => {
                arity(1)?;
                Family::Complete { k: int(0)? }
            }
            "path" => {
                arity(1)?;
                Family::Path { n: int(0)? }
            }
            "wheel" => {
                arity(1)?;
                Family::Wheel { n: int(0)? }
            }
            "gnp" | "random_gnp" => {
                arity(3)?;
                let p = args[1]
                    .parse()
                    .map_err(|_| bad(format!("`{}` is not a probability", args[1])))?;
                Family::RandomGnp {
                    n: int(0)?,
                    p,
                    seed: args[2].parse().map_err(|_| bad(format!("`{}` is not a seed", args[2])))?,
                }
            }
            "tree" | "random_tree" => {
                arity(2)?;
                Family::RandomTree {
                    n: int(0)?,
                    seed: args[1].parse().map_err(|_| bad(format!("`{}` is not a seed", args[1])))?,
                }
            }
            "catlin" => {
                arity(2)?;
                Family::Catlin { n: int(0)?, k: int(1)? }
            }
            other => return Err(bad(format!("unknown family `{other}`"))),
        };
        Ok(fam)
    }
}

fn need(ok: bool, msg: impl FnOnce() -> String) -> Result<(), GraphError> {
    if ok {
        Ok(())
    } else {
        Err(GraphError::InvalidParams(msg()))
    }
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    need(n >= 3, || format!("cycle needs n >= 3, got {n}"))?;
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(k: usize) -> Result<Graph, GraphError> {
    need(k >= 1, || "complete graph needs k >= 1".into())?;
    Graph::from_edges(k, (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))))
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    need(n >= 1, || "path needs n >= 1".into())?;
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn wheel(n: usize) -> Result<Graph, GraphError> {
    need(n >= 3, || format!("wheel needs a rim of at least 3 vertices, got {n}"))?;
    let spokes = (1..=n).map(|i| (0, i));
    let rim = (1..=n).map(|i| (i, i % n + 1));
    Graph::from_edges(n + 1, spokes.chain(rim))
}

pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    need(n >= 1, || "random graph needs n >= 1".into())?;
    need((0.0..=1.0).contains(&p), || format!("edge probability {p} outside [0, 1]"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GraphError> {
    need(n >= 1, || "tree needs n >= 1".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Graph::from_edges(n, (1..n).map(|v| (rng.gen_range(0..v), v)))
}

/// Lexicographic product `g[h]`: vertex `(u, x)` gets id `u * |h| + x`, and
/// `(u, x) ~ (v, y)` iff `u ~ v` in `g`, or `u == v` and `x ~ y` in `h`.
pub fn lexicographic_product(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    need(!g.is_empty() && !h.is_empty(), || "lexicographic product needs nonempty factors".into())?;
    let m = h.n();
    let id = |u: Vertex, x: Vertex| u * m + x;
    let mut edges = Vec::new();
    for u in g.vertices() {
        for (x, y) in h.edges() {
            edges.push((id(u, x), id(u, y)));
        }
    }
    for (u, v) in g.edges() {
        for x in h.vertices() {
            for y in h.vertices() {
                edges.push((id(u, x), id(v, y)));
            }
        }
    }
    Graph::from_edges(g.n() * m, edges)
}

/// `C_{2n+1}[K_k]`, with chromatic number `2k + ceil(k / n)`.
pub fn catlin(n: usize, k: usize) -> Result<Graph, GraphError> {
    need(n >= 1 && k >= 1, || format!("catlin needs n >= 1 and k >= 1, got ({n}, {k})"))?;
    lexicographic_product(&cycle(2 * n + 1)?, &complete(k)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        let c5 = cycle(5).unwrap();
        assert_eq!((c5.n(), c5.edge_count()), (5, 5));
        assert!(c5.vertices().all(|v| c5.degree(v) == 2));
        let k4 = complete(4).unwrap();
        assert_eq!((k4.n(), k4.edge_count()), (4, 6));
        let p4 = path(4).unwrap();
        assert_eq!(p4.edge_count(), 3);
        let w5 = wheel(5).unwrap();
        assert_eq!((w5.n(), w5.edge_count(), w5.degree(0)), (6, 10, 5));
        assert_eq!(w5.min_degree(), 3);
    }

    #[test]
    fn invalid_params() {
        assert!(cycle(2).is_err());
        assert!(complete(0).is_err());
        assert!(path(0).is_err());
        assert!(wheel(2).is_err());
        assert!(random_gnp(4, 1.5, 0).is_err());
        assert!(random_gnp(4, -0.1, 0).is_err());
        assert!(catlin(0, 2).is_err());
    }

    #[test]
    fn gnp_is_deterministic() {
        assert_eq!(random_gnp(8, 0.5, 7).unwrap(), random_gnp(8, 0.5, 7).unwrap());
        assert_eq!(random_gnp(6, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(random_gnp(6, 1.0, 1).unwrap().edge_count(), 15);
    }

    #[test]
    fn trees_are_trees() {
        for seed in 0..20 {
            let t = random_tree(12, seed).unwrap();
            assert_eq!(t.edge_count(), 11);
            assert!(t.is_connected());
        }
    }

    #[test]
    fn catlin_2_2_degrees_by_brute_force() {
        // Count neighbors directly from the product definition.
        let c5 = cycle(5).unwrap();
        let g = catlin(2, 2).unwrap();
        assert_eq!(g.n(), 10);
        for a in 0..10 {
            let (u, x) = (a / 2, a % 2);
            let expected = (0..10)
                .filter(|&b| {
                    let (v, y) = (b / 2, b % 2);
                    c5.has_edge(u, v) || (u == v && x != y)
                })
                .count();
            assert_eq!(g.degree(a), expected);
            assert_eq!(g.degree(a), 5);
        }
    }

    #[test]
    fn product_with_k1_is_identity() {
        let h = random_gnp(7, 0.4, 3).unwrap();
        let p = lexicographic_product(&complete(1).unwrap(), &h).unwrap();
        assert_eq!(p, h);
    }

    #[test]
    fn parse_round_trip() {
        for s in ["cycle:5", "complete:4", "path:3", "wheel:7", "gnp:8,0.5,7", "tree:10,3", "catlin:2,3"] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("cycle".parse::<Family>().is_err());
        assert!("cycle:a".parse::<Family>().is_err());
        assert!("blob:3".parse::<Family>().is_err());
        assert!("catlin:2".parse::<Family>().is_err());
    }
}
