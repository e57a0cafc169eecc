//! Canonical enumeration of proper colorings.
//!
//! A coloring is canonical when, scanning vertices by id, color `j + 1`
//! first appears after color `j`. Every class of colorings that differ only
//! by a palette permutation has exactly one canonical member, so the stream
//! visits each class once. Order is lexicographic in the color vector.

use crate::coloring::{Color, Coloring};
use crate::graph::Graph;

/// Iterator over canonical proper `q`-colorings of a graph.
#[derive(Debug, Clone)]
pub struct ColoringStream<'g> {
    g: &'g Graph,
    q: usize,
    colors: Vec<Color>,
    /// Next color to try at each depth.
    next: Vec<Color>,
    /// `prefix_max[d]` = largest color among vertices `0..d`.
    prefix_max: Vec<Color>,
    depth: usize,
    done: bool,
}

pub fn enumerate_proper_colorings(g: &Graph, q: usize) -> ColoringStream<'_> {
    let n = g.n();
    ColoringStream {
        g,
        q,
        colors: vec![0; n],
        next: vec![1; n],
        prefix_max: vec![0; n + 1],
        depth: 0,
        done: n > 0 && q == 0,
    }
}

impl ColoringStream<'_> {
    pub fn q(&self) -> usize {
        self.q
    }

    fn fits(&self, v: usize, c: Color) -> bool {
        self.g
            .neighbors(v)
            .iter()
            .take_while(|&&u| u < v)
            .all(|&u| self.colors[u] != c)
    }
}

impl Iterator for ColoringStream<'_> {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.done {
            return None;
        }
        let n = self.g.n();
        if n == 0 {
            self.done = true;
            return Some(Coloring::from_raw(self.q, Vec::new()));
        }
        loop {
            if self.depth == n {
                let out = Coloring::from_raw(self.q, self.colors.clone());
                self.depth = n - 1;
                return Some(out);
            }
            let d = self.depth;
            let limit = self.q.min(self.prefix_max[d] + 1);
            let found = (self.next[d]..=limit).find(|&c| self.fits(d, c));
            match found {
                Some(c) => {
                    self.colors[d] = c;
                    self.next[d] = c + 1;
                    self.prefix_max[d + 1] = self.prefix_max[d].max(c);
                    self.depth += 1;
                    if self.depth < n {
                        self.next[self.depth] = 1;
                    }
                }
                None => {
                    self.colors[d] = 0;
                    self.next[d] = 1;
                    if d == 0 {
                        self.done = true;
                        return None;
                    }
                    self.depth -= 1;
                }
            }
        }
    }
}

/// Number of labeled colorings represented by a canonical coloring that uses
/// `used` of `q` colors: `q! / (q - used)!`.
pub fn permutation_expansions(q: usize, used: usize) -> u128 {
    (0..used).map(|i| (q - i) as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;
    use crate::generate::{complete, cycle, random_gnp};

    /// Brute force: all `q^n` assignments, keep proper ones, canonicalize,
    /// dedupe.
    fn brute_canonical(g: &Graph, q: usize) -> (usize, usize) {
        let n = g.n();
        let mut labeled = 0;
        let mut classes = std::collections::BTreeSet::new();
        let total = (q as u64).pow(n as u32);
        for mut code in 0..total {
            let mut colors = Vec::with_capacity(n);
            for _ in 0..n {
                colors.push((code % q as u64) as usize + 1);
                code /= q as u64;
            }
            let c = Coloring::new(q, colors).unwrap();
            if is_proper(g, &c).unwrap() {
                labeled += 1;
                classes.insert(c.canonical().into_vec());
            }
        }
        (labeled, classes.len())
    }

    #[test]
    fn k3_has_one() {
        assert_eq!(enumerate_proper_colorings(&complete(3).unwrap(), 3).count(), 1);
    }

    #[test]
    fn c4_two_colors_has_one() {
        assert_eq!(enumerate_proper_colorings(&cycle(4).unwrap(), 2).count(), 1);
    }

    #[test]
    fn c5_three_colors() {
        let g = cycle(5).unwrap();
        let (labeled, classes) = brute_canonical(&g, 3);
        assert_eq!(labeled, 30);
        assert_eq!(classes, 5);
        let stream: Vec<_> = enumerate_proper_colorings(&g, 3).collect();
        assert_eq!(stream.len(), classes);
        assert!(stream.iter().all(|c| c.is_canonical() && is_proper(&g, c).unwrap()));
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(enumerate_proper_colorings(&Graph::empty(0), 3).count(), 1);
        assert_eq!(enumerate_proper_colorings(&Graph::empty(3), 0).count(), 0);
        assert_eq!(enumerate_proper_colorings(&complete(4).unwrap(), 3).count(), 0);
        // Edgeless graph on 3 vertices with 2 colors: 111, 112, 121, 122.
        assert_eq!(enumerate_proper_colorings(&Graph::empty(3), 2).count(), 4);
    }

    #[test]
    fn matches_brute_force_counts() {
        for seed in 0..30 {
            let n = 2 + (seed as usize % 6);
            let g = random_gnp(n, 0.45, seed).unwrap();
            for q in 1..=4 {
                let (labeled, classes) = brute_canonical(&g, q);
                let stream: Vec<_> = enumerate_proper_colorings(&g, q).collect();
                assert_eq!(stream.len(), classes, "seed {seed} q {q}");
                let expanded: u128 = stream
                    .iter()
                    .map(|c| permutation_expansions(q, c.colors_used()))
                    .sum();
                assert_eq!(expanded, labeled as u128);
            }
        }
    }

    #[test]
    fn order_is_lexicographic() {
        let g = cycle(6).unwrap();
        let v: Vec<Vec<usize>> = enumerate_proper_colorings(&g, 3).map(Coloring::into_vec).collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}
