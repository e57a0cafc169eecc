//! Vertex colorings over a palette `1..=q`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::hash::Fnv64;
use crate::kempe::is_critical;

/// A color value. Colors are 1-based: a palette of size `q` is `1..=q`.
pub type Color = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring covers {got} vertices but the graph has {expected}")]
    NotTotal { expected: usize, got: usize },
    #[error("vertex {vertex} has color {color}, outside palette 1..={q}")]
    ColorOutOfRange { vertex: Vertex, color: Color, q: usize },
    #[error("edge ({u}, {v}) is monochromatic (color {color})")]
    Improper { u: Vertex, v: Vertex, color: Color },
    #[error("color {color} is outside palette 1..={q}")]
    InvalidColor { color: Color, q: usize },
    #[error("vertex {vertex} of color {color} is critical")]
    CriticalVertexPresent { vertex: Vertex, color: Color },
    #[error("invalid coloring JSON: {0}")]
    Json(String),
}

/// A total map from vertices to colors in `1..=q`.
///
/// Construction checks the palette range; properness is a separate question
/// answered by [`is_proper`] or enforced by [`Coloring::proper`].
///
/// Serializes as a bare array of colors; deserializing takes the largest
/// color as the palette size.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Color>", try_from = "Vec<Color>")]
pub struct Coloring {
    q: usize,
    colors: Vec<Color>,
}

impl From<Coloring> for Vec<Color> {
    fn from(c: Coloring) -> Self {
        c.colors
    }
}

impl TryFrom<Vec<Color>> for Coloring {
    type Error = ColoringError;

    fn try_from(colors: Vec<Color>) -> Result<Self, ColoringError> {
        let q = colors.iter().copied().max().unwrap_or(0);
        Coloring::new(q, colors)
    }
}

impl Coloring {
    pub fn new(q: usize, colors: Vec<Color>) -> Result<Self, ColoringError> {
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > q) {
            return Err(ColoringError::ColorOutOfRange { vertex, color, q });
        }
        Ok(Coloring { q, colors })
    }

    /// A coloring that is checked to be total and proper for `g`.
    pub fn proper(g: &Graph, q: usize, colors: Vec<Color>) -> Result<Self, ColoringError> {
        let c = Coloring::new(q, colors)?;
        c.check_proper(g)?;
        Ok(c)
    }

    /// Parses a JSON array of 1-based colors. The palette defaults to the
    /// largest color present.
    pub fn from_json(text: &str, q: Option<usize>) -> Result<Self, ColoringError> {
        let colors: Vec<Color> = serde_json::from_str(text).map_err(|e| ColoringError::Json(e.to_string()))?;
        let q = q.unwrap_or_else(|| colors.iter().copied().max().unwrap_or(0));
        Coloring::new(q, colors)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.colors).expect("a vector of integers always serializes")
    }

    pub(crate) fn from_raw(q: usize, colors: Vec<Color>) -> Self {
        debug_assert!(colors.iter().all(|&c| c >= 1 && c <= q));
        Coloring { q, colors }
    }

    /// Palette size.
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.colors[v]
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.colors
    }

    pub fn into_vec(self) -> Vec<Color> {
        self.colors
    }

    /// Vertices of color `c`, ascending.
    pub fn class(&self, c: Color) -> Vec<Vertex> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == c).collect()
    }

    /// Number of palette colors that label at least one vertex.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.q + 1];
        for &c in &self.colors {
            seen[c] = true;
        }
        seen.iter().filter(|&&s| s).count()
    }

    /// First palette color with an empty class, if any.
    pub fn first_unused(&self) -> Option<Color> {
        let mut seen = vec![false; self.q + 1];
        for &c in &self.colors {
            seen[c] = true;
        }
        (1..=self.q).find(|&c| !seen[c])
    }

    pub fn check_total(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.colors.len() == g.n() {
            Ok(())
        } else {
            Err(ColoringError::NotTotal {
                expected: g.n(),
                got: self.colors.len(),
            })
        }
    }

    pub fn check_proper(&self, g: &Graph) -> Result<(), ColoringError> {
        self.check_total(g)?;
        match g.edges().find(|&(u, v)| self.colors[u] == self.colors[v]) {
            Some((u, v)) => Err(ColoringError::Improper {
                u,
                v,
                color: self.colors[u],
            }),
            None => Ok(()),
        }
    }

    /// Relabels colors in order of first appearance by vertex id, so that
    /// colorings differing by a palette permutation map to the same value.
    pub fn canonical(&self) -> Coloring {
        let mut map = vec![0; self.q + 1];
        let mut next = 0;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if map[c] == 0 {
                    next += 1;
                    map[c] = next;
                }
                map[c]
            })
            .collect();
        Coloring { q: self.q, colors }
    }

    /// `true` when the first occurrence of each color `j + 1` comes after the
    /// first occurrence of color `j`.
    pub fn is_canonical(&self) -> bool {
        let mut max = 0;
        for &c in &self.colors {
            if c > max + 1 {
                return false;
            }
            max = max.max(c);
        }
        true
    }

    /// Applies `perm`, where `perm[c - 1]` is the new color for `c`.
    pub fn permute(&self, perm: &[Color]) -> Coloring {
        assert_eq!(perm.len(), self.q, "permutation must cover the palette");
        Coloring {
            q: self.q,
            colors: self.colors.iter().map(|&c| perm[c - 1]).collect(),
        }
    }

    /// Hash of the exact assignment.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv64::new();
        h.write_usize(self.q);
        for &c in &self.colors {
            h.write_usize(c);
        }
        h.finish()
    }

    /// Hash of the canonical form; equal for palette-permuted colorings.
    pub fn canonical_fingerprint(&self) -> u64 {
        self.canonical().fingerprint()
    }

    pub(crate) fn set(&mut self, v: Vertex, c: Color) {
        self.colors[v] = c;
    }
}

/// `true` iff no edge of `g` is monochromatic under `c`.
pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool, ColoringError> {
    c.check_total(g)?;
    Ok(g.edges().all(|(u, v)| c.color(u) != c.color(v)))
}

/// Recolors every vertex of color `a` with the smallest other palette color
/// missing from its neighborhood, leaving color `a` empty.
///
/// Fails if some vertex of color `a` is critical, since such a vertex sees
/// every other color and has nowhere to go. Vertices are processed in
/// ascending id order.
pub fn remove_color_class(g: &Graph, c: &Coloring, a: Color) -> Result<Coloring, ColoringError> {
    c.check_proper(g)?;
    if a == 0 || a > c.q() {
        return Err(ColoringError::InvalidColor { color: a, q: c.q() });
    }
    let class = c.class(a);
    if let Some(&vertex) = class.iter().find(|&&v| is_critical(g, c, v)) {
        return Err(ColoringError::CriticalVertexPresent { vertex, color: a });
    }
    let mut out = c.clone();
    let mut present = vec![false; c.q() + 1];
    for v in class {
        present.iter_mut().for_each(|p| *p = false);
        for &u in g.neighbors(v) {
            present[out.color(u)] = true;
        }
        let target = (1..=c.q())
            .find(|&x| x != a && !present[x])
            .expect("a non-critical vertex misses some other color");
        out.set(v, target);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle};

    #[test]
    fn properness_on_c5() {
        let g = cycle(5).unwrap();
        let ok = Coloring::new(3, vec![1, 2, 1, 2, 3]).unwrap();
        let bad = Coloring::new(3, vec![1, 2, 1, 2, 1]).unwrap();
        assert!(is_proper(&g, &ok).unwrap());
        assert!(!is_proper(&g, &bad).unwrap());
        assert_eq!(
            bad.check_proper(&g).unwrap_err(),
            ColoringError::Improper { u: 0, v: 4, color: 1 }
        );
    }

    #[test]
    fn not_total() {
        let g = cycle(5).unwrap();
        let c = Coloring::new(3, vec![1, 2, 1]).unwrap();
        assert_eq!(is_proper(&g, &c).unwrap_err(), ColoringError::NotTotal { expected: 5, got: 3 });
    }

    #[test]
    fn range_checked() {
        assert!(Coloring::new(2, vec![1, 3]).is_err());
        assert!(Coloring::new(2, vec![0, 1]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = Coloring::from_json("[1,2,1,2,3]", None).unwrap();
        assert_eq!(c.q(), 3);
        assert_eq!(c.to_json(), "[1,2,1,2,3]");
        assert_eq!(Coloring::from_json("[1,2]", Some(4)).unwrap().q(), 4);
        assert!(Coloring::from_json("[1,", None).is_err());
    }

    #[test]
    fn canonical_form() {
        let c = Coloring::new(4, vec![3, 1, 3, 4]).unwrap();
        assert_eq!(c.canonical().as_slice(), &[1, 2, 1, 3]);
        assert!(!c.is_canonical());
        assert!(c.canonical().is_canonical());
        assert_eq!(c.canonical_fingerprint(), c.permute(&[2, 3, 4, 1]).canonical_fingerprint());
        assert_eq!(c.first_unused(), Some(2));
        assert_eq!(c.colors_used(), 3);
    }

    #[test]
    fn remove_color_class_c5() {
        let g = cycle(5).unwrap();
        let c = Coloring::new(4, vec![1, 2, 1, 2, 4]).unwrap();
        let out = remove_color_class(&g, &c, 4).unwrap();
        assert_eq!(out.as_slice(), &[1, 2, 1, 2, 3]);
        // Brute-force properness check of the result.
        for u in 0..5 {
            for v in 0..5 {
                if g.has_edge(u, v) {
                    assert_ne!(out.color(u), out.color(v));
                }
            }
        }
    }

    #[test]
    fn remove_unused_color_is_identity() {
        let g = cycle(5).unwrap();
        let c = Coloring::new(4, vec![1, 2, 1, 2, 3]).unwrap();
        assert_eq!(remove_color_class(&g, &c, 4).unwrap(), c);
    }

    #[test]
    fn remove_from_k4_fails() {
        let g = complete(4).unwrap();
        let c = Coloring::new(4, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(
            remove_color_class(&g, &c, 1).unwrap_err(),
            ColoringError::CriticalVertexPresent { vertex: 0, color: 1 }
        );
        assert!(matches!(
            remove_color_class(&g, &c, 5),
            Err(ColoringError::InvalidColor { .. })
        ));
    }
}
