//! Named graphs with a manifest of expected invariants.
//!
//! The bundled corpus is compiled into the library. A corpus directory on
//! disk with the same `manifest.json` layout can be used instead.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::chromatic::{chromatic_number, ChromaticError};
use crate::graph::Graph;
use crate::io::{parse, Format, ParseError};

const BUNDLED_MANIFEST: &str = include_str!("../corpus/manifest.json");
const BUNDLED_FILES: &[(&str, &str)] = &[
    ("koester.txt", include_str!("../corpus/koester.txt")),
    ("catlin-2-2.col", include_str!("../corpus/catlin-2-2.col")),
    ("catlin-2-3.col", include_str!("../corpus/catlin-2-3.col")),
];

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("unknown corpus graph `{0}`")]
    UnknownName(String),
    #[error("corpus manifest: {0}")]
    Manifest(String),
    #[error("{name}: cannot read {path}: {source}")]
    Io {
        name: String,
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{name}: checksum mismatch (manifest {expected}, file {actual})")]
    Checksum { name: String, expected: String, actual: String },
    #[error("{name}: {source}")]
    Parse {
        name: String,
        #[source]
        source: ParseError,
    },
    #[error("{name}: expected {what} {expected}, found {actual}")]
    Invariant {
        name: String,
        what: &'static str,
        expected: usize,
        actual: String,
    },
    #[error("{name}: {source}")]
    Chromatic {
        name: String,
        #[source]
        source: ChromaticError,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub file: String,
    pub sha256: String,
    pub n: usize,
    #[serde(default)]
    pub regular_degree: Option<usize>,
    #[serde(default)]
    pub chi: Option<usize>,
    #[serde(default)]
    pub description: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Manifest {
    version: String,
    graphs: Vec<Entry>,
}

#[derive(Debug, Clone)]
enum Store {
    Bundled,
    Dir(PathBuf),
}

#[derive(Debug, Clone)]
pub struct Corpus {
    store: Store,
    entries: Vec<Entry>,
}

/// What [`Corpus::check`] verified for one entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub n: usize,
    pub edges: usize,
    pub degrees: Vec<usize>,
    pub chi: usize,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Corpus {
    pub fn bundled() -> Self {
        let m: Manifest = serde_json::from_str(BUNDLED_MANIFEST).expect("bundled manifest is valid JSON");
        Corpus {
            store: Store::Bundled,
            entries: m.graphs,
        }
    }

    pub fn from_dir(dir: &Path) -> Result<Self, CorpusError> {
        let path = dir.join("manifest.json");
        let text = std::fs::read_to_string(&path).map_err(|source| CorpusError::Io {
            name: "manifest".into(),
            path: path.clone(),
            source,
        })?;
        let m: Manifest = serde_json::from_str(&text).map_err(|e| CorpusError::Manifest(e.to_string()))?;
        if m.version != "1" {
            return Err(CorpusError::Manifest(format!("unsupported version `{}`", m.version)));
        }
        Ok(Corpus {
            store: Store::Dir(dir.to_owned()),
            entries: m.graphs,
        })
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn entry(&self, name: &str) -> Result<&Entry, CorpusError> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| CorpusError::UnknownName(name.to_owned()))
    }

    fn text(&self, e: &Entry) -> Result<String, CorpusError> {
        match &self.store {
            Store::Bundled => BUNDLED_FILES
                .iter()
                .find(|(f, _)| *f == e.file)
                .map(|(_, t)| (*t).to_owned())
                .ok_or_else(|| CorpusError::Manifest(format!("bundled file `{}` missing", e.file))),
            Store::Dir(dir) => {
                let path = dir.join(&e.file);
                std::fs::read_to_string(&path).map_err(|source| CorpusError::Io {
                    name: e.name.clone(),
                    path,
                    source,
                })
            }
        }
    }

    /// Loads a graph after checking its checksum and every invariant the
    /// manifest records, including the exact chromatic number.
    pub fn load(&self, name: &str) -> Result<Graph, CorpusError> {
        self.validated(name).map(|(g, _)| g)
    }

    fn structural(&self, name: &str) -> Result<Graph, CorpusError> {
        let e = self.entry(name)?;
        let text = self.text(e)?;
        let actual = sha256_hex(text.as_bytes());
        if actual != e.sha256 {
            return Err(CorpusError::Checksum {
                name: e.name.clone(),
                expected: e.sha256.clone(),
                actual,
            });
        }
        let built = parse(&text, Format::from_path(Path::new(&e.file))).map_err(|source| CorpusError::Parse {
            name: e.name.clone(),
            source,
        })?;
        if !built.duplicates.is_empty() {
            log::warn!("{}: {} duplicate edges removed", e.name, built.duplicates.len());
        }
        let g = built.graph;
        if g.n() != e.n {
            return Err(CorpusError::Invariant {
                name: e.name.clone(),
                what: "vertex count",
                expected: e.n,
                actual: g.n().to_string(),
            });
        }
        if let Some(d) = e.regular_degree {
            if g.min_degree() != d || g.max_degree() != d {
                return Err(CorpusError::Invariant {
                    name: e.name.clone(),
                    what: "regular degree",
                    expected: d,
                    actual: format!("degrees {}..={}", g.min_degree(), g.max_degree()),
                });
            }
        }
        Ok(g)
    }

    pub fn check(&self, name: &str) -> Result<CheckReport, CorpusError> {
        let (g, chi) = self.validated(name)?;
        Ok(CheckReport {
            name: name.to_owned(),
            n: g.n(),
            edges: g.edge_count(),
            degrees: crate::io::degree_set(&g),
            chi,
        })
    }

    fn validated(&self, name: &str) -> Result<(Graph, usize), CorpusError> {
        let e = self.entry(name)?;
        let g = self.structural(name)?;
        let chi = chromatic_number(&g)
            .map_err(|source| CorpusError::Chromatic {
                name: e.name.clone(),
                source,
            })?
            .k;
        if let Some(expected) = e.chi {
            if chi != expected {
                return Err(CorpusError::Invariant {
                    name: e.name.clone(),
                    what: "chromatic number",
                    expected,
                    actual: chi.to_string(),
                });
            }
        }
        Ok((g, chi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_entries_check() {
        let c = Corpus::bundled();
        assert!(c.entries().len() >= 3);
        for e in c.entries() {
            let r = c.check(&e.name).unwrap();
            assert_eq!(r.n, e.n);
            assert_eq!(Some(r.chi), e.chi);
        }
    }

    #[test]
    fn koester_invariants() {
        let r = Corpus::bundled().check("koester").unwrap();
        assert_eq!((r.n, r.edges, r.degrees.as_slice(), r.chi), (40, 80, &[4][..], 4));
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(Corpus::bundled().load("nope"), Err(CorpusError::UnknownName(_))));
    }

    #[test]
    fn bundled_catlin_matches_generator() {
        let c = Corpus::bundled();
        assert_eq!(c.load("catlin-2-2").unwrap(), crate::generate::catlin(2, 2).unwrap());
        assert_eq!(c.load("catlin-2-3").unwrap(), crate::generate::catlin(2, 3).unwrap());
    }
}
