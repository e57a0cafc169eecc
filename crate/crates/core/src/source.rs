//! Where a graph comes from: a file, a generator, or the corpus.

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::corpus::{Corpus, CorpusError};
use crate::generate::Family;
use crate::graph::{Graph, GraphError};
use crate::io::{parse, ParseError};

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    Dimacs(PathBuf),
    EdgeList(PathBuf),
    /// In-memory text in either format, sniffed on load.
    Text(String),
    Generator(Family),
    Corpus(String),
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Params(#[from] GraphError),
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::Dimacs(p) | GraphSource::EdgeList(p) => write!(f, "{}", p.display()),
            GraphSource::Text(_) => f.write_str("stdin"),
            GraphSource::Generator(fam) => write!(f, "{fam}"),
            GraphSource::Corpus(name) => write!(f, "corpus:{name}"),
        }
    }
}

/// Loads and validates a graph. Duplicate edges are dropped with a warning.
pub fn load_graph(source: &GraphSource) -> Result<Graph, LoadError> {
    let built = match source {
        GraphSource::Dimacs(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| ParseError::Io {
                path: path.clone(),
                source: e,
            })?;
            crate::io::parse_dimacs(&text)?
        }
        GraphSource::EdgeList(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| ParseError::Io {
                path: path.clone(),
                source: e,
            })?;
            crate::io::parse_edge_list(&text)?
        }
        GraphSource::Text(text) => parse(text, crate::io::Format::sniff(text))?,
        GraphSource::Generator(fam) => return Ok(fam.generate()?),
        GraphSource::Corpus(name) => return Ok(Corpus::bundled().load(name)?),
    };
    if !built.duplicates.is_empty() {
        log::warn!(
            "{source}: {} duplicate edge(s) removed, first ({}, {})",
            built.duplicates.len(),
            built.duplicates[0].0,
            built.duplicates[0].1
        );
    }
    Ok(built.graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_generator_sources() {
        let g = load_graph(&GraphSource::Text("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n".into())).unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 3));
        let g = load_graph(&GraphSource::Generator("cycle:5".parse().unwrap())).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert!(load_graph(&GraphSource::Text("0 1\n2 2\n".into())).is_err());
        assert!(matches!(
            load_graph(&GraphSource::Corpus("missing".into())),
            Err(LoadError::Corpus(CorpusError::UnknownName(_)))
        ));
        assert!(matches!(
            load_graph(&GraphSource::Generator(Family::Cycle { n: 1 })),
            Err(LoadError::Params(_))
        ));
    }
}
