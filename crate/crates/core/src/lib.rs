//! Kempe chains, correct colorings and complete-minor extraction.
//!
//! A proper `q`-coloring is *correct* when one critical vertex of each color
//! can be chosen so that every two of them lie in a common Kempe chain. The
//! modules build up to searching for such colorings and growing a `K_q`
//! minor model from the chains they expose.

pub mod chromatic;
pub mod clique;
pub mod coloring;
pub mod corpus;
pub mod dot;
pub mod enumerate;
pub mod generate;
pub mod graph;
pub mod harness;
mod hash;
pub mod io;
pub mod kempe;
pub mod minor;
pub mod oracle;
pub mod search;
pub mod source;

pub use chromatic::{chromatic_number, Chromatic, ChromaticError};
pub use clique::{find_kempe_clique, verify_strong_immersion, CliqueError, ImmersionReport, KempeClique};
pub use coloring::{is_proper, remove_color_class, Color, Coloring, ColoringError};
pub use enumerate::enumerate_proper_colorings;
pub use generate::Family;
pub use graph::{Graph, GraphError, Vertex};
pub use kempe::{
    critical_vertices, eliminate_critical_color, find_backbone, kempe_chains, kempe_swap, Backbone, ColorPair,
    CriticalSet, Elimination, KempeChain, KempeError,
};
pub use minor::{grow_minor_from_clique, verify_minor_model, MinorModel, MinorReport};
pub use search::{search_correct_coloring, SearchBudget, SearchConfig, SearchOutcome, SearchStatus, Strategy};
