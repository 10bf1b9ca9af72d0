pub mod decompose;
pub mod error;
pub mod generate;
pub mod hdt;
pub mod invariants;
pub mod phrase;
pub mod rewrite;
pub mod tabulate;

pub use error::{Error, Result};
pub use hdt::{parse_triple, HomotopyDataTriple};
pub use phrase::{parse_multiphrase, parse_phrase, Letter, Nanomultiphrase, Nanophrase, ProjectMode, Symbol};
