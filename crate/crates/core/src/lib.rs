//! Width-s weak moonshine for small finite groups.
//!
//! The crate computes exact character tables, Frobenius r-characters and
//! their orthogonality relations, exact q-expansions of the Hauptmoduln for
//! `Gamma_0(1)`, `Gamma_0(2)` and `Gamma_0(4)`, and assembles from a
//! class-to-Hauptmodul assignment the multiplicity generating functions and
//! higher-width McKay-Thompson series. A bijection search decides whether two
//! groups share all r-characters up to a given width.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod chartab;
pub mod cli;
pub mod cyclotomic;
pub mod distinguish;
pub mod error;
pub mod frobenius;
pub mod group;
pub mod moonshine;
pub mod qseries;
pub mod report;
pub mod series;

pub use chartab::CharacterTable;
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use group::{ConjugacyClassPartition, FiniteGroup};
pub use qseries::Hauptmodul;
pub use report::{Report, Violation};
pub use series::LaurentSeries;
