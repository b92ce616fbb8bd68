//! Finite 2-group polytopes: toroidal `{4,4}` maps, flat regular towers built
//! by flat amalgamation, alternating semiregular polytopes from tail-triangle
//! groups, and power polytopes, with verifiers for string C-group axioms,
//! the flat amalgamation property, group orders, presentations and face
//! lattices.

pub mod catalog;
pub mod config;
pub mod cstring;
pub mod error;
pub mod fap;
pub mod fpres;
pub mod geometry;
pub mod kernel;
pub mod mix;
pub mod power;
pub mod report;
pub mod semireg;
pub mod toroidal;

pub use config::Limits;
pub use error::{Error, Result};
pub use cstring::StringCGroup;
pub use kernel::{FiniteGroup, Permutation};
