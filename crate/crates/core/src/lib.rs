//! Character degree graphs of finite groups with a composition factor
//! `SL2(2^a)`: concrete group construction, irreducible character degrees,
//! prime graphs with cut-vertex analysis, module orbit data, and a checker for
//! the graph shapes of the classification.

pub mod chardeg;
pub mod classify;
pub mod error;
pub mod gf;
pub mod graph;
pub mod group;
pub mod input;
pub mod modact;
pub mod numtheory;
pub mod suite;

pub use error::{Error, Result};
