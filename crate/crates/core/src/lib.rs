//! Maximal-region straight-line embeddings of cycle graphs.
//!
//! The crate builds the optimal odd and even constructions, counts the
//! bounded regions of any cycle embedding with exact rational arithmetic, and
//! cross-checks the closed-form maximum against exhaustive and randomized
//! searches.

pub mod arrangement;
pub mod embedding;
pub mod formulas;
pub mod geometry;
pub mod render;
pub mod search;
pub mod verify;
