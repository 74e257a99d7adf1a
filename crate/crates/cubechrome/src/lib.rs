//! Avoiding and extending partial edge colorings of hypercubes.
//!
//! The crate provides, for the `d`-dimensional hypercube `Q_d` (and small
//! general graphs where noted):
//!
//! - [`hypercube`]: topology of `Q_d`, dimensional matchings, 4-cycles,
//!   parallel edges, induced sub-hypercubes and the automorphism group;
//! - [`coloring`]: partial and total edge colorings, properness, Kempe
//!   interchanges, distance predicates and class profiles;
//! - [`solver`]: exact backtracking decision procedures (avoid, extend,
//!   extend-while-avoid, list coloring) and bipartite matching utilities;
//! - [`constructive`]: polynomial constructions that produce avoiding
//!   colorings for structured inputs, plus obstruction classifiers for
//!   extendability and extend-while-avoid;
//! - [`enumeration`]: canonical forms under the automorphism group and
//!   exhaustive catalogs of minimal unavoidable configurations;
//! - [`generators`]: named instance families and seeded random generators;
//! - [`verify`]: named verification procedures backing the `cubechrome
//!   verify` command.
//!
//! Colors are 1-based throughout. Edge colorings are stored indexed by the
//! host's canonical edge order, so all per-edge operations are `O(1)`.

pub mod coloring;
pub mod constructive;
pub mod enumeration;
mod error;
pub mod generators;
pub mod host;
pub mod hypercube;
pub mod json;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use hypercube::{Edge, Hypercube, Vertex};
