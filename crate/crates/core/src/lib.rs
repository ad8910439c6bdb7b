//! Exact computation of Smith groups and critical groups of graphs.
//!
//! The core pipeline: build a graph (typically a rook's graph or its
//! complement), take its adjacency or Laplacian matrix with
//! arbitrary-precision entries, compute a Smith normal form with unimodular
//! transforms, and read the cokernel off the diagonal. On top of that sit
//! chip-firing dynamics, lattice-membership solving, element orders, and a
//! verification harness that machine-checks four claimed group
//! decompositions together with their generator catalogs, firing
//! sequences, spectra, and spanning certificates.

mod error;

pub mod chipfiring;
pub mod graph;
pub mod group;
pub mod matrix;
pub mod snf;
pub mod verify;

pub use chipfiring::{Configuration, FiringSequence, Semantics};
pub use error::{Error, Result};
pub use graph::{Graph, RookCoords, VertexPermutation};
pub use group::AbelianGroup;
pub use matrix::IntMatrix;
pub use snf::{cokernel, smith_normal_form, solve_in_image, SmithDecomposition};
pub use verify::{GeneratorId, GroupKind, VerificationReport};
