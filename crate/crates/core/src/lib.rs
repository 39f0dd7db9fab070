//! Orbit deciders for symplectic and dual transvection groups over small
//! prime fields, with brute-force orbit enumeration as ground truth and a
//! lit-only sigma game engine on top.

pub mod error;
pub mod field;
pub mod game;
pub mod graphs;
pub mod oracle;
pub mod orbits;
pub mod symplectic;

pub use error::{Error, Result};
pub use field::{FieldMatrix, FieldVector, SolutionSet};
pub use graphs::{CanonicalForm, FormGraph, GraphClass, Multigraph};
pub use symplectic::{Functional, QuadraticForm, SymplecticSpace};
pub use orbits::{Certificate, Decision, DualProblem, Move, Verdict};
pub use oracle::OrbitPartition;
pub use game::{GameState, GraphSpec};
