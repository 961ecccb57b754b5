//! Exact decategorified toolkit for fusion rings, modular data, NIM-reps,
//! gauge scalars and modular invariants.

pub mod cli;
pub mod error;
pub mod fusion;
pub mod gauge;
pub mod invariant;
pub mod io;
pub mod linalg;
pub mod modular;
pub mod nimrep;
pub mod scalar;

pub use error::{Error, Result};
pub use fusion::{su2_fusion_ring, FusionElement, FusionRing};
pub use linalg::{CycloMatrix, IntMatrix};
pub use modular::{catalog, ModularData, SpectrumPoint};
pub use nimrep::{BoundaryGraph, GraphFamily, NimRep};
pub use scalar::{CycloNumber, RationalPhase};
