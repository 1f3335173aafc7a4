//! Value quantales, continuity spaces over them, and exhaustive checks of the
//! two finite-scale metrization results: every finite topology is the
//! open-ball topology of a continuity space over Ω(τ), and a finite space is
//! metrizable by an ordinary metric exactly when it is T0, regular and has a
//! σ-discrete basis.

mod bits;
pub mod bns;
pub mod builtin;
pub mod cli;
pub mod continuity;
pub mod error;
pub mod formats;
pub mod lattice;
pub mod omega;
pub mod quantale;
pub mod topology;

pub use builtin::{ExtRationalLine, ExtendedRational};
pub use continuity::{ContinuitySpace, PointMap};
pub use error::{Error, Result};
pub use lattice::FiniteLattice;
pub use omega::{OmegaElement, OmegaQuantale};
pub use quantale::{FiniteQuantale, Quantale};
pub use topology::FiniteTopology;
