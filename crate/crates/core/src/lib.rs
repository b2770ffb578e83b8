//! Exact simulation and verification of the discontinuous analog of the
//! Chirikov standard map
//!
//! ```text
//! x' = x + alpha * y   (mod 1)
//! y' = y + sgn(x' - 1/2)
//! ```
//!
//! on the cylinder `[0,1) x R`, for rational `alpha = p/q` and rational
//! initial height `y0 = a/b`.
//!
//! The crate is layered:
//!
//! * [`exact`] iterates the cylinder map in exact rational arithmetic. It is
//!   the ground truth every faster path is checked against.
//! * [`lattice`] reduces the map to a bijection of the finite torus
//!   `Z_{bq} x Z_q` whose points never touch a discontinuity.
//! * [`orbit`] traces orbits on that torus, classifies them as bounded or
//!   escaping, decomposes the whole torus into cycles and computes the
//!   escape length `l(q)`.
//! * [`theory`] holds constructive verifiers for the boundedness and escape
//!   theorems and their lemmas, each producing a serializable [`theory::VerdictReport`].
//! * [`analytics`] and [`io`] cover sweeps, Young diagrams of periods,
//!   phase-portrait rasters and file formats.
//! * [`cli`] is the command-line front end used by the `dsm` binary.

pub mod analytics;
pub mod cli;
pub mod config;
pub mod error;
pub mod exact;
pub mod io;
pub mod lattice;
pub mod orbit;
pub mod theory;

pub use error::{Error, Result};
pub use exact::{CylinderPoint, Rational};
pub use lattice::{LatticeMap, LatticeState, LiftedState, ReducedParams};
pub use orbit::{Decomposition, EscapeRecord, Orbit, OrbitClass};
