//! Spectral constraints of the quantum marginal problem and of one-particle
//! N-representability.
//!
//! The crate computes marginals of multipartite and fermionic states, checks
//! spectra against a catalog of known inequality families, generates new
//! inequalities from Schubert calculus over the cubicles of a hyperplane
//! arrangement, and builds inner approximations of fermionic spectral
//! polytopes from plethysm data.

pub mod catalog;
pub mod chamber;
pub mod error;
pub mod exact;
pub mod fermion;
pub mod plethysm;
pub mod rng;
pub mod schubert;
pub mod spectrum;
pub mod system;
pub mod tensor;
pub mod verify;
pub mod young;

pub use error::{Error, Result};
pub use spectrum::Spectrum;
pub use system::System;
