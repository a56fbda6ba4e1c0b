//! Ground states of transverse-field Ising rings and the bipartite and
//! tripartite correlations of the three-spin ring: entanglement witness,
//! Svetlichny/Mermin functions, three-tangle, tripartite negativity, and an
//! emulation of a noisy two-photon implementation with Poissonian counts.

pub mod correlations;
pub mod entanglement;
pub mod error;
pub mod ising;
pub mod linalg;
pub mod photonics;

pub use error::{Error, Result};

#[cfg(test)]
mod testutil;
