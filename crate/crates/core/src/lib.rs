//! Deterministic permutation-dynamics engine for cellular-automaton spin
//! chains.
//!
//! Everything here evolves by exact permutations of a finite state space:
//!
//! - [`perm`] — permutation algebra (composition, powers, cycles);
//! - [`cogwheel`] — the N-state cyclic unit, its step matrix and closed-form
//!   Hamiltonian;
//! - [`chain`] — the two-valued exchange ring with left-/right-movers;
//! - [`hilbert`] — lifts of permutations to complex matrices, orbit-wise
//!   Hamiltonian extraction, exchange operators and the superposition
//!   diagnostics;
//! - [`kinematics`] — sublattice translations, slowed-down evolutions and
//!   exact discrete transport checks;
//! - [`dirac`] — the integer mass-coupled automaton on `(2M+1)`-valued
//!   spins, its bijectivity certificates and continuum comparison;
//! - [`trace`] — the shared spacetime-trace record and file format.

pub mod chain;
pub mod cmatrix;
pub mod cogwheel;
pub mod dirac;
mod error;
pub mod hilbert;
pub mod kinematics;
pub mod perm;
pub mod rng;
pub mod trace;

pub use chain::ChainState;
pub use cmatrix::{CMatrix, CVector};
pub use cogwheel::CogwheelSpec;
pub use dirac::{DiracSpec, GenChainState};
pub use error::{Error, Result};
pub use hilbert::{BasisIndexer, OrbitBlock, StateVector};
pub use kinematics::{SlowdownCase, SlowdownSpec};
pub use perm::{CycleDecomposition, Permutation, Transposition};
pub use trace::SpacetimeTrace;
