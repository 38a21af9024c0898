//! Thermal correlations of a dipolar-coupled spin-1/2 dimer.
//!
//! The library models two spins 1/2 with an anisotropic XXZ coupling
//! (`delta = -2` for the magnetic dipole-dipole dimer) in a longitudinal
//! field, in thermal equilibrium. It computes, in reduced units:
//!
//! - the Hamiltonian, spectrum, Gibbs X state, and spin correlators
//!   ([`model`]);
//! - entropies, mutual information, quantum discord and its two measurement
//!   branches, classical correlation, concurrence, entanglement of formation,
//!   and the zero-field geometric discord ([`correlations`]);
//! - brute-force verification machinery: generic density matrices, partial
//!   traces, and numerical optimization of the measured classical
//!   correlation over the Bloch sphere ([`oracle`]);
//! - high- and low-temperature expansions ([`asymptotics`]);
//! - the location of the discord maximum over temperature ([`extremum`]);
//! - SI-unit predictions for real proton dimers such as gypsum and
//!   1,2-dichloroethane ([`materials`]).
//!
//! All thermodynamics is parametrized by the anisotropy `delta`, the reduced
//! field `eta = h/D`, and the reduced inverse temperature `x = D/(k_B T)`;
//! `x = infinity` (T = 0) is handled as an exact analytic branch. Every
//! function is pure and safe to call concurrently.

pub mod asymptotics;
pub mod correlations;
pub mod error;
pub mod extremum;
pub mod materials;
pub mod model;
pub mod oracle;

pub use correlations::CorrelationSet;
pub use error::{DimerError, Result};
pub use extremum::ExtremumResult;
pub use materials::{MaterialPrediction, MaterialSpec};
pub use model::{Correlators, DimerParams, Spectrum, ThermalPoint, XState, DIPOLAR_DELTA};
