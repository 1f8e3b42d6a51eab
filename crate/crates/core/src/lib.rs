//! Finite-dimensional laboratory for covariant POVMs and modular time.
//!
//! The crate models three thermal-time constructions on desk-scale spaces:
//! the phase observable of the harmonic oscillator on a truncated Hardy space
//! ([`oscillator`]), the position observable of the free massless particle on a
//! periodic grid ([`relativistic`]), and the dilation-covariant observable of
//! the noncommutative integral on a log-frequency lattice ([`weyl`]). Each
//! identity is exposed as a residual that the verification harness checks.

pub mod contraction;
pub mod error;
pub mod modular;
pub mod operator;
pub mod oscillator;
pub mod povm;
pub mod random;
pub mod region;
pub mod relativistic;
pub mod weyl;

pub use error::{Error, Result};
pub use operator::{
    funcalc, funcalc_re, hs_inner, is_effect, EffectClass, HermitianSpectrum, Operator, C64,
    DEFAULT_TOL,
};
pub use povm::{
    naimark_dilate, povm_integrate, povm_validate, state_to_measure, DiscretePovm,
    NaimarkDilation, PovmReport,
};
pub use region::{Domain, RegionSet};
pub use contraction::{contraction_moment_povm, MomentReport};
pub use modular::{build_gns, build_modular, kms_residual, modular_flow, GnsRep, ModularTriple, TraceWeight};
