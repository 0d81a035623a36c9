//! Distances and dynamics on the space of running-time functions.
//!
//! The crate computes a truncated series quasi-metric between positive
//! functions of an integer argument, together with its conjugate and
//! symmetrisation, and analyses how pointwise scaling acts on that space:
//! orbit traces, expansiveness scans, stability classes, asymptotic-gap
//! checks, and a spanning-number entropy estimate over finite families.
//!
//! Functions are written in a small expression grammar (see
//! [`funcspace::ComplexityFunction::parse`]); every numeric result carries
//! its truncation horizon and the matching error bound.

#![forbid(unsafe_code)]

pub mod classes;
pub mod dynamics;
pub mod entropy;
pub mod error;
pub mod funcspace;
pub mod hierarchy;
pub mod qmetric;
pub mod report;

pub use error::{Error, Result};
pub use funcspace::{dominates, ComplexityFunction, DominanceVerdict};
pub use qmetric::{dc, dc_conjugate, dc_sym, DistanceResult, DEFAULT_TRUNCATION};
