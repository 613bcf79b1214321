//! Polarization optics in the language of the Lorentz group.
//!
//! Jones matrices are 2×2 unimodular (spinor) transformations and Mueller
//! matrices of non-depolarizing filters are their 4×4 Lorentz images acting
//! on Stokes vectors. On top of that correspondence this crate builds:
//!
//! * [`wigner`]: three attenuators whose net effect is a pure rotation;
//! * [`iwasawa`]: the shear `[[1, u], [0, 1]]` as one rotation plus one
//!   rotated squeeze;
//! * [`filter`] and [`chainfile`]: filter chains and their text format;
//! * [`batch`]: grid sweeps, parallel with the `parallel` feature.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod batch;
pub mod chainfile;
pub mod cli;
pub mod error;
pub mod filter;
pub mod iwasawa;
pub mod matrix;
pub mod polarization;
pub mod wigner;

pub use error::{Error, ParseError, Result};
pub use filter::{
    apply_to_jones, apply_to_stokes, compose, element_jones, element_mueller, verify, Composition, FilterChain,
    FilterElement, Target, VerificationReport,
};
pub use matrix::{boost2, boost4, is_lorentz, mueller_from_jones, rot2, rot4, LorentzCheck, Matrix2, Matrix4};
pub use polarization::{
    coherency_from_samples, minkowski_norm, stokes_from_coherency, stokes_from_jones, CoherencyMatrix, JonesVector,
    MinkowskiVector, StokesVector,
};
