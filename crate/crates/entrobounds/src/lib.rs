// `!(x > 0.0)` deliberately rejects NaN along with the out-of-domain values,
// and the quadrature node tables keep their full published precision.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]
#![allow(clippy::inconsistent_digit_grouping)]

//! Extremum-entropy radial densities and the spin-dependent Heisenberg-like
//! uncertainty bounds they induce through the semiclassical
//! Daubechies–Thakkar inequality.
//!
//! The crate builds the three extremizer density families (Shannon maximizer,
//! Fisher minimizer, Tsallis maximizer), evaluates their entropic moments and
//! information functionals, assembles the closed-form scaling laws for the
//! products <r^alpha>^{k/alpha} <p^k>, and validates the lower bounds against
//! tabulated Hartree–Fock atomic data.

pub mod atoms;
pub mod bounds;
pub mod densities;
pub mod error;
pub mod numerics;
pub mod tables;

pub use error::{Error, Result};
