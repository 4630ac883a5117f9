//! Length distortion of meromorphic univalent maps of the unit disk.
//!
//! For a univalent `f` with a simple pole at `p ∈ (√2 − 1, 1)` the length of the
//! image of the vertical diameter is at most `A_p` times the length of the image
//! of the left unit semicircle. This crate computes the upper envelope
//! `min_q M_p(q)` and the lower witness `(1 + p)²π/(4p)` for `A_p`, evaluates the
//! extremal map `k_p` and the counterexample `f₀`, and measures image-curve
//! lengths by adaptive quadrature so every closed form can be checked
//! numerically.
//!
//! Modules, bottom up:
//!
//! * [`moebius`]: extended complex numbers, Möbius maps, generalized circles;
//! * [`hyperbolic`]: geodesics and half-planes of the disk and the half-plane;
//! * [`conformal_maps`]: `k_p`, `φ_α`, `f₀`, compositions and the reduction formulas;
//! * [`quadrature`]: arc length of image curves;
//! * [`bounds`]: harmonic measure, `ξ`, `B_α`, `M_p` and its minimization;
//! * [`experiments`]: end-to-end reproductions with self-checking reports;
//! * [`cli`]: the command-line front end used by the `lengthdist` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod conformal_maps;
pub mod error;
pub mod experiments;
pub mod hyperbolic;
pub mod moebius;
pub mod quadrature;

pub use error::{Error, Result};
pub use moebius::{ExtendedComplex, GeneralizedCircle, MoebiusMap};
pub use num_complex::Complex64;
