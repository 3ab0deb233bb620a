//! Numerical link-homotopy invariants of three-component links in R³.
//!
//! A three-component link is classified up to link homotopy by its pairwise
//! linking numbers p, q, r together with the Milnor triple linking number μ.
//! This crate computes all four:
//!
//! * p, q, r by the classical Gauss linking integral, cross-checked against
//!   the degrees of a generalized Gauss map T³ → S² restricted to the
//!   coordinate 2-subtori;
//! * μ (an honest integer once p = q = r = 0) from the Fourier coefficients
//!   of the pullback of the sphere's area form to the 3-torus, with two
//!   independent cross-check routes: a Whitehead-style primitive pairing and
//!   the helicity of the associated vector field.
//!
//! The pointwise geometry also carries a spherical key map together with the
//! inverse-stereographic lift connecting it to the Euclidean one, so the
//! agreement of the two constructions can be sampled directly.

pub mod error;
pub mod fft;
pub mod gauss;
pub mod geometry;
pub mod link;
pub mod report;
pub mod spectral;

pub use error::{Error, Result};
pub use geometry::{Mat3, Quaternion, Vec3};
pub use link::{preset, transform_link, Link3, TrigCurve};
