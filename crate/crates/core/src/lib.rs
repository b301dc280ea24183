//! Circumcentric directions of convex cones.
//!
//! Given the normalized generators of a cone `K`, the circumcentric
//! direction `d` is minus the projection of the origin onto their affine
//! hull. It lies in the polar cone `K°` with an explicit margin, and the
//! set of perturbations `v` keeping `d + v` in `K°` is a polyhedron known in
//! closed form. This crate computes `d`, certifies polar membership, gives
//! sharp directional depths and interior step lengths, extends the
//! construction to the orthant, second-order, semidefinite, doubly
//! nonnegative, p-order and product cones, and to Bregman geometry.
//!
//! Module map:
//!
//! | module | contents |
//! |---|---|
//! | [`geometry`] | conic bases, Gram matrix, three routes to `d`, spectral bounds, aperture |
//! | [`admissible`] | exact admissible margin, directional depth, angular bound, contact set |
//! | [`zoo`] | canonical non-polyhedral cones |
//! | [`step`] | active cones, sharp interior step, L∞ and SOCP oracles, FCPG driver |
//! | [`bregman`] | Legendre functions, Bregman direction and margin, mirror step |
//! | [`oracles`] | brute-force verifiers independent of the formulas above |
//! | [`io`] | JSON and CSV formats |
//! | [`cli`] | the `circumcone` command |
//!
//! The runnable programs under `examples/` walk through each capability.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod admissible;
pub mod bregman;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod oracles;
pub mod sampling;
pub mod step;
pub mod zoo;

pub use admissible::DepthResult;
pub use bregman::{BregmanDirection, Legendre};
pub use error::{Error, Result};
pub use geometry::{CircumDirection, ConicBase, GramMatrix, Route};
pub use step::{ActiveCone, LinfProblem, SocpProblem};
pub use zoo::{ConeDescriptor, HypothesisReport};

/// A nonnegative quantity that may be `+∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Extended {
    Finite(f64),
    Infinite,
}

impl Extended {
    pub fn is_infinite(self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    /// `f64::INFINITY` for the unbounded case.
    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }

    /// `self ≤ other` in the extended order.
    pub fn le(self, other: Extended, tol: f64) -> bool {
        match (self, other) {
            (_, Extended::Infinite) => true,
            (Extended::Infinite, Extended::Finite(_)) => false,
            (Extended::Finite(a), Extended::Finite(b)) => a <= b + tol,
        }
    }
}

impl std::fmt::Display for Extended {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}
