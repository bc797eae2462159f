//! Combinatorics of the special McKay correspondence for cyclic quotient
//! surface singularities `C^2 / C_{r,a}`.
//!
//! The crate computes, in exact integer arithmetic:
//!
//! * the special irreducible representations of `C_{r,a}` through three
//!   independent monomial criteria ([`monomial`]),
//! * the toric minimal resolution: Newton boundary, Hirzebruch-Jung
//!   expansion, smooth fan charts and the exceptional chain ([`toric`]),
//! * the torus-fixed G-clusters of the G-Hilbert scheme with their ideals,
//!   cotangent representations and chart deformations ([`cluster`]),
//! * the McKay tensor matrix, quiver and Cartan data ([`quiver`]),
//!
//! and cross-validates all of them against each other ([`check`]).
//! Serialisation to JSON, DOT, SVG and text lives in [`report`].

pub mod check;
pub mod cluster;
pub mod error;
pub mod group;
pub mod monomial;
pub mod quiver;
pub mod report;
pub mod toric;

pub use error::{Error, Result};
pub use group::{make_group, CharIndex, GroupElement, GroupParams};
pub use monomial::{Lattice, Monomial, MonomialSet, SpecialReport};
