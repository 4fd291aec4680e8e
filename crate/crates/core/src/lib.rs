//! Exact debordering of border Waring rank decompositions.
//!
//! A border Waring rank decomposition presents a homogeneous polynomial f of
//! degree d as a limit
//!
//!   f = lim_{ε→0} Σ_k c_k(ε) · ℓ_k(ε)^d
//!
//! of weighted powers of linear forms whose coefficients are rational
//! functions of ε. This crate turns such a limit into an explicit Waring
//! decomposition f = Σ_i c_i · ℓ_i^d with exact coefficients, going through
//! three stages:
//!
//! 1. group the summands into local classes by their projective limit
//!    direction and extract each class limit exactly ([`border`]);
//! 2. assemble the class limits into a generalized additive decomposition
//!    f = Σ_k ℓ_k^{d−r_k+1} g_k ([`gad`]);
//! 3. rewrite every part as a sum of d-th powers using power bases and
//!    roots-of-unity identities for two-variable monomials ([`synthesis`]).
//!
//! All arithmetic is exact: scalars live in cyclotomic fields ℚ(ζ_N)
//! ([`cyclotomic`]), ε-dependent coefficients are rational functions over
//! such a field ([`eps`]). Apolarity-based rank oracles and a classifier for
//! border rank ≤ 3 live in [`oracles`] and [`apolarity`].
//!
//! The crate is `no_std` (it requires `alloc`); IO, text formats and the
//! command-line surface live in the companion `waring-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod apolarity;
pub mod border;
pub mod catalecticant;
pub mod comb;
pub mod cyclotomic;
pub mod eps;
pub mod error;
pub mod fixtures;
pub mod gad;
pub mod matrix;
pub mod oracles;
pub mod poly;
pub mod ring;
pub mod synthesis;
pub mod upoly;

pub use border::{BorderDecomposition, EpsLinForm, LocalClass};
pub use cyclotomic::{make_context, FieldContext, Scalar};
pub use eps::EpsScalar;
pub use error::{Error, Result};
pub use gad::Gad;
pub use matrix::Matrix;
pub use poly::{LinForm, Monomial, Poly};
pub use ring::Field;
pub use synthesis::{BoundReport, WaringDecomposition};
pub use upoly::UPoly;
