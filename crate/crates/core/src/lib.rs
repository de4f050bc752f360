// SPDX-License-Identifier: Apache-2.0

//! Single-qubit evolutions on the Bloch sphere and their efficiency measures.
//!
//! Units have `ħ = 1`; a Hamiltonian is `H(t) = h0(t)·1 + h(t)·σ`.

pub mod curvature;
pub mod dynamics;
pub mod efficiency;
pub mod error;
pub mod families;
pub mod field;
pub mod quadrature;
pub mod qubit;
pub mod scenarios;

pub use error::{Error, Result};
pub use field::FieldSpec;
pub use qubit::{BlochVector, HermitianMatrix2, QubitState, Vec3};
