//! Exact descent set statistics of unsigned and signed permutations.
//!
//! The crate computes the tables β_n(S) and β±_n(S), their residue
//! histograms, the quasisymmetric and ab/cd-index encodings of the same data,
//! and decides which cyclotomic polynomials divide the descent set
//! polynomials `Q_n(t) = Σ_S t^β_n(S)` and `Q±_n(t)` without ever building
//! those polynomials in full.
//!
//! Everything here is pure computation on exact integers. The crate is
//! `no_std` (it needs `alloc`); file formats, the command line and parallel
//! drivers live in the `descentlab` companion crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod abcd;
pub mod cyclo;
pub mod descent;
mod error;
pub mod numbers;
pub mod parity;
pub mod qsym;

pub use error::{Error, Result};
pub use numbers::{Composition, ExactInt, SubsetMask};
