//! Exact Fourier analysis of boolean functions on the hypercube, with a focus
//! on symmetric functions represented by their weight-value vectors.
//!
//! Everything here is computed over exact integers or rationals: Fourier
//! coefficients are kept at scale `2^k`, conditional probabilities as scaled
//! integer numerators, and moments as big rationals. The crate is `no_std`
//! (with `alloc`); IO, file formats and the command-line front end live in the
//! companion `symjunta-cli` crate.
//!
//! Module overview:
//!
//! * [`boolfn`] — cube points, truth tables, symmetric functions, Fourier
//!   spectra and per-level coefficients.
//! * [`structure`] — subcube nullity, window equation systems, difference
//!   sequences, binomial-coefficient polynomials and exhaustive verification.
//! * [`numtheory`] — sieves, primes in arithmetic progressions, Lucas-style
//!   binomial residues and periodicity certificates.
//! * [`moments`] — measures induced by nonnegative functions and exact moment
//!   comparisons against the uniform measure.
//! * [`learner`] — a uniform-distribution exact learner for symmetric juntas.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod binom;
pub mod boolfn;
pub mod error;
pub mod learner;
pub mod moments;
pub mod numtheory;
pub mod structure;

pub use error::{Error, Result};
