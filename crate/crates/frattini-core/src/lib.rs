//! Construction of small exponent-p groups whose automorphism group induces
//! a prescribed maximal linear group on the Frattini quotient.
//!
//! The crate is organised bottom-up:
//!
//! * [`fp`] and [`matrix`] — exact dense linear algebra over the prime field
//!   `F_p` (row vectors, matrices acting on the right),
//! * [`poly`] — univariate polynomial arithmetic and factorisation over `F_p`,
//!   plus characteristic/minimal polynomials of matrices,
//! * [`extfield`] — explicit models of the extension fields `F_{p^r}` and
//!   their embedding into `r × r` matrices over `F_p`,
//! * [`lie`] — the Lie powers `L^1 V … L^4 V` inside tensor powers, with Witt
//!   dimensions, bracket structure constants, symmetric/alternating powers
//!   and induced `GL(d, p)` actions,
//! * [`gamma`] — arithmetic in the relatively free exponent-`p` groups
//!   `Γ_n(V)` (and quotients by a central submodule) via Lie n-tuples,
//! * [`subgroups`] — explicit generators for the geometric maximal subgroups
//!   of `GL(d, p)` (classes C1–C4, C7, C8),
//! * [`meataxe`] — submodule machinery: spinning, minimal/maximal submodules,
//!   irreducibility decisions and invariance witnesses,
//! * [`pipeline`] — the construction itself: find the critical Lie power,
//!   pick a maximal submodule that is not `GL`-invariant, build the quotient
//!   group and emit a verified certificate.
//!
//! Everything is deterministic: randomised procedures take explicit seeds.
//! The crate is `no_std` (with `alloc`); IO, JSON and the command line live
//! in the companion `frattini-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod fp;
pub mod matrix;
pub mod poly;
pub mod extfield;
pub mod lie;
pub mod gamma;
pub mod subgroups;
pub mod meataxe;
pub mod pipeline;
pub mod rng;

pub use error::{Error, Result};
pub use fp::PrimeField;
pub use matrix::FpMatrix;
