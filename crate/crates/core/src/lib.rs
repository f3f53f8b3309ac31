//! Exact statistics for judging how surprising a set of names on a group of
//! ossuaries is.
//!
//! Two models live here. The [`frequentist`] module computes the chance that
//! *some* tomb among many would look interesting by accident (a look-elsewhere
//! p-value). The [`bayesian`] module computes the posterior probability that a
//! particular tomb belongs to a hypothesized family, using a weighted urn
//! without replacement for the family and the population name frequencies
//! for everyone else. [`rr`] holds a single-draw toy showing how splitting a
//! name into renditions deflates a rareness-ordered p-value.
//!
//! Everything that starts from integer counts is computed in exact rational
//! arithmetic; conversion to `f64` happens only when reporting. The
//! [`sample`] module carries per-trial samplers used by the Monte Carlo
//! oracle in the companion crate.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bayesian;
pub mod error;
pub mod frequentist;
pub mod onomasticon;
pub mod rational;
pub mod rr;
pub mod sample;

pub use error::{Error, Result};
pub use onomasticon::{Gender, NameRecord, Onomasticon, RatioModel};
pub use rational::Rational;
