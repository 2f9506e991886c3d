//! Inner and outer bounds on the secrecy capacity region of the two-user
//! multiple-access wiretap channel with a common message.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the numeric
//! machinery:
//!
//! * [`info`]: finite distributions, channels, entropy and mutual information.
//! * [`dm`]: discrete-memoryless inner/outer bounds and grid sweeps over
//!   auxiliary chains.
//! * [`gaussian`]: closed-form Gaussian inner/outer bounds and the compound
//!   MAC baseline.
//! * [`geometry`]: rate polytopes, Pareto frontiers, Fourier–Motzkin
//!   elimination and region containment.
//! * [`sim`]: a small-blocklength random binning simulator with exact
//!   eavesdropper equivocation.
//!
//! All rates are in bits per channel use.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dm;
pub mod error;
pub mod gaussian;
pub mod geometry;
pub mod info;
mod math;
pub mod sim;

pub use error::{Error, Result};
pub use geometry::{BoundKind, RateBounds, RateRegion, RateTriple};
