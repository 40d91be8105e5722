//! Inner and outer bounds on the secrecy capacity region of the two-user
//! multiple-access wiretap channel (MAC-WT) with noiseless feedback.
//!
//! The crate is organized bottom-up:
//!
//! * [`info`]: entropies and mutual informations over finite joint laws (bits).
//! * [`channels`]: the discrete MAC-WT kernel, the factorized input class
//!   `P(u) P(x1|u) P(x2|u)`, and the Gaussian channel parameters.
//! * [`regions`]: two-dimensional rate regions as halfspace intersections
//!   clipped to the nonnegative quadrant.
//! * [`discrete`]: decode-and-forward, hybrid (feedback key) and Sato-type
//!   bounds for discrete channels, plus seeded searches over input laws.
//! * [`gaussian`]: the closed-form Gaussian regions.
//! * [`power`]: optimal symmetric power control of the hybrid sum rate.
//! * [`fm`]: exact rational Fourier-Motzkin elimination, used to re-derive the
//!   hybrid region from its underlying rate-splitting constraints.
//! * [`export`]: CSV and JSON writers shared by the CLI.

// Checks such as `!(x > 0.0)` are written negated on purpose so NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod discrete;
pub mod error;
pub mod export;
pub mod fm;
pub mod gaussian;
pub mod info;
pub mod power;
pub mod regions;
mod simplex;

pub use error::{Error, Result};
