//! Two coupled bosonic modes in a thermal bath: Gaussian covariance
//! matrices, their closed-form open-system evolution, and the usual
//! correlation quantifiers (Simon's separability function, logarithmic
//! negativity, Gaussian quantum discord, classical correlations and mutual
//! information).
//!
//! Units are `m = ħ = k = 1` unless a [`covariance::SystemParams`] says
//! otherwise; the vacuum covariance matrix is `I/2`.
//!
//! ```
//! use twomode::covariance::{two_mode_squeezed, SqueezingParameter, SystemParams};
//! use twomode::dynamics::{evolve, Temperature};
//! use twomode::measures::log_negativity;
//!
//! let sigma0 = two_mode_squeezed(SqueezingParameter::new(4.0)?);
//! let params = SystemParams::figure_defaults();
//! let sigma = evolve(&sigma0, &params, Temperature::new(1.0)?, 2.0)?;
//! assert!(log_negativity(&sigma)? > 0.0);
//! # Ok::<(), twomode::Error>(())
//! ```

pub mod cli;
pub mod covariance;
mod dd;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod measures;
pub mod oracle;

pub use error::{Error, Result};
