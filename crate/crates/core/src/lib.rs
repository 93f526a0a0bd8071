//! Monte Carlo engine for unilateral CVA on a floating-for-floating
//! cross-currency swap, with wrong-way risk driven by a stochastic
//! correlation between the FX spot and the counterparty default intensity.
//!
//! The model couples four risk factors under the domestic risk-neutral
//! measure:
//!
//! * domestic and foreign short rates, each Hull-White one-factor,
//!   simulated exactly through their conditional Gaussian transitions
//!   ([`hw1f`]);
//! * the FX spot under Garman-Kohlhagen dynamics with the pathwise
//!   simulated rates in the drift ([`fx`]);
//! * a CIR default intensity with closed-form survival ([`credit`]).
//!
//! The FX and intensity drivers are tied together either by a constant
//! correlation or by `tanh` of an Ornstein-Uhlenbeck process; the FX and
//! the two rate drivers share a constant correlation matrix with an
//! explicit 3x3 Cholesky factor ([`correlation`]). [`engine`] walks the
//! quarterly payment grid with daily substeps and aggregates pathwise CVA
//! per scenario; [`calibration`] fits the model to market quotes
//! (Jamshidian swaption decomposition for the rate vols, exact-transition
//! maximum likelihood for the CIR intensity, AR(1) least squares for the
//! correlation process).
//!
//! The crate is `no_std`-compatible (with `alloc`); everything that does
//! IO lives in the companion CLI crate.

#![cfg_attr(not(feature = "std"), no_std)]

#[cfg(not(feature = "std"))]
extern crate alloc;

pub mod calibration;
pub mod ccs;
pub mod correlation;
pub mod credit;
pub mod curves;
pub mod engine;
pub mod error;
pub mod fx;
pub mod hw1f;
pub mod numerics;
pub mod series;
pub mod stats;

pub use error::{Error, Result};

/// Imports that substitute for the std prelude in no_std builds; each
/// module pulls this in behind the same cfg.
#[cfg(not(feature = "std"))]
mod prelude {
    pub use alloc::vec::Vec;
    pub use num_traits::Float as _;
}
