//! Garman-Kohlhagen FX spot under the domestic risk-neutral measure.
//!
//! The drift carries the pathwise simulated short rates (left-point in
//! each step); the diffusion is integrated exactly, so the log-Euler
//! update is exact in distribution per step when rates are constant.

use crate::error::{Error, Result};
#[cfg(not(feature = "std"))]
use crate::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FxParams {
    /// Lognormal volatility of the spot.
    pub sigma_psi: f64,
    /// Initial spot, domestic units per foreign unit.
    pub psi0: f64,
}

impl FxParams {
    pub fn new(sigma_psi: f64, psi0: f64) -> Result<Self> {
        if !(sigma_psi >= 0.0) {
            return Err(Error::InvalidParam {
                name: "sigma_psi",
                value: sigma_psi,
            });
        }
        if !(psi0 > 0.0) {
            return Err(Error::InvalidParam {
                name: "psi0",
                value: psi0,
            });
        }
        Ok(Self { sigma_psi, psi0 })
    }

    /// One log-Euler step:
    /// `psi exp((r_d - r_f - sigma^2/2) dt + sigma dW)`.
    pub fn step_fx(&self, psi_t: f64, r_d: f64, r_f: f64, dt: f64, dw_psi: f64) -> Result<f64> {
        if !(psi_t > 0.0) {
            return Err(Error::NonPositiveSpot(psi_t));
        }
        if !(dt > 0.0) {
            return Err(Error::NonPositiveStep(dt));
        }
        let drift = (r_d - r_f - 0.5 * self.sigma_psi * self.sigma_psi) * dt;
        Ok(psi_t * (drift + self.sigma_psi * dw_psi).exp())
    }
}
