//! Hull-White one-factor short rate fitted to a market curve.
//!
//! Simulation uses the exact conditional Gaussian transition, so step
//! size composition is exact and the fitted drift theta(t) never enters
//! the path generator; it is kept as a cross-check for Euler schemes.

use crate::curves::YieldCurve;
use crate::error::{Error, Result};
#[cfg(not(feature = "std"))]
use crate::prelude::*;

/// One trading day; also the epsilon used for the initial short rate
/// `r(0) = f(0, DT_DAY)`, since `f(0,0)` is only an NS limit.
pub const DT_DAY: f64 = 1.0 / 360.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hw1fParams {
    pub beta: f64,
    pub sigma: f64,
    pub curve: YieldCurve,
}

impl Hw1fParams {
    pub fn new(beta: f64, sigma: f64, curve: YieldCurve) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(Error::InvalidParam {
                name: "beta",
                value: beta,
            });
        }
        if !(sigma >= 0.0) {
            return Err(Error::InvalidParam {
                name: "sigma",
                value: sigma,
            });
        }
        Ok(Self { beta, sigma, curve })
    }

    /// Fitted mean level `alpha(t) = f(0,t) + sigma^2/(2 beta^2) (1 - e^{-beta t})^2`.
    pub fn alpha(&self, t: f64) -> f64 {
        let e = 1.0 - (-self.beta * t).exp();
        self.curve.fwd(t) + self.sigma * self.sigma / (2.0 * self.beta * self.beta) * e * e
    }

    /// Conditional mean and variance of `r(t)` given `r(s) = r_s`.
    pub fn conditional_moments(&self, r_s: f64, s: f64, t: f64) -> Result<(f64, f64)> {
        if s > t {
            return Err(Error::ReversedTimes { s, t });
        }
        let decay = (-self.beta * (t - s)).exp();
        let mean = r_s * decay + self.alpha(t) - self.alpha(s) * decay;
        let var = self.sigma * self.sigma / (2.0 * self.beta)
            * (1.0 - (-2.0 * self.beta * (t - s)).exp());
        Ok((mean, var))
    }

    /// Exact transition `r(t) = mean + sqrt(var) z` for a standard
    /// normal draw `z`.
    pub fn step_exact(&self, r_s: f64, s: f64, t: f64, z: f64) -> Result<f64> {
        let (mean, var) = self.conditional_moments(r_s, s, t)?;
        Ok(mean + var.sqrt() * z)
    }

    /// `B(t,T) = (1 - e^{-beta (T-t)})/beta`.
    pub fn b(&self, t: f64, maturity: f64) -> f64 {
        (1.0 - (-self.beta * (maturity - t)).exp()) / self.beta
    }

    /// `A(t,T)` of the curve-fitted affine bond price.
    pub fn a(&self, t: f64, maturity: f64) -> Result<f64> {
        let pm_t = self.curve.discount_factor(0.0, t)?;
        let pm_mat = self.curve.discount_factor(0.0, maturity)?;
        let b = self.b(t, maturity);
        Ok(pm_mat / pm_t
            * (b * self.curve.fwd(t)
                - self.sigma * self.sigma / (4.0 * self.beta)
                    * (1.0 - (-2.0 * self.beta * t).exp())
                    * b
                    * b)
                .exp())
    }

    /// Zero-coupon bond price `P(t,T) = A(t,T) e^{-B(t,T) r_t}`.
    pub fn zcb_price(&self, t: f64, maturity: f64, r_t: f64) -> Result<f64> {
        if t > maturity {
            return Err(Error::ReversedTimes { s: t, t: maturity });
        }
        Ok(self.a(t, maturity)? * (-self.b(t, maturity) * r_t).exp())
    }

    /// Curve-fitting drift `theta(t) = f'(0,t) + beta f(0,t)
    /// + sigma^2/(2 beta) (1 - e^{-2 beta t})`; cross-check only.
    pub fn theta(&self, t: f64) -> Result<f64> {
        if t <= 0.0 {
            return Err(Error::NonPositiveTime(t));
        }
        Ok(self.curve.fwd_slope(t)
            + self.beta * self.curve.fwd(t)
            + self.sigma * self.sigma / (2.0 * self.beta) * (1.0 - (-2.0 * self.beta * t).exp()))
    }

    /// Initial short rate convention: one-day instantaneous forward.
    pub fn initial_short_rate(&self) -> f64 {
        self.curve.fwd(DT_DAY)
    }
}
