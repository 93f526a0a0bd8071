//! Floating-for-floating cross-currency swap: telescoped bond valuation,
//! the explicit FRA-sum route kept as an independent oracle, and
//! positive-exposure extraction.
//!
//! Values are always in domestic currency from the payer's (domestic
//! leg) point of view. Valuation dates sit on the payment grid, just
//! after the exchange, so the front stub bond prices collapse to 1; the
//! notional exchange enters only at maturity, undiscounted, matching the
//! telescoped FRA portfolio at earlier dates.

use crate::error::{Error, Result};
#[cfg(not(feature = "std"))]
use crate::prelude::*;

const GRID_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CcsContract {
    pub notional_dom: f64,
    pub notional_for: f64,
    /// First reset date.
    pub start: f64,
    /// Maturity (final exchange).
    pub maturity: f64,
    /// Payment interval in years.
    pub interval: f64,
}

impl CcsContract {
    /// Build a contract with the notionals tied by the initial spot:
    /// `N_d = psi0 N_f`.
    pub fn new(
        notional_for: f64,
        spot0: f64,
        start: f64,
        maturity: f64,
        interval: f64,
    ) -> Result<Self> {
        if !(spot0 > 0.0) {
            return Err(Error::NonPositiveSpot(spot0));
        }
        let n = (maturity - start) / interval;
        if !(interval > 0.0) || start < 0.0 || maturity <= start || (n - n.round()).abs() > GRID_TOL
        {
            return Err(Error::BadSchedule {
                start,
                maturity,
                interval,
            });
        }
        Ok(Self {
            notional_dom: spot0 * notional_for,
            notional_for,
            start,
            maturity,
            interval,
        })
    }

    /// Number of payment periods.
    pub fn n_periods(&self) -> usize {
        ((self.maturity - self.start) / self.interval).round() as usize
    }

    /// Payment dates `T_1..T_n` (excludes the start date).
    pub fn payment_dates(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.n_periods()).map(move |i| self.start + i as f64 * self.interval)
    }

    /// Index of `t` on the reset grid (0 = start); errors off-grid or
    /// past maturity.
    fn grid_index(&self, t: f64) -> Result<i64> {
        if t > self.maturity + GRID_TOL {
            return Err(Error::MaturityPassed {
                t,
                maturity: self.maturity,
            });
        }
        let k = (t - self.start) / self.interval;
        if (k - k.round()).abs() > GRID_TOL {
            return Err(Error::OffGridDate { t });
        }
        Ok(k.round() as i64)
    }

    fn is_maturity(&self, t: f64) -> bool {
        (t - self.maturity).abs() <= GRID_TOL * self.interval.max(1.0)
    }

    /// Telescoped payer value at a grid date `t`:
    /// `N_f psi (P_f(t,T_a') - P_f(t,T_b)) - N_d (P_d(t,T_a') - P_d(t,T_b))`
    /// plus the notional exchange `N_f psi - N_d` at maturity, with
    /// `T_a' = max(T_a, t)`.
    pub fn value_payer(
        &self,
        t: f64,
        psi_t: f64,
        pd: &impl Fn(f64, f64) -> f64,
        pf: &impl Fn(f64, f64) -> f64,
    ) -> Result<f64> {
        self.grid_index(t)?;
        let t_a = self.start.max(t);
        let mut value = self.notional_for * psi_t * (pf(t, t_a) - pf(t, self.maturity))
            - self.notional_dom * (pd(t, t_a) - pd(t, self.maturity));
        if self.is_maturity(t) {
            value += self.notional_for * psi_t - self.notional_dom;
        }
        Ok(value)
    }

    pub fn value_receiver(
        &self,
        t: f64,
        psi_t: f64,
        pd: &impl Fn(f64, f64) -> f64,
        pf: &impl Fn(f64, f64) -> f64,
    ) -> Result<f64> {
        Ok(-self.value_payer(t, psi_t, pd, pf)?)
    }

    /// Independent valuation route: explicit sum of per-period FRA
    /// values `N Delta P(t,T_i) (F_f - F_d)` with the simply-compounded
    /// forwards read off the bond prices, plus the maturity exchange.
    pub fn fra_sum_oracle(
        &self,
        t: f64,
        psi_t: f64,
        pd: &impl Fn(f64, f64) -> f64,
        pf: &impl Fn(f64, f64) -> f64,
    ) -> Result<f64> {
        let k = self.grid_index(t)?.max(0);
        let delta = self.interval;
        let forward = |p: &dyn Fn(f64, f64) -> f64, t0: f64, t1: f64| -> f64 {
            (p(t, t0) / p(t, t1) - 1.0) / delta
        };
        let mut value = 0.0;
        for i in (k as usize + 1)..=self.n_periods() {
            let t1 = self.start + (i - 1) as f64 * delta;
            let t2 = self.start + i as f64 * delta;
            let t1 = t1.max(t); // seasoned front period starts at t
            let f_f = forward(pf, t1, t2);
            let f_d = forward(pd, t1, t2);
            value += self.notional_for * psi_t * delta * pf(t, t2) * f_f
                - self.notional_dom * delta * pd(t, t2) * f_d;
        }
        if self.is_maturity(t) {
            value += self.notional_for * psi_t - self.notional_dom;
        }
        Ok(value)
    }
}

/// Positive exposure `max(value - collateral, 0)`.
pub fn exposure(value: f64, collateral: f64) -> f64 {
    (value - collateral).max(0.0)
}
