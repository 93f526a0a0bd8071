//! Model calibration: Hull-White volatility from a swaption quote via
//! Jamshidian's decomposition, and CIR intensity parameters from a
//! historical intensity series via exact-transition maximum likelihood.

use crate::curves::YieldCurve;
use crate::error::{Error, Result};
use crate::hw1f::Hw1fParams;
use crate::numerics::{bisect, ln_bessel_i, nelder_mead, normal_cdf};
#[cfg(not(feature = "std"))]
use crate::prelude::*;

/// European swaption on an annual-fixed-leg swap.
#[derive(Debug, Clone, PartialEq)]
pub struct SwaptionQuote {
    /// Option expiry (first reset of the underlying swap).
    pub expiry: f64,
    /// Fixed-leg payment dates after expiry, strictly increasing.
    pub payment_dates: Vec<f64>,
    /// Fixed rate.
    pub strike: f64,
    /// Observed price per unit notional.
    pub market_price: f64,
    pub is_payer: bool,
}

impl SwaptionQuote {
    pub fn new(
        expiry: f64,
        payment_dates: Vec<f64>,
        strike: f64,
        market_price: f64,
        is_payer: bool,
    ) -> Result<Self> {
        if !(expiry > 0.0) {
            return Err(Error::NonPositiveTime(expiry));
        }
        if !(strike > 0.0) {
            return Err(Error::InvalidParam {
                name: "strike",
                value: strike,
            });
        }
        let mut prev = expiry;
        for &d in &payment_dates {
            if d <= prev {
                return Err(Error::BadSchedule {
                    start: expiry,
                    maturity: d,
                    interval: d - prev,
                });
            }
            prev = d;
        }
        if payment_dates.is_empty() {
            return Err(Error::BadSchedule {
                start: expiry,
                maturity: expiry,
                interval: 0.0,
            });
        }
        Ok(Self {
            expiry,
            payment_dates,
            strike,
            market_price,
            is_payer,
        })
    }

    /// Forward par rate of the underlying swap on a market curve; the
    /// usual ATM strike.
    pub fn atm_strike(curve: &YieldCurve, expiry: f64, payment_dates: &[f64]) -> Result<f64> {
        let p0 = curve.discount_factor(0.0, expiry)?;
        let pn = curve.discount_factor(0.0, payment_dates[payment_dates.len() - 1])?;
        let mut annuity = 0.0;
        let mut prev = expiry;
        for &d in payment_dates {
            annuity += (d - prev) * curve.discount_factor(0.0, d)?;
            prev = d;
        }
        Ok((p0 - pn) / annuity)
    }
}

/// Hull-White price of a European put on a zero-coupon bond,
/// `ZBP(T0, Ti, K)`; zero-vol cases collapse to the discounted
/// intrinsic value.
pub fn zcb_put_hw(p: &Hw1fParams, t0: f64, ti: f64, strike: f64) -> Result<f64> {
    if !(t0 > 0.0) {
        return Err(Error::NonPositiveTime(t0));
    }
    if ti <= t0 {
        return Err(Error::ReversedTimes { s: t0, t: ti });
    }
    let p_t0 = p.curve.discount_factor(0.0, t0)?;
    let p_ti = p.curve.discount_factor(0.0, ti)?;
    let sigma_p = p.sigma
        * ((1.0 - (-2.0 * p.beta * t0).exp()) / (2.0 * p.beta)).sqrt()
        * p.b(t0, ti);
    if sigma_p < 1e-12 {
        return Ok((strike * p_t0 - p_ti).max(0.0));
    }
    let h = (p_ti / (strike * p_t0)).ln() / sigma_p + 0.5 * sigma_p;
    Ok(strike * p_t0 * normal_cdf(-h + sigma_p) - p_ti * normal_cdf(-h))
}

/// Companion call, used for receiver swaptions.
fn zcb_call_hw(p: &Hw1fParams, t0: f64, ti: f64, strike: f64) -> Result<f64> {
    let p_t0 = p.curve.discount_factor(0.0, t0)?;
    let p_ti = p.curve.discount_factor(0.0, ti)?;
    // put-call parity on the bond: C - P = P(0,Ti) - K P(0,T0)
    Ok(zcb_put_hw(p, t0, ti, strike)? + p_ti - strike * p_t0)
}

/// Jamshidian decomposition: solve for the critical short rate at which
/// the coupon bond is worth par, then price the swaption as a portfolio
/// of bond options struck at the critical-rate bond prices.
pub fn jamshidian_swaption(p: &Hw1fParams, quote: &SwaptionQuote) -> Result<f64> {
    let t0 = quote.expiry;
    let mut cashflows: Vec<(f64, f64)> = Vec::with_capacity(quote.payment_dates.len());
    let mut prev = t0;
    for &d in &quote.payment_dates {
        cashflows.push((d, quote.strike * (d - prev)));
        prev = d;
    }
    cashflows.last_mut().expect("nonempty dates").1 += 1.0;

    let bond_minus_par = |r: f64| -> f64 {
        cashflows
            .iter()
            .map(|&(d, c)| c * p.a(t0, d).expect("valid dates") * (-p.b(t0, d) * r).exp())
            .sum::<f64>()
            - 1.0
    };
    // decreasing in r: bracket [-1,1], doubling up to 8 times
    let (mut lo, mut hi) = (-1.0, 1.0);
    let mut expansions = 0;
    while bond_minus_par(lo) < 0.0 || bond_minus_par(hi) > 0.0 {
        expansions += 1;
        if expansions > 8 {
            return Err(Error::RootBracketFailure { expansions: 8 });
        }
        lo *= 2.0;
        hi *= 2.0;
    }
    let r_star = bisect(bond_minus_par, lo, hi, 1e-12)?;

    let mut price = 0.0;
    for &(d, c) in &cashflows {
        let strike_i = p.a(t0, d)? * (-p.b(t0, d) * r_star).exp();
        price += c * if quote.is_payer {
            zcb_put_hw(p, t0, d, strike_i)?
        } else {
            zcb_call_hw(p, t0, d, strike_i)?
        };
    }
    Ok(price)
}

/// Result of the one-parameter Hull-White volatility calibration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HwSigmaFit {
    pub sigma: f64,
    /// Squared price error at the fitted volatility.
    pub objective: f64,
}

const SIGMA_CAP: f64 = 0.5;

/// Fit the Hull-White volatility to one swaption quote with the mean
/// reversion held fixed, by bisection on the monotone sigma -> price
/// map.
pub fn calibrate_hw_sigma(
    quote: &SwaptionQuote,
    beta_fixed: f64,
    curve: &YieldCurve,
) -> Result<HwSigmaFit> {
    let price_at = |sigma: f64| -> Result<f64> {
        jamshidian_swaption(&Hw1fParams::new(beta_fixed, sigma, *curve)?, quote)
    };
    let lo_price = price_at(0.0)?;
    let hi_price = price_at(SIGMA_CAP)?;
    let target = quote.market_price;
    if target < lo_price - 1e-12 || target > hi_price + 1e-12 {
        return Err(Error::PriceUnattainable {
            price: target,
            lo: lo_price,
            hi: hi_price,
        });
    }
    let sigma = bisect(
        |s| price_at(s).expect("schedule validated") - target,
        0.0,
        SIGMA_CAP,
        1e-10,
    )?;
    let diff = price_at(sigma)? - target;
    Ok(HwSigmaFit {
        sigma,
        objective: diff * diff,
    })
}

/// Fitted CIR parameters with optimizer diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirFit {
    pub kappa: f64,
    pub theta: f64,
    pub sigma: f64,
    pub log_likelihood: f64,
}

/// Exact CIR transition log-likelihood of an intensity series observed
/// at spacing `dt` (noncentral chi-square density via the log Bessel
/// series).
pub fn cir_log_likelihood(kappa: f64, theta: f64, sigma: f64, lams: &[f64], dt: f64) -> f64 {
    if !(kappa > 0.0 && theta > 0.0 && sigma > 0.0) {
        return f64::NEG_INFINITY;
    }
    let decay = (-kappa * dt).exp();
    let c = 2.0 * kappa / (sigma * sigma * (1.0 - decay));
    let q = 2.0 * kappa * theta / (sigma * sigma) - 1.0;
    if !c.is_finite() || q <= -1.0 {
        return f64::NEG_INFINITY;
    }
    let mut ll = 0.0;
    for w in lams.windows(2) {
        let u = c * w[0] * decay;
        let v = c * w[1];
        ll += c.ln() - u - v + 0.5 * q * (v.ln() - u.ln()) + ln_bessel_i(q, 2.0 * (u * v).sqrt());
        if !ll.is_finite() {
            return f64::NEG_INFINITY;
        }
    }
    ll
}

/// Moment-matching starting point: AR(1) regression for the drift,
/// residual scaling for the diffusion.
pub fn cir_moment_init(lams: &[f64], dt: f64) -> Result<(f64, f64, f64)> {
    let n = lams.len() - 1;
    let x = &lams[..n];
    let y = &lams[1..];
    let mx = crate::stats::mean(x);
    let my = crate::stats::mean(y);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for i in 0..n {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if sxx == 0.0 {
        return Err(Error::LikelihoodNonFinite);
    }
    let b = sxy / sxx;
    if b <= 0.0 || b >= 1.0 {
        return Err(Error::ExplosiveFit { slope: b });
    }
    let a = my - b * mx;
    let kappa = -b.ln() / dt;
    let theta = a / (1.0 - b);
    let mut s2 = 0.0;
    for i in 0..n {
        let e = y[i] - a - b * x[i];
        s2 += e * e / (x[i] * dt);
    }
    let sigma = (s2 / n as f64).sqrt();
    if sigma == 0.0 || !theta.is_finite() || theta <= 0.0 {
        return Err(Error::LikelihoodNonFinite);
    }
    Ok((kappa, theta, sigma))
}

/// Maximum-likelihood CIR fit, Nelder-Mead in log-parameter space from
/// the moment-matching start.
pub fn cir_mle(lams: &[f64], dt: f64) -> Result<CirFit> {
    if lams.len() < 100 {
        return Err(Error::TooShort {
            len: lams.len(),
            min: 100,
        });
    }
    for (i, &l) in lams.iter().enumerate() {
        if !(l > 0.0) || !l.is_finite() {
            return Err(Error::NonPositiveIntensityInput { index: i, value: l });
        }
    }
    if lams.iter().all(|&l| l == lams[0]) {
        return Err(Error::LikelihoodNonFinite);
    }
    let (k0, t0, s0) = cir_moment_init(lams, dt)?;
    let neg_ll = |v: &[f64]| -> f64 {
        let (kappa, theta, sigma) = (v[0].exp(), v[1].exp(), v[2].exp());
        if !(1e-8..1e4).contains(&kappa)
            || !(1e-8..1e4).contains(&theta)
            || !(1e-8..1e4).contains(&sigma)
        {
            return f64::INFINITY;
        }
        -cir_log_likelihood(kappa, theta, sigma, lams, dt)
    };
    let best = nelder_mead(neg_ll, &[k0.ln(), t0.ln(), s0.ln()], 0.15, 400);
    let (kappa, theta, sigma) = (best[0].exp(), best[1].exp(), best[2].exp());
    let log_likelihood = cir_log_likelihood(kappa, theta, sigma, lams, dt);
    if !log_likelihood.is_finite() {
        return Err(Error::LikelihoodNonFinite);
    }
    Ok(CirFit {
        kappa,
        theta,
        sigma,
        log_likelihood,
    })
}
