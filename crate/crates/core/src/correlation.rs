//! Dependence structure of the hybrid model: the constant 3x3 driver
//! correlation with its explicit Cholesky factor, the tanh-OU stochastic
//! correlation between the FX and intensity drivers, correlated Brownian
//! increment generation, and the historical estimators (EWMA residual
//! extraction, sliding-window correlation, AR(1) least squares for the
//! OU parameters).

use crate::error::{Error, Result};
#[cfg(not(feature = "std"))]
use crate::prelude::*;
use crate::series::log_returns;
use crate::stats;

/// Constant correlations among (FX, domestic rate, foreign rate) drivers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrMatrix {
    pub rho12: f64,
    pub rho13: f64,
    pub rho23: f64,
}

impl CorrMatrix {
    pub fn new(rho12: f64, rho13: f64, rho23: f64) -> Result<Self> {
        for r in [rho12, rho13, rho23] {
            if !(r.abs() <= 1.0) {
                return Err(Error::InvalidRho(r));
            }
        }
        Ok(Self {
            rho12,
            rho13,
            rho23,
        })
    }
}

/// Lower-triangular Cholesky factor of the 3x3 correlation matrix; the
/// first row is (1, 0, 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CholeskyFactor {
    pub a21: f64,
    pub a22: f64,
    pub a31: f64,
    pub a32: f64,
    pub a33: f64,
}

/// Closed-form Cholesky factorization of the unit-diagonal 3x3 matrix.
pub fn cholesky3(r: &CorrMatrix) -> Result<CholeskyFactor> {
    let pivot = 1.0 - r.rho12 * r.rho12;
    if pivot <= 0.0 {
        return Err(Error::DegeneratePivot);
    }
    let radicand = (1.0 - r.rho12 * r.rho12 - r.rho13 * r.rho13 - r.rho23 * r.rho23
        + 2.0 * r.rho12 * r.rho13 * r.rho23)
        / pivot;
    if radicand < -1e-12 {
        return Err(Error::NotPositiveSemiDefinite { radicand });
    }
    Ok(CholeskyFactor {
        a21: r.rho12,
        a22: pivot.sqrt(),
        a31: r.rho13,
        a32: (r.rho23 - r.rho12 * r.rho13) / pivot.sqrt(),
        a33: radicand.max(0.0).sqrt(),
    })
}

/// Ornstein-Uhlenbeck parameters of the latent correlation driver
/// `dG = theta (mu - G) dt + sigma dW`; the correlation itself is
/// `rho(t) = tanh(G(t))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuCorrParams {
    pub theta: f64,
    pub mu: f64,
    pub sigma: f64,
    /// State at the valuation date (estimators set this to the last
    /// back-transformed observation).
    pub g0: f64,
}

impl OuCorrParams {
    pub fn new(theta: f64, mu: f64, sigma: f64, g0: f64) -> Result<Self> {
        if !(theta > 0.0) {
            return Err(Error::InvalidParam {
                name: "theta_ou",
                value: theta,
            });
        }
        if !(sigma >= 0.0) {
            return Err(Error::InvalidParam {
                name: "sigma_ou",
                value: sigma,
            });
        }
        Ok(Self {
            theta,
            mu,
            sigma,
            g0,
        })
    }

    /// Exact OU transition over `dt`, driven by the Brownian increment
    /// `dw` (the embedded draw is `z = dw/sqrt(dt)`).
    pub fn step_ou(&self, g_t: f64, dt: f64, dw: f64) -> Result<f64> {
        if !(dt > 0.0) {
            return Err(Error::NonPositiveStep(dt));
        }
        let decay = (-self.theta * dt).exp();
        let stdev = self.sigma * ((1.0 - decay * decay) / (2.0 * self.theta)).sqrt();
        Ok(self.mu + (g_t - self.mu) * decay + stdev * dw / dt.sqrt())
    }
}

/// Map the latent level into (-1, 1); the output is kept strictly
/// below 1 in magnitude even where tanh rounds to 1 in f64.
pub fn rho_of_g(g: f64) -> f64 {
    let bound = 1.0 - f64::EPSILON / 2.0;
    g.tanh().clamp(-bound, bound)
}

/// How the FX-intensity correlation is driven in a scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CorrelationSpec {
    Constant(f64),
    Stochastic(OuCorrParams),
}

impl CorrelationSpec {
    pub fn validate(&self) -> Result<()> {
        if let CorrelationSpec::Constant(rho) = self {
            if !(rho.abs() <= 1.0) {
                return Err(Error::InvalidRho(*rho));
            }
        }
        Ok(())
    }
}

/// Correlated Brownian increments for the four drivers over a step `dt`
/// from four independent standard normals, using the Cholesky rows for
/// (FX, domestic, foreign) and the current correlation `rho_t` for the
/// intensity driver.
pub fn correlated_increments(
    a: &CholeskyFactor,
    rho_t: f64,
    z: [f64; 4],
    dt: f64,
) -> Result<[f64; 4]> {
    if !(rho_t.abs() <= 1.0) {
        return Err(Error::InvalidRho(rho_t));
    }
    if !(dt > 0.0) {
        return Err(Error::NonPositiveStep(dt));
    }
    let sq = dt.sqrt();
    let dw_psi = sq * z[0];
    let dw_d = a.a21 * dw_psi + a.a22 * sq * z[1];
    let dw_f = a.a31 * dw_psi + a.a32 * sq * z[1] + a.a33 * sq * z[2];
    let dw_lam = rho_t * dw_psi + (1.0 - rho_t * rho_t).sqrt() * sq * z[3];
    Ok([dw_psi, dw_d, dw_f, dw_lam])
}

/// Sliding-window Pearson correlation, stamped at the window's right
/// edge. Windows with a constant side are reported as 0 and flagged.
#[derive(Debug, Clone, PartialEq)]
pub struct SlidingCorr {
    pub values: Vec<f64>,
    /// Output indices whose window had zero variance on either side.
    pub zero_variance: Vec<usize>,
}

pub fn sliding_window_corr(x: &[f64], y: &[f64], window: usize) -> Result<SlidingCorr> {
    if x.len() != y.len() {
        return Err(Error::WindowTooLarge {
            window,
            len: x.len().min(y.len()),
        });
    }
    if window < 5 || window > x.len() {
        return Err(Error::WindowTooLarge {
            window,
            len: x.len(),
        });
    }
    let n_out = x.len() - window + 1;
    let mut values = Vec::with_capacity(n_out);
    let mut zero_variance = Vec::new();
    for i in 0..n_out {
        match stats::pearson(&x[i..i + window], &y[i..i + window]) {
            Some(r) => values.push(r.clamp(-1.0, 1.0)),
            None => {
                values.push(0.0);
                zero_variance.push(i);
            }
        }
    }
    Ok(SlidingCorr {
        values,
        zero_variance,
    })
}

/// Least-squares OU fit of a correlation series: back-transform through
/// atanh, regress `g_{i+1} = a + b g_i`, and map
/// `theta = -ln(b)/dt`, `mu = a/(1-b)`,
/// `sigma = sd(resid) sqrt(2 theta/(1-b^2))`.
///
/// A constant input is fitted as the degenerate `sigma = 0` process
/// pinned at its level.
pub fn fit_ou_lsq(rho_hat: &[f64], dt: f64) -> Result<OuCorrParams> {
    if rho_hat.len() < 10 {
        return Err(Error::TooShort {
            len: rho_hat.len(),
            min: 10,
        });
    }
    if !(dt > 0.0) {
        return Err(Error::NonPositiveStep(dt));
    }
    for (i, &r) in rho_hat.iter().enumerate() {
        if r.abs() >= 1.0 - 1e-12 {
            return Err(Error::SaturatedInput { index: i });
        }
    }
    let g: Vec<f64> = rho_hat.iter().map(|&r| r.atanh()).collect();
    if rho_hat.iter().all(|&r| r == rho_hat[0]) {
        // constant level: degenerate fit convention
        return OuCorrParams::new(1.0, g[0], 0.0, g[g.len() - 1]);
    }
    let n = g.len() - 1;
    let x = &g[..n];
    let y = &g[1..];
    let mx = stats::mean(x);
    let my = stats::mean(y);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for i in 0..n {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if sxx == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let b = sxy / sxx;
    if b <= 0.0 || b >= 1.0 {
        return Err(Error::ExplosiveFit { slope: b });
    }
    let a = my - b * mx;
    let theta = -b.ln() / dt;
    let mu = a / (1.0 - b);
    let resid_var = (0..n)
        .map(|i| {
            let e = y[i] - a - b * x[i];
            e * e
        })
        .sum::<f64>()
        / n as f64;
    let sigma = resid_var.sqrt() * (2.0 * theta / (1.0 - b * b)).sqrt();
    OuCorrParams::new(theta, mu, sigma, g[n])
}

/// Devolatilized, standardized increments of a positive level series:
/// log returns are demeaned, divided by an EWMA volatility (decay 0.94,
/// seeded with the variance of the first 30 returns), and rescaled to
/// unit sample variance. Stands in for a fitted stochastic-volatility
/// model as the estimate of the driving Brownian increments.
pub fn extract_residuals(levels: &[f64]) -> Result<Vec<f64>> {
    const DECAY: f64 = 0.94;
    const SEED_LEN: usize = 30;
    if levels.len() < SEED_LEN {
        return Err(Error::TooShort {
            len: levels.len(),
            min: SEED_LEN,
        });
    }
    let mut x = log_returns(levels)?;
    let m = stats::mean(&x);
    for v in &mut x {
        *v -= m;
    }
    let seed_var = x[..SEED_LEN.min(x.len())]
        .iter()
        .map(|v| v * v)
        .sum::<f64>()
        / SEED_LEN.min(x.len()) as f64;
    if seed_var == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let mut var = seed_var;
    let mut z = Vec::with_capacity(x.len());
    for (i, &xi) in x.iter().enumerate() {
        if i > 0 {
            var = DECAY * var + (1.0 - DECAY) * x[i - 1] * x[i - 1];
        }
        if var <= 0.0 {
            return Err(Error::ZeroVariance);
        }
        z.push(xi / var.sqrt());
    }
    let sd = {
        let mz = stats::mean(&z);
        (z.iter().map(|v| (v - mz) * (v - mz)).sum::<f64>() / z.len() as f64).sqrt()
    };
    if sd == 0.0 {
        return Err(Error::ZeroVariance);
    }
    for v in &mut z {
        *v /= sd;
    }
    Ok(z)
}
