//! Nelson-Siegel zero curves fitted to deposit and swap quotes.
//!
//! Deposit simple rates pin the short end, annual-leg par swap rates are
//! bootstrapped to zeros for the long end, and the four NS parameters are
//! fitted by a grid search over the shape parameter with a closed-form
//! linear least-squares solve for the level/slope/curvature at each grid
//! point.

use crate::error::{Error, Result};
use crate::numerics::solve3;
#[cfg(not(feature = "std"))]
use crate::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Currency {
    Domestic,
    Foreign,
}

/// Nelson-Siegel parameters: zero rate
/// `y(tau) = b0 + b1 g(tau/l) + b2 (g(tau/l) - exp(-tau/l))`
/// with `g(x) = (1 - exp(-x))/x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NsParams {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub lambda_shape: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YieldCurve {
    pub params: NsParams,
    pub currency: Currency,
}

/// Simple-rate deposit quote (tenor in year fractions).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepositQuote {
    pub tenor: f64,
    pub rate: f64,
}

/// Annual-fixed-leg par swap quote (tenor in whole years).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapQuote {
    pub tenor: f64,
    pub rate: f64,
}

/// (1 - e^{-x})/x, stable near zero.
fn ns_g(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        -(-x).exp_m1() / x
    }
}

impl YieldCurve {
    pub fn new(params: NsParams, currency: Currency) -> Self {
        Self { params, currency }
    }

    /// Continuously-compounded zero rate for tenor `tau >= 0` (the
    /// `tau -> 0` limit is `b0 + b1`).
    pub fn zero_rate(&self, tau: f64) -> f64 {
        let p = self.params;
        if tau <= 0.0 {
            return p.b0 + p.b1;
        }
        let x = tau / p.lambda_shape;
        let g = ns_g(x);
        p.b0 + p.b1 * g + p.b2 * (g - (-x).exp())
    }

    /// Market discount factor `P(t,T) = exp(-y(T-t) (T-t))`.
    pub fn discount_factor(&self, t: f64, maturity: f64) -> Result<f64> {
        if t < 0.0 || maturity < t {
            return Err(Error::NegativeTenor { t, maturity });
        }
        let tau = maturity - t;
        Ok((-self.zero_rate(tau) * tau).exp())
    }

    /// Instantaneous forward `f(0,T) = -d ln P(0,T) / dT`, analytic from
    /// the NS form.
    pub fn inst_forward(&self, maturity: f64) -> Result<f64> {
        if maturity <= 0.0 {
            return Err(Error::NonPositiveMaturity(maturity));
        }
        Ok(self.fwd(maturity))
    }

    /// Forward rate as a total function of `t >= 0` (analytic
    /// continuation to `f(0,0) = b0 + b1`), for internal model use.
    pub(crate) fn fwd(&self, t: f64) -> f64 {
        let p = self.params;
        let x = t / p.lambda_shape;
        p.b0 + p.b1 * (-x).exp() + p.b2 * x * (-x).exp()
    }

    /// d f(0,t) / dt, analytic.
    pub(crate) fn fwd_slope(&self, t: f64) -> f64 {
        let p = self.params;
        let x = t / p.lambda_shape;
        (-x).exp() * (-p.b1 + p.b2 - p.b2 * x) / p.lambda_shape
    }
}

/// Convert a simple deposit rate to a continuously-compounded zero.
fn deposit_zero(q: &DepositQuote) -> (f64, f64) {
    (q.tenor, (1.0 + q.rate * q.tenor).ln() / q.tenor)
}

/// Bootstrap annual discount factors from par rates and return zeros at
/// the quoted tenors. Years before the first quoted tenor are discounted
/// off the deposit-implied short end.
fn bootstrap_swap_zeros(deposit_zeros: &[(f64, f64)], swaps: &[SwapQuote]) -> Vec<(f64, f64)> {
    let short_zero = |t: f64| -> f64 {
        match deposit_zeros {
            [] => 0.0,
            [only] => only.1,
            many => {
                if t <= many[0].0 {
                    many[0].1
                } else if t >= many[many.len() - 1].0 {
                    many[many.len() - 1].1
                } else {
                    let j = many.iter().position(|&(tt, _)| tt >= t).unwrap();
                    let (t0, z0) = many[j - 1];
                    let (t1, z1) = many[j];
                    z0 + (z1 - z0) * (t - t0) / (t1 - t0)
                }
            }
        }
    };
    let par_at = |k: f64| -> f64 {
        if k <= swaps[0].tenor {
            swaps[0].rate
        } else if k >= swaps[swaps.len() - 1].tenor {
            swaps[swaps.len() - 1].rate
        } else {
            let j = swaps.iter().position(|q| q.tenor >= k).unwrap();
            let (t0, r0) = (swaps[j - 1].tenor, swaps[j - 1].rate);
            let (t1, r1) = (swaps[j].tenor, swaps[j].rate);
            r0 + (r1 - r0) * (k - t0) / (t1 - t0)
        }
    };

    let max_year = libm::round(swaps[swaps.len() - 1].tenor) as usize;
    let first_year = libm::round(swaps[0].tenor) as usize;
    let mut annuity = 0.0;
    let mut dfs: Vec<f64> = Vec::with_capacity(max_year);
    for k in 1..=max_year {
        let kf = k as f64;
        let df = if k < first_year {
            (-short_zero(kf) * kf).exp()
        } else {
            let c = par_at(kf);
            (1.0 - c * annuity) / (1.0 + c)
        };
        annuity += df;
        dfs.push(df);
    }
    swaps
        .iter()
        .map(|q| {
            let k = libm::round(q.tenor) as usize;
            (q.tenor, -dfs[k - 1].ln() / q.tenor)
        })
        .collect()
}

/// Fit a Nelson-Siegel curve to deposit and swap quotes.
///
/// Grid search over `lambda_shape` in {0.1, 0.2, ..., 5.0}; at each grid
/// point the remaining three parameters solve the 3x3 normal equations of
/// the zero-rate regression.
pub fn fit_nelson_siegel(
    currency: Currency,
    deposits: &[DepositQuote],
    swaps: &[SwapQuote],
) -> Result<YieldCurve> {
    if deposits.len() < 2 || swaps.len() < 2 || deposits.len() + swaps.len() < 4 {
        return Err(Error::InsufficientQuotes {
            n_short: deposits.len(),
            n_long: swaps.len(),
        });
    }
    let mut points: Vec<(f64, f64)> = deposits.iter().map(deposit_zero).collect();
    points.extend(bootstrap_swap_zeros(&points.clone(), swaps));

    let mut best: Option<(f64, NsParams)> = None;
    for i in 1..=50 {
        let lambda = i as f64 * 0.1;
        let mut xtx = [[0.0f64; 3]; 3];
        let mut xty = [0.0f64; 3];
        for &(tau, y) in &points {
            let x = tau / lambda;
            let g = ns_g(x);
            let row = [1.0, g, g - (-x).exp()];
            for a in 0..3 {
                for b in 0..3 {
                    xtx[a][b] += row[a] * row[b];
                }
                xty[a] += row[a] * y;
            }
        }
        let Some(beta) = solve3(xtx, xty) else {
            continue;
        };
        let params = NsParams {
            b0: beta[0],
            b1: beta[1],
            b2: beta[2],
            lambda_shape: lambda,
        };
        let curve = YieldCurve::new(params, currency);
        let sse: f64 = points
            .iter()
            .map(|&(tau, y)| {
                let r = y - curve.zero_rate(tau);
                r * r
            })
            .sum();
        if !sse.is_finite() {
            continue;
        }
        if best.map_or(true, |(s, _)| sse < s) {
            best = Some((sse, params));
        }
    }
    match best {
        Some((sse, params)) if sse.is_finite() => Ok(YieldCurve::new(params, currency)),
        _ => Err(Error::FitDiverged),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn quotes_from_curve(c: &YieldCurve) -> (Vec<DepositQuote>, Vec<SwapQuote>) {
        let deposits = [1.0 / 360.0, 7.0 / 360.0, 0.25, 0.5, 1.0]
            .iter()
            .map(|&tau| DepositQuote {
                tenor: tau,
                rate: ((c.zero_rate(tau) * tau).exp() - 1.0) / tau,
            })
            .collect();
        let mut annuity = 0.0;
        let swaps = (1..=10)
            .map(|k| {
                let df = c.discount_factor(0.0, k as f64).unwrap();
                annuity += df;
                SwapQuote {
                    tenor: k as f64,
                    rate: (1.0 - df) / annuity,
                }
            })
            .collect();
        (deposits, swaps)
    }

    fn fixture_curve() -> YieldCurve {
        YieldCurve::new(
            NsParams {
                b0: 0.03,
                b1: -0.01,
                b2: 0.005,
                lambda_shape: 1.5,
            },
            Currency::Domestic,
        )
    }

    #[test]
    fn fit_recovers_generating_parameters() {
        let truth = fixture_curve();
        let (deposits, swaps) = quotes_from_curve(&truth);
        let fitted = fit_nelson_siegel(Currency::Domestic, &deposits, &swaps).unwrap();
        assert_relative_eq!(fitted.params.b0, 0.03, epsilon = 1e-6);
        assert_relative_eq!(fitted.params.b1, -0.01, epsilon = 1e-6);
        assert_relative_eq!(fitted.params.b2, 0.005, epsilon = 1e-6);
        assert_relative_eq!(fitted.params.lambda_shape, 1.5, epsilon = 1e-12);
        for tau in [0.25, 1.0, 3.0, 7.0, 10.0] {
            assert!((fitted.zero_rate(tau) - truth.zero_rate(tau)).abs() < 1e-10);
        }
    }

    #[test]
    fn flat_quotes_give_flat_curve() {
        let flat = YieldCurve::new(
            NsParams {
                b0: 0.02,
                b1: 0.0,
                b2: 0.0,
                lambda_shape: 1.0,
            },
            Currency::Foreign,
        );
        let (deposits, swaps) = quotes_from_curve(&flat);
        let fitted = fit_nelson_siegel(Currency::Foreign, &deposits, &swaps).unwrap();
        assert_relative_eq!(fitted.params.b0, 0.02, epsilon = 1e-6);
        assert!(fitted.params.b1.abs() < 1e-6);
        assert!(fitted.params.b2.abs() < 1e-6);
        for tau in [0.1, 1.0, 5.0, 10.0] {
            assert!((fitted.zero_rate(tau) - 0.02).abs() < 1e-8);
        }
    }

    #[test]
    fn fitted_fixture_discounts_monotonically() {
        let (deposits, swaps) = quotes_from_curve(&fixture_curve());
        let fitted = fit_nelson_siegel(Currency::Domestic, &deposits, &swaps).unwrap();
        let mut prev = 1.0;
        for i in 1..=40 {
            let df = fitted.discount_factor(0.0, i as f64 * 0.25).unwrap();
            assert!(df < prev, "DF not decreasing at T={}", i as f64 * 0.25);
            prev = df;
        }
    }

    #[test]
    fn insufficient_quotes_are_rejected() {
        let (deposits, swaps) = quotes_from_curve(&fixture_curve());
        assert!(matches!(
            fit_nelson_siegel(Currency::Domestic, &deposits[..1], &swaps),
            Err(Error::InsufficientQuotes { .. })
        ));
        assert!(matches!(
            fit_nelson_siegel(Currency::Domestic, &deposits, &swaps[..1]),
            Err(Error::InsufficientQuotes { .. })
        ));
    }

    #[test]
    fn discount_factor_identities() {
        let flat = YieldCurve::new(
            NsParams {
                b0: 0.02,
                b1: 0.0,
                b2: 0.0,
                lambda_shape: 1.0,
            },
            Currency::Domestic,
        );
        assert_eq!(flat.discount_factor(5.0, 5.0).unwrap(), 1.0);
        assert_relative_eq!(
            flat.discount_factor(0.0, 10.0).unwrap(),
            0.81873075307798186,
            epsilon = 1e-12
        );
        assert!(flat.discount_factor(3.0, 2.0).is_err());
    }

    #[test]
    fn forward_limits_and_flat_case() {
        let c = fixture_curve();
        // T -> 0+ limit is b0 + b1
        assert_relative_eq!(c.inst_forward(1e-9).unwrap(), 0.02, epsilon = 1e-9);
        assert!(c.inst_forward(0.0).is_err());
        let flat = YieldCurve::new(
            NsParams {
                b0: 0.02,
                b1: 0.0,
                b2: 0.0,
                lambda_shape: 1.0,
            },
            Currency::Domestic,
        );
        for t in [0.5, 2.0, 10.0, 25.0] {
            assert_relative_eq!(flat.inst_forward(t).unwrap(), 0.02, epsilon = 1e-14);
        }
    }

    #[test]
    fn analytic_forward_matches_finite_difference() {
        let c = fixture_curve();
        let h = 1e-5;
        for t in [0.5, 1.0, 3.0, 7.0, 15.0] {
            let lnp = |tt: f64| -> f64 { c.discount_factor(0.0, tt).unwrap().ln() };
            let fd = -(lnp(t + h) - lnp(t - h)) / (2.0 * h);
            assert!(
                (fd - c.inst_forward(t).unwrap()).abs() < 1e-6,
                "fd mismatch at T={t}"
            );
        }
    }

    #[test]
    fn forward_integrates_to_log_discount() {
        // composite Simpson with 1e4 intervals over [0, T]
        let c = fixture_curve();
        for t_end in [2.0, 10.0] {
            let n = 10_000usize;
            let h = t_end / n as f64;
            let mut acc = c.fwd(0.0) + c.fwd(t_end);
            for i in 1..n {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                acc += w * c.fwd(i as f64 * h);
            }
            let integral = acc * h / 3.0;
            let expect = -c.discount_factor(0.0, t_end).unwrap().ln();
            assert!((integral - expect).abs() < 1e-8);
        }
    }

    #[test]
    fn forward_slope_matches_finite_difference() {
        let c = fixture_curve();
        let h = 1e-6;
        for t in [0.3, 1.0, 4.0, 9.0] {
            let fd = (c.fwd(t + h) - c.fwd(t - h)) / (2.0 * h);
            assert!((fd - c.fwd_slope(t)).abs() < 1e-7);
        }
    }
}
