//! Synthetic market-data fixtures shaped like the study's inputs:
//! deposit and swap quotes generated from known Nelson-Siegel curves, a
//! CDS spread history from a CIR intensity path whose FX co-movement is
//! driven by a tanh-OU stochastic correlation, FX and yield histories
//! with a known driver correlation matrix, and swaption quotes priced
//! at the target Hull-White volatilities.
//!
//! History dates use a synthetic 360-day calendar (twelve 30-day
//! months), matching the engine's trading-day convention.

use crate::error::{io_err, Result};
use crate::market_data::{write_snapshot, MarketSnapshot, SwaptionRow};
use cva_core::calibration::{jamshidian_swaption, SwaptionQuote};
use cva_core::correlation::{cholesky3, correlated_increments, rho_of_g, CorrMatrix, OuCorrParams};
use cva_core::credit::CirParams;
use cva_core::curves::{Currency, DepositQuote, NsParams, SwapQuote, YieldCurve};
use cva_core::hw1f::Hw1fParams;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::path::Path;

/// Ground-truth generator parameters behind the fixture set.
pub struct FixtureTruth {
    pub curve_dom: YieldCurve,
    pub curve_for: YieldCurve,
    pub sigma_d: f64,
    pub sigma_f: f64,
    pub beta: f64,
    pub cir: CirParams,
    pub corr: CorrMatrix,
    pub ou: OuCorrParams,
    pub fx_vol: f64,
    pub spot_fx: f64,
}

impl Default for FixtureTruth {
    fn default() -> Self {
        FixtureTruth {
            curve_dom: YieldCurve::new(
                NsParams {
                    b0: 0.03,
                    b1: -0.01,
                    b2: 0.005,
                    lambda_shape: 1.5,
                },
                Currency::Domestic,
            ),
            curve_for: YieldCurve::new(
                NsParams {
                    b0: 0.02,
                    b1: -0.008,
                    b2: 0.004,
                    lambda_shape: 1.2,
                },
                Currency::Foreign,
            ),
            sigma_d: 0.04554,
            sigma_f: 0.03525,
            beta: 0.01,
            cir: CirParams::new(0.2975, 0.3045, 0.1432, 0.02, 0.25).unwrap(),
            corr: CorrMatrix::new(0.1162656, 0.01965914, 0.1383345).unwrap(),
            ou: OuCorrParams::new(0.5, 0.3, 1.5, 0.3).unwrap(),
            fx_vol: 0.30,
            spot_fx: 1.1,
        }
    }
}

/// Day index to a 360-day-calendar ISO date starting 2014-01-01.
fn synthetic_date(day: usize) -> String {
    let year = 2014 + day / 360;
    let month = (day % 360) / 30 + 1;
    let dom = day % 30 + 1;
    format!("{year:04}-{month:02}-{dom:02}")
}

fn deposit_quotes(curve: &YieldCurve) -> Vec<DepositQuote> {
    [1.0 / 360.0, 7.0 / 360.0, 0.25, 0.5, 1.0]
        .iter()
        .map(|&tenor| DepositQuote {
            tenor,
            rate: ((curve.zero_rate(tenor) * tenor).exp() - 1.0) / tenor,
        })
        .collect()
}

fn swap_quotes(curve: &YieldCurve) -> Vec<SwapQuote> {
    let mut annuity = 0.0;
    (1..=10)
        .map(|k| {
            let df = curve.discount_factor(0.0, k as f64).unwrap();
            annuity += df;
            SwapQuote {
                tenor: k as f64,
                rate: (1.0 - df) / annuity,
            }
        })
        .collect()
}

fn swaption_row(truth: &FixtureTruth, curve: &YieldCurve, sigma: f64) -> SwaptionRow {
    let dates: Vec<f64> = (2..=6).map(|i| i as f64).collect();
    let strike = SwaptionQuote::atm_strike(curve, 1.0, &dates).unwrap();
    let quote = SwaptionQuote::new(1.0, dates, strike, 0.0, true).unwrap();
    let hw = Hw1fParams::new(truth.beta, sigma, *curve).unwrap();
    SwaptionRow {
        expiry: 1.0,
        tenor: 5.0,
        price: jamshidian_swaption(&hw, &quote).unwrap(),
    }
}

/// Build the snapshot in memory.
pub fn synthetic_snapshot(truth: &FixtureTruth, seed: u64, n_days: usize) -> MarketSnapshot {
    let dt = 1.0 / 360.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chol = cholesky3(&truth.corr).unwrap();

    // joint daily histories: FX, domestic yield, foreign yield driven by
    // the target matrix; intensity tied to FX through rho(t) = tanh(G)
    let mut fx = vec![1.0f64];
    let mut y_dom = vec![0.0305f64];
    let mut y_for = vec![0.0195f64];
    let mut lam = vec![truth.cir.lambda0];
    let mut g = truth.ou.g0;
    let (sig_y_dom, sig_y_for) = (0.004, 0.0035);
    for _ in 1..n_days {
        let z = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let z5: f64 = rng.sample(StandardNormal);
        let rho = rho_of_g(g);
        let dw = correlated_increments(&chol, rho, z, dt).unwrap();
        fx.push(fx.last().unwrap() * (0.01 * dt - 0.5 * truth.fx_vol.powi(2) * dt + truth.fx_vol * dw[0]).exp());
        y_dom.push(y_dom.last().unwrap() + sig_y_dom * dw[1]);
        y_for.push(y_for.last().unwrap() + sig_y_for * dw[2]);
        let next = truth.cir.step_cir(*lam.last().unwrap(), dt, dw[3]).unwrap();
        lam.push(next.max(1e-8));
        g = truth.ou.step_ou(g, dt, dt.sqrt() * z5).unwrap();
    }
    // anchor the FX history so it ends at the valuation-date spot
    let scale = truth.spot_fx / fx.last().unwrap();
    for v in &mut fx {
        *v *= scale;
    }

    let rr = truth.cir.rr;
    let cds_term: Vec<(f64, f64)> = [1.0, 3.0, 5.0, 7.0, 10.0]
        .iter()
        .map(|&tenor| {
            let s = truth
                .cir
                .survival_closed_form(0.0, tenor, truth.cir.lambda0)
                .unwrap();
            (tenor, (1.0 - rr) * (-s.ln() / tenor))
        })
        .collect();

    MarketSnapshot {
        valuation_date: "2018-12-23".to_string(),
        deposits_dom: deposit_quotes(&truth.curve_dom),
        deposits_for: deposit_quotes(&truth.curve_for),
        swaps_dom: swap_quotes(&truth.curve_dom),
        swaps_for: swap_quotes(&truth.curve_for),
        cds_spreads: Some(cds_term),
        cds_history: Some(
            lam.iter()
                .enumerate()
                .map(|(i, &l)| (synthetic_date(i), l * (1.0 - rr)))
                .collect(),
        ),
        fx_history: Some(
            fx.iter()
                .enumerate()
                .map(|(i, &v)| (synthetic_date(i), v))
                .collect(),
        ),
        yield_history_dom: Some(
            y_dom
                .iter()
                .enumerate()
                .map(|(i, &v)| (synthetic_date(i), 1.0, v))
                .collect(),
        ),
        yield_history_for: Some(
            y_for
                .iter()
                .enumerate()
                .map(|(i, &v)| (synthetic_date(i), 1.0, v))
                .collect(),
        ),
        swaption_dom: Some(swaption_row(truth, &truth.curve_dom, truth.sigma_d)),
        swaption_for: Some(swaption_row(truth, &truth.curve_for, truth.sigma_f)),
        fx_vol: truth.fx_vol,
        spot_fx: truth.spot_fx,
    }
}

const DEFAULT_CONFIG: &str = "\
# cva engine configuration (flat key = value; same-named CLI flags win)
valuation_date = 2018-12-23
fixtures_dir = .
out_dir = out

n_paths = 10000
horizon = 10.0
grid_step = 0.25
substeps = 90
seed = 1
threads = 0

scenarios = stochastic,const:0,const:0.25,const:0.5,const:0.75,const:1

notional_dom = 1.0
rr = 0.25
beta = 0.01
window = 50
yield_tenor = 1.0
";

/// Write the fixture CSVs plus a ready-to-use config file.
pub fn generate(dir: &Path, seed: u64) -> Result<()> {
    let truth = FixtureTruth::default();
    let snapshot = synthetic_snapshot(&truth, seed, 1500);
    write_snapshot(&snapshot, dir)?;
    std::fs::write(dir.join("config.txt"), DEFAULT_CONFIG).map_err(io_err(dir.join("config.txt")))
}
