//! Time-series primitives shared by the historical estimators.

use crate::error::{Error, Result};
#[cfg(not(feature = "std"))]
use crate::prelude::*;

/// Log increments of a positive level series: output `i` is
/// `ln(x[i+1]/x[i])`, so the output is one shorter than the input.
pub fn log_returns(levels: &[f64]) -> Result<Vec<f64>> {
    if levels.len() < 2 {
        return Err(Error::TooShort {
            len: levels.len(),
            min: 2,
        });
    }
    for (i, &x) in levels.iter().enumerate() {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::NonPositiveLevel { index: i, value: x });
        }
    }
    Ok(levels.windows(2).map(|w| (w[1] / w[0]).ln()).collect())
}
