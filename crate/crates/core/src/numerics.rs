//! Shared numerical routines: normal CDF, log modified Bessel I,
//! bracketed bisection, a compact Nelder-Mead, and a 3x3 linear solve.

use crate::error::{Error, Result};
#[cfg(not(feature = "std"))]
use crate::prelude::*;

/// Standard normal CDF via the complementary error function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / core::f64::consts::SQRT_2)
}

/// ln I_nu(x) for nu >= 0, x >= 0.
///
/// Ascending series in log domain for moderate arguments, switching to
/// the large-argument asymptotic expansion (truncated at its smallest
/// term) once x dominates nu^2. Relative accuracy ~1e-13 over the range
/// exercised by the CIR transition density.
pub fn ln_bessel_i(nu: f64, x: f64) -> f64 {
    debug_assert!(nu >= 0.0);
    if x <= 0.0 {
        return if nu == 0.0 { 0.0 } else { f64::NEG_INFINITY };
    }
    let switch = 30.0_f64.max(1.5 * nu * nu);
    if x > switch {
        // I_nu(x) ~ e^x/sqrt(2 pi x) * [1 - a1/x + a2/x^2 - ...],
        // truncated at the smallest term of the (divergent) tail.
        let mut sum = 1.0;
        let mut term = 1.0;
        let mut prev = f64::INFINITY;
        for k in 0u32..30 {
            let kk = 2.0 * k as f64 + 1.0;
            term *= -(4.0 * nu * nu - kk * kk) / (8.0 * x * (k as f64 + 1.0));
            if term.abs() >= prev {
                break;
            }
            prev = term.abs();
            sum += term;
            if term.abs() < 1e-16 * sum.abs() {
                break;
            }
        }
        return x - 0.5 * (2.0 * core::f64::consts::PI * x).ln() + sum.ln();
    }
    // log-domain ascending series: term_k = (2k+nu) ln(x/2) - ln k! - ln G(k+nu+1)
    let lh = (0.5 * x).ln();
    let mut log_terms: Vec<f64> = Vec::new();
    let mut lt = nu * lh - libm::lgamma(nu + 1.0);
    let mut lmax = lt;
    log_terms.push(lt);
    for k in 1usize..2000 {
        let kf = k as f64;
        lt += 2.0 * lh - kf.ln() - (kf + nu).ln();
        log_terms.push(lt);
        if lt > lmax {
            lmax = lt;
        } else if lmax - lt > 40.0 {
            break;
        }
    }
    let s: f64 = log_terms.iter().map(|l| (l - lmax).exp()).sum();
    lmax + s.ln()
}

/// Root of `f` by bisection on a bracketing interval.
///
/// Stops when |f(mid)| < `f_tol` or the interval width falls below
/// machine resolution around the root.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, f_tol: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if !(flo.is_finite() && fhi.is_finite()) {
        return Err(Error::FitDiverged);
    }
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::RootBracketFailure { expansions: 0 });
    }
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm.abs() < f_tol || (hi - lo) < f64::EPSILON * (1.0 + mid.abs()) {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}

/// Nelder-Mead simplex minimization.
///
/// Plain reflection/expansion/contraction/shrink with standard
/// coefficients; converges on the spread of function values.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: F,
    start: &[f64],
    initial_step: f64,
    max_iter: usize,
) -> Vec<f64> {
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(start.to_vec());
    for i in 0..n {
        let mut v = start.to_vec();
        v[i] += if v[i].abs() > 1e-12 {
            initial_step * v[i].abs()
        } else {
            initial_step
        };
        simplex.push(v);
    }
    let mut fv: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    for _ in 0..max_iter {
        // order best..worst
        let mut idx: Vec<usize> = (0..=n).collect();
        idx.sort_by(|&a, &b| fv[a].partial_cmp(&fv[b]).expect("NaN objective"));
        let reordered: Vec<Vec<f64>> = idx.iter().map(|&i| simplex[i].clone()).collect();
        let refv: Vec<f64> = idx.iter().map(|&i| fv[i]).collect();
        simplex = reordered;
        fv = refv;

        if (fv[n] - fv[0]).abs() < 1e-12 * (1.0 + fv[0].abs()) {
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64)
            .collect();
        let point = |coef: f64| -> Vec<f64> {
            (0..n)
                .map(|j| centroid[j] + coef * (simplex[n][j] - centroid[j]))
                .collect()
        };

        let xr = point(-1.0);
        let fr = f(&xr);
        if fr < fv[0] {
            let xe = point(-2.0);
            let fe = f(&xe);
            if fe < fr {
                simplex[n] = xe;
                fv[n] = fe;
            } else {
                simplex[n] = xr;
                fv[n] = fr;
            }
        } else if fr < fv[n - 1] {
            simplex[n] = xr;
            fv[n] = fr;
        } else {
            let xc = point(if fr < fv[n] { -0.5 } else { 0.5 });
            let fc = f(&xc);
            if fc < fv[n].min(fr) {
                simplex[n] = xc;
                fv[n] = fc;
            } else {
                for i in 1..=n {
                    for j in 0..n {
                        simplex[i][j] = 0.5 * (simplex[i][j] + simplex[0][j]);
                    }
                    fv[i] = f(&simplex[i]);
                }
            }
        }
    }
    let best = (0..=n)
        .min_by(|&a, &b| fv[a].partial_cmp(&fv[b]).expect("NaN objective"))
        .unwrap();
    simplex.swap_remove(best)
}

/// Solve a 3x3 linear system by Gaussian elimination with partial
/// pivoting. Returns `None` when the matrix is numerically singular.
pub fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let mut m = [[0.0f64; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&a[i]);
        m[i][3] = b[i];
    }
    for col in 0..3 {
        let piv = (col..3).max_by(|&r, &s| {
            m[r][col]
                .abs()
                .partial_cmp(&m[s][col].abs())
                .expect("NaN in linear system")
        })?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        for row in (col + 1)..3 {
            let factor = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] -= factor * m[col][k];
            }
        }
    }
    let mut x = [0.0f64; 3];
    for i in (0..3).rev() {
        let mut s = m[i][3];
        for k in (i + 1)..3 {
            s -= m[i][k] * x[k];
        }
        x[i] = s / m[i][i];
    }
    Some(x)
}
