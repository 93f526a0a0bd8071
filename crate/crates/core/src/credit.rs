//! CIR default intensity: full-truncation Euler simulation, closed-form
//! survival, pathwise survival quadrature, and the credit-triangle
//! spread conversion.

use crate::error::{Error, Result};
#[cfg(not(feature = "std"))]
use crate::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirParams {
    pub kappa: f64,
    pub theta: f64,
    pub sigma: f64,
    pub lambda0: f64,
    /// Recovery rate in [0,1).
    pub rr: f64,
}

impl CirParams {
    pub fn new(kappa: f64, theta: f64, sigma: f64, lambda0: f64, rr: f64) -> Result<Self> {
        // sigma = 0 is tolerated as the degenerate deterministic
        // intensity so that zero-noise scenarios remain expressible
        for (name, value, ok) in [
            ("kappa", kappa, kappa > 0.0),
            ("theta", theta, theta > 0.0),
            ("sigma", sigma, sigma >= 0.0),
            ("lambda0", lambda0, lambda0 >= 0.0),
        ] {
            if !ok || !value.is_finite() {
                return Err(Error::InvalidParam { name, value });
            }
        }
        if !(0.0..1.0).contains(&rr) {
            return Err(Error::InvalidRecovery(rr));
        }
        Ok(Self {
            kappa,
            theta,
            sigma,
            lambda0,
            rr,
        })
    }

    /// Strict Feller condition `2 kappa theta > sigma^2`.
    pub fn feller_satisfied(&self) -> bool {
        2.0 * self.kappa * self.theta > self.sigma * self.sigma
    }

    /// Full-truncation Euler step. The returned state may go negative;
    /// the truncated value enters both drift and diffusion, and callers
    /// truncate again before using the intensity downstream.
    pub fn step_cir(&self, lam_t: f64, dt: f64, dw_lam: f64) -> Result<f64> {
        if !(dt > 0.0) {
            return Err(Error::NonPositiveStep(dt));
        }
        let lam_plus = lam_t.max(0.0);
        Ok(lam_t
            + self.kappa * (self.theta - lam_plus) * dt
            + self.sigma * lam_plus.sqrt() * dw_lam)
    }

    /// Closed-form survival `S = A(s,t) exp(-B(s,t) lambda_s)` with
    /// `h = sqrt(kappa^2 + 2 sigma^2)`.
    pub fn survival_closed_form(&self, s: f64, t: f64, lam_s: f64) -> Result<f64> {
        if s > t {
            return Err(Error::ReversedTimes { s, t });
        }
        let dt = t - s;
        if dt == 0.0 {
            return Ok(1.0);
        }
        let (kappa, sigma) = (self.kappa, self.sigma);
        // vanishing-vol regime: the exponent 2 kappa theta / sigma^2
        // blows up while its base tends to 1, so switch to the
        // deterministic-intensity limit before the product loses all
        // precision
        if 2.0 * sigma * sigma < 1e-12 * kappa * kappa {
            let b0 = (1.0 - (-kappa * dt).exp()) / kappa;
            return Ok((-(self.theta * (dt - b0)) - b0 * lam_s).exp());
        }
        let h = (kappa * kappa + 2.0 * sigma * sigma).sqrt();
        let e = (h * dt).exp_m1(); // e^{h dt} - 1
        let denom = 2.0 * h + (kappa + h) * e;
        let b = 2.0 * e / denom;
        let ln_a =
            2.0 * kappa * self.theta / (sigma * sigma) * ((2.0 * h).ln() + (kappa + h) * dt / 2.0 - denom.ln());
        Ok((ln_a - b * lam_s).exp())
    }
}

/// Pathwise survival by left-point quadrature of the intensity on a
/// uniform grid: `S(t_i) = exp(-sum_{k<i} max(lam_k,0) dt)`, `S(0) = 1`.
pub fn path_survival(lams: &[f64], dt: f64) -> Result<Vec<f64>> {
    if lams.is_empty() {
        return Err(Error::EmptyPath);
    }
    if !(dt > 0.0) {
        return Err(Error::NonPositiveStep(dt));
    }
    let mut out = Vec::with_capacity(lams.len());
    let mut hazard = 0.0;
    out.push(1.0);
    for &lam in &lams[..lams.len() - 1] {
        hazard += lam.max(0.0) * dt;
        out.push((-hazard).exp());
    }
    Ok(out)
}

/// Per-bucket default probabilities `q_i = S(t_{i-1}) - S(t_i)`.
pub fn default_increments(surv: &[f64]) -> Result<Vec<f64>> {
    if surv.is_empty() {
        return Err(Error::EmptyPath);
    }
    let mut out = Vec::with_capacity(surv.len() - 1);
    for (i, w) in surv.windows(2).enumerate() {
        if w[1] > w[0] {
            return Err(Error::NonMonotoneSurvival { index: i + 1 });
        }
        out.push(w[0] - w[1]);
    }
    Ok(out)
}

/// Credit-triangle conversion `lambda_i = s_i / (1 - RR)`.
pub fn spreads_to_intensities(spreads: &[f64], rr: f64) -> Result<Vec<f64>> {
    if !(0.0..1.0).contains(&rr) {
        return Err(Error::InvalidRecovery(rr));
    }
    Ok(spreads.iter().map(|s| s / (1.0 - rr)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn paper_params() -> CirParams {
        CirParams::new(0.2975, 0.3045, 0.1432, 0.3045, 0.25).unwrap()
    }

    #[test]
    fn feller_condition_cases() {
        assert!(paper_params().feller_satisfied()); // 0.18118 > 0.02051
        assert!(!CirParams::new(1.0, 1.0, 2.0, 0.1, 0.25)
            .unwrap()
            .feller_satisfied());
        // boundary 2 kappa theta == sigma^2 fails the strict inequality
        assert!(!CirParams::new(0.5, 1.0, 1.0, 0.1, 0.25)
            .unwrap()
            .feller_satisfied());
    }

    #[test]
    fn step_cir_deterministic_cases() {
        let p = CirParams::new(1.0, 0.04, 1e-9, 0.04, 0.25).unwrap();
        // sigma ~ 0, at the long-run level: fixed point
        assert_relative_eq!(p.step_cir(0.04, 0.25, 0.0).unwrap(), 0.04, epsilon = 1e-12);
        // sigma = 0 from zero: pure drift kappa*theta*dt = 0.01
        let p = CirParams::new(1.0, 0.04, 1e-30, 0.0, 0.25).unwrap();
        assert_relative_eq!(p.step_cir(0.0, 0.25, 0.7).unwrap(), 0.01, epsilon = 1e-15);
        assert!(p.step_cir(0.1, 0.0, 0.0).is_err());
    }

    #[test]
    fn euler_mean_matches_exact_cir_mean() {
        let p = CirParams::new(0.2975, 0.3045, 0.1432, 0.1, 0.25).unwrap();
        let n_paths = 100_000usize;
        let n_steps = 360usize;
        let dt = 1.0 / 360.0;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut terminal = Vec::with_capacity(n_paths);
        for _ in 0..n_paths {
            let mut lam = p.lambda0;
            for _ in 0..n_steps {
                let z: f64 = rng.sample(StandardNormal);
                lam = p.step_cir(lam, dt, dt.sqrt() * z).unwrap();
            }
            terminal.push(lam.max(0.0));
        }
        let exact = p.theta + (p.lambda0 - p.theta) * (-p.kappa).exp();
        let m = crate::stats::mean(&terminal);
        let se = crate::stats::sample_std(&terminal) / (n_paths as f64).sqrt();
        assert!((m - exact).abs() < 4.0 * se, "{m} vs {exact} (se {se})");
    }

    #[test]
    fn survival_closed_form_basics() {
        let p = paper_params();
        assert_eq!(p.survival_closed_form(2.0, 2.0, 0.1).unwrap(), 1.0);
        assert!(p.survival_closed_form(2.0, 1.0, 0.1).is_err());
        // frozen value, lambda_0 = theta, t = 5 (mpmath reference)
        let s5 = p.survival_closed_form(0.0, 5.0, p.theta).unwrap();
        assert_relative_eq!(s5, 0.22859612344858075, epsilon = 1e-12);
    }

    #[test]
    fn survival_deterministic_limit() {
        let p = CirParams::new(0.2975, 0.3045, 1e-12, 0.3045, 0.25).unwrap();
        for t in [1.0, 5.0, 10.0] {
            let s = p.survival_closed_form(0.0, t, p.theta).unwrap();
            assert!(
                (s - (-p.theta * t).exp()).abs() < 1e-6,
                "t={t}: {s} vs {}",
                (-p.theta * t).exp()
            );
        }
    }

    #[test]
    fn survival_monotone_in_horizon_and_intensity() {
        let p = paper_params();
        let mut prev = 1.0;
        for i in 1..=40 {
            let s = p.survival_closed_form(0.0, i as f64 * 0.25, 0.2).unwrap();
            assert!(s < prev && s > 0.0 && s <= 1.0);
            prev = s;
        }
        let hi = p.survival_closed_form(0.0, 5.0, 0.4).unwrap();
        let lo = p.survival_closed_form(0.0, 5.0, 0.1).unwrap();
        assert!(hi < lo);
    }

    #[test]
    fn survival_closed_form_matches_monte_carlo_laplace() {
        // E[exp(-int lambda)] over exactly-stepped CIR paths, three
        // parameter triples including the paper's
        let triples = [
            (0.2975, 0.3045, 0.1432, 0.3045),
            (0.5, 0.05, 0.15, 0.02),
            (1.2, 0.1, 0.3, 0.1),
        ];
        for (kappa, theta, sigma, lam0) in triples {
            let p = CirParams::new(kappa, theta, sigma, lam0, 0.25).unwrap();
            let horizon = 5.0;
            let n_steps = (horizon * 360.0) as usize;
            let dt = 1.0 / 360.0;
            let n_paths = 40_000usize;
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            let mut sum = 0.0;
            for _ in 0..n_paths {
                let mut lam = p.lambda0;
                let mut integral = 0.0;
                for _ in 0..n_steps {
                    let z: f64 = rng.sample(StandardNormal);
                    let next = p.step_cir(lam, dt, dt.sqrt() * z).unwrap();
                    // trapezoid on the truncated intensity
                    integral += 0.5 * (lam.max(0.0) + next.max(0.0)) * dt;
                    lam = next;
                }
                sum += (-integral).exp();
            }
            let mc = sum / n_paths as f64;
            let cf = p.survival_closed_form(0.0, horizon, p.lambda0).unwrap();
            assert!(
                (mc - cf).abs() / cf < 0.005,
                "kappa={kappa}: mc {mc} vs closed form {cf}"
            );
        }
    }

    #[test]
    fn path_survival_constant_hazard() {
        let lams = [0.04; 9];
        let s = path_survival(&lams, 0.25).unwrap();
        assert_eq!(s[0], 1.0);
        assert_relative_eq!(s[4], (-0.04f64).exp(), epsilon = 1e-14);
        assert!(path_survival(&[], 0.25).is_err());
        let zeros = path_survival(&[0.0; 5], 0.25).unwrap();
        assert!(zeros.iter().all(|&x| x == 1.0));
    }

    #[test]
    fn default_increments_arithmetic() {
        let q = default_increments(&[1.0, 0.9, 0.8]).unwrap();
        assert_relative_eq!(q[0], 0.1, epsilon = 1e-15);
        assert_relative_eq!(q[1], 0.1, epsilon = 1e-15);
        assert!(default_increments(&[1.0; 4]).unwrap().iter().all(|&x| x == 0.0));
        assert!(matches!(
            default_increments(&[1.0, 0.8, 0.9]),
            Err(Error::NonMonotoneSurvival { index: 2 })
        ));
    }

    #[test]
    fn spread_conversion() {
        let lam = spreads_to_intensities(&[0.0075, 0.03], 0.25).unwrap();
        assert_relative_eq!(lam[0], 0.01, epsilon = 1e-15);
        assert_relative_eq!(lam[1], 0.04, epsilon = 1e-15);
        assert!(matches!(
            spreads_to_intensities(&[0.01], 1.0),
            Err(Error::InvalidRecovery(_))
        ));
    }

    proptest! {
        // telescoping: partial sums of q reconstruct 1 - S
        #[test]
        fn increments_telescope(mut vals in proptest::collection::vec(0.0f64..1.0, 2..60)) {
            vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let mut surv = vec![1.0];
            surv.extend(vals);
            let q = default_increments(&surv).unwrap();
            prop_assert!(q.iter().all(|&x| x >= 0.0));
            let total: f64 = q.iter().sum();
            prop_assert!((total - (1.0 - surv[surv.len() - 1])).abs() < 1e-14);
        }

        // pathwise survival is nonincreasing and stays in (0,1]
        #[test]
        fn path_survival_properties(lams in proptest::collection::vec(-0.05f64..0.6, 1..80)) {
            let s = path_survival(&lams, 0.25).unwrap();
            prop_assert_eq!(s[0], 1.0);
            prop_assert!(s.windows(2).all(|w| w[1] <= w[0]));
            prop_assert!(s.iter().all(|&x| x > 0.0 && x <= 1.0));
        }
    }
}
