//! Probability models for wind and photovoltaic output and the
//! sequence-operation toolkit: step discretization of continuous power
//! distributions, discrete convolution of independent outputs, and
//! expectations of the resulting probabilistic sequences.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use crate::quad::adaptive_simpson;

/// Per-bin quadrature tolerance used by [`discretize`].
const BIN_QUAD_TOL: f64 = 1e-9;
/// Tolerance on the total mass of a [`ProbSeq`].
pub const SEQ_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum UncertaintyError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("step size mismatch: {a} vs {b}")]
    StepMismatch { a: f64, b: f64 },
    #[error("sequence is not a probability distribution: {0}")]
    NotNormalized(String),
}

/// Wind turbine output model: Weibull wind speed pushed through the
/// piecewise-linear power curve (zero below cut-in, rated above rated speed).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WindPowerModel {
    /// Weibull scale of the wind speed (m/s).
    pub scale_ms: f64,
    /// Weibull shape of the wind speed (dimensionless).
    pub shape: f64,
    /// Cut-in wind speed (m/s).
    pub cut_in_ms: f64,
    /// Rated wind speed (m/s).
    pub rated_ms: f64,
    /// Rated output power (kW).
    pub rated_power_kw: f64,
}

impl WindPowerModel {
    pub fn validate(&self) -> Result<(), UncertaintyError> {
        if !(self.scale_ms > 0.0) || !(self.shape > 0.0) {
            return Err(UncertaintyError::InvalidParameter(format!(
                "Weibull scale/shape must be positive (scale={}, shape={})",
                self.scale_ms, self.shape
            )));
        }
        if !(self.cut_in_ms > 0.0 && self.cut_in_ms < self.rated_ms) {
            return Err(UncertaintyError::InvalidParameter(format!(
                "need 0 < cut-in < rated speed (cut_in={}, rated={})",
                self.cut_in_ms, self.rated_ms
            )));
        }
        if !(self.rated_power_kw > 0.0) {
            return Err(UncertaintyError::InvalidParameter(
                "rated power must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Speed-curve ratio h = v_r / v_in − 1 (> 0 by the invariants).
    pub fn speed_ratio(&self) -> f64 {
        self.rated_ms / self.cut_in_ms - 1.0
    }

    fn weibull_cdf(&self, v: f64) -> f64 {
        if v <= 0.0 {
            0.0
        } else {
            1.0 - (-(v / self.scale_ms).powf(self.shape)).exp()
        }
    }
}

/// Photovoltaic output model: Beta-distributed output ratio on
/// `[0, max_power_kw]`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PvPowerModel {
    /// First Beta shape factor.
    pub shape1: f64,
    /// Second Beta shape factor.
    pub shape2: f64,
    /// Maximum PV power (kW).
    pub max_power_kw: f64,
}

impl PvPowerModel {
    pub fn validate(&self) -> Result<(), UncertaintyError> {
        if !(self.shape1 > 0.0) || !(self.shape2 > 0.0) {
            return Err(UncertaintyError::InvalidParameter(format!(
                "Beta shape factors must be positive (got {}, {})",
                self.shape1, self.shape2
            )));
        }
        if !(self.max_power_kw > 0.0) {
            return Err(UncertaintyError::InvalidParameter(
                "max PV power must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Density of a mixed power distribution on the open interval `(0, p_max)`.
#[derive(Debug, Clone)]
pub enum Density {
    WindWeibull(WindPowerModel),
    PvBeta(PvPowerModel),
    /// Constant density of the given height on `(0, p_max)`.
    Uniform { height: f64 },
    /// No continuous part (point masses only).
    None,
}

/// A power distribution with point masses at 0 and `p_max` and a density
/// in between. Total mass is 1.
#[derive(Debug, Clone)]
pub struct MixedPowerDistribution {
    pub mass_at_zero: f64,
    pub mass_at_max: f64,
    pub p_max_kw: f64,
    pub density: Density,
}

impl MixedPowerDistribution {
    /// Evaluate the continuous density at `p` (kW), zero outside `(0, p_max)`.
    pub fn density_at(&self, p: f64) -> f64 {
        if p <= 0.0 || p >= self.p_max_kw {
            return 0.0;
        }
        match &self.density {
            Density::WindWeibull(m) => {
                // Pushforward of the Weibull speed density through the linear
                // segment of the power curve: v(P) = v_in (1 + h P / P_r).
                let h = m.speed_ratio();
                let v = m.cut_in_ms * (1.0 + h * p / m.rated_power_kw);
                let dv_dp = m.cut_in_ms * h / m.rated_power_kw;
                let t = v / m.scale_ms;
                (m.shape / m.scale_ms) * t.powf(m.shape - 1.0) * (-t.powf(m.shape)).exp() * dv_dp
            }
            Density::PvBeta(m) => pv_density(p, m).unwrap_or(0.0),
            Density::Uniform { height } => *height,
            Density::None => 0.0,
        }
    }

    /// Verify total mass is 1 within `tol`, integrating the density by
    /// adaptive quadrature.
    pub fn check_normalization(&self, tol: f64) -> Result<(), UncertaintyError> {
        let total = self.mass_at_zero + self.mass_at_max + self.integrate_density(0.0, self.p_max_kw);
        if (total - 1.0).abs() > tol {
            return Err(UncertaintyError::NotNormalized(format!(
                "total mass {total} deviates from 1 by {:+.3e}",
                total - 1.0
            )));
        }
        Ok(())
    }

    /// Scale the power axis by `factor` (> 0). Point masses are unchanged;
    /// the density stretches so total mass is preserved.
    pub fn scaled(&self, factor: f64) -> Result<Self, UncertaintyError> {
        if !(factor > 0.0) {
            return Err(UncertaintyError::InvalidParameter(
                "scale factor must be positive".into(),
            ));
        }
        let density = match &self.density {
            Density::WindWeibull(m) => Density::WindWeibull(WindPowerModel {
                rated_power_kw: m.rated_power_kw * factor,
                ..*m
            }),
            Density::PvBeta(m) => Density::PvBeta(PvPowerModel {
                max_power_kw: m.max_power_kw * factor,
                ..*m
            }),
            Density::Uniform { height } => Density::Uniform {
                height: height / factor,
            },
            Density::None => Density::None,
        };
        Ok(Self {
            mass_at_zero: self.mass_at_zero,
            mass_at_max: self.mass_at_max,
            p_max_kw: self.p_max_kw * factor,
            density,
        })
    }

    fn integrate_density(&self, lo: f64, hi: f64) -> f64 {
        let lo = lo.max(0.0);
        let hi = hi.min(self.p_max_kw);
        if hi <= lo {
            return 0.0;
        }
        adaptive_simpson(&|p| self.density_at(p), lo, hi, BIN_QUAD_TOL)
    }
}

/// Censored wind power distribution: speeds below cut-in map to zero
/// output, speeds above rated map to rated output.
pub fn wt_distribution(model: &WindPowerModel) -> Result<MixedPowerDistribution, UncertaintyError> {
    model.validate()?;
    let mass_at_zero = model.weibull_cdf(model.cut_in_ms);
    let mass_at_max = 1.0 - model.weibull_cdf(model.rated_ms);
    Ok(MixedPowerDistribution {
        mass_at_zero,
        mass_at_max,
        p_max_kw: model.rated_power_kw,
        density: Density::WindWeibull(*model),
    })
}

/// Beta density of PV output at `p` kW, scaled from the unit interval.
pub fn pv_density(p: f64, model: &PvPowerModel) -> Result<f64, UncertaintyError> {
    model.validate()?;
    if !(p > 0.0 && p < model.max_power_kw) {
        return Err(UncertaintyError::Domain(format!(
            "p = {p} outside (0, {})",
            model.max_power_kw
        )));
    }
    let (l1, l2) = (model.shape1, model.shape2);
    let r = p / model.max_power_kw;
    let ln_norm = ln_gamma(l1 + l2) - ln_gamma(l1) - ln_gamma(l2);
    let ln_density = ln_norm + (l1 - 1.0) * r.ln() + (l2 - 1.0) * (1.0 - r).ln();
    Ok(ln_density.exp() / model.max_power_kw)
}

/// PV output distribution. The Beta density carries all the mass; the
/// endpoint point masses are zero.
pub fn pv_distribution(model: &PvPowerModel) -> Result<MixedPowerDistribution, UncertaintyError> {
    model.validate()?;
    Ok(MixedPowerDistribution {
        mass_at_zero: 0.0,
        mass_at_max: 0.0,
        p_max_kw: model.max_power_kw,
        density: Density::PvBeta(*model),
    })
}

/// Step-quantized probability sequence over power states. Index `u`
/// represents power `u * step_kw`; entries are nonnegative and sum to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbSeq {
    step_kw: f64,
    probs: Vec<f64>,
}

impl ProbSeq {
    pub fn new(step_kw: f64, probs: Vec<f64>) -> Result<Self, UncertaintyError> {
        if !(step_kw > 0.0) {
            return Err(UncertaintyError::InvalidParameter(
                "step size must be positive".into(),
            ));
        }
        if probs.is_empty() {
            return Err(UncertaintyError::InvalidParameter(
                "sequence must have at least one state".into(),
            ));
        }
        if let Some(p) = probs.iter().find(|p| **p < 0.0 || !p.is_finite()) {
            return Err(UncertaintyError::NotNormalized(format!(
                "negative or non-finite probability {p}"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SEQ_SUM_TOL {
            return Err(UncertaintyError::NotNormalized(format!(
                "probabilities sum to {sum}"
            )));
        }
        Ok(Self { step_kw, probs })
    }

    /// The degenerate sequence concentrated at power zero.
    pub fn point_mass(step_kw: f64) -> Self {
        Self {
            step_kw,
            probs: vec![1.0],
        }
    }

    pub fn step_kw(&self) -> f64 {
        self.step_kw
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Largest state index N (sequence length is N + 1).
    pub fn max_index(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn prob(&self, u: usize) -> f64 {
        self.probs.get(u).copied().unwrap_or(0.0)
    }

    /// E[P] = sum over states of u * q * p_u (kW).
    pub fn expectation_kw(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(u, p)| u as f64 * self.step_kw * p)
            .sum()
    }

    /// Tail masses: `tails[u]` = P(power >= u * q). One extra entry at the
    /// end holds the empty tail 0.
    pub fn tail_sums(&self) -> Vec<f64> {
        let mut tails = vec![0.0; self.probs.len() + 1];
        for u in (0..self.probs.len()).rev() {
            tails[u] = tails[u + 1] + self.probs[u];
        }
        tails
    }

    /// Discrete convolution with an independent sequence on the same step.
    pub fn convolve(&self, other: &ProbSeq) -> Result<ProbSeq, UncertaintyError> {
        convolve(self, other)
    }
}

/// Discretize a mixed distribution into a probabilistic sequence with step
/// `q`. Bin `u` integrates the density over `[uq - q/2, uq + q/2)` clipped
/// to `[0, p_max]`; the endpoint point masses fold into the first and last
/// bins. The raw bin masses partition the total, so the result is
/// renormalized only against quadrature round-off.
pub fn discretize(dist: &MixedPowerDistribution, q: f64) -> Result<ProbSeq, UncertaintyError> {
    if !(q > 0.0) || q >= dist.p_max_kw {
        return Err(UncertaintyError::InvalidParameter(format!(
            "step q = {q} must lie in (0, p_max = {})",
            dist.p_max_kw
        )));
    }
    let n = (dist.p_max_kw / q).ceil() as usize;
    let mut probs = Vec::with_capacity(n + 1);
    for u in 0..=n {
        let center = u as f64 * q;
        let lo = if u == 0 { 0.0 } else { center - 0.5 * q };
        let hi = if u == n {
            dist.p_max_kw
        } else {
            (center + 0.5 * q).min(dist.p_max_kw)
        };
        let mut mass = dist.integrate_density(lo, hi);
        if u == 0 {
            mass += dist.mass_at_zero;
        }
        if u == n {
            mass += dist.mass_at_max;
        }
        probs.push(mass.max(0.0));
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > 1e-6 {
        return Err(UncertaintyError::NotNormalized(format!(
            "discretized mass {sum}; distribution is not normalized"
        )));
    }
    for p in &mut probs {
        *p /= sum;
    }
    ProbSeq::new(q, probs)
}

/// Probabilistic sequence of the sum of two independent outputs:
/// c(i) = sum over j + k = i of a(j) b(k).
pub fn convolve(a: &ProbSeq, b: &ProbSeq) -> Result<ProbSeq, UncertaintyError> {
    if (a.step_kw - b.step_kw).abs() > 1e-12 * a.step_kw.max(b.step_kw) {
        return Err(UncertaintyError::StepMismatch {
            a: a.step_kw,
            b: b.step_kw,
        });
    }
    let mut out = vec![0.0; a.probs.len() + b.probs.len() - 1];
    for (j, pa) in a.probs.iter().enumerate() {
        if *pa == 0.0 {
            continue;
        }
        for (k, pb) in b.probs.iter().enumerate() {
            out[j + k] += pa * pb;
        }
    }
    let sum: f64 = out.iter().sum();
    for p in &mut out {
        *p /= sum;
    }
    ProbSeq::new(a.step_kw, out)
}

/// Expected power of a probabilistic sequence (kW).
pub fn expectation(s: &ProbSeq) -> f64 {
    s.expectation_kw()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn spec_wind() -> WindPowerModel {
        WindPowerModel {
            scale_ms: 10.0,
            shape: 1.8,
            cut_in_ms: 3.0,
            rated_ms: 15.0,
            rated_power_kw: 600.0,
        }
    }

    fn spec_pv() -> PvPowerModel {
        PvPowerModel {
            shape1: 3.0,
            shape2: 5.0,
            max_power_kw: 360.0,
        }
    }

    // Independent composite-Simpson oracle, fixed panel count.
    fn integrate_oracle<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut acc = 0.0;
        for i in 0..n {
            let x0 = a + i as f64 * h;
            let x1 = x0 + h;
            let xm = 0.5 * (x0 + x1);
            acc += h / 6.0 * (f(x0.max(a + 1e-12)) + 4.0 * f(xm) + f(x1.min(b - 1e-12)));
        }
        acc
    }

    #[test]
    fn wt_mass_at_zero_matches_weibull_cdf() {
        let d = wt_distribution(&spec_wind()).unwrap();
        // Direct CDF evaluation: 1 - exp(-(3/10)^1.8)
        let expected = 1.0 - (-(0.3f64).powf(1.8)).exp();
        assert_abs_diff_eq!(d.mass_at_zero, expected, epsilon = 1e-12);
        assert_abs_diff_eq!(d.mass_at_zero, 0.1082, epsilon = 5e-4);
    }

    #[test]
    fn wt_mass_at_max_matches_weibull_tail() {
        let d = wt_distribution(&spec_wind()).unwrap();
        let expected = (-(1.5f64).powf(1.8)).exp();
        assert_abs_diff_eq!(d.mass_at_max, expected, epsilon = 1e-12);
        assert_abs_diff_eq!(d.mass_at_max, 0.1258, epsilon = 5e-4);
    }

    #[test]
    fn wt_masses_cross_checked_by_wind_speed_sampling() {
        use rand::SeedableRng;
        use rand_distr::{Distribution, Weibull};
        let m = spec_wind();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let weibull = Weibull::new(m.scale_ms, m.shape).unwrap();
        let n = 1_000_000usize;
        let mut below = 0usize;
        let mut above = 0usize;
        for _ in 0..n {
            let v: f64 = weibull.sample(&mut rng);
            if v < m.cut_in_ms {
                below += 1;
            }
            if v >= m.rated_ms {
                above += 1;
            }
        }
        let d = wt_distribution(&m).unwrap();
        assert_abs_diff_eq!(below as f64 / n as f64, d.mass_at_zero, epsilon = 2e-3);
        assert_abs_diff_eq!(above as f64 / n as f64, d.mass_at_max, epsilon = 2e-3);
    }

    #[test]
    fn wt_total_mass_is_one() {
        let d = wt_distribution(&spec_wind()).unwrap();
        d.check_normalization(1e-6).unwrap();
    }

    #[test]
    fn wt_rejects_bad_parameters() {
        let mut m = spec_wind();
        m.scale_ms = -1.0;
        assert!(wt_distribution(&m).is_err());
        let mut m = spec_wind();
        m.cut_in_ms = 20.0; // >= rated
        assert!(wt_distribution(&m).is_err());
    }

    #[test]
    fn wt_mass_monotonicity_in_speeds() {
        let base = spec_wind();
        let mut prev_zero = 0.0;
        for v_in in [1.0, 2.0, 3.0, 4.0, 5.0] {
            let d = wt_distribution(&WindPowerModel {
                cut_in_ms: v_in,
                ..base
            })
            .unwrap();
            assert!(d.mass_at_zero > prev_zero, "raising cut-in must raise zero mass");
            prev_zero = d.mass_at_zero;
        }
        let mut prev_max = 1.0;
        for v_r in [10.0, 12.0, 15.0, 18.0, 22.0] {
            let d = wt_distribution(&WindPowerModel {
                rated_ms: v_r,
                ..base
            })
            .unwrap();
            assert!(d.mass_at_max < prev_max, "raising rated speed must lower max mass");
            prev_max = d.mass_at_max;
        }
    }

    #[test]
    fn pv_uniform_beta_is_flat() {
        let m = PvPowerModel {
            shape1: 1.0,
            shape2: 1.0,
            max_power_kw: 360.0,
        };
        for p in [1.0, 90.0, 180.0, 359.0] {
            assert_abs_diff_eq!(pv_density(p, &m).unwrap(), 1.0 / 360.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn pv_density_mode_matches_beta_mode() {
        let m = spec_pv();
        // Beta(3,5) mode at r = (3-1)/(3+5-2) = 1/3; grid search over density.
        let mut best = (0.0, 0.0);
        for i in 1..3600 {
            let p = i as f64 * 0.1;
            let d = pv_density(p, &m).unwrap();
            if d > best.1 {
                best = (p, d);
            }
        }
        assert_abs_diff_eq!(best.0 / m.max_power_kw, 1.0 / 3.0, epsilon = 1e-3);
    }

    #[test]
    fn pv_density_normalizes() {
        let m = spec_pv();
        let total = integrate_oracle(|p| pv_density(p, &m).unwrap(), 0.0, 360.0, 4000);
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-6);
        pv_distribution(&m).unwrap().check_normalization(1e-6).unwrap();
    }

    #[test]
    fn pv_density_rejects_out_of_domain() {
        let m = spec_pv();
        assert!(pv_density(0.0, &m).is_err());
        assert!(pv_density(360.0, &m).is_err());
        assert!(pv_density(-1.0, &m).is_err());
    }

    #[test]
    fn discretize_point_mass_at_zero() {
        let d = MixedPowerDistribution {
            mass_at_zero: 1.0,
            mass_at_max: 0.0,
            p_max_kw: 100.0,
            density: Density::None,
        };
        let s = discretize(&d, 10.0).unwrap();
        assert_eq!(s.prob(0), 1.0);
        assert!(s.probs()[1..].iter().all(|p| *p == 0.0));
    }

    #[test]
    fn discretize_uniform_density_analytic_bins() {
        let d = MixedPowerDistribution {
            mass_at_zero: 0.0,
            mass_at_max: 0.0,
            p_max_kw: 100.0,
            density: Density::Uniform { height: 0.01 },
        };
        let s = discretize(&d, 50.0).unwrap();
        assert_eq!(s.probs().len(), 3);
        assert_abs_diff_eq!(s.prob(0), 0.25, epsilon = 1e-9);
        assert_abs_diff_eq!(s.prob(1), 0.50, epsilon = 1e-9);
        assert_abs_diff_eq!(s.prob(2), 0.25, epsilon = 1e-9);
    }

    #[test]
    fn discretize_spec_pv_length() {
        let d = pv_distribution(&spec_pv()).unwrap();
        let s = discretize(&d, 5.0).unwrap();
        assert_eq!(s.max_index(), 72);
        assert_eq!(s.probs().len(), 73);
        let sum: f64 = s.probs().iter().sum();
        assert_abs_diff_eq!(sum, 1.0, epsilon = SEQ_SUM_TOL);
    }

    #[test]
    fn discretize_rejects_bad_step() {
        let d = pv_distribution(&spec_pv()).unwrap();
        assert!(discretize(&d, 0.0).is_err());
        assert!(discretize(&d, 360.0).is_err());
        assert!(discretize(&d, 400.0).is_err());
    }

    #[test]
    fn discretize_preserves_expectation_within_half_step() {
        let q = 5.0;
        for dist in [
            pv_distribution(&spec_pv()).unwrap(),
            wt_distribution(&spec_wind()).unwrap(),
        ] {
            let s = discretize(&dist, q).unwrap();
            let continuous = integrate_oracle(|p| p * dist.density_at(p), 0.0, dist.p_max_kw, 8000)
                + dist.p_max_kw * dist.mass_at_max;
            assert!(
                (s.expectation_kw() - continuous).abs() <= q / 2.0,
                "discrete {} vs continuous {continuous}",
                s.expectation_kw()
            );
        }
    }

    #[test]
    fn convolve_identity() {
        let a = ProbSeq::point_mass(10.0);
        let b = ProbSeq::new(10.0, vec![0.2, 0.3, 0.5]).unwrap();
        let c = convolve(&a, &b).unwrap();
        assert_eq!(c.probs(), b.probs());
    }

    #[test]
    fn convolve_hand_enumeration() {
        let a = ProbSeq::new(10.0, vec![0.5, 0.5]).unwrap();
        let c = convolve(&a, &a).unwrap();
        assert_abs_diff_eq!(c.prob(0), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(c.prob(1), 0.50, epsilon = 1e-15);
        assert_abs_diff_eq!(c.prob(2), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn convolve_rejects_step_mismatch() {
        let a = ProbSeq::point_mass(10.0);
        let b = ProbSeq::point_mass(5.0);
        assert!(convolve(&a, &b).is_err());
    }

    #[test]
    fn expectation_hand_cases() {
        assert_eq!(expectation(&ProbSeq::point_mass(7.0)), 0.0);
        let s = ProbSeq::new(10.0, vec![0.2, 0.3, 0.5]).unwrap();
        assert_abs_diff_eq!(expectation(&s), 13.0, epsilon = 1e-12);
    }

    #[test]
    fn expectation_of_spec_pv_matches_quadrature() {
        let dist = pv_distribution(&spec_pv()).unwrap();
        let s = discretize(&dist, 5.0).unwrap();
        let continuous = integrate_oracle(|p| p * dist.density_at(p), 0.0, 360.0, 8000);
        // Beta(3,5) mean is 3/8 of max: 135 kW.
        assert_abs_diff_eq!(continuous, 135.0, epsilon = 1e-3);
        assert!((s.expectation_kw() - continuous).abs() <= 5.0);
    }

    #[test]
    fn tail_sums_are_reverse_cumulative() {
        let s = ProbSeq::new(10.0, vec![0.2, 0.3, 0.5]).unwrap();
        let t = s.tail_sums();
        assert_abs_diff_eq!(t[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t[1], 0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(t[2], 0.5, epsilon = 1e-12);
        assert_eq!(t[3], 0.0);
    }

    #[test]
    fn scaled_distribution_keeps_mass_and_scales_expectation() {
        let d = wt_distribution(&spec_wind()).unwrap();
        let half = d.scaled(0.5).unwrap();
        half.check_normalization(1e-6).unwrap();
        let s_full = discretize(&d, 5.0).unwrap();
        let s_half = discretize(&half, 5.0).unwrap();
        assert!((s_half.expectation_kw() - 0.5 * s_full.expectation_kw()).abs() < 5.0);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_seq(max_len: usize) -> impl Strategy<Value = ProbSeq> {
            prop::collection::vec(0.0f64..1.0, 1..max_len).prop_filter_map(
                "needs positive mass",
                |raw| {
                    let sum: f64 = raw.iter().sum();
                    if sum <= 1e-9 {
                        return None;
                    }
                    let probs: Vec<f64> = raw.iter().map(|p| p / sum).collect();
                    ProbSeq::new(10.0, probs).ok()
                },
            )
        }

        proptest! {
            #[test]
            fn convolution_expectation_is_additive(a in arb_seq(30), b in arb_seq(30)) {
                let c = convolve(&a, &b).unwrap();
                prop_assert!((c.expectation_kw() - a.expectation_kw() - b.expectation_kw()).abs() < 1e-9);
                prop_assert_eq!(c.probs().len(), a.probs().len() + b.probs().len() - 1);
            }

            #[test]
            fn convolution_commutes(a in arb_seq(20), b in arb_seq(20)) {
                let ab = convolve(&a, &b).unwrap();
                let ba = convolve(&b, &a).unwrap();
                for (x, y) in ab.probs().iter().zip(ba.probs()) {
                    prop_assert!((x - y).abs() < 1e-12);
                }
            }

            #[test]
            fn convolution_associates(a in arb_seq(12), b in arb_seq(12), c in arb_seq(12)) {
                let left = convolve(&convolve(&a, &b).unwrap(), &c).unwrap();
                let right = convolve(&a, &convolve(&b, &c).unwrap()).unwrap();
                for (x, y) in left.probs().iter().zip(right.probs()) {
                    prop_assert!((x - y).abs() < 1e-12);
                }
            }

            #[test]
            fn sequences_stay_normalized(a in arb_seq(40), b in arb_seq(40)) {
                let c = convolve(&a, &b).unwrap();
                let sum: f64 = c.probs().iter().sum();
                prop_assert!((sum - 1.0).abs() <= SEQ_SUM_TOL);
                prop_assert!(c.probs().iter().all(|p| *p >= 0.0));
            }
        }
    }
}
