//! Symmetric power control of the Gaussian hybrid secrecy sum rate under a
//! common per-transmitter cap `P`.
//!
//! With `s = p1 + p2` and breakpoint `B = (2 pi e s1 - 1) s2`, the hybrid sum
//! rate is
//!
//! ```text
//! R(s) = 1/2 log2(1 + s/s1)                                          s <= B
//! R(s) = 1/2 log2(1 + s/s1) - 1/2 log2(1 + s/s2) + 1/2 log2(2 pi e s1)  s > B
//! ```
//!
//! `R` is increasing below `B`. Above it, it keeps increasing when
//! `s1 <= s2` and decreases when `s1 > s2`, so the optimum is `(P, P)` or the
//! breakpoint split `(B/2, B/2)`. Every split with the same total is equally
//! good; the symmetric point is the one reported.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::awgn_rate;
use crate::info::gaussian_diff_entropy;

/// Noise variances of the legitimate (`sigma1_sq`) and eavesdropper
/// (`sigma2_sq`) outputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseVariances {
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
}

impl NoiseVariances {
    pub fn new(sigma1_sq: f64, sigma2_sq: f64) -> Result<Self> {
        let n = Self { sigma1_sq, sigma2_sq };
        n.validate()?;
        Ok(n)
    }

    /// The piecewise form requires `2 pi e s1 >= 1`.
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma2_sq > 0.0) || !self.sigma2_sq.is_finite() || !self.sigma1_sq.is_finite() {
            return Err(Error::Validation(format!("invalid noise variances {self:?}")));
        }
        if !(2.0 * PI * E * self.sigma1_sq >= 1.0) {
            return Err(Error::Domain(format!(
                "sigma1^2 = {} is below 1/(2 pi e): the breakpoint (2 pi e sigma1^2 - 1) sigma2^2 would be negative",
                self.sigma1_sq
            )));
        }
        Ok(())
    }

    /// Total power `(2 pi e s1 - 1) s2` at which the two branches meet.
    pub fn breakpoint(&self) -> f64 {
        (2.0 * PI * E * self.sigma1_sq - 1.0) * self.sigma2_sq
    }

    /// Per-transmitter power at the breakpoint, `B / 2`.
    pub fn threshold(&self) -> f64 {
        self.breakpoint() / 2.0
    }

    /// Branch used for totals at or below the breakpoint.
    pub fn lower_branch(&self, total: f64) -> f64 {
        awgn_rate(total / self.sigma1_sq)
    }

    /// Branch used for totals above the breakpoint.
    pub fn upper_branch(&self, total: f64) -> f64 {
        awgn_rate(total / self.sigma1_sq) - awgn_rate(total / self.sigma2_sq)
            + 0.5 * (2.0 * PI * E * self.sigma1_sq).log2()
    }
}

/// Hybrid secrecy sum rate at powers `(p1, p2)`.
pub fn sum_rate(p1: f64, p2: f64, noise: &NoiseVariances) -> Result<f64> {
    noise.validate()?;
    if !(p1 >= 0.0) || !(p2 >= 0.0) {
        return Err(Error::Validation(format!("powers must be nonnegative, got ({p1}, {p2})")));
    }
    Ok(rate_unchecked(p1 + p2, noise))
}

fn rate_unchecked(total: f64, noise: &NoiseVariances) -> f64 {
    if total <= noise.breakpoint() {
        noise.lower_branch(total)
    } else {
        noise.upper_branch(total)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    BelowThreshold,
    AboveThreshold,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::BelowThreshold => "below_threshold",
            Regime::AboveThreshold => "above_threshold",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerControlResult {
    pub p1_star: f64,
    pub p2_star: f64,
    pub r_sum_star: f64,
    pub regime: Regime,
    /// `(2 pi e s1 - 1) s2 / 2`.
    pub threshold: f64,
}

/// Closed-form optimum for the common cap `cap`. A cap exactly at the
/// threshold is labelled [`Regime::AboveThreshold`].
pub fn optimal_power(cap: f64, noise: &NoiseVariances) -> Result<PowerControlResult> {
    noise.validate()?;
    if !(cap >= 0.0) || !cap.is_finite() {
        return Err(Error::Validation(format!("power cap must be finite and nonnegative, got {cap}")));
    }
    let threshold = noise.threshold();
    let s1 = noise.sigma1_sq;
    let (power, r_sum_star, regime) = if cap < threshold {
        (cap, awgn_rate(2.0 * cap / s1), Regime::BelowThreshold)
    } else if s1 > noise.sigma2_sq {
        (threshold, awgn_rate(2.0 * threshold / s1), Regime::AboveThreshold)
    } else {
        let r = gaussian_diff_entropy(s1)? + awgn_rate(2.0 * cap / s1) - awgn_rate(2.0 * cap / noise.sigma2_sq);
        (cap, r, Regime::AboveThreshold)
    };
    Ok(PowerControlResult { p1_star: power, p2_star: power, r_sum_star, regime, threshold })
}

/// Grid maximum of [`sum_rate`] over `resolution x resolution` points of
/// `[0, cap]^2`. Ties go to the smaller `p1`, then the smaller `p2`.
pub fn grid_oracle(cap: f64, noise: &NoiseVariances, resolution: usize) -> Result<(f64, f64, f64)> {
    noise.validate()?;
    if resolution < 2 {
        return Err(Error::Validation("grid resolution must be at least 2".into()));
    }
    if !(cap >= 0.0) || !cap.is_finite() {
        return Err(Error::Validation(format!("power cap must be finite and nonnegative, got {cap}")));
    }
    let at = |i: usize| cap * i as f64 / (resolution - 1) as f64;
    // rate depends on (i, j) only through i + j, so it is tabulated once per
    // total and equal totals tie exactly
    let by_total: Vec<f64> = (0..2 * resolution - 1).map(|k| rate_unchecked(at(k), noise)).collect();
    let mut best = (0, 0, f64::NEG_INFINITY);
    for i in 0..resolution {
        for (j, &r) in by_total[i..i + resolution].iter().enumerate() {
            if r > best.2 {
                best = (i, j, r);
            }
        }
    }
    Ok((at(best.0), at(best.1), best.2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub cap: f64,
    pub result: PowerControlResult,
}

/// [`optimal_power`] on `steps` evenly spaced caps in `[0, p_max]`.
pub fn sweep(p_max: f64, steps: usize, noise: &NoiseVariances) -> Result<Vec<SweepRow>> {
    if steps < 2 {
        return Err(Error::Validation("a sweep needs at least 2 steps".into()));
    }
    (0..steps)
        .map(|k| {
            let cap = if k + 1 == steps { p_max } else { p_max * k as f64 / (steps - 1) as f64 };
            optimal_power(cap, noise).map(|result| SweepRow { cap, result })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig4() -> NoiseVariances {
        NoiseVariances::new(5.0, 2.0).unwrap()
    }

    fn fig5() -> NoiseVariances {
        NoiseVariances::new(1.0, 10.0).unwrap()
    }

    #[test]
    fn sum_rate_examples() {
        assert_eq!(sum_rate(0.0, 0.0, &fig4()).unwrap(), 0.0);
        assert!((sum_rate(1.0, 1.0, &fig5()).unwrap() - 0.792481).abs() < 1e-6);
        let n = fig4();
        let b = n.breakpoint();
        assert!((n.lower_branch(b) - n.upper_branch(b)).abs() < 1e-10);
        assert!((sum_rate(0.3, 0.7, &n).unwrap() - sum_rate(0.7, 0.3, &n).unwrap()).abs() == 0.0);
    }

    #[test]
    fn domain_is_enforced() {
        let err = NoiseVariances::new(0.05, 1.0).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        assert!(err.to_string().contains("2 pi e"));
        assert!(sum_rate(-1.0, 0.0, &fig4()).is_err());
    }

    #[test]
    fn saturated_optimum() {
        // threshold = (2 pi e 5 - 1) 2 / 2 = 84.3973422...
        let r = optimal_power(500.0, &fig4()).unwrap();
        assert!((r.threshold - 84.397342).abs() < 1e-5);
        assert!((r.p1_star - 84.397342).abs() < 1e-5 && r.p1_star == r.p2_star);
        assert!((r.r_sum_star - 2.559656).abs() < 1e-6);
        assert_eq!(r.regime, Regime::AboveThreshold);
        let at = optimal_power(r.threshold, &fig4()).unwrap();
        assert_eq!(at.regime, Regime::AboveThreshold);
        assert!((at.r_sum_star - r.r_sum_star).abs() < 1e-12);
    }

    #[test]
    fn below_threshold_optimum() {
        let r = optimal_power(1.0, &fig5()).unwrap();
        assert_eq!((r.p1_star, r.p2_star), (1.0, 1.0));
        assert!((r.r_sum_star - 0.792481).abs() < 1e-6);
        assert_eq!(r.regime, Regime::BelowThreshold);
        let z = optimal_power(0.0, &fig4()).unwrap();
        assert_eq!((z.p1_star, z.p2_star, z.r_sum_star), (0.0, 0.0, 0.0));
    }

    #[test]
    fn result_matches_sum_rate() {
        for cap in [0.0, 1.0, 50.0, 84.0, 85.0, 1e4] {
            for n in [fig4(), fig5()] {
                let r = optimal_power(cap, &n).unwrap();
                let direct = sum_rate(r.p1_star, r.p2_star, &n).unwrap();
                assert!((r.r_sum_star - direct).abs() < 1e-9, "cap {cap}");
                assert!(r.p1_star <= cap && r.p2_star <= cap);
            }
        }
    }

    #[test]
    fn oracle_near_saturation_point() {
        // every split of the optimal total ties; the smallest p1 wins
        let (p1, p2, r) = grid_oracle(200.0, &fig4(), 2001).unwrap();
        assert_eq!(p1, 0.0);
        assert!((p1 + p2 - 2.0 * 84.397).abs() < 0.4, "({p1}, {p2})");
        assert!((r - 2.5597).abs() < 1e-3);
    }

    #[test]
    fn oracle_picks_corner_when_monotone() {
        let (p1, p2, _) = grid_oracle(10.0, &fig5(), 1001).unwrap();
        assert_eq!((p1, p2), (10.0, 10.0));
    }

    #[test]
    fn oracle_ties_prefer_small_p1() {
        let (p1, p2, _) = grid_oracle(1.0, &fig5(), 3).unwrap();
        assert_eq!((p1, p2), (1.0, 1.0));
        // totals {0, 100, ..., 400}; the best total 200 is reached three ways
        let (p1, p2, _) = grid_oracle(200.0, &fig4(), 3).unwrap();
        assert_eq!((p1, p2), (0.0, 200.0));
    }

    #[test]
    fn sweep_shapes() {
        let rows = sweep(500.0, 100, &fig4()).unwrap();
        assert_eq!(rows.len(), 100);
        assert_eq!(rows[0].cap, 0.0);
        assert_eq!(rows[99].cap, 500.0);
        assert!(rows.windows(2).all(|w| w[1].result.r_sum_star >= w[0].result.r_sum_star));
        for row in rows.iter().filter(|r| r.cap >= 84.39737) {
            assert!((row.result.r_sum_star - 2.559656).abs() < 1e-6);
        }

        let limit = gaussian_diff_entropy(1.0).unwrap() + 0.5 * 10f64.log2();
        let rows = sweep(1e6, 50, &fig5()).unwrap();
        assert!(rows.windows(2).all(|w| w[1].result.r_sum_star >= w[0].result.r_sum_star));
        assert!(rows.iter().all(|r| r.result.r_sum_star < limit));
        assert!(limit - rows[49].result.r_sum_star < 1e-3);

        let two = sweep(3.0, 2, &fig5()).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(two[0].result.r_sum_star, 0.0);
        assert!(sweep(3.0, 1, &fig5()).is_err());
    }
}
