//! Closed-form regions for `Y = X1 + X2 + N1`, `Z = X1 + X2 + N2`.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::channels::GaussianMacWt;
use crate::error::{Error, Result};
use crate::info::gaussian_diff_entropy;
use crate::regions::{mac_shaped_region, sum_rate_region, RateRegion2D};

/// `1/2 log2(1 + snr)`.
pub fn awgn_rate(snr: f64) -> f64 {
    0.5 * (1.0 + snr).log2()
}

/// Noise variance whose Gaussian differential entropy is zero, `1/(2 pi e)`.
pub fn unit_entropy_variance() -> f64 {
    1.0 / (2.0 * PI * E)
}

/// `1/2 log2(1 + (P1+P2)/s1) - 1/2 log2(1 + (P1+P2)/s2)`.
fn secrecy_sum_term(g: &GaussianMacWt) -> f64 {
    let total = g.p1 + g.p2;
    awgn_rate(total / g.sigma1_sq) - awgn_rate(total / g.sigma2_sq)
}

/// Decode-and-forward region (which coincides with the partial
/// decode-and-forward region for this channel).
pub fn gaussian_df_region(g: &GaussianMacWt) -> Result<RateRegion2D> {
    g.validate()?;
    Ok(mac_shaped_region(
        awgn_rate(g.p1 / g.sigma1_sq),
        awgn_rate(g.p2 / g.sigma1_sq),
        secrecy_sum_term(g),
    ))
}

/// Hybrid region together with its feedback-key term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HybridBound {
    pub region: RateRegion2D,
    /// `min{1/2 log2(2 pi e s1), 1/2 log2(1 + (P1+P2)/s2)}`.
    pub key_term: f64,
    /// Set when `s1 < 1/(2 pi e)`: the key term is then negative and the
    /// formula is evaluated literally, so the region can be smaller than the
    /// decode-and-forward one.
    pub negative_key_term: bool,
}

/// Hybrid region, evaluated at full private power splitting (`alpha = beta = 1`).
pub fn gaussian_hybrid_region(g: &GaussianMacWt) -> Result<HybridBound> {
    g.validate()?;
    let key_term = gaussian_diff_entropy(g.sigma1_sq)?.min(awgn_rate((g.p1 + g.p2) / g.sigma2_sq));
    Ok(HybridBound {
        region: mac_shaped_region(
            awgn_rate(g.p1 / g.sigma1_sq),
            awgn_rate(g.p2 / g.sigma1_sq),
            secrecy_sum_term(g) + key_term,
        ),
        key_term,
        negative_key_term: key_term < 0.0,
    })
}

/// Outer-bound sum rate before clamping:
/// `h(N1 - N2)` when `s1 > s2`, otherwise
/// `h(N2 - N1) + 1/2 log2((P1+P2+s1)/(P1+P2+s2))`.
pub fn gaussian_outer_sum(g: &GaussianMacWt) -> Result<f64> {
    g.validate()?;
    if g.sigma1_sq == g.sigma2_sq {
        return Err(Error::Domain(
            "outer bound needs distinct noise variances (the difference noise has zero variance)".into(),
        ));
    }
    if g.sigma1_sq > g.sigma2_sq {
        gaussian_diff_entropy(g.sigma1_sq - g.sigma2_sq)
    } else {
        let total = g.p1 + g.p2;
        Ok(gaussian_diff_entropy(g.sigma2_sq - g.sigma1_sq)?
            + 0.5 * ((total + g.sigma1_sq) / (total + g.sigma2_sq)).log2())
    }
}

/// `{R1 + R2 <= max(0, gaussian_outer_sum)}`.
pub fn gaussian_outer_region(g: &GaussianMacWt) -> Result<RateRegion2D> {
    Ok(sum_rate_region(gaussian_outer_sum(g)?))
}

/// Secrecy region of the same channel without feedback (Tekin-Yener).
pub fn tekin_yener_region(g: &GaussianMacWt) -> Result<RateRegion2D> {
    g.validate()?;
    let r1 = awgn_rate(g.p1 / g.sigma1_sq) - awgn_rate(g.p1 / (g.sigma2_sq + g.p2));
    let r2 = awgn_rate(g.p2 / g.sigma1_sq) - awgn_rate(g.p2 / (g.sigma2_sq + g.p1));
    Ok(mac_shaped_region(r1, r2, secrecy_sum_term(g)))
}

/// Bound values at one parameter point, as plotted in the figures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianSummary {
    pub df_r1: f64,
    pub df_r2: f64,
    pub df_sum: f64,
    pub hybrid_sum: f64,
    pub ty_r1: f64,
    pub ty_r2: f64,
    pub ty_sum: f64,
    pub outer_sum: Option<f64>,
}

/// Unclipped closed-form bound values.
pub fn summarize(g: &GaussianMacWt) -> Result<GaussianSummary> {
    g.validate()?;
    let hybrid = gaussian_hybrid_region(g)?;
    Ok(GaussianSummary {
        df_r1: awgn_rate(g.p1 / g.sigma1_sq),
        df_r2: awgn_rate(g.p2 / g.sigma1_sq),
        df_sum: secrecy_sum_term(g),
        hybrid_sum: secrecy_sum_term(g) + hybrid.key_term,
        ty_r1: awgn_rate(g.p1 / g.sigma1_sq) - awgn_rate(g.p1 / (g.sigma2_sq + g.p2)),
        ty_r2: awgn_rate(g.p2 / g.sigma1_sq) - awgn_rate(g.p2 / (g.sigma2_sq + g.p1)),
        ty_sum: secrecy_sum_term(g),
        outer_sum: gaussian_outer_sum(g).ok(),
    })
}
