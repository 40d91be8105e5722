//! Discrete-channel bounds: decode-and-forward and hybrid (feedback key) inner
//! bounds, the Sato-type outer bound, seeded searches over input laws, and the
//! single-user wiretap and feedback-wiretap capacities.

use serde::{Deserialize, Serialize};

use crate::channels::{info_quantities, InfoQuantities, InputFactorization, MacWiretapKernel};
use crate::error::{Error, Result};
use crate::info::{conditional_entropy, entropy_of_masses, mutual_information, FiniteDist, JointDist};
use crate::regions::{mac_shaped_region, sum_rate_region, RateRegion2D};
use crate::simplex::maximize;

/// Settings of the multi-start simplex ascent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Largest auxiliary alphabet `|U|` tried by [`search_inner`].
    pub u_cardinality_max: usize,
    pub restarts: usize,
    pub refinement_iterations: usize,
    pub seed: u64,
    /// Initial transfer step; halved after 25 consecutive non-improving sweeps.
    pub initial_step: f64,
    /// Report the convex hull of the union of found regions (time sharing).
    pub hull: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            u_cardinality_max: 4,
            restarts: 64,
            refinement_iterations: 200,
            seed: 0,
            initial_step: 0.25,
            hull: true,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.u_cardinality_max == 0 || self.restarts == 0 || self.refinement_iterations == 0 {
            return Err(Error::Validation(format!("search counts must be at least 1: {self:?}")));
        }
        if !(self.initial_step > 0.0) {
            return Err(Error::Validation(format!("step must be positive, got {}", self.initial_step)));
        }
        Ok(())
    }
}

/// `{R1 <= a, R2 <= b, R1 + R2 <= min{c, a + b} - d}`.
pub fn df_region_for_input(q: &InfoQuantities) -> RateRegion2D {
    mac_shaped_region(q.a, q.b, df_sum_bound(q))
}

/// The decode-and-forward region with the key term `min{d, e}` added to the
/// sum bound.
pub fn hybrid_region_for_input(q: &InfoQuantities) -> RateRegion2D {
    mac_shaped_region(q.a, q.b, hybrid_sum_bound(q))
}

pub fn df_sum_bound(q: &InfoQuantities) -> f64 {
    q.c.min(q.a + q.b) - q.d
}

pub fn hybrid_sum_bound(q: &InfoQuantities) -> f64 {
    df_sum_bound(q) + q.d.min(q.e)
}

/// `H(Y|Z)` under the joint law induced by `joint_input` on `(X1, X2)`.
pub fn sato_outer_for_joint(kernel: &MacWiretapKernel, joint_input: &JointDist) -> Result<f64> {
    let [n1, n2, _, nz] = kernel.sizes();
    if joint_input.axis_sizes() != [n1, n2] {
        return Err(Error::Argument(format!(
            "input law has axes {:?}, kernel expects [{n1}, {n2}]",
            joint_input.axis_sizes()
        )));
    }
    let out = kernel.output_law(joint_input.mass());
    let mut p_z = vec![0.0; nz];
    for (i, p) in out.iter().enumerate() {
        p_z[i % nz] += p;
    }
    Ok((entropy_of_masses(&out) - entropy_of_masses(&p_z)).max(0.0))
}

/// Which inner bound a search maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Df,
    Hybrid,
    /// Ordinary MAC region without secrecy terms, for comparison.
    Mac,
}

impl BoundKind {
    pub fn region(self, q: &InfoQuantities) -> RateRegion2D {
        mac_shaped_region(q.a, q.b, self.sum_bound(q))
    }

    pub fn sum_bound(self, q: &InfoQuantities) -> f64 {
        match self {
            BoundKind::Df => df_sum_bound(q),
            BoundKind::Hybrid => hybrid_sum_bound(q),
            BoundKind::Mac => q.c.min(q.a + q.b),
        }
    }
}

/// One input law found by [`search_inner`] and its region.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerCandidate {
    pub input: InputFactorization,
    pub quantities: InfoQuantities,
    pub region: RateRegion2D,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InnerSearch {
    /// Nondominated per-distribution regions, in search order.
    pub candidates: Vec<InnerCandidate>,
    /// Convex hull of the union of candidate regions, when enabled.
    pub hull: Option<RateRegion2D>,
}

impl InnerSearch {
    /// The hull when present, otherwise the candidate with the largest sum rate.
    pub fn best_region(&self) -> RateRegion2D {
        if let Some(h) = &self.hull {
            return h.clone();
        }
        self.candidates
            .iter()
            .map(|c| c.region.clone())
            .reduce(|a, b| if b.max_sum_rate() > a.max_sum_rate() { b } else { a })
            .unwrap_or_else(RateRegion2D::degenerate)
    }
}

#[derive(Debug, Clone, Copy)]
enum InnerObjective {
    SumRate,
    CornerR1,
    CornerR2,
}

fn blocks_to_input(blocks: &[Vec<f64>], nu: usize) -> Result<InputFactorization> {
    let dist = |v: &Vec<f64>| FiniteDist::new(v.clone());
    InputFactorization::new(
        dist(&blocks[0])?,
        blocks[1..=nu].iter().map(dist).collect::<Result<_>>()?,
        blocks[nu + 1..].iter().map(dist).collect::<Result<_>>()?,
    )
}

/// Seeded search over `P(u) P(x1|u) P(x2|u)` for `|U| = 1..=u_cardinality_max`,
/// maximizing the achievable sum rate and the two single-user corners.
pub fn search_inner(kernel: &MacWiretapKernel, kind: BoundKind, config: &SearchConfig) -> Result<InnerSearch> {
    config.validate()?;
    let [n1, n2, _, _] = kernel.sizes();
    let mut found: Vec<InnerCandidate> = Vec::new();
    let objectives = [InnerObjective::SumRate, InnerObjective::CornerR1, InnerObjective::CornerR2];
    for nu in 1..=config.u_cardinality_max {
        let mut widths = vec![nu];
        widths.extend(std::iter::repeat_n(n1, nu));
        widths.extend(std::iter::repeat_n(n2, nu));
        for (o, objective) in objectives.iter().enumerate() {
            let score = |blocks: &[Vec<f64>]| -> f64 {
                let q = match blocks_to_input(blocks, nu).and_then(|input| info_quantities(kernel, &input)) {
                    Ok(q) => q,
                    Err(_) => return f64::NEG_INFINITY,
                };
                let sum = kind.sum_bound(&q).max(0.0);
                match objective {
                    InnerObjective::SumRate => sum.min(q.a + q.b),
                    InnerObjective::CornerR1 => sum.min(q.a),
                    InnerObjective::CornerR2 => sum.min(q.b),
                }
            };
            let stream = (nu * objectives.len() + o) as u64;
            let (blocks, _) = maximize(&widths, &score, config, stream);
            let input = blocks_to_input(&blocks, nu)?;
            let quantities = info_quantities(kernel, &input)?;
            let region = kind.region(&quantities);
            found.push(InnerCandidate { input, quantities, region });
        }
    }
    let candidates: Vec<InnerCandidate> = found
        .iter()
        .enumerate()
        .filter(|(i, c)| {
            !found.iter().enumerate().any(|(j, other)| {
                j != *i
                    && c.region.is_subset_of(&other.region)
                    // equal regions: keep the first
                    && (!other.region.is_subset_of(&c.region) || j < *i)
            })
        })
        .map(|(_, c)| c.clone())
        .collect();
    let hull = config.hull.then(|| {
        let regions: Vec<RateRegion2D> = candidates.iter().map(|c| c.region.clone()).collect();
        RateRegion2D::convex_hull_of(&regions)
    });
    Ok(InnerSearch { candidates, hull })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OuterSearch {
    /// Best joint law found on `(X1, X2)`.
    pub input: JointDist,
    /// `H(Y|Z)` at that law. A search maximum, so only a lower estimate of
    /// the true outer-bound constant.
    pub value: f64,
}

impl OuterSearch {
    pub fn region(&self) -> RateRegion2D {
        sum_rate_region(self.value)
    }
}

/// Maximizes `H(Y|Z)` over the full simplex of joint laws on `(X1, X2)`.
pub fn search_outer(kernel: &MacWiretapKernel, config: &SearchConfig) -> Result<OuterSearch> {
    config.validate()?;
    let [n1, n2, _, _] = kernel.sizes();
    let to_joint = |b: &[Vec<f64>]| JointDist::new(vec![n1, n2], b[0].clone());
    let score = |b: &[Vec<f64>]| to_joint(b).and_then(|j| sato_outer_for_joint(kernel, &j)).unwrap_or(f64::NEG_INFINITY);
    let (blocks, value) = maximize(&[n1 * n2], &score, config, u64::MAX >> 8);
    Ok(OuterSearch { input: to_joint(&blocks)?, value })
}

/// Single-user wiretap kernel `P(y, z | x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WiretapKernel {
    x_size: usize,
    y_size: usize,
    z_size: usize,
    transition: Vec<f64>,
}

impl WiretapKernel {
    /// `transition` is the dense `[x][y][z]` table.
    pub fn new(sizes: [usize; 3], transition: Vec<f64>) -> Result<Self> {
        let [x_size, y_size, z_size] = sizes;
        if sizes.contains(&0) || transition.len() != x_size * y_size * z_size {
            return Err(Error::Validation(format!(
                "table of {} entries does not fit sizes {sizes:?}",
                transition.len()
            )));
        }
        for (x, row) in transition.chunks(y_size * z_size).enumerate() {
            FiniteDist::new(row.to_vec())
                .map_err(|e| Error::Validation(format!("P(.,.|{x}): {e}")))?;
        }
        Ok(Self { x_size, y_size, z_size, transition })
    }

    /// Builds `P(y|x) P(z|x)`.
    pub fn from_product(
        sizes: [usize; 3],
        main: impl Fn(usize, usize) -> f64,
        eve: impl Fn(usize, usize) -> f64,
    ) -> Result<Self> {
        let [nx, ny, nz] = sizes;
        let mut t = Vec::with_capacity(nx * ny * nz);
        for x in 0..nx {
            for y in 0..ny {
                for z in 0..nz {
                    t.push(main(x, y) * eve(x, z));
                }
            }
        }
        Self::new(sizes, t)
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.x_size, self.y_size, self.z_size]
    }

    /// Joint law of `(X, Y, Z)` for an input law on `X`.
    pub fn joint(&self, p_x: &[f64]) -> Result<JointDist> {
        if p_x.len() != self.x_size {
            return Err(Error::Argument(format!("input law has {} symbols, kernel has {}", p_x.len(), self.x_size)));
        }
        let width = self.y_size * self.z_size;
        let mass = self
            .transition
            .chunks(width)
            .zip(p_x)
            .flat_map(|(row, p)| row.iter().map(move |t| p * t))
            .collect();
        crate::channels::renormalized_joint(vec![self.x_size, self.y_size, self.z_size], mass)
    }

    /// `(I(X;Y), I(X;Z), H(Y|X,Z))` at input law `p_x`.
    pub fn terms(&self, p_x: &[f64]) -> Result<(f64, f64, f64)> {
        let j = self.joint(p_x)?;
        Ok((
            mutual_information(&j, &[0], &[1], &[])?,
            mutual_information(&j, &[0], &[2], &[])?,
            conditional_entropy(&j, &[1], &[0, 2])?,
        ))
    }
}

fn single_user_search(kernel: &WiretapKernel, config: &SearchConfig, stream: u64, objective: impl Fn(f64, f64, f64) -> f64 + Sync) -> Result<f64> {
    config.validate()?;
    let score = |b: &[Vec<f64>]| match kernel.terms(&b[0]) {
        Ok((iy, iz, h)) => objective(iy, iz, h),
        Err(_) => f64::NEG_INFINITY,
    };
    let (_, value) = maximize(&[kernel.x_size], &score, config, stream);
    Ok(value.max(0.0))
}

/// `max_{p(x)} I(X;Y) - I(X;Z)`, clamped at zero.
pub fn wyner_capacity(kernel: &WiretapKernel, config: &SearchConfig) -> Result<f64> {
    single_user_search(kernel, config, 1, |iy, iz, _| iy - iz)
}

/// `max_{p(x)} min{I(X;Y), I(X;Y) - I(X;Z) + H(Y|X,Z)}`, the secrecy
/// capacity with noiseless feedback of the single-user wiretap channel.
pub fn ac_feedback_capacity(kernel: &WiretapKernel, config: &SearchConfig) -> Result<f64> {
    single_user_search(kernel, config, 1, |iy, iz, h| iy.min(iy - iz + h))
}
