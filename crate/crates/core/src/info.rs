//! Finite-alphabet entropies and mutual informations, plus the Gaussian
//! differential entropy. Everything is measured in bits.

use std::f64::consts::{E, PI};

use crate::error::{Error, Result};

/// Total-mass tolerance for a valid probability table.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// Negative mutual informations with magnitude below this are rounding noise.
pub const MI_CLAMP: f64 = 1e-10;

fn check_masses(mass: &[f64]) -> Result<()> {
    if mass.is_empty() {
        return Err(Error::Validation("empty probability table".into()));
    }
    if let Some((i, p)) = mass.iter().enumerate().find(|(_, p)| !(**p >= 0.0) || !p.is_finite()) {
        return Err(Error::Validation(format!("mass[{i}] = {p} is not a nonnegative number")));
    }
    let total: f64 = mass.iter().sum();
    if (total - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::Validation(format!("masses sum to {total}, not 1")));
    }
    Ok(())
}

/// `-sum p log2 p` with `0 log 0 = 0`.
pub(crate) fn entropy_of_masses<'a>(mass: impl IntoIterator<Item = &'a f64>) -> f64 {
    mass.into_iter()
        .filter(|p| **p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}

/// A probability mass function on `0..support_size`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDist {
    mass: Vec<f64>,
}

impl FiniteDist {
    pub fn new(mass: Vec<f64>) -> Result<Self> {
        check_masses(&mass)?;
        Ok(Self { mass })
    }

    pub fn uniform(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Validation("support size must be positive".into()));
        }
        Ok(Self { mass: vec![1.0 / size as f64; size] })
    }

    pub fn point_mass(size: usize, at: usize) -> Result<Self> {
        if at >= size {
            return Err(Error::Validation(format!("point {at} outside support of size {size}")));
        }
        let mut mass = vec![0.0; size];
        mass[at] = 1.0;
        Ok(Self { mass })
    }

    pub fn support_size(&self) -> usize {
        self.mass.len()
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn prob(&self, symbol: usize) -> f64 {
        self.mass[symbol]
    }
}

/// Shannon entropy in bits.
pub fn entropy(dist: &FiniteDist) -> f64 {
    entropy_of_masses(dist.mass())
}

/// Binary entropy function `h2(p)`.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_of_masses(&[p, 1.0 - p])
}

/// A joint probability table over several finite random variables, stored
/// row-major (last axis fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct JointDist {
    shape: Vec<usize>,
    mass: Vec<f64>,
}

impl JointDist {
    pub fn new(shape: Vec<usize>, mass: Vec<f64>) -> Result<Self> {
        if shape.is_empty() || shape.contains(&0) {
            return Err(Error::Validation(format!("invalid axis sizes {shape:?}")));
        }
        let len: usize = shape.iter().product();
        if len != mass.len() {
            return Err(Error::Validation(format!(
                "table has {} entries but axis sizes {shape:?} need {len}",
                mass.len()
            )));
        }
        check_masses(&mass)?;
        Ok(Self { shape, mass })
    }

    pub fn axis_sizes(&self) -> &[usize] {
        &self.shape
    }

    pub fn num_axes(&self) -> usize {
        self.shape.len()
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// Probability of a full outcome tuple.
    pub fn prob(&self, index: &[usize]) -> f64 {
        let flat = index
            .iter()
            .zip(&self.shape)
            .fold(0, |acc, (i, n)| acc * n + i);
        self.mass[flat]
    }

    /// Mass table of the marginal over `axes`, in the order the axes are given.
    fn marginal_masses(&self, axes: &[usize]) -> Vec<f64> {
        let out_len: usize = axes.iter().map(|&a| self.shape[a]).product();
        let mut out = vec![0.0; out_len];
        let mut index = vec![0usize; self.shape.len()];
        for &p in &self.mass {
            if p > 0.0 {
                let flat = axes.iter().fold(0, |acc, &a| acc * self.shape[a] + index[a]);
                out[flat] += p;
            }
            for k in (0..index.len()).rev() {
                index[k] += 1;
                if index[k] < self.shape[k] {
                    break;
                }
                index[k] = 0;
            }
        }
        out
    }

    /// Marginal law of the given axes, which must be distinct and in range.
    pub fn marginal(&self, axes: &[usize]) -> Result<JointDist> {
        self.check_axes(&[axes])?;
        if axes.is_empty() {
            return Err(Error::Argument("marginal over an empty axis set".into()));
        }
        let shape = axes.iter().map(|&a| self.shape[a]).collect();
        Ok(JointDist { shape, mass: self.marginal_masses(axes) })
    }

    /// Joint entropy of the variables on `axes`; zero for the empty set.
    pub fn entropy_of(&self, axes: &[usize]) -> Result<f64> {
        self.check_axes(&[axes])?;
        if axes.is_empty() {
            return Ok(0.0);
        }
        Ok(entropy_of_masses(&self.marginal_masses(axes)))
    }

    fn check_axes(&self, sets: &[&[usize]]) -> Result<()> {
        let mut seen = vec![false; self.shape.len()];
        for set in sets {
            for &a in *set {
                if a >= self.shape.len() {
                    return Err(Error::Argument(format!(
                        "axis {a} out of range for a {}-axis table",
                        self.shape.len()
                    )));
                }
                if seen[a] {
                    return Err(Error::Argument(format!("axis {a} appears in more than one set")));
                }
                seen[a] = true;
            }
        }
        Ok(())
    }
}

/// `H(target | given) = H(target, given) - H(given)`.
pub fn conditional_entropy(joint: &JointDist, target: &[usize], given: &[usize]) -> Result<f64> {
    joint.check_axes(&[target, given])?;
    let both: Vec<usize> = target.iter().chain(given).copied().collect();
    let h = joint.entropy_of(&both)? - joint.entropy_of(given)?;
    Ok(h.max(0.0))
}

/// `I(left; right | given)`, with rounding noise below [`MI_CLAMP`] clamped to 0.
pub fn mutual_information(
    joint: &JointDist,
    left: &[usize],
    right: &[usize],
    given: &[usize],
) -> Result<f64> {
    joint.check_axes(&[left, right, given])?;
    let with = |extra: &[usize]| -> Vec<usize> { extra.iter().chain(given).copied().collect() };
    let lr: Vec<usize> = left.iter().chain(right).copied().collect();
    let mi = joint.entropy_of(&with(left))? + joint.entropy_of(&with(right))?
        - joint.entropy_of(&with(&lr))?
        - joint.entropy_of(given)?;
    clamp_information(mi)
}

pub(crate) fn clamp_information(value: f64) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -MI_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::Consistency(format!("information quantity evaluated to {value}")))
    }
}

/// `1/2 log2(2 pi e variance)`, the differential entropy of a Gaussian.
pub fn gaussian_diff_entropy(variance: f64) -> Result<f64> {
    if !(variance > 0.0) || !variance.is_finite() {
        return Err(Error::Domain(format!("Gaussian variance must be positive, got {variance}")));
    }
    Ok(0.5 * (2.0 * PI * E * variance).log2())
}
