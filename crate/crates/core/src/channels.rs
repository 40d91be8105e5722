//! Channel models: the discrete memoryless MAC-WT kernel `P(y,z|x1,x2)`, the
//! factorized input law `P(u) P(x1|u) P(x2|u)`, and the Gaussian parameters.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::info::{clamp_information, entropy_of_masses, FiniteDist, JointDist};

/// Row-sum tolerance of a stored kernel.
pub const ROW_TOLERANCE: f64 = 1e-12;

/// Row-sum deviation the file loader repairs by renormalization.
pub const FILE_ROW_TOLERANCE: f64 = 1e-9;

/// Axis positions in the joint built by [`assemble_joint`].
pub mod axis {
    pub const U: usize = 0;
    pub const X1: usize = 1;
    pub const X2: usize = 2;
    pub const Y: usize = 3;
    pub const Z: usize = 4;
}

/// Transition law `P(y,z|x1,x2)` of a discrete memoryless MAC-WT.
#[derive(Debug, Clone, PartialEq)]
pub struct MacWiretapKernel {
    x1_size: usize,
    x2_size: usize,
    y_size: usize,
    z_size: usize,
    /// Dense `[x1][x2][y][z]` table.
    transition: Vec<f64>,
    /// `P(y|x1,x2)`, dense `[x1][x2][y]`.
    main: Vec<f64>,
    /// `P(z|x1,x2)`, dense `[x1][x2][z]`.
    eve: Vec<f64>,
    /// `H(Y|x1,x2)`, `H(Z|x1,x2)` and `H(Y,Z|x1,x2)` per input pair.
    row_entropy: Vec<[f64; 3]>,
}

/// On-disk JSON form of a [`MacWiretapKernel`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelFile {
    pub x1_size: usize,
    pub x2_size: usize,
    pub y_size: usize,
    pub z_size: usize,
    pub transition: Vec<Vec<Vec<Vec<f64>>>>,
}

impl MacWiretapKernel {
    pub fn new(sizes: [usize; 4], transition: Vec<f64>) -> Result<Self> {
        let kernel = Self::unchecked(sizes, transition)?;
        for x1 in 0..kernel.x1_size {
            for x2 in 0..kernel.x2_size {
                let row = kernel.row(x1, x2);
                if let Some(p) = row.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
                    return Err(Error::Validation(format!(
                        "P(.,.|{x1},{x2}) has invalid entry {p}"
                    )));
                }
                let total: f64 = row.iter().sum();
                if (total - 1.0).abs() > ROW_TOLERANCE {
                    return Err(Error::Validation(format!(
                        "P(.,.|{x1},{x2}) sums to {total}, not 1"
                    )));
                }
            }
        }
        Ok(kernel)
    }

    fn unchecked(sizes: [usize; 4], transition: Vec<f64>) -> Result<Self> {
        let [x1_size, x2_size, y_size, z_size] = sizes;
        if sizes.contains(&0) {
            return Err(Error::Validation(format!("alphabet sizes must be positive, got {sizes:?}")));
        }
        let len = sizes.iter().product::<usize>();
        if transition.len() != len {
            return Err(Error::Validation(format!(
                "transition table has {} entries, expected {len}",
                transition.len()
            )));
        }
        let rows = x1_size * x2_size;
        let mut main = vec![0.0; rows * y_size];
        let mut eve = vec![0.0; rows * z_size];
        let mut row_entropy = Vec::with_capacity(rows);
        for (r, block) in transition.chunks(y_size * z_size).enumerate() {
            let my = &mut main[r * y_size..(r + 1) * y_size];
            let mz = &mut eve[r * z_size..(r + 1) * z_size];
            for (i, p) in block.iter().enumerate() {
                my[i / z_size] += p;
                mz[i % z_size] += p;
            }
            row_entropy.push([entropy_of_masses(&*my), entropy_of_masses(&*mz), entropy_of_masses(block)]);
        }
        Ok(Self { x1_size, x2_size, y_size, z_size, transition, main, eve, row_entropy })
    }

    /// Builds a kernel from separate legitimate and eavesdropper laws where
    /// `Y` and `Z` are conditionally independent given the inputs.
    pub fn from_product(
        sizes: [usize; 4],
        main: impl Fn(usize, usize, usize) -> f64,
        eve: impl Fn(usize, usize, usize) -> f64,
    ) -> Result<Self> {
        let [n1, n2, ny, nz] = sizes;
        let mut t = Vec::with_capacity(n1 * n2 * ny * nz);
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                for y in 0..ny {
                    for z in 0..nz {
                        t.push(main(x1, x2, y) * eve(x1, x2, z));
                    }
                }
            }
        }
        Self::new(sizes, t)
    }

    pub fn sizes(&self) -> [usize; 4] {
        [self.x1_size, self.x2_size, self.y_size, self.z_size]
    }

    pub fn prob(&self, x1: usize, x2: usize, y: usize, z: usize) -> f64 {
        self.transition[((x1 * self.x2_size + x2) * self.y_size + y) * self.z_size + z]
    }

    /// The `(y, z)` block for one input pair, `z` fastest.
    pub fn row(&self, x1: usize, x2: usize) -> &[f64] {
        let width = self.y_size * self.z_size;
        let start = (x1 * self.x2_size + x2) * width;
        &self.transition[start..start + width]
    }

    /// Output law `P(y, z)`, dense `[y][z]`, for the input law `p12` on
    /// `(x1, x2)` given as a dense `[x1][x2]` table.
    pub(crate) fn output_law(&self, p12: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.y_size * self.z_size];
        for (w, row) in p12.iter().zip(self.transition.chunks(out.len())) {
            if *w > 0.0 {
                out.iter_mut().zip(row).for_each(|(o, p)| *o += w * p);
            }
        }
        out
    }

    pub fn from_file(file: ChannelFile) -> Result<Self> {
        let sizes = [file.x1_size, file.x2_size, file.y_size, file.z_size];
        let shape_err = |what: &str| Error::Validation(format!("transition array: {what}"));
        if file.transition.len() != file.x1_size {
            return Err(shape_err("first level length differs from x1_size"));
        }
        let mut flat = Vec::with_capacity(sizes.iter().product());
        for (x1, by_x2) in file.transition.iter().enumerate() {
            if by_x2.len() != file.x2_size {
                return Err(shape_err(&format!("[{x1}] length differs from x2_size")));
            }
            for (x2, by_y) in by_x2.iter().enumerate() {
                if by_y.len() != file.y_size {
                    return Err(shape_err(&format!("[{x1}][{x2}] length differs from y_size")));
                }
                let start = flat.len();
                for (y, by_z) in by_y.iter().enumerate() {
                    if by_z.len() != file.z_size {
                        return Err(shape_err(&format!(
                            "[{x1}][{x2}][{y}] length differs from z_size"
                        )));
                    }
                    flat.extend_from_slice(by_z);
                }
                let row = &mut flat[start..];
                if let Some(p) = row.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
                    return Err(Error::Validation(format!("[{x1}][{x2}] has invalid entry {p}")));
                }
                let total: f64 = row.iter().sum();
                if (total - 1.0).abs() > FILE_ROW_TOLERANCE {
                    return Err(Error::Validation(format!(
                        "[{x1}][{x2}] sums to {total}, deviation exceeds {FILE_ROW_TOLERANCE}"
                    )));
                }
                row.iter_mut().for_each(|p| *p /= total);
            }
        }
        Self::new(sizes, flat)
    }

    pub fn to_file(&self) -> ChannelFile {
        let transition = (0..self.x1_size)
            .map(|x1| {
                (0..self.x2_size)
                    .map(|x2| {
                        (0..self.y_size)
                            .map(|y| (0..self.z_size).map(|z| self.prob(x1, x2, y, z)).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ChannelFile {
            x1_size: self.x1_size,
            x2_size: self.x2_size,
            y_size: self.y_size,
            z_size: self.z_size,
            transition,
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }
}

/// Input law `P(u) P(x1|u) P(x2|u)`: the two inputs are conditionally
/// independent given the auxiliary `U`.
#[derive(Debug, Clone, PartialEq)]
pub struct InputFactorization {
    p_u: FiniteDist,
    p_x1_given_u: Vec<FiniteDist>,
    p_x2_given_u: Vec<FiniteDist>,
}

impl InputFactorization {
    pub fn new(
        p_u: FiniteDist,
        p_x1_given_u: Vec<FiniteDist>,
        p_x2_given_u: Vec<FiniteDist>,
    ) -> Result<Self> {
        let n = p_u.support_size();
        if p_x1_given_u.len() != n || p_x2_given_u.len() != n {
            return Err(Error::Validation(format!(
                "need one conditional row per u ({n}), got {} and {}",
                p_x1_given_u.len(),
                p_x2_given_u.len()
            )));
        }
        let uniform_width = |rows: &[FiniteDist]| rows.windows(2).all(|w| w[0].support_size() == w[1].support_size());
        if !uniform_width(&p_x1_given_u) || !uniform_width(&p_x2_given_u) {
            return Err(Error::Validation("conditional rows differ in alphabet size".into()));
        }
        Ok(Self { p_u, p_x1_given_u, p_x2_given_u })
    }

    /// `|U| = 1` with independent marginals.
    pub fn independent(p_x1: FiniteDist, p_x2: FiniteDist) -> Result<Self> {
        Self::new(FiniteDist::point_mass(1, 0)?, vec![p_x1], vec![p_x2])
    }

    pub fn u_size(&self) -> usize {
        self.p_u.support_size()
    }

    pub fn x1_size(&self) -> usize {
        self.p_x1_given_u[0].support_size()
    }

    pub fn x2_size(&self) -> usize {
        self.p_x2_given_u[0].support_size()
    }

    pub fn p_u(&self) -> &FiniteDist {
        &self.p_u
    }

    pub fn p_x1_given_u(&self) -> &[FiniteDist] {
        &self.p_x1_given_u
    }

    pub fn p_x2_given_u(&self) -> &[FiniteDist] {
        &self.p_x2_given_u
    }
}

/// Parameters of `Y = X1 + X2 + N1`, `Z = X1 + X2 + N2` under average power
/// limits `p1`, `p2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianMacWt {
    pub p1: f64,
    pub p2: f64,
    pub sigma1_sq: f64,
    pub sigma2_sq: f64,
}

impl GaussianMacWt {
    pub fn new(p1: f64, p2: f64, sigma1_sq: f64, sigma2_sq: f64) -> Result<Self> {
        let g = Self { p1, p2, sigma1_sq, sigma2_sq };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.p1, self.p2, self.sigma1_sq, self.sigma2_sq].iter().all(|v| v.is_finite());
        if !finite || !(self.p1 >= 0.0) || !(self.p2 >= 0.0) {
            return Err(Error::Validation(format!("powers must be finite and nonnegative: {self:?}")));
        }
        if !(self.sigma1_sq > 0.0) || !(self.sigma2_sq > 0.0) {
            return Err(Error::Validation(format!("noise variances must be positive: {self:?}")));
        }
        Ok(())
    }
}

/// The information quantities every discrete region formula is built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfoQuantities {
    /// `I(X1; Y | X2, U)`
    pub a: f64,
    /// `I(X2; Y | X1, U)`
    pub b: f64,
    /// `I(X1, X2; Y)`
    pub c: f64,
    /// `I(X1, X2; Z)`
    pub d: f64,
    /// `H(Y | X1, X2, Z)`
    pub e: f64,
    /// `H(Y | Z)`
    pub h_y_given_z: f64,
}

/// Joint law of `(U, X1, X2, Y, Z)`; axis order is given by [`axis`].
pub fn assemble_joint(kernel: &MacWiretapKernel, input: &InputFactorization) -> Result<JointDist> {
    check_input_alphabets(kernel, input)?;
    let [n1, n2, ny, nz] = kernel.sizes();
    let nu = input.u_size();
    let mut mass = Vec::with_capacity(nu * n1 * n2 * ny * nz);
    for u in 0..nu {
        let pu = input.p_u.prob(u);
        for x1 in 0..n1 {
            let p1 = pu * input.p_x1_given_u[u].prob(x1);
            for x2 in 0..n2 {
                let p12 = p1 * input.p_x2_given_u[u].prob(x2);
                mass.extend(kernel.row(x1, x2).iter().map(|t| p12 * t));
            }
        }
    }
    renormalized_joint(vec![nu, n1, n2, ny, nz], mass)
}

/// Products of valid tables can drift from unit mass by a few ulps per entry.
pub(crate) fn renormalized_joint(shape: Vec<usize>, mut mass: Vec<f64>) -> Result<JointDist> {
    let total: f64 = mass.iter().sum();
    if total > 0.0 && (total - 1.0).abs() < 1e-9 {
        mass.iter_mut().for_each(|p| *p /= total);
    }
    JointDist::new(shape, mass)
}

fn check_input_alphabets(kernel: &MacWiretapKernel, input: &InputFactorization) -> Result<()> {
    if input.x1_size() != kernel.x1_size || input.x2_size() != kernel.x2_size {
        return Err(Error::Argument(format!(
            "input alphabets {}x{} do not match kernel inputs {}x{}",
            input.x1_size(),
            input.x2_size(),
            kernel.x1_size,
            kernel.x2_size
        )));
    }
    Ok(())
}

/// The information quantities of `(U, X1, X2, Y, Z)`.
///
/// Since `U -> (X1, X2) -> (Y, Z)` is a Markov chain, every term conditioned
/// on both inputs reduces to a mixture of per-row kernel entropies, and the
/// full joint table is never built.
pub fn info_quantities(kernel: &MacWiretapKernel, input: &InputFactorization) -> Result<InfoQuantities> {
    check_input_alphabets(kernel, input)?;
    let [n1, n2, ny, nz] = kernel.sizes();
    let mut p12 = vec![0.0; n1 * n2];
    let (mut h_y_x2u, mut h_y_x1u) = (0.0, 0.0);
    let mut mix = vec![0.0; ny];
    for u in 0..input.u_size() {
        let pu = input.p_u.prob(u);
        if pu <= 0.0 {
            continue;
        }
        let (q1, q2) = (&input.p_x1_given_u[u], &input.p_x2_given_u[u]);
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                p12[x1 * n2 + x2] += pu * q1.prob(x1) * q2.prob(x2);
            }
        }
        // H(Y | X2 = x2, U = u) and H(Y | X1 = x1, U = u)
        for x2 in (0..n2).filter(|&x2| q2.prob(x2) > 0.0) {
            mix.fill(0.0);
            for x1 in 0..n1 {
                let w = q1.prob(x1);
                let row = &kernel.main[(x1 * n2 + x2) * ny..][..ny];
                mix.iter_mut().zip(row).for_each(|(m, p)| *m += w * p);
            }
            h_y_x2u += pu * q2.prob(x2) * entropy_of_masses(&mix);
        }
        for x1 in (0..n1).filter(|&x1| q1.prob(x1) > 0.0) {
            mix.fill(0.0);
            for x2 in 0..n2 {
                let w = q2.prob(x2);
                let row = &kernel.main[(x1 * n2 + x2) * ny..][..ny];
                mix.iter_mut().zip(row).for_each(|(m, p)| *m += w * p);
            }
            h_y_x1u += pu * q1.prob(x1) * entropy_of_masses(&mix);
        }
    }
    let out = kernel.output_law(&p12);
    let (mut p_y, mut p_z) = (vec![0.0; ny], vec![0.0; nz]);
    for (i, p) in out.iter().enumerate() {
        p_y[i / nz] += p;
        p_z[i % nz] += p;
    }
    let [mut h_y_x, mut h_z_x, mut h_yz_x] = [0.0; 3];
    for (w, h) in p12.iter().zip(&kernel.row_entropy) {
        h_y_x += w * h[0];
        h_z_x += w * h[1];
        h_yz_x += w * h[2];
    }
    let h_z = entropy_of_masses(&p_z);
    Ok(InfoQuantities {
        a: clamp_information(h_y_x2u - h_y_x)?,
        b: clamp_information(h_y_x1u - h_y_x)?,
        c: clamp_information(entropy_of_masses(&p_y) - h_y_x)?,
        d: clamp_information(h_z - h_z_x)?,
        e: (h_yz_x - h_z_x).max(0.0),
        h_y_given_z: (entropy_of_masses(&out) - h_z).max(0.0),
    })
}

/// Joint law of `(X1, X2, Y, Z)` induced by an arbitrary (not necessarily
/// product) input law on `(X1, X2)`.
pub fn joint_from_input_pair(kernel: &MacWiretapKernel, input: &JointDist) -> Result<JointDist> {
    let [n1, n2, ny, nz] = kernel.sizes();
    if input.axis_sizes() != [n1, n2] {
        return Err(Error::Argument(format!(
            "input law has axes {:?}, kernel expects [{n1}, {n2}]",
            input.axis_sizes()
        )));
    }
    let mut mass = Vec::with_capacity(n1 * n2 * ny * nz);
    for x1 in 0..n1 {
        for x2 in 0..n2 {
            let p = input.prob(&[x1, x2]);
            mass.extend(kernel.row(x1, x2).iter().map(|t| p * t));
        }
    }
    renormalized_joint(vec![n1, n2, ny, nz], mass)
}
