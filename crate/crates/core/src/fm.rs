//! Exact Fourier-Motzkin elimination over rational linear inequality systems,
//! and its use to rebuild the hybrid inner bound from the rate-splitting
//! constraints of its achievability scheme.
//!
//! No floating-point value is compared anywhere in this module.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::regions::{Halfspace, Region};

pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rounds `x` to the nearest multiple of `2^-32`. Panics on non-finite input.
pub fn rational_from_f64(x: f64) -> Rational {
    assert!(x.is_finite(), "cannot convert {x} to a rational");
    let scale = (1u64 << 32) as f64;
    let numer = BigInt::from((x * scale).round() as i128);
    Rational::new(numer, BigInt::from(1u64 << 32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
}

/// `coeffs . x <= bound`. Every row is stored in this orientation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub bound: Rational,
}

impl Inequality {
    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Divides by the magnitude of the first nonzero coefficient. Constant
    /// rows become `0 <= 0` or `0 <= -1`.
    fn normalized(mut self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            Some(scale) => {
                self.coeffs.iter_mut().for_each(|c| *c /= &scale);
                self.bound /= scale;
            }
            None => {
                self.bound = if self.bound.is_negative() { -Rational::one() } else { Rational::zero() };
            }
        }
        self
    }

    pub fn satisfied_by(&self, point: &[Rational]) -> bool {
        let lhs: Rational = self.coeffs.iter().zip(point).map(|(c, x)| c * x).sum();
        lhs <= self.bound
    }
}

/// A conjunction of linear inequalities over named rational variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    names: Vec<String>,
    rows: Vec<Inequality>,
}

impl LinearSystem {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Self { names: names.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn variables(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> &[Inequality] {
        &self.rows
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Argument(format!("no variable named {name:?}")))
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, bound: Rational) -> Result<()> {
        if coeffs.len() != self.names.len() {
            return Err(Error::Argument(format!(
                "{} coefficients for {} variables",
                coeffs.len(),
                self.names.len()
            )));
        }
        let row = match relation {
            Relation::Le => Inequality { coeffs, bound },
            Relation::Ge => Inequality { coeffs: coeffs.into_iter().map(|c| -c).collect(), bound: -bound },
        };
        self.rows.push(row);
        Ok(())
    }

    /// Adds `sum coeff * var (relation) bound` with variables given by name.
    pub fn push_terms(&mut self, terms: &[(&str, i64)], relation: Relation, bound: Rational) -> Result<()> {
        let mut coeffs = vec![Rational::zero(); self.names.len()];
        for &(name, c) in terms {
            coeffs[self.index_of(name)?] += Rational::from_integer(c.into());
        }
        self.push(coeffs, relation, bound)
    }

    /// Scaled rows with duplicates merged (tightest bound kept), trivially
    /// true rows dropped and contradictions collapsed to one `0 <= -1` row.
    pub fn normalized(&self) -> Self {
        let mut merged: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
        for row in self.rows.iter().cloned().map(Inequality::normalized) {
            if row.is_constant() && !row.bound.is_negative() {
                continue;
            }
            merged
                .entry(row.coeffs)
                .and_modify(|b| {
                    if row.bound < *b {
                        *b = row.bound.clone();
                    }
                })
                .or_insert(row.bound);
        }
        Self {
            names: self.names.clone(),
            rows: merged.into_iter().map(|(coeffs, bound)| Inequality { coeffs, bound }).collect(),
        }
    }

    /// Contains a row `0 <= negative`.
    pub fn is_trivially_infeasible(&self) -> bool {
        self.rows.iter().any(|r| r.is_constant() && r.bound.is_negative())
    }

    pub fn satisfied_by(&self, point: &[Rational]) -> bool {
        self.rows.iter().all(|r| r.satisfied_by(point))
    }

    fn pair_count(&self, k: usize) -> usize {
        let pos = self.rows.iter().filter(|r| r.coeffs[k].is_positive()).count();
        let neg = self.rows.iter().filter(|r| r.coeffs[k].is_negative()).count();
        pos * neg
    }

    /// Projects out one variable: rows without it pass through, and every
    /// (upper bound, lower bound) pair on it is combined into one row.
    pub fn eliminate(&self, name: &str) -> Result<Self> {
        let k = self.index_of(name)?;
        let drop_col = |row: &Inequality| -> Inequality {
            let mut coeffs = row.coeffs.clone();
            coeffs.remove(k);
            Inequality { coeffs, bound: row.bound.clone() }
        };
        let (upper, lower): (Vec<&Inequality>, Vec<&Inequality>) = self
            .rows
            .iter()
            .filter(|r| !r.coeffs[k].is_zero())
            .partition(|r| r.coeffs[k].is_positive());
        let mut rows: Vec<Inequality> = self.rows.iter().filter(|r| r.coeffs[k].is_zero()).map(drop_col).collect();
        for up in &upper {
            for lo in &lower {
                // up: a x_k + ... <= b (a > 0); lo: -c x_k + ... <= d (c > 0)
                let a = &up.coeffs[k];
                let c = -&lo.coeffs[k];
                let coeffs: Vec<Rational> = up
                    .coeffs
                    .iter()
                    .zip(&lo.coeffs)
                    .map(|(u, l)| &c * u + a * l)
                    .collect();
                let combined = Inequality { coeffs, bound: &c * &up.bound + a * &lo.bound };
                rows.push(drop_col(&combined));
            }
        }
        let mut names = self.names.clone();
        names.remove(k);
        Ok(Self { names, rows }.normalized())
    }

    /// Eliminates every variable outside `keep`, cheapest (fewest pair
    /// products) first; ties go to the earlier variable.
    pub fn project_to(&self, keep: &[&str]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::Argument("projection must keep at least one variable".into()));
        }
        for name in keep {
            self.index_of(name)?;
        }
        let mut sys = self.normalized();
        loop {
            let next = sys
                .names
                .iter()
                .enumerate()
                .filter(|(_, n)| !keep.contains(&n.as_str()))
                .min_by_key(|(k, _)| sys.pair_count(*k))
                .map(|(_, n)| n.clone());
            match next {
                Some(name) => sys = sys.eliminate(&name)?,
                None => break,
            }
        }
        Ok(sys)
    }

    /// Feasible interval of variable `k` with every other coordinate fixed
    /// by `point` (its own entry is ignored). `None` means the interval is
    /// empty; an open side is reported as `None` inside the pair.
    pub fn interval_for(&self, k: usize, point: &[Rational]) -> Option<(Option<Rational>, Option<Rational>)> {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for row in &self.rows {
            let rest: Rational = row
                .coeffs
                .iter()
                .zip(point)
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, (c, x))| c * x)
                .sum();
            let slack = &row.bound - rest;
            let a = &row.coeffs[k];
            if a.is_zero() {
                if slack.is_negative() {
                    return None;
                }
            } else if a.is_positive() {
                let v = slack / a;
                if hi.as_ref().is_none_or(|h| v < *h) {
                    hi = Some(v);
                }
            } else {
                let v = slack / a;
                if lo.as_ref().is_none_or(|l| v > *l) {
                    lo = Some(v);
                }
            }
        }
        match (&lo, &hi) {
            (Some(l), Some(h)) if l > h => None,
            _ => Some((lo, hi)),
        }
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let mut terms = Vec::new();
            for (c, n) in row.coeffs.iter().zip(&self.names) {
                if !c.is_zero() {
                    terms.push(if c.is_one() { n.clone() } else { format!("{c}*{n}") });
                }
            }
            let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            writeln!(f, "{lhs} <= {}", row.bound)?;
        }
        Ok(())
    }
}

/// Names of the rate-splitting variables: public, key-protected and dummy
/// parts for each transmitter, followed by the two total message rates.
pub const RATE_SPLIT_VARIABLES: [&str; 8] = ["R10", "R11", "R1*", "R20", "R21", "R2*", "R1", "R2"];

/// Information constants `a..e` of the hybrid scheme as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RateConstants {
    /// `I(X1; Y | X2, U)`
    pub a: Rational,
    /// `I(X2; Y | X1, U)`
    pub b: Rational,
    /// `I(X1, X2; Y)`
    pub c: Rational,
    /// `I(X1, X2; Z)`
    pub d: Rational,
    /// `H(Y | X1, X2, Z)`
    pub e: Rational,
}

impl RateConstants {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational, e: Rational) -> Result<Self> {
        let k = Self { a, b, c, d, e };
        for (name, v) in [("a", &k.a), ("b", &k.b), ("c", &k.c), ("d", &k.d), ("e", &k.e)] {
            if v.is_negative() {
                return Err(Error::Argument(format!("rate constant {name} = {v} is negative")));
            }
        }
        Ok(k)
    }

    /// From floating information quantities, each rounded to a multiple of `2^-32`.
    pub fn from_f64(q: &crate::channels::InfoQuantities) -> Result<Self> {
        Self::new(
            rational_from_f64(q.a),
            rational_from_f64(q.b),
            rational_from_f64(q.c),
            rational_from_f64(q.d),
            rational_from_f64(q.e),
        )
    }

    /// `min{c, a+b} - d + min{d, e}`.
    pub fn hybrid_sum_bound(&self) -> Rational {
        let mac = (&self.a + &self.b).min(self.c.clone());
        mac - &self.d + self.d.clone().min(self.e.clone())
    }
}

impl fmt::Display for RateConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} b={} c={} d={} e={}", self.a, self.b, self.c, self.d, self.e)
    }
}

/// Decoding, secrecy and key constraints of the hybrid scheme over
/// [`RATE_SPLIT_VARIABLES`], with `R1 = R10 + R11`, `R2 = R20 + R21` and all
/// variables nonnegative.
pub fn encode_rate_split_system(k: &RateConstants) -> LinearSystem {
    use Relation::{Ge, Le};
    let mut sys = LinearSystem::new(RATE_SPLIT_VARIABLES);
    let mut add = |terms: &[(&str, i64)], rel, bound: &Rational| {
        sys.push_terms(terms, rel, bound.clone()).expect("variables are fixed");
    };
    // transmitter 2 decoded from feedback by transmitter 1
    add(&[("R20", 1), ("R21", 1), ("R2*", 1)], Le, &k.b);
    // transmitter 1 decoded from feedback by transmitter 2
    add(&[("R10", 1), ("R11", 1), ("R1*", 1)], Le, &k.a);
    // joint decoding at the receiver
    add(&[("R10", 1), ("R11", 1), ("R1*", 1), ("R20", 1), ("R21", 1), ("R2*", 1)], Le, &k.c);
    // eavesdropper can resolve the protected and dummy parts
    add(&[("R11", 1), ("R21", 1), ("R1*", 1), ("R2*", 1)], Le, &k.d);
    // dummy rate covers leakage not absorbed by the feedback key
    add(&[("R1*", 1), ("R2*", 1)], Ge, &(&k.d - &k.e));
    for (total, parts) in [("R1", ["R10", "R11"]), ("R2", ["R20", "R21"])] {
        for rel in [Le, Ge] {
            add(&[(total, 1), (parts[0], -1), (parts[1], -1)], rel, &Rational::zero());
        }
    }
    for name in RATE_SPLIT_VARIABLES {
        add(&[(name, 1)], Ge, &Rational::zero());
    }
    sys
}

/// Region of a system over exactly the variables `(R1, R2)`; an infeasible
/// system maps to `{(0, 0)}`.
pub fn region_of_projection(sys: &LinearSystem) -> Result<Region<Rational>> {
    if sys.variables().len() != 2 {
        return Err(Error::Argument(format!("expected two variables, got {:?}", sys.variables())));
    }
    if sys.is_trivially_infeasible() {
        return Ok(Region::degenerate());
    }
    let hs: Vec<Halfspace<Rational>> = sys
        .rows()
        .iter()
        .filter(|r| !r.is_constant())
        .map(|r| Halfspace::new(r.coeffs[0].clone(), r.coeffs[1].clone(), r.bound.clone()))
        .collect();
    Ok(Region::from_halfspaces(&hs))
}

#[derive(Debug, Clone)]
pub struct HybridCheck {
    /// Exact vertex sets agree.
    pub verdict: bool,
    pub constants: RateConstants,
    pub projection: LinearSystem,
    pub projected: Region<Rational>,
    pub closed_form: Region<Rational>,
}

/// Projects the rate-splitting system onto `(R1, R2)` and compares it with
/// `{R1 <= a, R2 <= b, R1 + R2 <= min{c, a+b} - d + min{d, e}}`.
pub fn verify_hybrid_region(k: &RateConstants) -> HybridCheck {
    let projection = encode_rate_split_system(k)
        .project_to(&["R1", "R2"])
        .expect("R1 and R2 are system variables");
    let projected = region_of_projection(&projection).expect("projection has two variables");
    let closed_form = Region::from_halfspaces(&[
        Halfspace::r1_at_most(k.a.clone()),
        Halfspace::r2_at_most(k.b.clone()),
        Halfspace::sum_at_most(k.hybrid_sum_bound()),
    ]);
    HybridCheck {
        verdict: projected.same_vertices(&closed_form),
        constants: k.clone(),
        projection,
        projected,
        closed_form,
    }
}

/// Fixed edge cases: all zeros, no key material (`e = 0`), key covering the
/// leakage (`e >= d`), no leakage (`d = 0`), leakage beyond every rate, and
/// both orderings of `c` against `a + b`.
pub fn corner_battery() -> Vec<RateConstants> {
    let k = |a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64), e: (i64, i64)| {
        RateConstants::new(rational(a.0, a.1), rational(b.0, b.1), rational(c.0, c.1), rational(d.0, d.1), rational(e.0, e.1))
            .expect("battery constants are nonnegative")
    };
    vec![
        k((0, 1), (0, 1), (0, 1), (0, 1), (0, 1)),
        k((1, 1), (1, 1), (3, 2), (1, 2), (0, 1)),
        k((2, 1), (1, 1), (5, 1), (1, 3), (1, 1)),
        k((1, 1), (1, 1), (3, 2), (1, 2), (1, 2)),
        k((1, 1), (3, 4), (3, 2), (0, 1), (1, 5)),
        k((1, 1), (3, 4), (5, 2), (0, 1), (0, 1)),
        k((1, 1), (1, 1), (5, 1), (4, 1), (1, 1)),
        k((1, 1), (1, 1), (3, 2), (1, 2), (1, 5)),
        k((1, 2), (1, 3), (7, 4), (1, 4), (1, 8)),
        k((0, 1), (2, 1), (1, 1), (1, 2), (1, 4)),
    ]
}

/// `count` pseudorandom constant tuples, each entry `n / m` with
/// `1 <= m <= 64` and `0 <= n <= 4m`.
pub fn sample_constants(count: usize, seed: u64) -> Vec<RateConstants> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut draw = || {
                let m = rng.random_range(1..=64i64);
                rational(rng.random_range(0..=4 * m), m)
            };
            let (a, b, c, d, e) = (draw(), draw(), draw(), draw(), draw());
            RateConstants::new(a, b, c, d, e).expect("draws are nonnegative")
        })
        .collect()
}
