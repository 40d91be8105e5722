//! Two-dimensional rate regions: intersections of halfspaces
//! `c1 R1 + c2 R2 <= bound` with the nonnegative quadrant.
//!
//! [`Region`] is generic over the coordinate type so the same vertex
//! enumeration serves floating regions (absolute tolerance 1e-9) and exact
//! rational regions (zero tolerance).

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Absolute tolerance for floating vertex comparison and feasibility.
pub const VERTEX_TOLERANCE: f64 = 1e-9;

/// Coordinate type of a [`Region`].
pub trait Coord: Clone + PartialOrd + fmt::Debug + Signed {
    /// Slack allowed when testing `lhs <= rhs`.
    fn tolerance() -> Self;
    fn to_f64(&self) -> f64;
}

impl Coord for f64 {
    fn tolerance() -> Self {
        VERTEX_TOLERANCE
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Coord for BigRational {
    fn tolerance() -> Self {
        BigRational::zero()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

fn le<T: Coord>(a: &T, b: &T) -> bool {
    *a <= b.clone() + T::tolerance()
}

fn near<T: Coord>(a: &T, b: &T) -> bool {
    (a.clone() - b.clone()).abs() <= T::tolerance()
}

fn max_of<T: Coord>(a: T, b: T) -> T {
    if a >= b { a } else { b }
}

/// `coeff_r1 * R1 + coeff_r2 * R2 <= bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspace<T = f64> {
    pub coeff_r1: T,
    pub coeff_r2: T,
    pub bound: T,
}

pub type Halfspace2D = Halfspace<f64>;

impl<T: Coord> Halfspace<T> {
    /// Panics if both coefficients are zero.
    pub fn new(coeff_r1: T, coeff_r2: T, bound: T) -> Self {
        assert!(
            !(coeff_r1.is_zero() && coeff_r2.is_zero()),
            "halfspace needs a nonzero coefficient"
        );
        Self { coeff_r1, coeff_r2, bound }
    }

    pub fn r1_at_most(bound: T) -> Self {
        Self::new(T::one(), T::zero(), bound)
    }

    pub fn r2_at_most(bound: T) -> Self {
        Self::new(T::zero(), T::one(), bound)
    }

    pub fn sum_at_most(bound: T) -> Self {
        Self::new(T::one(), T::one(), bound)
    }

    pub fn lhs(&self, p: &[T; 2]) -> T {
        self.coeff_r1.clone() * p[0].clone() + self.coeff_r2.clone() * p[1].clone()
    }

    pub fn satisfied_by(&self, p: &[T; 2]) -> bool {
        le(&self.lhs(p), &self.bound)
    }

    pub fn is_tight_at(&self, p: &[T; 2]) -> bool {
        near(&self.lhs(p), &self.bound)
    }

    /// Positive rescaling with the largest coefficient magnitude equal to 1.
    fn normalized(&self) -> Self {
        let scale = max_of(self.coeff_r1.abs(), self.coeff_r2.abs());
        Self {
            coeff_r1: self.coeff_r1.clone() / scale.clone(),
            coeff_r2: self.coeff_r2.clone() / scale.clone(),
            bound: self.bound.clone() / scale,
        }
    }

    /// Implied by `R1 >= 0, R2 >= 0` alone.
    fn implied_by_quadrant(&self) -> bool {
        !self.coeff_r1.is_positive() && !self.coeff_r2.is_positive() && !self.bound.is_negative()
    }

    pub fn to_f64(&self) -> Halfspace2D {
        Halfspace2D {
            coeff_r1: self.coeff_r1.to_f64(),
            coeff_r2: self.coeff_r2.to_f64(),
            bound: self.bound.to_f64(),
        }
    }
}

/// A convex polygon in the nonnegative quadrant with its vertices listed
/// counterclockwise. An infeasible constraint set is stored as the single
/// vertex `(0, 0)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Region<T = f64> {
    halfspaces: Vec<Halfspace<T>>,
    vertices: Vec<[T; 2]>,
}

pub type RateRegion2D = Region<f64>;

impl<T: Coord> Region<T> {
    /// Canonical region of the halfspaces intersected with `R1, R2 >= 0`.
    ///
    /// Duplicate, dominated and non-tight constraints are dropped. Panics if
    /// the feasible set is unbounded.
    pub fn from_halfspaces(constraints: &[Halfspace<T>]) -> Self {
        let mut hs: Vec<Halfspace<T>> = Vec::new();
        for h in constraints.iter().map(Halfspace::normalized) {
            if h.implied_by_quadrant() {
                continue;
            }
            match hs.iter_mut().find(|k| k.coeff_r1 == h.coeff_r1 && k.coeff_r2 == h.coeff_r2) {
                Some(k) if h.bound < k.bound => k.bound = h.bound,
                Some(_) => {}
                None => hs.push(h),
            }
        }
        assert!(bounded(&hs), "rate region is unbounded: {hs:?}");

        let mut lines = hs.clone();
        lines.push(Halfspace::new(-T::one(), T::zero(), T::zero()));
        lines.push(Halfspace::new(T::zero(), -T::one(), T::zero()));
        let mut vertices: Vec<[T; 2]> = Vec::new();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let Some(p) = intersect(&lines[i], &lines[j]) else { continue };
                if lines.iter().all(|h| h.satisfied_by(&p))
                    && !vertices.iter().any(|v| near(&v[0], &p[0]) && near(&v[1], &p[1]))
                {
                    vertices.push(p);
                }
            }
        }
        if vertices.is_empty() {
            return Self::degenerate();
        }
        hs.retain(|h| vertices.iter().any(|v| h.is_tight_at(v)));
        hs.sort_by(|a, b| {
            (a.coeff_r1.clone(), a.coeff_r2.clone())
                .partial_cmp(&(b.coeff_r1.clone(), b.coeff_r2.clone()))
                .unwrap_or(Ordering::Equal)
        });
        order_counterclockwise(&mut vertices);
        Self { halfspaces: hs, vertices }
    }

    /// The region `{(0, 0)}`.
    pub fn degenerate() -> Self {
        Self {
            halfspaces: vec![
                Halfspace::r1_at_most(T::zero()),
                Halfspace::r2_at_most(T::zero()),
            ],
            vertices: vec![[T::zero(), T::zero()]],
        }
    }

    pub fn halfspaces(&self) -> &[Halfspace<T>] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[[T; 2]] {
        &self.vertices
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() == 1 && self.vertices[0][0].is_zero() && self.vertices[0][1].is_zero()
    }

    pub fn contains(&self, point: &[T; 2]) -> bool {
        let zero = T::zero();
        le(&zero, &point[0])
            && le(&zero, &point[1])
            && self.halfspaces.iter().all(|h| h.satisfied_by(point))
    }

    pub fn is_subset_of(&self, outer: &Self) -> bool {
        self.vertices.iter().all(|v| outer.contains(v))
    }

    /// Largest achievable value of `w1 R1 + w2 R2` over the region.
    pub fn support(&self, w1: &T, w2: &T) -> T {
        self.vertices
            .iter()
            .map(|v| w1.clone() * v[0].clone() + w2.clone() * v[1].clone())
            .fold(None, |best: Option<T>, x| match best {
                Some(b) if b >= x => Some(b),
                _ => Some(x),
            })
            .expect("region has at least one vertex")
    }

    pub fn max_sum_rate(&self) -> T {
        self.support(&T::one(), &T::one())
    }

    /// Vertex set equality up to the coordinate tolerance.
    pub fn same_vertices(&self, other: &Self) -> bool {
        let covered = |a: &[[T; 2]], b: &[[T; 2]]| {
            a.iter().all(|p| b.iter().any(|q| near(&p[0], &q[0]) && near(&p[1], &q[1])))
        };
        covered(&self.vertices, &other.vertices) && covered(&other.vertices, &self.vertices)
    }

    pub fn to_f64(&self) -> RateRegion2D {
        Region {
            halfspaces: self.halfspaces.iter().map(Halfspace::to_f64).collect(),
            vertices: self.vertices.iter().map(|v| [v[0].to_f64(), v[1].to_f64()]).collect(),
        }
    }
}

fn intersect<T: Coord>(h: &Halfspace<T>, k: &Halfspace<T>) -> Option<[T; 2]> {
    let det = h.coeff_r1.clone() * k.coeff_r2.clone() - h.coeff_r2.clone() * k.coeff_r1.clone();
    if det.abs() <= T::tolerance() * T::tolerance() || det.is_zero() {
        return None;
    }
    let x = (h.bound.clone() * k.coeff_r2.clone() - h.coeff_r2.clone() * k.bound.clone()) / det.clone();
    let y = (h.coeff_r1.clone() * k.bound.clone() - h.bound.clone() * k.coeff_r1.clone()) / det;
    Some([x, y])
}

/// True when the recession cone of the constraints within the quadrant is
/// `{0}`. Candidate extreme rays are the two axes and every direction along
/// which some constraint is tight.
fn bounded<T: Coord>(hs: &[Halfspace<T>]) -> bool {
    let mut rays = vec![[T::one(), T::zero()], [T::zero(), T::one()]];
    for h in hs {
        if h.coeff_r1.is_positive() && h.coeff_r2.is_negative() {
            rays.push([-h.coeff_r2.clone(), h.coeff_r1.clone()]);
        } else if h.coeff_r1.is_negative() && h.coeff_r2.is_positive() {
            rays.push([h.coeff_r2.clone(), -h.coeff_r1.clone()]);
        }
    }
    rays.iter().all(|d| hs.iter().any(|h| h.lhs(d).is_positive() && h.lhs(d) > T::tolerance()))
}

/// Sorts by angle around the vertex mean, starting from the origin when it is
/// a vertex (otherwise from the lowest-then-leftmost vertex).
fn order_counterclockwise<T: Coord>(vertices: &mut [[T; 2]]) {
    let n = vertices.len() as f64;
    let cx = vertices.iter().map(|v| v[0].to_f64()).sum::<f64>() / n;
    let cy = vertices.iter().map(|v| v[1].to_f64()).sum::<f64>() / n;
    let start = vertices
        .iter()
        .min_by(|a, b| {
            (a[0].clone() + a[1].clone(), a[1].clone())
                .partial_cmp(&(b[0].clone() + b[1].clone(), b[1].clone()))
                .unwrap_or(Ordering::Equal)
        })
        .cloned()
        .expect("nonempty");
    let angle = |v: &[T; 2]| (v[1].to_f64() - cy).atan2(v[0].to_f64() - cx);
    let base = angle(&start);
    let key = |v: &[T; 2]| (angle(v) - base).rem_euclid(std::f64::consts::TAU);
    vertices.sort_by(|a, b| {
        if near(&a[0], &start[0]) && near(&a[1], &start[1]) {
            Ordering::Less
        } else if near(&b[0], &start[0]) && near(&b[1], &start[1]) {
            Ordering::Greater
        } else {
            key(a).partial_cmp(&key(b)).unwrap_or(Ordering::Equal)
        }
    });
}

/// `{R1 <= r1_max, R2 <= r2_max, R1 + R2 <= sum_max}`, the pentagon shape
/// shared by every inner bound.
pub fn mac_shaped_region(r1_max: f64, r2_max: f64, sum_max: f64) -> RateRegion2D {
    Region::from_halfspaces(&[
        Halfspace::r1_at_most(r1_max),
        Halfspace::r2_at_most(r2_max),
        Halfspace::sum_at_most(sum_max),
    ])
}

/// Sum-rate-only region `{R1 + R2 <= sum_max}` (clamped at zero).
pub fn sum_rate_region(sum_max: f64) -> RateRegion2D {
    Region::from_halfspaces(&[Halfspace::sum_at_most(sum_max.max(0.0))])
}

impl RateRegion2D {
    /// `count` points spaced evenly by arc length along the upper-right
    /// boundary, from the vertex on the `R2` axis side to the vertex on the
    /// `R1` axis side.
    pub fn boundary_samples(&self, count: usize) -> Vec<[f64; 2]> {
        assert!(count >= 2, "need at least two boundary samples");
        if self.is_degenerate() {
            return vec![[0.0, 0.0]];
        }
        let path = self.pareto_path();
        if path.len() == 1 {
            return vec![path[0]; count];
        }
        let seg: Vec<f64> = path
            .windows(2)
            .map(|w| ((w[1][0] - w[0][0]).powi(2) + (w[1][1] - w[0][1]).powi(2)).sqrt())
            .collect();
        let total: f64 = seg.iter().sum();
        let mut out = Vec::with_capacity(count);
        let mut k = 0;
        let mut walked = 0.0;
        for i in 0..count {
            let target = total * i as f64 / (count - 1) as f64;
            while k + 1 < seg.len() && walked + seg[k] < target {
                walked += seg[k];
                k += 1;
            }
            let t = if seg[k] > 0.0 { ((target - walked) / seg[k]).clamp(0.0, 1.0) } else { 0.0 };
            let (a, b) = (path[k], path[k + 1]);
            out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
        out[count - 1] = *path.last().unwrap();
        out
    }

    /// Vertices from the leftmost (highest) one clockwise to the rightmost
    /// (lowest) one.
    fn pareto_path(&self) -> Vec<[f64; 2]> {
        let v = &self.vertices;
        let n = v.len();
        let cmp = |a: &[f64; 2], b: &[f64; 2]| a.partial_cmp(b).unwrap_or(Ordering::Equal);
        let start = (0..n)
            .min_by(|&i, &j| cmp(&[v[i][0], -v[i][1]], &[v[j][0], -v[j][1]]))
            .unwrap();
        let end = (0..n)
            .max_by(|&i, &j| cmp(&[v[i][0], -v[i][1]], &[v[j][0], -v[j][1]]))
            .unwrap();
        let mut path = vec![v[start]];
        let mut i = start;
        while i != end {
            i = (i + n - 1) % n;
            path.push(v[i]);
        }
        path
    }

    /// Convex hull of the union of down-closed regions (time sharing).
    pub fn convex_hull_of(regions: &[RateRegion2D]) -> RateRegion2D {
        let mut pts: Vec<[f64; 2]> = regions.iter().flat_map(|r| r.vertices.iter().copied()).collect();
        pts.push([0.0, 0.0]);
        let hull = convex_hull(pts);
        if hull.len() < 3 {
            // a segment or point; its halfspaces are the bounding box
            let r1 = hull.iter().map(|p| p[0]).fold(0.0, f64::max);
            let r2 = hull.iter().map(|p| p[1]).fold(0.0, f64::max);
            return Region::from_halfspaces(&[Halfspace::r1_at_most(r1), Halfspace::r2_at_most(r2)]);
        }
        let mut hs = Vec::new();
        for i in 0..hull.len() {
            let (p, q) = (hull[i], hull[(i + 1) % hull.len()]);
            let (nx, ny) = (q[1] - p[1], p[0] - q[0]);
            if nx.abs().max(ny.abs()) > 0.0 {
                hs.push(Halfspace::new(nx, ny, nx * p[0] + ny * p[1]));
            }
        }
        Region::from_halfspaces(&hs)
    }
}

/// Andrew's monotone chain; counterclockwise, collinear points dropped.
fn convex_hull(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    pts.dedup_by(|a, b| (a[0] - b[0]).abs() <= VERTEX_TOLERANCE && (a[1] - b[1]).abs() <= VERTEX_TOLERANCE);
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut hull: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in [pts.clone(), pts.iter().rev().copied().collect()] {
        let floor = hull.len();
        for p in pass {
            while hull.len() >= floor + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 1e-15 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> RateRegion2D {
        Region::from_halfspaces(&[Halfspace::r1_at_most(1.0), Halfspace::r2_at_most(1.0)])
    }

    fn pentagon() -> RateRegion2D {
        mac_shaped_region(0.5, 0.5, 0.661)
    }

    fn has_vertex(r: &RateRegion2D, p: [f64; 2]) -> bool {
        r.vertices().iter().any(|v| (v[0] - p[0]).abs() < 1e-9 && (v[1] - p[1]).abs() < 1e-9)
    }

    #[test]
    fn box_vertices() {
        let r = square();
        assert_eq!(r.vertices(), &[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
    }

    #[test]
    fn pentagon_corners() {
        let r = pentagon();
        assert_eq!(r.vertices().len(), 5);
        assert!(has_vertex(&r, [0.5, 0.161]));
        assert!(has_vertex(&r, [0.161, 0.5]));
        assert!(has_vertex(&r, [0.5, 0.0]));
        assert!(has_vertex(&r, [0.0, 0.5]));
    }

    #[test]
    fn infeasible_collapses_to_origin() {
        let r = Region::from_halfspaces(&[Halfspace::sum_at_most(-0.3)]);
        assert!(r.is_degenerate());
        assert!(r.contains(&[0.0, 0.0]));
        assert!(!r.contains(&[1e-6, 0.0]));
    }

    #[test]
    fn containment() {
        assert!(square().contains(&[0.0, 0.0]));
        assert!(pentagon().contains(&[0.0, 0.0]));
        assert!(square().contains(&[1.0, 1.0]));
        assert!(!square().contains(&[1.0 + 1e-6, 1.0]));
        assert!(!pentagon().contains(&[0.5, 0.2]));
        assert!(!square().contains(&[-1e-6, 0.5]));
    }

    #[test]
    fn subsets() {
        assert!(square().is_subset_of(&square()));
        assert!(RateRegion2D::degenerate().is_subset_of(&pentagon()));
        assert!(pentagon().is_subset_of(&square()));
        assert!(!square().is_subset_of(&pentagon()));
    }

    #[test]
    fn redundant_constraints_dropped() {
        let r = Region::from_halfspaces(&[
            Halfspace::r1_at_most(1.0),
            Halfspace::r1_at_most(2.0),
            Halfspace::new(2.0, 0.0, 2.0),
            Halfspace::r2_at_most(1.0),
            Halfspace::sum_at_most(5.0),
            Halfspace::new(-1.0, 0.0, 3.0),
        ]);
        assert_eq!(r.halfspaces().len(), 2);
        assert!(r.same_vertices(&square()));
    }

    #[test]
    fn boundary_of_square() {
        let s = square().boundary_samples(3);
        assert_eq!(s, vec![[0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]);
    }

    #[test]
    fn boundary_of_pentagon_is_tight() {
        let r = pentagon();
        for p in r.boundary_samples(17) {
            assert!(r.contains(&p));
            assert!(r.halfspaces().iter().any(|h| h.is_tight_at(&p)), "{p:?}");
        }
        let s = r.boundary_samples(9);
        assert!(s.windows(2).all(|w| w[0][0] <= w[1][0] + 1e-12));
    }

    #[test]
    fn boundary_of_degenerate() {
        assert_eq!(RateRegion2D::degenerate().boundary_samples(5), vec![[0.0, 0.0]]);
    }

    #[test]
    #[should_panic(expected = "unbounded")]
    fn unbounded_panics() {
        Region::from_halfspaces(&[Halfspace::r1_at_most(1.0)]);
    }

    #[test]
    #[should_panic(expected = "unbounded")]
    fn unbounded_wedge_panics() {
        Region::from_halfspaces(&[Halfspace::new(1.0, -1.0, 1.0), Halfspace::r1_at_most(5.0)]);
    }

    #[test]
    fn hull_of_union() {
        let a = mac_shaped_region(1.0, 0.2, 1.0);
        let b = mac_shaped_region(0.2, 1.0, 1.0);
        let h = RateRegion2D::convex_hull_of(&[a.clone(), b.clone()]);
        assert!(a.is_subset_of(&h) && b.is_subset_of(&h));
        assert!((h.max_sum_rate() - 1.0).abs() < 1e-12);
        assert!(has_vertex(&h, [1.0, 0.0]) && has_vertex(&h, [0.0, 1.0]));
        assert!(RateRegion2D::convex_hull_of(&[RateRegion2D::degenerate()]).is_degenerate());
    }

    #[test]
    fn exact_rational_region() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let r = Region::from_halfspaces(&[
            Halfspace::r1_at_most(q(1, 2)),
            Halfspace::r2_at_most(q(1, 2)),
            Halfspace::sum_at_most(q(2, 3)),
        ]);
        assert!(r.vertices().contains(&[q(1, 2), q(1, 6)]));
        assert!(!r.contains(&[q(1, 2), q(1, 6) + q(1, 1_000_000_000)]));
    }
}
