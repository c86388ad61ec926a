//! Multiply connected planar domains bounded by smooth closed curves.
//!
//! Every boundary component is sampled at `2n` equispaced parameter nodes
//! `t_j = πj/n` in `[0, 2π)`. Normals always point out of the domain: away
//! from the region enclosed by the outer curve, and into each hole.

use std::f64::consts::PI;
use std::sync::atomic::{AtomicU64, Ordering};

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = Vector2<f64>;

/// Minimum number of nodes on a component.
pub const MIN_NODES: usize = 16;

/// Relative node separation threshold used by the simplicity check.
const SIMPLICITY_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Outer,
    Hole,
}

/// Trigonometric parametrization
/// `x₁(t) = Σ_k a_k cos kt + Σ_k b_k sin kt`, likewise for `x₂`.
///
/// The cosine lists start at `k = 0` (the constant term); the sine lists
/// start at `k = 1`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FourierCurve {
    #[serde(default)]
    pub x_cos: Vec<f64>,
    #[serde(default)]
    pub x_sin: Vec<f64>,
    #[serde(default)]
    pub y_cos: Vec<f64>,
    #[serde(default)]
    pub y_sin: Vec<f64>,
}

fn series(cos: &[f64], sin: &[f64], t: f64) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (k, &a) in cos.iter().enumerate() {
        let kf = k as f64;
        let (s, c) = (kf * t).sin_cos();
        out[0] += a * c;
        out[1] -= a * kf * s;
        out[2] -= a * kf * kf * c;
    }
    for (i, &b) in sin.iter().enumerate() {
        let kf = (i + 1) as f64;
        let (s, c) = (kf * t).sin_cos();
        out[0] += b * s;
        out[1] += b * kf * c;
        out[2] -= b * kf * kf * s;
    }
    out
}

impl FourierCurve {
    /// The standard kite `(cos t + 0.65 cos 2t − 0.65, 1.5 sin t)`, scaled
    /// and translated.
    pub fn kite(center: Point, scale: f64) -> Self {
        Self {
            x_cos: vec![center.x - 0.65 * scale, scale, 0.65 * scale],
            x_sin: vec![],
            y_cos: vec![center.y],
            y_sin: vec![1.5 * scale],
        }
    }

    pub fn ellipse(center: Point, a: f64, b: f64) -> Self {
        Self {
            x_cos: vec![center.x, a],
            x_sin: vec![],
            y_cos: vec![center.y],
            y_sin: vec![b],
        }
    }

    /// Position, velocity and acceleration at parameter `t`.
    pub fn eval(&self, t: f64) -> (Point, Point, Point) {
        let x = series(&self.x_cos, &self.x_sin, t);
        let y = series(&self.y_cos, &self.y_sin, t);
        (
            Point::new(x[0], y[0]),
            Point::new(x[1], y[1]),
            Point::new(x[2], y[2]),
        )
    }
}

/// Analytic description of a component, kept so it can be resampled.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurveShape {
    Circle { center: [f64; 2], radius: f64 },
    Fourier(FourierCurve),
}

impl CurveShape {
    pub fn eval(&self, t: f64) -> (Point, Point, Point) {
        match self {
            CurveShape::Circle { center, radius } => {
                let (s, c) = t.sin_cos();
                let r = *radius;
                (
                    Point::new(center[0] + r * c, center[1] + r * s),
                    Point::new(-r * s, r * c),
                    Point::new(-r * c, -r * s),
                )
            }
            CurveShape::Fourier(f) => f.eval(t),
        }
    }
}

/// One closed boundary curve sampled at equispaced parameter nodes.
#[derive(Clone, Debug)]
pub struct CurveComponent {
    role: Role,
    shape: CurveShape,
    params: Vec<f64>,
    points: Vec<Point>,
    velocity: Vec<Point>,
    speed: Vec<f64>,
    normal: Vec<Point>,
    curvature: Vec<f64>,
    /// +1 when the parametrization runs counter-clockwise.
    orientation: f64,
}

/// Samples a circle at angles `2πj/n_nodes`, counter-clockwise.
pub fn make_circle(center: Point, radius: f64, n_nodes: usize, role: Role) -> Result<CurveComponent> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidCurve(format!("radius must be positive, got {radius}")));
    }
    CurveComponent::sample(
        CurveShape::Circle {
            center: [center.x, center.y],
            radius,
        },
        n_nodes,
        role,
    )
}

pub fn make_fourier_curve(curve: FourierCurve, n_nodes: usize, role: Role) -> Result<CurveComponent> {
    CurveComponent::sample(CurveShape::Fourier(curve), n_nodes, role)
}

impl CurveComponent {
    pub fn sample(shape: CurveShape, n_nodes: usize, role: Role) -> Result<Self> {
        if n_nodes < MIN_NODES || n_nodes % 2 != 0 {
            return Err(Error::InvalidCurve(format!(
                "node count must be even and at least {MIN_NODES}, got {n_nodes}"
            )));
        }
        let h = 2.0 * PI / n_nodes as f64;
        let params: Vec<f64> = (0..n_nodes).map(|j| j as f64 * h).collect();
        let mut points = Vec::with_capacity(n_nodes);
        let mut velocity = Vec::with_capacity(n_nodes);
        let mut accel = Vec::with_capacity(n_nodes);
        for &t in &params {
            let (x, v, a) = shape.eval(t);
            points.push(x);
            velocity.push(v);
            accel.push(a);
        }
        if points.iter().chain(&velocity).chain(&accel).any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::InvalidCurve("non-finite samples".into()));
        }
        let speed: Vec<f64> = velocity.iter().map(|v| v.norm()).collect();
        let max_speed = speed.iter().cloned().fold(0.0, f64::max);
        if let Some(node) = speed.iter().position(|&s| s <= 1e-12 * max_speed || s == 0.0) {
            return Err(Error::DegenerateCurve { node });
        }

        // Twice the signed area, by the trapezoidal rule on x ∧ x'.
        let area2: f64 = points
            .iter()
            .zip(&velocity)
            .map(|(x, v)| x.x * v.y - x.y * v.x)
            .sum::<f64>()
            * h;
        let orientation = if area2 >= 0.0 { 1.0 } else { -1.0 };
        // The right-hand normal (x₂', −x₁') points away from the enclosed
        // region for counter-clockwise curves.
        let sign = match role {
            Role::Outer => orientation,
            Role::Hole => -orientation,
        };
        let normal: Vec<Point> = velocity
            .iter()
            .zip(&speed)
            .map(|(v, s)| Point::new(v.y, -v.x) * (sign / s))
            .collect();
        let curvature = accel
            .iter()
            .zip(&normal)
            .zip(&speed)
            .map(|((a, n), s)| -a.dot(n) / (s * s))
            .collect();

        let curve = Self {
            role,
            shape,
            params,
            points,
            velocity,
            speed,
            normal,
            curvature,
            orientation,
        };
        curve.check_simple()?;
        Ok(curve)
    }

    /// `±1` such that the unit tangent `sign · x'/|x'|` turns into `ν` by a
    /// clockwise quarter turn. It is the direction `d/ds` follows.
    pub fn tangent_sign(&self) -> f64 {
        match self.role {
            Role::Outer => self.orientation,
            Role::Hole => -self.orientation,
        }
    }

    /// Same analytic curve at a different resolution.
    pub fn resample(&self, n_nodes: usize) -> Result<Self> {
        Self::sample(self.shape.clone(), n_nodes, self.role)
    }

    fn check_simple(&self) -> Result<()> {
        let n = self.len();
        let threshold = SIMPLICITY_THRESHOLD * self.diameter();
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if (self.points[i] - self.points[j]).norm() <= threshold {
                    return Err(Error::SelfIntersection { first: i, second: j });
                }
                let (a, b) = (self.points[i], self.points[(i + 1) % n]);
                let (c, d) = (self.points[j], self.points[(j + 1) % n]);
                if (j + 1) % n != i && segments_cross(a, b, c, d) {
                    return Err(Error::SelfIntersection { first: i, second: j });
                }
            }
        }
        Ok(())
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn shape(&self) -> &CurveShape {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Half the node count, `n` in `t_j = πj/n`.
    pub fn half_nodes(&self) -> usize {
        self.points.len() / 2
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn velocity(&self) -> &[Point] {
        &self.velocity
    }

    pub fn speed(&self) -> &[f64] {
        &self.speed
    }

    pub fn normals(&self) -> &[Point] {
        &self.normal
    }

    /// Signed curvature with respect to the outward (from Ω) normal:
    /// `κ = −x''·ν / |x'|²`, so `1/R` on an outer circle and `−1/r` on a
    /// hole circle.
    pub fn curvature(&self) -> &[f64] {
        &self.curvature
    }

    pub fn is_counter_clockwise(&self) -> bool {
        self.orientation > 0.0
    }

    /// Trapezoidal weights `(π/n)|x'(t_j)|`.
    pub fn weights(&self) -> Vec<f64> {
        let h = PI / self.half_nodes() as f64;
        self.speed.iter().map(|s| h * s).collect()
    }

    /// Largest distance between two nodes.
    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                d = d.max((p - q).norm());
            }
        }
        d
    }

    /// Largest arclength gap between consecutive nodes.
    pub fn max_spacing(&self) -> f64 {
        let h = PI / self.half_nodes() as f64;
        self.speed.iter().cloned().fold(0.0, f64::max) * h
    }

    /// Distance from `p` to the polygon through the nodes.
    pub fn distance_to(&self, p: Point) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| segment_distance(p, self.points[i], self.points[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min)
    }

    /// A point inside the region enclosed by this curve: the centre for
    /// circles, the constant Fourier term when it is enclosed, otherwise a
    /// node offset along the inward direction.
    pub fn enclosed_anchor(&self) -> Point {
        let candidate = match &self.shape {
            CurveShape::Circle { center, .. } => Point::new(center[0], center[1]),
            CurveShape::Fourier(f) => Point::new(
                f.x_cos.first().copied().unwrap_or(0.0),
                f.y_cos.first().copied().unwrap_or(0.0),
            ),
        };
        if winding_number(self, candidate).map(|w| w.abs() == 1).unwrap_or(false) {
            return candidate;
        }
        // Fall back to stepping inward from the node with the largest
        // room before hitting the curve again.
        let inward = match self.role {
            Role::Outer => -1.0,
            Role::Hole => 1.0,
        };
        let margin = 0.05 * self.diameter();
        let mut best = self.points[0];
        let mut best_dist = -1.0;
        for (x, nu) in self.points.iter().zip(&self.normal) {
            let p = x + nu * (inward * margin);
            if winding_number(self, p).map(|w| w.abs() == 1).unwrap_or(false) {
                let d = self.distance_to(p);
                if d > best_dist {
                    best = p;
                    best_dist = d;
                }
            }
        }
        best
    }
}

fn cross(a: Point, b: Point) -> f64 {
    a.x * b.y - a.y * b.x
}

fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    let s = if len2 > 0.0 { ((p - a).dot(&ab) / len2).clamp(0.0, 1.0) } else { 0.0 };
    (p - (a + ab * s)).norm()
}

/// Winding number of the node polygon of `curve` around `point`, computed
/// from the accumulated turning angle.
pub fn winding_number(curve: &CurveComponent, point: Point) -> Result<i32> {
    let distance = curve.distance_to(point);
    if distance <= 1e-9 * curve.diameter() {
        return Err(Error::PointOnCurve {
            x: point.x,
            y: point.y,
            distance,
        });
    }
    let n = curve.len();
    let mut total = 0.0;
    for i in 0..n {
        let a = curve.points[i] - point;
        let b = curve.points[(i + 1) % n] - point;
        total += cross(a, b).atan2(a.dot(&b));
    }
    let w = total / (2.0 * PI);
    let rounded = w.round();
    if (w - rounded).abs() >= 0.1 {
        return Err(Error::PointOnCurve {
            x: point.x,
            y: point.y,
            distance,
        });
    }
    Ok(rounded as i32)
}

/// Arclength `|Σ_j|` by the periodic trapezoidal rule.
pub fn boundary_measure(component: &CurveComponent) -> f64 {
    component.weights().iter().sum()
}

static NEXT_DOMAIN_ID: AtomicU64 = AtomicU64::new(1);

/// An `(m+1)`-connected domain: the region inside the outer curve minus the
/// closures of `m` holes.
#[derive(Clone, Debug)]
pub struct Domain {
    id: u64,
    components: Vec<CurveComponent>,
    offsets: Vec<usize>,
}

pub fn build_domain(outer: CurveComponent, holes: Vec<CurveComponent>) -> Result<Domain> {
    if outer.role() != Role::Outer {
        return Err(Error::RoleMismatch("first component must be the outer curve".into()));
    }
    if let Some(i) = holes.iter().position(|h| h.role() != Role::Hole) {
        return Err(Error::RoleMismatch(format!("component {} must be a hole", i + 1)));
    }

    for (k, hole) in holes.iter().enumerate() {
        for &p in hole.points() {
            match winding_number(&outer, p) {
                Ok(w) if w.abs() == 1 => {}
                _ => return Err(Error::HoleOutside { hole: k + 1 }),
            }
        }
        if crosses(&outer, hole) {
            return Err(Error::HoleOutside { hole: k + 1 });
        }
    }
    for j in 0..holes.len() {
        for k in j + 1..holes.len() {
            let overlap = || Error::HolesOverlap {
                first: j + 1,
                second: k + 1,
            };
            if crosses(&holes[j], &holes[k]) {
                return Err(overlap());
            }
            for (a, b) in [(j, k), (k, j)] {
                for &p in holes[a].points() {
                    match winding_number(&holes[b], p) {
                        Ok(0) => {}
                        _ => return Err(overlap()),
                    }
                }
            }
        }
    }

    let mut components = Vec::with_capacity(holes.len() + 1);
    components.push(outer);
    components.extend(holes);
    let mut offsets = Vec::with_capacity(components.len() + 1);
    offsets.push(0);
    for c in &components {
        offsets.push(offsets.last().unwrap() + c.len());
    }
    Ok(Domain {
        id: NEXT_DOMAIN_ID.fetch_add(1, Ordering::Relaxed),
        components,
        offsets,
    })
}

fn crosses(a: &CurveComponent, b: &CurveComponent) -> bool {
    let (na, nb) = (a.len(), b.len());
    for i in 0..na {
        let (p, q) = (a.points[i], a.points[(i + 1) % na]);
        for j in 0..nb {
            if segments_cross(p, q, b.points[j], b.points[(j + 1) % nb]) {
                return true;
            }
        }
    }
    false
}

impl Domain {
    /// Identity tag shared by operators and functions built on this domain.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn outer(&self) -> &CurveComponent {
        &self.components[0]
    }

    pub fn holes(&self) -> &[CurveComponent] {
        &self.components[1..]
    }

    /// All components, outer first.
    pub fn components(&self) -> &[CurveComponent] {
        &self.components
    }

    pub fn component(&self, c: usize) -> &CurveComponent {
        &self.components[c]
    }

    pub fn num_holes(&self) -> usize {
        self.components.len() - 1
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Total node count `N`.
    pub fn num_nodes(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Node index range of component `c`.
    pub fn range(&self, c: usize) -> std::ops::Range<usize> {
        self.offsets[c]..self.offsets[c + 1]
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Component owning global node `i`.
    pub fn component_of(&self, i: usize) -> usize {
        self.offsets[1..].iter().position(|&end| i < end).expect("node index out of range")
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.components.iter().flat_map(|c| c.points().iter().copied())
    }

    pub fn normals(&self) -> impl Iterator<Item = Point> + '_ {
        self.components.iter().flat_map(|c| c.normals().iter().copied())
    }

    pub fn weights(&self) -> Vec<f64> {
        self.components.iter().flat_map(|c| c.weights()).collect()
    }

    pub fn measures(&self) -> Vec<f64> {
        self.components.iter().map(boundary_measure).collect()
    }

    /// Same curves with `nodes` nodes on every component.
    pub fn resample(&self, nodes: usize) -> Result<Domain> {
        let outer = self.outer().resample(nodes)?;
        let holes = self
            .holes()
            .iter()
            .map(|h| h.resample(nodes))
            .collect::<Result<Vec<_>>>()?;
        build_domain(outer, holes)
    }

    /// Resample each component with its node count multiplied by `factor`.
    pub fn refine(&self, factor: usize) -> Result<Domain> {
        let outer = self.outer().resample(self.outer().len() * factor)?;
        let holes = self
            .holes()
            .iter()
            .map(|h| h.resample(h.len() * factor))
            .collect::<Result<Vec<_>>>()?;
        build_domain(outer, holes)
    }

    pub fn distance_to_boundary(&self, p: Point) -> f64 {
        self.components.iter().map(|c| c.distance_to(p)).fold(f64::INFINITY, f64::min)
    }

    /// Winding number 1 around the outer curve and 0 around every hole.
    pub fn contains(&self, p: Point) -> bool {
        let outer = matches!(winding_number(self.outer(), p), Ok(w) if w.abs() == 1);
        outer && self.holes().iter().all(|h| matches!(winding_number(h, p), Ok(0)))
    }

    /// A point inside hole `k` (1-based, as in `Σ_k`).
    pub fn hole_anchor(&self, k: usize) -> Point {
        self.components[k].enclosed_anchor()
    }

    /// Local feature size of component `c`: the smaller of its distance to
    /// the other components and its smallest radius of curvature.
    pub fn feature_size(&self, c: usize) -> f64 {
        let comp = &self.components[c];
        let kmax = comp.curvature().iter().fold(0.0f64, |a, k| a.max(k.abs()));
        let mut size = if kmax > 0.0 { 1.0 / kmax } else { comp.diameter() };
        for (o, other) in self.components.iter().enumerate() {
            if o == c {
                continue;
            }
            for &p in comp.points() {
                size = size.min(other.distance_to(p));
            }
        }
        size
    }

    /// Points inside Ω obtained by stepping from every `stride`-th node of
    /// each component along `−ν` by `fraction` times the local feature size.
    pub fn interior_test_points(&self, stride: usize, fraction: f64) -> Vec<Point> {
        let mut out = Vec::new();
        for (c, comp) in self.components.iter().enumerate() {
            let margin = fraction * self.feature_size(c);
            for (x, nu) in comp.points().iter().zip(comp.normals()).step_by(stride.max(1)) {
                let p = x - nu * margin;
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Points inside hole `k` obtained by stepping from its nodes along `ν`.
    pub fn hole_test_points(&self, k: usize, stride: usize, fraction: f64) -> Vec<Point> {
        let comp = &self.components[k];
        let margin = fraction * self.feature_size(k);
        comp.points()
            .iter()
            .zip(comp.normals())
            .step_by(stride.max(1))
            .map(|(x, nu)| x + nu * margin)
            .filter(|&p| matches!(winding_number(comp, p), Ok(w) if w.abs() == 1))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn origin() -> Point {
        Point::new(0.0, 0.0)
    }

    #[test]
    fn unit_circle_samples() {
        let c = make_circle(origin(), 1.0, 64, Role::Outer).unwrap();
        for j in 0..64 {
            let t = c.params()[j];
            assert_abs_diff_eq!(c.speed()[j], 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(c.normals()[j].x, t.cos(), epsilon = 1e-15);
            assert_abs_diff_eq!(c.normals()[j].y, t.sin(), epsilon = 1e-15);
            assert_abs_diff_eq!(c.curvature()[j], 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn hole_normals_point_to_center() {
        let c = make_circle(Point::new(1.0, -1.0), 0.5, 32, Role::Hole).unwrap();
        for j in 0..32 {
            let t = c.params()[j];
            assert_abs_diff_eq!(c.normals()[j].x, -t.cos(), epsilon = 1e-15);
            assert_abs_diff_eq!(c.normals()[j].y, -t.sin(), epsilon = 1e-15);
            assert_abs_diff_eq!(c.curvature()[j], -2.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn normals_are_unit_and_orthogonal() {
        let kite = make_fourier_curve(FourierCurve::kite(origin(), 1.0), 96, Role::Outer).unwrap();
        for (nu, v) in kite.normals().iter().zip(kite.velocity()) {
            assert_abs_diff_eq!(nu.norm(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(nu.dot(v), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn circle_weights_sum_to_circumference() {
        let c = make_circle(origin(), 2.0, 40, Role::Outer).unwrap();
        assert_abs_diff_eq!(boundary_measure(&c), 4.0 * PI, epsilon = 1e-12);
        let u = make_circle(origin(), 1.0, 16, Role::Outer).unwrap();
        assert_abs_diff_eq!(boundary_measure(&u), 2.0 * PI, epsilon = 1e-12);
    }

    #[test]
    fn rejects_bad_circle_input() {
        assert!(make_circle(origin(), 0.0, 32, Role::Outer).is_err());
        assert!(make_circle(origin(), -1.0, 32, Role::Outer).is_err());
        assert!(make_circle(origin(), 1.0, 33, Role::Outer).is_err());
        assert!(make_circle(origin(), 1.0, 8, Role::Outer).is_err());
    }

    #[test]
    fn fourier_circle_matches_make_circle() {
        let a = make_circle(Point::new(0.3, -0.2), 1.5, 48, Role::Hole).unwrap();
        let f = FourierCurve {
            x_cos: vec![0.3, 1.5],
            y_cos: vec![-0.2],
            y_sin: vec![1.5],
            ..Default::default()
        };
        let b = make_fourier_curve(f, 48, Role::Hole).unwrap();
        for j in 0..48 {
            assert!((a.points()[j] - b.points()[j]).norm() < 1e-14);
            assert!((a.normals()[j] - b.normals()[j]).norm() < 1e-14);
            assert!((a.speed()[j] - b.speed()[j]).abs() < 1e-14);
            assert!((a.curvature()[j] - b.curvature()[j]).abs() < 1e-14);
        }
    }

    #[test]
    fn degenerate_and_self_intersecting_curves() {
        let point = FourierCurve {
            x_cos: vec![1.0],
            y_cos: vec![2.0],
            ..Default::default()
        };
        assert!(matches!(
            make_fourier_curve(point, 32, Role::Outer),
            Err(Error::DegenerateCurve { .. })
        ));
        // Figure eight: (sin t, sin 2t)
        let eight = FourierCurve {
            x_sin: vec![1.0],
            y_sin: vec![0.0, 1.0],
            ..Default::default()
        };
        assert!(matches!(
            make_fourier_curve(eight, 64, Role::Outer),
            Err(Error::SelfIntersection { .. })
        ));
    }

    #[test]
    fn winding_numbers() {
        let c = make_circle(origin(), 1.0, 64, Role::Outer).unwrap();
        assert_eq!(winding_number(&c, origin()).unwrap(), 1);
        assert_eq!(winding_number(&c, Point::new(3.0, 0.0)).unwrap(), 0);
        let reversed = FourierCurve {
            x_cos: vec![0.0, 1.0],
            y_sin: vec![-1.0],
            ..Default::default()
        };
        let r = make_fourier_curve(reversed, 64, Role::Outer).unwrap();
        assert!(!r.is_counter_clockwise());
        assert_eq!(winding_number(&r, origin()).unwrap(), -1);
        // normals still point away from the disk
        assert_abs_diff_eq!(r.normals()[0].x, 1.0, epsilon = 1e-15);
        assert!(winding_number(&c, c.points()[3]).is_err());
    }

    #[test]
    fn domains() {
        let outer = make_circle(origin(), 2.0, 64, Role::Outer).unwrap();
        let hole = make_circle(origin(), 0.5, 32, Role::Hole).unwrap();
        let d = build_domain(outer.clone(), vec![hole]).unwrap();
        assert_eq!(d.num_holes(), 1);
        assert_eq!(d.num_nodes(), 96);
        assert_eq!(d.range(1), 64..96);
        assert_eq!(d.component_of(70), 1);

        let h1 = make_circle(Point::new(0.8, 0.0), 0.3, 32, Role::Hole).unwrap();
        let h2 = make_circle(Point::new(-0.8, 0.0), 0.3, 32, Role::Hole).unwrap();
        let d2 = build_domain(outer.clone(), vec![h1.clone(), h2]).unwrap();
        assert_eq!(d2.num_holes(), 2);
        assert_ne!(d.id(), d2.id());

        let far = make_circle(Point::new(2.5, 0.0), 0.3, 32, Role::Hole).unwrap();
        assert!(matches!(
            build_domain(outer.clone(), vec![far]),
            Err(Error::HoleOutside { hole: 1 })
        ));
        let straddling = make_circle(Point::new(1.9, 0.0), 0.3, 32, Role::Hole).unwrap();
        assert!(matches!(
            build_domain(outer.clone(), vec![straddling]),
            Err(Error::HoleOutside { hole: 1 })
        ));
        let overlapping = make_circle(Point::new(0.6, 0.0), 0.3, 32, Role::Hole).unwrap();
        assert!(matches!(
            build_domain(outer.clone(), vec![h1.clone(), overlapping]),
            Err(Error::HolesOverlap { .. })
        ));
        let nested = make_circle(Point::new(0.8, 0.0), 0.1, 32, Role::Hole).unwrap();
        assert!(matches!(
            build_domain(outer.clone(), vec![h1.clone(), nested]),
            Err(Error::HolesOverlap { .. })
        ));
        assert!(matches!(build_domain(h1.clone(), vec![]), Err(Error::RoleMismatch(_))));
        assert!(matches!(
            build_domain(outer.clone(), vec![outer.clone()]),
            Err(Error::RoleMismatch(_))
        ));
    }

    #[test]
    fn interior_test_points_are_interior() {
        let outer = make_fourier_curve(FourierCurve::ellipse(origin(), 3.0, 2.0), 64, Role::Outer).unwrap();
        let h1 = make_fourier_curve(FourierCurve::kite(Point::new(-1.0, 0.0), 0.5), 64, Role::Hole).unwrap();
        let h2 = make_circle(Point::new(1.3, 0.0), 0.4, 64, Role::Hole).unwrap();
        let d = build_domain(outer, vec![h1, h2]).unwrap();
        let pts = d.interior_test_points(4, 0.2);
        assert!(pts.len() > 30);
        for p in pts {
            assert_eq!(winding_number(d.outer(), p).unwrap(), 1);
            for h in d.holes() {
                assert_eq!(winding_number(h, p).unwrap(), 0);
            }
        }
        for k in 1..=2 {
            assert!(!d.hole_test_points(k, 8, 0.2).is_empty());
            let a = d.hole_anchor(k);
            assert_eq!(winding_number(d.component(k), a).unwrap().abs(), 1);
        }
    }
}
