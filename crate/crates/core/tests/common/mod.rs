#![allow(dead_code)]

use std::f64::consts::PI;

use lapbie::geometry::{build_domain, make_circle, make_fourier_curve, FourierCurve, Role};
use lapbie::{BoundaryFunction, Domain, Point};

pub fn p(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

pub fn disk(center: Point, r: f64, n: usize) -> Domain {
    build_domain(make_circle(center, r, n, Role::Outer).unwrap(), vec![]).unwrap()
}

pub fn annulus(inner: f64, outer: f64, n: usize) -> Domain {
    build_domain(
        make_circle(p(0.0, 0.0), outer, n, Role::Outer).unwrap(),
        vec![make_circle(p(0.0, 0.0), inner, n, Role::Hole).unwrap()],
    )
    .unwrap()
}

pub const KITE_CENTER: [f64; 2] = [-1.0, 0.0];
pub const SMALL_HOLE_CENTER: [f64; 2] = [1.3, 0.0];

/// Circle of radius 3 with a half-size kite hole and a circular hole.
pub fn kite_domain(n: usize) -> Domain {
    let outer = make_circle(p(0.0, 0.0), 3.0, n, Role::Outer).unwrap();
    let kite = make_fourier_curve(FourierCurve::kite(p(KITE_CENTER[0], KITE_CENTER[1]), 0.5), n, Role::Hole).unwrap();
    let small = make_circle(p(SMALL_HOLE_CENTER[0], SMALL_HOLE_CENTER[1]), 0.4, n, Role::Hole).unwrap();
    build_domain(outer, vec![kite, small]).unwrap()
}

/// `cos kt` (or `sin kt`) on component `c`, zero elsewhere.
pub fn mode(domain: &Domain, c: usize, k: usize, sine: bool) -> BoundaryFunction {
    BoundaryFunction::from_fn(domain, |node| {
        if node.component != c {
            0.0
        } else if sine {
            (k as f64 * node.param).sin()
        } else {
            (k as f64 * node.param).cos()
        }
    })
}

/// Points of a uniform grid over the bounding box of the outer curve that
/// lie in the domain at least `margin` from every component.
pub fn probes(domain: &Domain, margin: f64, per_axis: usize) -> Vec<Point> {
    let pts: Vec<Point> = domain.outer().points().to_vec();
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for q in &pts {
        lo = lo.inf(q);
        hi = hi.sup(q);
    }
    let mut out = Vec::new();
    for i in 0..per_axis {
        for j in 0..per_axis {
            let x = p(
                lo.x + (hi.x - lo.x) * (i as f64 + 0.5) / per_axis as f64,
                lo.y + (hi.y - lo.y) * (j as f64 + 0.5) / per_axis as f64,
            );
            if domain.contains(x) && domain.distance_to_boundary(x) >= margin {
                out.push(x);
            }
        }
    }
    out
}

/// Normal derivative of a field with gradient `grad` at the nodes.
pub fn normal_derivative(domain: &Domain, grad: impl Fn(Point) -> Point) -> BoundaryFunction {
    BoundaryFunction::from_fn(domain, |node| grad(node.point).dot(&node.normal))
}

pub fn trace(domain: &Domain, u: impl Fn(Point) -> f64) -> BoundaryFunction {
    BoundaryFunction::from_fn(domain, |node| u(node.point))
}

/// Max error and max error after removing the best constant (midrange).
pub fn errors(values: &[(f64, f64)]) -> (f64, f64) {
    let diffs: Vec<f64> = values.iter().map(|(a, b)| a - b).collect();
    let max = diffs.iter().fold(0.0_f64, |m, d| m.max(d.abs()));
    let lo = diffs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = diffs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (max, (hi - lo) / 2.0)
}

pub fn log_r_over_2pi(r: f64) -> f64 {
    r.ln() / (2.0 * PI)
}
