//! Field evaluation inside Ω and boundary diagnostics.
//!
//! Off-boundary potentials use the trapezoidal rule, whose error behaves
//! like `e^{−2πd/h}` at distance `d` from a component with node spacing
//! `h`. Near a component the density is interpolated onto a finer
//! parameter grid first (up to 1024 times finer), so targets a small
//! fraction of a node spacing away keep full accuracy.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{CurveComponent, Domain, Point};
use crate::kernels::{double_layer_kernel, log_kernel};
use crate::operators::{BoundaryFunction, LayerOperators};
use crate::solvers::{NeumannSolution, RobinSolution, Solution};

/// Refinement makes `d/h` at least this ratio (times the factor).
const NEAR_FIELD_RATIO: f64 = 6.0;
const MAX_REFINEMENT: usize = 1024;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FieldSample {
    pub point: [f64; 2],
    pub value: f64,
    pub distance: f64,
}

fn refinement(comp: &CurveComponent, x: Point) -> usize {
    let ratio = NEAR_FIELD_RATIO * comp.max_spacing() / comp.distance_to(x);
    if ratio <= 1.0 {
        1
    } else if ratio.is_finite() {
        (ratio.ceil() as usize).min(MAX_REFINEMENT)
    } else {
        MAX_REFINEMENT
    }
}

/// Trigonometric interpolant of nodal values, evaluated at `factor` times
/// as many equispaced parameters. Harmonics are generated by rotation.
fn interpolate(values: &[f64], factor: usize) -> Vec<f64> {
    let n = values.len();
    let half = n / 2;
    let mut a = vec![0.0; half + 1];
    let mut b = vec![0.0; half + 1];
    for (j, v) in values.iter().enumerate() {
        let (s1, c1) = (2.0 * PI * j as f64 / n as f64).sin_cos();
        let (mut s, mut c) = (0.0, 1.0);
        for k in 0..=half {
            a[k] += v * c;
            b[k] += v * s;
            (c, s) = (c * c1 - s * s1, s * c1 + c * s1);
        }
    }
    for k in 0..=half {
        let scale = if k == 0 || k == half { 1.0 } else { 2.0 } / n as f64;
        a[k] *= scale;
        b[k] *= scale;
    }
    let m = n * factor;
    (0..m)
        .map(|i| {
            let (s1, c1) = (2.0 * PI * i as f64 / m as f64).sin_cos();
            let (mut s, mut c) = (s1, c1);
            let mut v = a[0];
            for k in 1..half {
                v += a[k] * c + b[k] * s;
                (c, s) = (c * c1 - s * s1, s * c1 + c * s1);
            }
            v + a[half] * c
        })
        .collect()
}

/// `Σ_j ρ(t_j) k(x, y_j, ν_j) w_j` over one component, refined near `x`.
fn component_sum(comp: &CurveComponent, density: &[f64], x: Point, kernel: impl Fn(Point, Point) -> f64) -> f64 {
    let factor = refinement(comp, x);
    if factor == 1 {
        let w = comp.weights();
        return comp
            .points()
            .iter()
            .zip(comp.normals())
            .zip(&w)
            .zip(density)
            .map(|(((y, nu), wj), v)| v * kernel(*y, *nu) * wj)
            .sum();
    }
    let fine = interpolate(density, factor);
    let m = fine.len();
    let sign = comp.tangent_sign();
    fine.iter()
        .enumerate()
        .map(|(i, v)| {
            let (y, vel, _) = comp.shape().eval(2.0 * PI * i as f64 / m as f64);
            let speed = vel.norm();
            let nu = Point::new(vel.y, -vel.x) * (sign / speed);
            v * kernel(y, nu) * 2.0 * PI / m as f64 * speed
        })
        .sum()
}

/// Single layer `∫_Σ φ s(x, ·) dσ` at any point off Σ, including points
/// inside holes.
pub fn single_layer_field(domain: &Domain, phi: &BoundaryFunction, x: Point) -> f64 {
    domain
        .components()
        .iter()
        .enumerate()
        .map(|(c, comp)| component_sum(comp, phi.component(c), x, |y, _| log_kernel(x, y)))
        .sum()
}

/// Double layer at any point off Σ.
pub fn double_layer_field(domain: &Domain, psi: &BoundaryFunction, x: Point) -> f64 {
    domain
        .components()
        .iter()
        .enumerate()
        .map(|(c, comp)| component_sum(comp, psi.component(c), x, |y, nu| double_layer_kernel(x, y, nu)))
        .sum()
}

fn check_interior(domain: &Domain, x: Point) -> Result<f64> {
    let distance = domain.distance_to_boundary(x);
    if distance <= 0.0 || !domain.contains(x) {
        return Err(Error::PointOutside { x: x.x, y: x.y });
    }
    Ok(distance)
}

pub fn eval_single_layer(domain: &Domain, phi: &BoundaryFunction, x: Point) -> Result<f64> {
    phi.check(domain.id())?;
    check_interior(domain, x)?;
    Ok(single_layer_field(domain, phi, x))
}

pub fn eval_double_layer(domain: &Domain, psi: &BoundaryFunction, x: Point) -> Result<f64> {
    psi.check(domain.id())?;
    check_interior(domain, x)?;
    Ok(double_layer_field(domain, psi, x))
}

/// Field of a solved problem at `x`, without the interior check.
pub fn solution_field(domain: &Domain, solution: &Solution, x: Point) -> f64 {
    match solution {
        Solution::Robin(s) => double_layer_field(domain, &s.single_layer_trace, x) + s.constant + s.source_field(x),
        Solution::Neumann(s) => neumann_field(domain, s, x),
        Solution::Dirichlet(s) => single_layer_field(domain, &s.combined_density, x) + s.constant,
    }
}

fn neumann_field(domain: &Domain, s: &NeumannSolution, x: Point) -> f64 {
    let mut u = double_layer_field(domain, &s.psi, x) + s.offset;
    for (j, &c) in s.charges.iter().enumerate() {
        if c != 0.0 {
            let comp = domain.component(j + 1);
            let ones = vec![1.0; comp.len()];
            u += c * component_sum(comp, &ones, x, |y, _| log_kernel(x, y));
        }
    }
    u
}

pub fn eval_solution(domain: &Domain, solution: &Solution, points: &[Point]) -> Result<Vec<FieldSample>> {
    if solution.domain_id() != domain.id() {
        return Err(Error::DomainMismatch);
    }
    points
        .iter()
        .map(|&x| {
            let distance = check_interior(domain, x)?;
            Ok(FieldSample {
                point: [x.x, x.y],
                value: solution_field(domain, solution, x),
                distance,
            })
        })
        .collect()
}

/// Boundary trace `u` and normal derivative `∂u/∂ν` of `u = Dψ`, computed
/// as `(½I + D_pv)ψ` and `∂_s S ∂_s ψ`.
pub fn double_layer_traces(
    ops: &LayerOperators,
    psi: &BoundaryFunction,
) -> Result<(BoundaryFunction, BoundaryFunction)> {
    let trace = ops.double.shift(0.5).apply(psi)?;
    let flux = ops.double_layer_normal_derivative().apply(psi)?;
    Ok((trace, flux))
}

fn robin_defect(
    domain: &Domain,
    ops: &LayerOperators,
    solution: &RobinSolution,
    h: &BoundaryFunction,
    g: &BoundaryFunction,
) -> Result<(BoundaryFunction, BoundaryFunction)> {
    if solution.domain_id != ops.domain_id() {
        return Err(Error::DomainMismatch);
    }
    h.check(ops.domain_id())?;
    g.check(ops.domain_id())?;
    let (trace, flux) = double_layer_traces(ops, &solution.psi)?;
    let (source_value, source_flux) = solution.source_traces(domain)?;
    let trace = &trace + &source_value;
    let flux = &flux + &source_flux;
    let defect = &(&flux + &h.hadamard(&trace)?) - g;
    Ok((trace, defect))
}

/// `max |∂_s S ∂_s ψ + h(½ψ + D_pv ψ) − g|` over all nodes, with the hole
/// source terms included.
pub fn boundary_residual_robin(
    domain: &Domain,
    ops: &LayerOperators,
    solution: &RobinSolution,
    h: &BoundaryFunction,
    g: &BoundaryFunction,
) -> Result<f64> {
    if solution.domain_id != domain.id() {
        return Err(Error::DomainMismatch);
    }
    Ok(robin_defect(domain, ops, solution, h, g)?.1.max_abs())
}

/// `∫_Σ u (∂u/∂ν + hu − g) dσ`, the boundary form of the energy identity.
pub fn energy_residual_robin(
    domain: &Domain,
    ops: &LayerOperators,
    solution: &RobinSolution,
    h: &BoundaryFunction,
    g: &BoundaryFunction,
) -> Result<f64> {
    let (trace, defect) = robin_defect(domain, ops, solution, h, g)?;
    Ok(ops.quadrature.integrate(&trace.hadamard(&defect)?))
}

/// Five-point Laplacian of the solved field at `x` with spacing `step`.
pub fn discrete_laplacian(domain: &Domain, solution: &Solution, x: Point, step: f64) -> f64 {
    let u = |p: Point| solution_field(domain, solution, p);
    let (ex, ey) = (Point::new(step, 0.0), Point::new(0.0, step));
    (u(x + ex) + u(x - ex) + u(x + ey) + u(x - ey) - 4.0 * u(x)) / (step * step)
}

/// Average of the solved field over a circle of radius `radius` at `x`.
pub fn circle_average(domain: &Domain, solution: &Solution, x: Point, radius: f64, samples: usize) -> f64 {
    (0..samples)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / samples as f64;
            solution_field(domain, solution, x + Point::new(t.cos(), t.sin()) * radius)
        })
        .sum::<f64>()
        / samples as f64
}
