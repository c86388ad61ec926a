//! Closed-form harmonic functions used to generate boundary data with a
//! known exact field.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Domain, Point};
use crate::operators::BoundaryFunction;

fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCharge {
    pub strength: f64,
    pub center: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", content = "params", rename_all = "kebab-case")]
pub enum Manufactured {
    /// `a + b log|x − p|`, with `p` inside a hole or outside Ω.
    LogRadial { a: f64, b: f64, center: [f64; 2] },
    /// `scale · Re z^k`, or `Im z^k` when `imaginary` is set.
    HarmonicPolynomial {
        k: u32,
        #[serde(default)]
        imaginary: bool,
        #[serde(default = "one")]
        scale: f64,
    },
    /// `constant + Σ q_i log|x − p_i|`.
    PointLog {
        terms: Vec<PointCharge>,
        #[serde(default)]
        constant: f64,
    },
}

impl Manufactured {
    pub fn value(&self, x: Point) -> f64 {
        match self {
            Manufactured::LogRadial { a, b, center } => a + b * (x - Point::new(center[0], center[1])).norm().ln(),
            Manufactured::HarmonicPolynomial { k, imaginary, scale } => {
                let z = Complex::new(x.x, x.y).powu(*k);
                scale * if *imaginary { z.im } else { z.re }
            }
            Manufactured::PointLog { terms, constant } => {
                constant
                    + terms
                        .iter()
                        .map(|q| q.strength * (x - Point::new(q.center[0], q.center[1])).norm().ln())
                        .sum::<f64>()
            }
        }
    }

    pub fn gradient(&self, x: Point) -> Point {
        let log_grad = |p: [f64; 2]| {
            let d = x - Point::new(p[0], p[1]);
            d / d.norm_squared()
        };
        match self {
            Manufactured::LogRadial { b, center, .. } => log_grad(*center) * *b,
            Manufactured::HarmonicPolynomial { k, imaginary, scale } => {
                if *k == 0 {
                    return Point::zeros();
                }
                // f'(z) = k z^{k−1}; ∂x = f', ∂y = i f'
                let dz = Complex::new(x.x, x.y).powu(k - 1) * (*k as f64);
                let g = if *imaginary {
                    Point::new(dz.im, dz.re)
                } else {
                    Point::new(dz.re, -dz.im)
                };
                g * *scale
            }
            Manufactured::PointLog { terms, .. } => terms
                .iter()
                .fold(Point::zeros(), |acc, q| acc + log_grad(q.center) * q.strength),
        }
    }

    pub fn singular_points(&self) -> Vec<Point> {
        match self {
            Manufactured::LogRadial { b, center, .. } if *b != 0.0 => vec![Point::new(center[0], center[1])],
            Manufactured::PointLog { terms, .. } => terms
                .iter()
                .filter(|q| q.strength != 0.0)
                .map(|q| Point::new(q.center[0], q.center[1]))
                .collect(),
            _ => vec![],
        }
    }
}

/// Exact trace and normal derivative of a manufactured field.
#[derive(Clone, Debug)]
pub struct ManufacturedData {
    pub solution: Manufactured,
    pub trace: BoundaryFunction,
    pub normal_derivative: BoundaryFunction,
}

impl ManufacturedData {
    /// `∂u/∂ν + hu`.
    pub fn robin(&self, h: &BoundaryFunction) -> Result<BoundaryFunction> {
        Ok(&self.normal_derivative + &h.hadamard(&self.trace)?)
    }

    pub fn neumann(&self) -> BoundaryFunction {
        self.normal_derivative.clone()
    }

    pub fn dirichlet(&self) -> BoundaryFunction {
        self.trace.clone()
    }

    pub fn exact(&self, x: Point) -> f64 {
        self.solution.value(x)
    }
}

/// Samples a manufactured solution on the boundary. Fails when one of its
/// singular points lies in the closure of Ω.
pub fn manufactured_case(solution: &Manufactured, domain: &Domain) -> Result<ManufacturedData> {
    for p in solution.singular_points() {
        let on_boundary = domain.distance_to_boundary(p) <= 1e-9 * domain.outer().diameter();
        if on_boundary || domain.contains(p) {
            return Err(Error::Config(format!(
                "singular point ({}, {}) of the manufactured solution lies in the closed domain",
                p.x, p.y
            )));
        }
    }
    Ok(ManufacturedData {
        solution: solution.clone(),
        trace: BoundaryFunction::from_fn(domain, |n| solution.value(n.point)),
        normal_derivative: BoundaryFunction::from_fn(domain, |n| solution.gradient(n.point).dot(&n.normal)),
    })
}
