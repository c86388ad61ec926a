//! Fundamental solution `s(x,y) = (1/2π) log|x−y|` of the planar Laplacian
//! and its normal derivatives.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::Point;

pub(crate) const INV_2PI: f64 = 1.0 / (2.0 * PI);

fn separation(x: Point, y: Point) -> Result<Point> {
    let d = x - y;
    if d.norm_squared() == 0.0 {
        Err(Error::CoincidentPoints)
    } else {
        Ok(d)
    }
}

pub fn fund_solution(x: Point, y: Point) -> Result<f64> {
    separation(x, y).map(|d| INV_2PI * d.norm().ln())
}

/// `∂/∂ν_y s(x,y) = (1/2π) (y−x)·ν_y / |x−y|²`, the double layer kernel.
pub fn dnu_y_s(x: Point, y: Point, nu_y: Point) -> Result<f64> {
    separation(x, y).map(|d| -INV_2PI * d.dot(&nu_y) / d.norm_squared())
}

/// `∂/∂ν_x s(x,y) = (1/2π) (x−y)·ν_x / |x−y|²`, the adjoint kernel.
pub fn dnu_x_s(x: Point, y: Point, nu_x: Point) -> Result<f64> {
    separation(x, y).map(|d| INV_2PI * d.dot(&nu_x) / d.norm_squared())
}

/// Limit of the double layer kernel as `y → x` along a curve with signed
/// curvature `κ` relative to its normal.
pub fn diagonal_limit(curvature: f64) -> f64 {
    curvature / (4.0 * PI)
}

// Unchecked variants for assembly loops where coincidence is excluded by
// construction.

#[inline]
pub(crate) fn log_kernel(x: Point, y: Point) -> f64 {
    INV_2PI * 0.5 * (x - y).norm_squared().ln()
}

#[inline]
pub(crate) fn double_layer_kernel(x: Point, y: Point, nu_y: Point) -> f64 {
    let d = y - x;
    INV_2PI * d.dot(&nu_y) / d.norm_squared()
}
