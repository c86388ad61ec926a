//! Independent brute-force quadrature used to produce reference values.
//!
//! Nothing here goes through `operators`: curves are resampled on a finer
//! grid, densities are evaluated from closed forms, kernels are written
//! out inline, and the on-curve log singularity is integrated through the
//! discrete Fourier coefficients of the density instead of a weight matrix.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{Domain, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKernel {
    SingleLayer,
    DoubleLayer,
    AdjointDoubleLayer,
}

#[derive(Clone, Copy, Debug)]
pub enum OracleTarget {
    /// A point off the boundary.
    Point(Point),
    /// Coarse node `index` of `component` in the domain being checked.
    Node { component: usize, index: usize },
}

struct FineCurve {
    params: Vec<f64>,
    points: Vec<Point>,
    normals: Vec<Point>,
    speed: Vec<f64>,
    curvature: Vec<f64>,
}

/// The domain's curves resampled with `multiplier` times as many nodes.
pub struct FineGrid {
    curves: Vec<FineCurve>,
    multiplier: usize,
}

impl FineGrid {
    pub fn new(domain: &Domain, multiplier: usize) -> Result<Self> {
        let curves = domain
            .components()
            .iter()
            .map(|c| {
                let fine = c.resample(c.len() * multiplier)?;
                Ok(FineCurve {
                    params: fine.params().to_vec(),
                    points: fine.points().to_vec(),
                    normals: fine.normals().to_vec(),
                    speed: fine.speed().to_vec(),
                    curvature: fine.curvature().to_vec(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { curves, multiplier })
    }

    pub fn multiplier(&self) -> usize {
        self.multiplier
    }

    /// Samples `f(component, t, x(t))` at every fine node.
    pub fn sample(&self, f: impl Fn(usize, f64, Point) -> f64) -> Vec<Vec<f64>> {
        self.curves
            .iter()
            .enumerate()
            .map(|(c, curve)| curve.params.iter().zip(&curve.points).map(|(&t, &x)| f(c, t, x)).collect())
            .collect()
    }

    /// Keeps every `multiplier`-th value, i.e. the coarse nodes, flattened.
    pub fn restrict(&self, values: &[Vec<f64>]) -> Vec<f64> {
        values.iter().flat_map(|v| v.iter().step_by(self.multiplier).copied()).collect()
    }

    fn weight(&self, c: usize, j: usize) -> f64 {
        2.0 * PI / self.curves[c].points.len() as f64 * self.curves[c].speed[j]
    }

    /// Single layer at an off-boundary point.
    pub fn single_layer_at(&self, density: &[Vec<f64>], x: Point) -> f64 {
        let mut sum = 0.0;
        for (c, curve) in self.curves.iter().enumerate() {
            for (j, y) in curve.points.iter().enumerate() {
                let r = ((x.x - y.x).powi(2) + (x.y - y.y).powi(2)).sqrt();
                sum += density[c][j] * r.ln() / (2.0 * PI) * self.weight(c, j);
            }
        }
        sum
    }

    /// Double layer at an off-boundary point.
    pub fn double_layer_at(&self, density: &[Vec<f64>], x: Point) -> f64 {
        let mut sum = 0.0;
        for (c, curve) in self.curves.iter().enumerate() {
            for (j, (y, nu)) in curve.points.iter().zip(&curve.normals).enumerate() {
                let (dx, dy) = (y.x - x.x, y.y - x.y);
                let k = (dx * nu.x + dy * nu.y) / (dx * dx + dy * dy) / (2.0 * PI);
                sum += density[c][j] * k * self.weight(c, j);
            }
        }
        sum
    }

    /// Single layer at every fine node.
    pub fn single_layer(&self, density: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = self.curves.iter().map(|c| vec![0.0; c.points.len()]).collect();
        for (a, target) in self.curves.iter().enumerate() {
            for (b, source) in self.curves.iter().enumerate() {
                if a == b {
                    self.self_single_layer(a, &density[a], &mut out[a]);
                    continue;
                }
                for (i, x) in target.points.iter().enumerate() {
                    let mut s = 0.0;
                    for (j, y) in source.points.iter().enumerate() {
                        let r2 = (x.x - y.x).powi(2) + (x.y - y.y).powi(2);
                        s += density[b][j] * 0.5 * r2.ln() / (2.0 * PI) * self.weight(b, j);
                    }
                    out[a][i] += s;
                }
            }
        }
        out
    }

    fn self_single_layer(&self, c: usize, density: &[f64], out: &mut [f64]) {
        let curve = &self.curves[c];
        let m = curve.points.len();
        let n = m / 2;
        let f: Vec<f64> = density.iter().zip(&curve.speed).map(|(d, s)| d * s).collect();
        // real Fourier coefficients of f
        let mut a = vec![0.0; n + 1];
        let mut b = vec![0.0; n + 1];
        for k in 1..=n {
            for (j, fj) in f.iter().enumerate() {
                let arg = k as f64 * curve.params[j];
                a[k] += fj * arg.cos();
                b[k] += fj * arg.sin();
            }
            let scale = if k == n { 1.0 / m as f64 } else { 2.0 / m as f64 };
            a[k] *= scale;
            b[k] *= scale;
        }
        for (i, o) in out.iter_mut().enumerate() {
            let t = curve.params[i];
            // ∫ log(4 sin²((t−τ)/2)) cos k(τ) dτ = −(2π/k) cos kt, same for sin
            let mut singular = 0.0;
            for k in 1..=n {
                let arg = k as f64 * t;
                let term = if k == n { a[k] * arg.cos() } else { a[k] * arg.cos() + b[k] * arg.sin() };
                singular -= 2.0 * PI / k as f64 * term;
            }
            let mut smooth = 0.0;
            for (j, fj) in f.iter().enumerate() {
                let kernel = if i == j {
                    curve.speed[i].ln() / (2.0 * PI)
                } else {
                    let x = curve.points[i];
                    let y = curve.points[j];
                    let r2 = (x.x - y.x).powi(2) + (x.y - y.y).powi(2);
                    let sin = (0.5 * (t - curve.params[j])).sin();
                    (r2 / (4.0 * sin * sin)).ln() / (4.0 * PI)
                };
                smooth += kernel * fj;
            }
            *o += singular / (4.0 * PI) + smooth * 2.0 * PI / m as f64;
        }
    }

    fn double_like(&self, density: &[Vec<f64>], adjoint: bool) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = self.curves.iter().map(|c| vec![0.0; c.points.len()]).collect();
        for (a, target) in self.curves.iter().enumerate() {
            for (i, x) in target.points.iter().enumerate() {
                let mut s = 0.0;
                for (b, source) in self.curves.iter().enumerate() {
                    for (j, y) in source.points.iter().enumerate() {
                        let k = if a == b && i == j {
                            target.curvature[i] / (4.0 * PI)
                        } else {
                            let (dx, dy) = (y.x - x.x, y.y - x.y);
                            let nu = if adjoint { -target.normals[i] } else { source.normals[j] };
                            (dx * nu.x + dy * nu.y) / (dx * dx + dy * dy) / (2.0 * PI)
                        };
                        s += density[b][j] * k * self.weight(b, j);
                    }
                }
                out[a][i] = s;
            }
        }
        out
    }

    /// Principal-value double layer at every fine node.
    pub fn double_layer_pv(&self, density: &[Vec<f64>]) -> Vec<Vec<f64>> {
        self.double_like(density, false)
    }

    /// Adjoint double layer at every fine node.
    pub fn adjoint_double_layer(&self, density: &[Vec<f64>]) -> Vec<Vec<f64>> {
        self.double_like(density, true)
    }

    /// `K²φ + h(½Sφ + D_pv Sφ)` at every fine node.
    pub fn h_operator(&self, h: &[Vec<f64>], density: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let k2 = self.adjoint_double_layer(&self.adjoint_double_layer(density));
        let s = self.single_layer(density);
        let ds = self.double_layer_pv(&s);
        k2.iter()
            .zip(h)
            .zip(s.iter().zip(&ds))
            .map(|((k2c, hc), (sc, dsc))| {
                (0..k2c.len()).map(|i| k2c[i] + hc[i] * (0.5 * sc[i] + dsc[i])).collect()
            })
            .collect()
    }

    fn evaluate(&self, kernel: OracleKernel, density: &[Vec<f64>], target: OracleTarget) -> f64 {
        match target {
            OracleTarget::Point(x) => match kernel {
                OracleKernel::SingleLayer => self.single_layer_at(density, x),
                OracleKernel::DoubleLayer => self.double_layer_at(density, x),
                OracleKernel::AdjointDoubleLayer => {
                    panic!("the adjoint double layer is only defined on the boundary")
                }
            },
            OracleTarget::Node { component, index } => {
                let values = match kernel {
                    OracleKernel::SingleLayer => self.single_layer(density),
                    OracleKernel::DoubleLayer => self.double_layer_pv(density),
                    OracleKernel::AdjointDoubleLayer => self.adjoint_double_layer(density),
                };
                values[component][index * self.multiplier]
            }
        }
    }
}

/// Evaluates one layer potential with `multiplier` and `2·multiplier`
/// times the domain's resolution and returns the finer value, provided the
/// two agree to `1e-10` relative.
pub fn oracle_quadrature(
    domain: &Domain,
    kernel: OracleKernel,
    density: &dyn Fn(usize, f64) -> f64,
    target: OracleTarget,
    multiplier: usize,
) -> Result<f64> {
    if multiplier == 0 {
        return Err(Error::OracleNonConvergence("multiplier must be positive".into()));
    }
    if kernel == OracleKernel::AdjointDoubleLayer && matches!(target, OracleTarget::Point(_)) {
        return Err(Error::Config("the adjoint double layer needs a boundary target".into()));
    }
    let mut values = [0.0; 2];
    for (slot, mult) in [multiplier, 2 * multiplier].into_iter().enumerate() {
        let grid = FineGrid::new(domain, mult)?;
        let rho = grid.sample(|c, t, _| density(c, t));
        values[slot] = grid.evaluate(kernel, &rho, target);
    }
    let diff = (values[0] - values[1]).abs();
    if !(diff <= 1e-10 * values[1].abs().max(1.0)) {
        return Err(Error::OracleNonConvergence(format!(
            "{kernel:?} changed by {diff:e} between {multiplier}x and {}x",
            2 * multiplier
        )));
    }
    Ok(values[1])
}
