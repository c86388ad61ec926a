use nalgebra::{DMatrix, DVector};

use super::exceptional::{detect_exceptional, DEFAULT_EXCEPTIONAL_TOL};
use super::neumann::{check_component_fluxes, strict_density};
use super::SolverPath;
use crate::error::{Error, Result};
use crate::geometry::{Domain, Point};
use crate::kernels::{log_kernel, INV_2PI};
use crate::linalg;
use crate::operators::{BoundaryFunction, LayerOperators};

#[derive(Clone, Debug)]
pub struct RobinOptions {
    /// Accept `h ≡ 0`, turning the problem into a Neumann problem.
    pub neumann: bool,
    pub exceptional_tol: f64,
    /// Largest accepted condition number of the system matrix.
    pub condition_cap: f64,
    /// Largest accepted relative residual of the linear solve.
    pub residual_tol: f64,
    /// Relative SVD cutoff used on the `h ≡ 0` path.
    pub rank_cutoff: f64,
    /// Flux tolerance used on the `h ≡ 0` path.
    pub flux_tol: f64,
}

impl Default for RobinOptions {
    fn default() -> Self {
        Self {
            neumann: false,
            exceptional_tol: DEFAULT_EXCEPTIONAL_TOL,
            condition_cap: 1e12,
            residual_tol: 1e-10,
            rank_cutoff: 1e-8,
            flux_tol: 1e-10,
        }
    }
}

/// `u = Dψ` with `ψ = Sφ + c`.
#[derive(Clone, Debug)]
pub struct RobinSolution {
    pub domain_id: u64,
    pub density: BoundaryFunction,
    /// Zero unless the boundary is exceptional.
    pub constant: f64,
    /// Double layer density `Sφ + c`.
    pub psi: BoundaryFunction,
    /// `Sφ` alone.
    pub single_layer_trace: BoundaryFunction,
    /// Strengths `a_j` of the point sources `a_j s(x, p_j)` placed inside
    /// each hole. Double layers carry no flux through the holes, so these
    /// terms supply it; they vanish when the data has no hole flux.
    pub hole_charges: Vec<f64>,
    pub charge_points: Vec<Point>,
    pub exceptional: bool,
    pub path: SolverPath,
    pub residual: f64,
    pub condition_number: f64,
    /// `∫_Σ φ dσ`; must vanish on the exceptional path.
    pub side_condition: f64,
}

pub fn solve_robin(
    domain: &Domain,
    h: &BoundaryFunction,
    g: &BoundaryFunction,
    opts: &RobinOptions,
) -> Result<RobinSolution> {
    let ops = LayerOperators::assemble(domain);
    solve_robin_with(domain, &ops, h, g, opts)
}

/// Solves the Robin problem with data `∂u/∂ν + hu = g`.
///
/// Regular boundaries solve `(−¼I + H)φ = g`. Exceptional boundaries solve
/// the bordered system `[−¼I + H, h; w, 0] (φ, c) = (g, 0)`.
///
/// With holes, `−¼I + H` is singular: `φ = S⁻¹χ_k` gives `ψ = χ_k`, whose
/// double layer vanishes in Ω. Each hole therefore adds one source column
/// `a_k(∂_ν + h)s(·, p_k)` and one row `∫_{Σ_k} ψ = 0`.
pub fn solve_robin_with(
    domain: &Domain,
    ops: &LayerOperators,
    h: &BoundaryFunction,
    g: &BoundaryFunction,
    opts: &RobinOptions,
) -> Result<RobinSolution> {
    for f in [h, g] {
        f.check(domain.id())?;
    }
    if ops.domain_id() != domain.id() {
        return Err(Error::DomainMismatch);
    }
    if g.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidCoefficient("g must be finite".into()));
    }
    let system = ops.h(h, opts.neumann)?.shift(-0.25);
    let n = domain.num_nodes();

    if opts.neumann {
        check_component_fluxes(domain, &ops.quadrature, g, opts.flux_tol)?;
        let (phi, _, cond) = strict_density(domain, &system, g, opts.rank_cutoff)?;
        let residual = relative_residual(system.matrix(), phi.values(), g.values());
        let single_layer_trace = ops.single.apply(&phi)?;
        return Ok(RobinSolution {
            domain_id: domain.id(),
            side_condition: ops.quadrature.integrate(&phi),
            density: phi,
            constant: 0.0,
            psi: single_layer_trace.clone(),
            single_layer_trace,
            hole_charges: vec![],
            charge_points: vec![],
            exceptional: false,
            path: SolverPath::Strict,
            residual,
            condition_number: cond,
        });
    }

    let exceptional = detect_exceptional(domain, opts.exceptional_tol)?.is_exceptional;
    let m = domain.num_holes();
    let charge_points: Vec<Point> = (1..=m).map(|k| domain.hole_anchor(k)).collect();
    let sources = source_traces(domain, &charge_points);
    let extra = usize::from(exceptional);
    let size = n + extra + m;
    let w = ops.quadrature.weights();

    let mut a = DMatrix::zeros(size, size);
    a.view_mut((0, 0), (n, n)).copy_from(system.matrix());
    if exceptional {
        for i in 0..n {
            a[(i, n)] = h.values()[i];
            a[(n, i)] = w[i];
        }
    }
    for (j, (value, flux)) in sources.iter().enumerate() {
        let col = n + extra + j;
        for i in 0..n {
            a[(i, col)] = flux[i] + h.values()[i] * value[i];
        }
        // ∫_{Σ_k} ψ = 0 pins the part of ψ that is constant on hole k
        let row = n + extra + j;
        let range = domain.range(j + 1);
        for i in 0..n {
            a[(row, i)] = range.clone().map(|l| w[l] * ops.single.matrix()[(l, i)]).sum::<f64>();
        }
        if exceptional {
            a[(row, n)] = range.map(|l| w[l]).sum::<f64>();
        }
    }
    let mut rhs = DVector::zeros(size);
    rhs.rows_mut(0, n).copy_from(g.values());
    let condition_number = check_condition(&a, opts.condition_cap)?;
    let x = linalg::lu_solve(&a, &rhs)?;
    let residual = relative_residual(&a, &x, &rhs);
    if residual > opts.residual_tol {
        return Err(Error::CheckFailed(format!(
            "Robin system residual {residual:e} exceeds {:e}",
            opts.residual_tol
        )));
    }
    let phi = BoundaryFunction::from_vector(domain, x.rows(0, n).into_owned())?;
    let constant = if exceptional { x[n] } else { 0.0 };
    let hole_charges = x.rows(n + extra, m).iter().copied().collect();
    let single_layer_trace = ops.single.apply(&phi)?;
    let psi = single_layer_trace.map(|v| v + constant);
    Ok(RobinSolution {
        domain_id: domain.id(),
        side_condition: ops.quadrature.integrate(&phi),
        density: phi,
        constant,
        psi,
        single_layer_trace,
        hole_charges,
        charge_points,
        exceptional,
        path: if exceptional {
            SolverPath::Exceptional
        } else {
            SolverPath::Regular
        },
        residual,
        condition_number,
    })
}

/// Boundary values and interior normal derivatives of `s(·, p_j)`.
fn source_traces(domain: &Domain, points: &[Point]) -> Vec<(Vec<f64>, Vec<f64>)> {
    points
        .iter()
        .map(|&p| {
            domain
                .points()
                .zip(domain.normals())
                .map(|(x, nu)| (log_kernel(x, p), INV_2PI * (x - p).dot(&nu) / (x - p).norm_squared()))
                .unzip()
        })
        .collect()
}

impl RobinSolution {
    /// Trace and normal derivative of the hole sources `Σ_j a_j s(·, p_j)`.
    pub fn source_traces(&self, domain: &Domain) -> Result<(BoundaryFunction, BoundaryFunction)> {
        if domain.id() != self.domain_id {
            return Err(Error::DomainMismatch);
        }
        let mut value = vec![0.0; domain.num_nodes()];
        let mut flux = vec![0.0; domain.num_nodes()];
        for ((v, f), a) in source_traces(domain, &self.charge_points).iter().zip(&self.hole_charges) {
            for i in 0..value.len() {
                value[i] += a * v[i];
                flux[i] += a * f[i];
            }
        }
        Ok((
            BoundaryFunction::from_vec(domain, value)?,
            BoundaryFunction::from_vec(domain, flux)?,
        ))
    }

    /// `Σ_j a_j s(x, p_j)` at a point off the sources.
    pub fn source_field(&self, x: Point) -> f64 {
        self.charge_points
            .iter()
            .zip(&self.hole_charges)
            .map(|(&p, a)| a * log_kernel(x, p))
            .sum()
    }
}

fn check_condition(a: &DMatrix<f64>, cap: f64) -> Result<f64> {
    let s = linalg::singular_values(a);
    let cond = s[0] / s[s.len() - 1];
    if !(cond <= cap) {
        return Err(Error::IllConditioned { cond, cap });
    }
    Ok(cond)
}

/// `‖Ax − b‖∞ / max(‖b‖∞, ‖A‖∞‖x‖∞)`.
pub(crate) fn relative_residual(a: &DMatrix<f64>, x: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let r = (a * x - b).amax();
    let row_norm = a.row_iter().map(|row| row.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    let scale = b.amax().max(row_norm * x.amax());
    if scale == 0.0 {
        0.0
    } else {
        r / scale
    }
}
