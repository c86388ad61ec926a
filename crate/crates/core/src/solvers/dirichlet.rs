use super::eigenspace::psi_basis_with;
use super::exceptional::{detect_exceptional, DEFAULT_EXCEPTIONAL_TOL};
use super::SolverPath;
use crate::error::{Error, Result};
use crate::geometry::Domain;
use crate::linalg::Svd;
use crate::operators::{BoundaryFunction, LayerOperators};

#[derive(Clone, Debug)]
pub struct DirichletOptions {
    pub exceptional_tol: f64,
    pub rank_cutoff: f64,
    /// Largest accepted standard deviation of `Sφ − f` on a component.
    pub constancy_tol: f64,
    /// Largest accepted `‖Jφ − df‖∞ / max(1, ‖df‖∞)`.
    pub residual_tol: f64,
}

impl Default for DirichletOptions {
    fn default() -> Self {
        Self {
            exceptional_tol: DEFAULT_EXCEPTIONAL_TOL,
            rank_cutoff: 1e-8,
            constancy_tol: 1e-6,
            residual_tol: 1e-8,
        }
    }
}

/// `u = Sφ + Σ_h γ_h SΨ_h + γ₀`.
#[derive(Clone, Debug)]
pub struct DirichletSolution {
    pub domain_id: u64,
    pub density: BoundaryFunction,
    /// Mean of `Sφ − f` on each component, `d_0..d_m`.
    pub component_constants: Vec<f64>,
    /// Standard deviation of `Sφ − f` on each component.
    pub constancy_std: Vec<f64>,
    /// Coefficients `γ_h = d_0 − d_h` of `SΨ_h`.
    pub psi_coefficients: Vec<f64>,
    pub psi_functions: Vec<BoundaryFunction>,
    /// `γ₀ = −d_0`.
    pub constant: f64,
    /// `φ + Σ_h γ_h Ψ_h`, the single layer density of `u − γ₀`.
    pub combined_density: BoundaryFunction,
    /// `‖Jφ − df‖∞`.
    pub j_residual: f64,
    pub exceptional: bool,
    pub path: SolverPath,
}

pub fn solve_dirichlet(domain: &Domain, f: &BoundaryFunction, opts: &DirichletOptions) -> Result<DirichletSolution> {
    let ops = LayerOperators::assemble(domain);
    solve_dirichlet_with(domain, &ops, f, opts)
}

/// Solves `u = f` on Σ with a single layer: `(−¼I + K²)φ = ∂_s S ∂_s f`,
/// then fixes the per-component constants through the `Ψ_h` basis.
pub fn solve_dirichlet_with(
    domain: &Domain,
    ops: &LayerOperators,
    f: &BoundaryFunction,
    opts: &DirichletOptions,
) -> Result<DirichletSolution> {
    f.check(domain.id())?;
    if ops.domain_id() != domain.id() {
        return Err(Error::DomainMismatch);
    }
    if f.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidCoefficient("f must be finite".into()));
    }
    let exceptional = detect_exceptional(domain, opts.exceptional_tol)?.is_exceptional;

    let df = ops.tangential.apply(f)?;
    let rhs = ops.double_layer_normal_derivative().apply(f)?;
    let svd = Svd::new(ops.reduced().matrix());
    let phi = BoundaryFunction::from_vector(domain, svd.solve(rhs.values(), opts.rank_cutoff * svd.max()))?;

    let j_residual = (&ops.j().apply(&phi)? - &df).max_abs();
    if j_residual > opts.residual_tol * df.max_abs().max(1.0) {
        return Err(Error::CheckFailed(format!("‖Jφ − df‖ = {j_residual:e}")));
    }

    let diff = &ops.single.apply(&phi)? - f;
    let mut constants = Vec::with_capacity(domain.num_components());
    let mut stds = Vec::with_capacity(domain.num_components());
    for c in 0..domain.num_components() {
        let vals = diff.component(c);
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / vals.len() as f64;
        let std = var.sqrt();
        if std > opts.constancy_tol {
            return Err(Error::CheckFailed(format!(
                "Sφ − f is not constant on component {c}: std {std:e}"
            )));
        }
        constants.push(ops.quadrature.mean(&diff, c));
        stds.push(std);
    }

    let psi = psi_basis_with(domain, ops)?;
    let d0 = constants[0];
    let coefficients: Vec<f64> = constants[1..].iter().map(|dh| d0 - dh).collect();
    let mut combined = phi.clone();
    for (gamma, psi_h) in coefficients.iter().zip(&psi.functions) {
        combined = &combined + &(psi_h * *gamma);
    }

    Ok(DirichletSolution {
        domain_id: domain.id(),
        density: phi,
        component_constants: constants,
        constancy_std: stds,
        psi_coefficients: coefficients,
        psi_functions: psi.functions,
        constant: -d0,
        combined_density: combined,
        j_residual,
        exceptional,
        path: if exceptional {
            SolverPath::Exceptional
        } else {
            SolverPath::Regular
        },
    })
}
