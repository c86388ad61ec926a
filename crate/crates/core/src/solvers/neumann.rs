use super::SolverPath;
use crate::error::{Error, Result};
use crate::geometry::Domain;
use crate::linalg::Svd;
use crate::operators::{BoundaryFunction, DiscreteOperator, LayerOperators, QuadratureFunctional};

#[derive(Clone, Debug)]
pub struct NeumannOptions {
    /// Flux tolerance, relative to `max(1, ∫|g|)`.
    pub flux_tol: f64,
    /// Singular values below `rank_cutoff·σ_max` are discarded.
    pub rank_cutoff: f64,
}

impl Default for NeumannOptions {
    fn default() -> Self {
        Self {
            flux_tol: 1e-10,
            rank_cutoff: 1e-8,
        }
    }
}

/// `u = Dψ + Σ_j c_j S[χ_j] + offset`, normalized to zero mean on `Σ₀`.
#[derive(Clone, Debug)]
pub struct NeumannSolution {
    pub domain_id: u64,
    pub density: BoundaryFunction,
    /// `ψ = Sφ`.
    pub psi: BoundaryFunction,
    /// Charges `c_1..c_m` on the holes; all zero on the strict path.
    pub charges: Vec<f64>,
    /// Additive constant fixing the zero mean of `u` on `Σ₀`.
    pub offset: f64,
    /// Data actually fed to `(−¼I + K²)φ = g̃`.
    pub corrected_data: BoundaryFunction,
    pub path: SolverPath,
    /// Numerical kernel dimension of `−¼I + K²`.
    pub kernel_dim: usize,
    pub condition_number: f64,
}

pub fn solve_neumann(domain: &Domain, g: &BoundaryFunction, opts: &NeumannOptions) -> Result<NeumannSolution> {
    let ops = LayerOperators::assemble(domain);
    solve_neumann_with(domain, &ops, g, opts)
}

/// Solves `∂u/∂ν = g`. Requires `∫_Σ g = 0`; when some component flux is
/// nonzero, charges `c_j = −(1/|Σ_j|)∫_{Σ_j} g` absorb it.
pub fn solve_neumann_with(
    domain: &Domain,
    ops: &LayerOperators,
    g: &BoundaryFunction,
    opts: &NeumannOptions,
) -> Result<NeumannSolution> {
    g.check(domain.id())?;
    if ops.domain_id() != domain.id() {
        return Err(Error::DomainMismatch);
    }
    let quad = &ops.quadrature;
    let scale = flux_scale(quad, g);
    let total = quad.integrate(g);
    if total.abs() > opts.flux_tol * scale {
        return Err(Error::IncompatibleData { flux: total });
    }

    let m = domain.num_holes();
    let fluxes: Vec<f64> = (0..=m).map(|c| quad.integrate_component(g, c)).collect();
    let strict = fluxes.iter().all(|f| f.abs() <= opts.flux_tol * scale);

    let (charges, corrected) = if strict {
        (vec![0.0; m], g.clone())
    } else {
        let charges: Vec<f64> = (1..=m).map(|j| -fluxes[j] / quad.measure(j)).collect();
        let mut corrected = g.clone();
        for (j, &c) in charges.iter().enumerate() {
            let chi = BoundaryFunction::indicator(domain, j + 1);
            let flux_of_chi = ops.adjoint.shift(-0.5).apply(&chi)?;
            corrected = &corrected - &(&flux_of_chi * c);
        }
        check_component_fluxes(domain, quad, &corrected, opts.flux_tol)?;
        (charges, corrected)
    };

    let system = ops.reduced();
    let (phi, kernel_dim, cond) = strict_density(domain, &system, &corrected, opts.rank_cutoff)?;
    let psi = ops.single.apply(&phi)?;

    let mut trace = ops.double.shift(0.5).apply(&psi)?;
    for (j, &c) in charges.iter().enumerate() {
        let chi = BoundaryFunction::indicator(domain, j + 1);
        trace = &trace + &(&ops.single.apply(&chi)? * c);
    }
    let offset = -quad.mean(&trace, 0);

    Ok(NeumannSolution {
        domain_id: domain.id(),
        density: phi,
        psi,
        charges,
        offset,
        corrected_data: corrected,
        path: if strict { SolverPath::Strict } else { SolverPath::General },
        kernel_dim,
        condition_number: cond,
    })
}

fn flux_scale(quad: &QuadratureFunctional, g: &BoundaryFunction) -> f64 {
    quad.integrate(&g.map(f64::abs)).max(1.0)
}

/// Verifies `∫_{Σ_j} g = 0` for every component.
pub(crate) fn check_component_fluxes(
    domain: &Domain,
    quad: &QuadratureFunctional,
    g: &BoundaryFunction,
    tol: f64,
) -> Result<()> {
    let scale = flux_scale(quad, g);
    for c in 0..domain.num_components() {
        let flux = quad.integrate_component(g, c);
        if flux.abs() > tol * scale {
            return Err(Error::IncompatibleData { flux });
        }
    }
    Ok(())
}

/// Truncated-SVD solve of `system·φ = rhs`, where `system` is `−¼I + K²`
/// (or `−¼I + H` with `h ≡ 0`). The numerical kernel must have dimension
/// `m + 1`. Returns the density, the kernel dimension and the condition
/// number restricted to the retained singular values.
pub(crate) fn strict_density(
    domain: &Domain,
    system: &DiscreteOperator,
    rhs: &BoundaryFunction,
    rank_cutoff: f64,
) -> Result<(BoundaryFunction, usize, f64)> {
    let svd = Svd::new(system.matrix());
    let cutoff = rank_cutoff * svd.max();
    let rank = svd.rank(cutoff);
    let kernel_dim = system.dim() - rank;
    let expected = domain.num_holes() + 1;
    if kernel_dim != expected {
        return Err(Error::KernelDimension {
            expected,
            found: kernel_dim,
        });
    }
    let x = svd.solve(rhs.values(), cutoff);
    let cond = svd.max() / svd.singular_values[rank - 1];
    Ok((BoundaryFunction::from_vector(domain, x)?, kernel_dim, cond))
}
