use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::evaluate::single_layer_field;
use crate::geometry::Domain;
use crate::linalg::{self, Svd};
use crate::operators::{BoundaryFunction, LayerOperators};

/// Smallest singular value accepted as "clearly nonzero" next to the
/// eigenspace.
const SPECTRAL_GAP: f64 = 1e-3;

pub fn eigenspace_v(domain: &Domain, tol: f64) -> Result<Vec<BoundaryFunction>> {
    eigenspace_v_with(domain, &LayerOperators::assemble(domain), tol)
}

/// Basis of `ker(½I + K)`: right singular vectors with `σ < tol`. Exactly
/// `m` are expected, followed by a gap.
pub fn eigenspace_v_with(domain: &Domain, ops: &LayerOperators, tol: f64) -> Result<Vec<BoundaryFunction>> {
    let svd = Svd::new(ops.adjoint.shift(0.5).matrix());
    let m = domain.num_holes();
    let null = svd.null_space(tol);
    if null.len() != m {
        return Err(Error::KernelDimension {
            expected: m,
            found: null.len(),
        });
    }
    let n = svd.singular_values.len();
    let next = svd.singular_values[n - m - 1];
    if next <= SPECTRAL_GAP {
        return Err(Error::CheckFailed(format!(
            "no spectral gap above the eigenspace: next singular value {next:e}"
        )));
    }
    null.into_iter().map(|v| BoundaryFunction::from_vector(domain, v)).collect()
}

/// The `Ψ_h` functions with `SΨ_h = δ_hk` on the closure of hole `k`.
#[derive(Clone, Debug)]
pub struct PsiBasis {
    pub functions: Vec<BoundaryFunction>,
    /// `SΨ_h` at the anchor point of hole `k`, indexed `[h][k]`.
    pub anchor_values: Vec<Vec<f64>>,
    /// Mean of `SΨ_h` over `Σ_k`, indexed `[h][k]`, for cross-checking.
    pub boundary_means: Vec<Vec<f64>>,
    /// `max |SΨ_h|` on `Σ₀`.
    pub outer_max: Vec<f64>,
}

pub fn psi_basis(domain: &Domain) -> Result<PsiBasis> {
    psi_basis_with(domain, &LayerOperators::assemble(domain))
}

/// Combines the eigenspace basis so that the single layer of `Ψ_h` equals
/// one at the anchor of hole `h` and zero at the other anchors.
pub fn psi_basis_with(domain: &Domain, ops: &LayerOperators) -> Result<PsiBasis> {
    let m = domain.num_holes();
    if m == 0 {
        return Ok(PsiBasis {
            functions: vec![],
            anchor_values: vec![],
            boundary_means: vec![],
            outer_max: vec![],
        });
    }
    let basis = eigenspace_v_with(domain, ops, 1e-8)?;
    let anchors: Vec<_> = (1..=m).map(|k| domain.hole_anchor(k)).collect();
    let matching = DMatrix::from_fn(m, m, |k, l| single_layer_field(domain, &basis[l], anchors[k]));
    let s = linalg::singular_values(&matching);
    if s[m - 1] <= 1e-10 * s[0] {
        return Err(Error::Singular("hole matching matrix is ill-conditioned".into()));
    }
    let inverse = matching
        .try_inverse()
        .ok_or_else(|| Error::Singular("hole matching matrix".into()))?;

    let functions: Vec<BoundaryFunction> = (0..m)
        .map(|h| {
            let mut psi = BoundaryFunction::zeros(domain);
            for (l, v) in basis.iter().enumerate() {
                psi = &psi + &(v * inverse[(l, h)]);
            }
            psi
        })
        .collect();

    let mut anchor_values = Vec::with_capacity(m);
    let mut boundary_means = Vec::with_capacity(m);
    let mut outer_max = Vec::with_capacity(m);
    for psi in &functions {
        anchor_values.push(anchors.iter().map(|&a| single_layer_field(domain, psi, a)).collect());
        let trace = ops.single.apply(psi)?;
        boundary_means.push((1..=m).map(|k| ops.quadrature.mean(&trace, k)).collect());
        outer_max.push(trace.component(0).iter().fold(0.0f64, |a, v| a.max(v.abs())));
    }
    Ok(PsiBasis {
        functions,
        anchor_values,
        boundary_means,
        outer_max,
    })
}
