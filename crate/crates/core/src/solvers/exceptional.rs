use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::geometry::{build_domain, Domain};
use crate::linalg;
use crate::operators::{assemble_single_layer, QuadratureFunctional};

pub const DEFAULT_EXCEPTIONAL_TOL: f64 = 1e-8;

/// Outcome of the capacity test on the outer curve.
#[derive(Clone, Debug)]
pub struct ExceptionalReport {
    /// Constant value `r` of the equilibrium single layer on `Σ₀`, i.e.
    /// `log(cap Σ₀) / 2π`.
    pub robin_constant: f64,
    /// Equilibrium density on the nodes of `Σ₀`, normalized to unit mass.
    pub equilibrium_density: DVector<f64>,
    pub is_exceptional: bool,
    pub tolerance: f64,
}

/// Solves `S₀φ = r` on `Σ₀` with `∫_{Σ₀} φ = 1`. The boundary is
/// exceptional iff `|r| < tol`; only the outer curve matters.
pub fn detect_exceptional(domain: &Domain, tol: f64) -> Result<ExceptionalReport> {
    let outer = build_domain(domain.outer().clone(), vec![])?;
    let s = assemble_single_layer(&outer);
    let w = QuadratureFunctional::new(&outer);
    let n = outer.num_nodes();

    let mut a = DMatrix::zeros(n + 1, n + 1);
    a.view_mut((0, 0), (n, n)).copy_from(s.matrix());
    for i in 0..n {
        a[(i, n)] = -1.0;
        a[(n, i)] = w.weights()[i];
    }
    let mut rhs = DVector::zeros(n + 1);
    rhs[n] = 1.0;
    let x = linalg::lu_solve(&a, &rhs)
        .map_err(|_| Error::Singular("equilibrium system on the outer curve".into()))?;
    let r = x[n];
    Ok(ExceptionalReport {
        robin_constant: r,
        equilibrium_density: x.rows(0, n).into_owned(),
        is_exceptional: r.abs() < tol,
        tolerance: tol,
    })
}
