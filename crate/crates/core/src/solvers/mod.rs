//! Solution pipelines for Robin, Neumann and Dirichlet data.
//!
//! Robin and Neumann fields are double layers `u = Dψ` whose densities are
//! single layers `ψ = Sφ` (plus a constant on exceptional boundaries);
//! Dirichlet fields are single layers corrected by the `Ψ_h` basis.

mod dirichlet;
mod eigenspace;
mod exceptional;
mod neumann;
mod robin;

use serde::{Deserialize, Serialize};

pub use dirichlet::{solve_dirichlet, solve_dirichlet_with, DirichletOptions, DirichletSolution};
pub use eigenspace::{eigenspace_v, eigenspace_v_with, psi_basis, psi_basis_with, PsiBasis};
pub use exceptional::{detect_exceptional, ExceptionalReport, DEFAULT_EXCEPTIONAL_TOL};
pub use neumann::{solve_neumann, solve_neumann_with, NeumannOptions, NeumannSolution};
pub use robin::{solve_robin, solve_robin_with, RobinOptions, RobinSolution};

/// Which branch of a pipeline produced a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverPath {
    /// `(−¼I + H)φ = g`, or the plain single layer for Dirichlet data.
    Regular,
    /// Augmented `(φ, c)` system with `∫φ = 0`.
    Exceptional,
    /// Neumann data with vanishing flux through every component.
    Strict,
    /// Neumann data with nonzero component fluxes, corrected by charges.
    General,
}

impl std::fmt::Display for SolverPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SolverPath::Regular => "regular",
            SolverPath::Exceptional => "exceptional",
            SolverPath::Strict => "strict",
            SolverPath::General => "general",
        };
        f.write_str(s)
    }
}

/// Any solved field, tagged by its representation.
#[derive(Clone, Debug)]
pub enum Solution {
    Robin(RobinSolution),
    Neumann(NeumannSolution),
    Dirichlet(DirichletSolution),
}

impl Solution {
    pub fn domain_id(&self) -> u64 {
        match self {
            Solution::Robin(s) => s.domain_id,
            Solution::Neumann(s) => s.domain_id,
            Solution::Dirichlet(s) => s.domain_id,
        }
    }

    pub fn path(&self) -> SolverPath {
        match self {
            Solution::Robin(s) => s.path,
            Solution::Neumann(s) => s.path,
            Solution::Dirichlet(s) => s.path,
        }
    }
}

impl From<RobinSolution> for Solution {
    fn from(s: RobinSolution) -> Self {
        Solution::Robin(s)
    }
}

impl From<NeumannSolution> for Solution {
    fn from(s: NeumannSolution) -> Self {
        Solution::Neumann(s)
    }
}

impl From<DirichletSolution> for Solution {
    fn from(s: DirichletSolution) -> Self {
        Solution::Dirichlet(s)
    }
}
