use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::manufactured::Manufactured;
use crate::error::{Error, Result};
use crate::geometry::{build_domain, CurveComponent, CurveShape, Domain, Role};
use crate::operators::BoundaryFunction;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometrySpec {
    pub outer: CurveShape,
    #[serde(default)]
    pub holes: Vec<CurveShape>,
}

impl GeometrySpec {
    pub fn build(&self, nodes: usize) -> Result<Domain> {
        let outer = CurveComponent::sample(self.outer.clone(), nodes, Role::Outer)?;
        let holes = self
            .holes
            .iter()
            .map(|s| CurveComponent::sample(s.clone(), nodes, Role::Hole))
            .collect::<Result<Vec<_>>>()?;
        build_domain(outer, holes)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    Robin,
    Neumann,
    Dirichlet,
}

/// A boundary function given as one constant, one constant per component,
/// or explicit nodal values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientSpec {
    Constant(f64),
    PerComponent(Vec<f64>),
    Values(Vec<f64>),
}

impl CoefficientSpec {
    pub fn build(&self, domain: &Domain) -> Result<BoundaryFunction> {
        match self {
            CoefficientSpec::Constant(v) => Ok(BoundaryFunction::constant(domain, *v)),
            CoefficientSpec::PerComponent(v) => BoundaryFunction::piecewise_constant(domain, v),
            CoefficientSpec::Values(v) => BoundaryFunction::from_vec(domain, v.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DataSpec {
    Manufactured(Manufactured),
    PerComponent(Vec<f64>),
    Values(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub interior_error: f64,
    pub boundary_residual: f64,
    pub energy: f64,
    pub side_condition: f64,
    pub identity: f64,
    pub gauss: f64,
    pub adjointness: f64,
    pub duality: f64,
    pub agreement: f64,
    pub laplacian: f64,
    pub mean_value: f64,
    pub decay_ratio: f64,
    /// Errors below this, relative to `max(1, max|u|)`, count as converged.
    pub roundoff_floor: f64,
    pub constancy: f64,
    pub jump_residual: f64,
    pub flux: f64,
    pub oracle: f64,
    pub composition: f64,
    pub exceptional: f64,
    pub rank_cutoff: f64,
    pub condition_cap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            interior_error: 1e-8,
            boundary_residual: 1e-9,
            energy: 1e-8,
            side_condition: 1e-10,
            identity: 1e-8,
            gauss: 1e-10,
            adjointness: 1e-10,
            duality: 1e-12,
            agreement: 1e-12,
            laplacian: 1e-4,
            mean_value: 1e-6,
            decay_ratio: 0.2,
            roundoff_floor: 1e-10,
            constancy: 1e-8,
            jump_residual: 1e-8,
            flux: 1e-10,
            oracle: 1e-10,
            composition: 1e-8,
            exceptional: 1e-8,
            rank_cutoff: 1e-8,
            condition_cap: 1e12,
        }
    }
}

/// Interior probe grid. A grid point is kept when its distance to each
/// component is at least `max(min_margin, spacing_factor · spacing)`,
/// with `spacing` the largest node spacing of that component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ProbeSpec {
    pub per_axis: usize,
    pub min_margin: f64,
    pub spacing_factor: f64,
    /// Minimum distance to Σ for the Laplacian and mean-value probes.
    pub harmonic_margin: f64,
}

impl Default for ProbeSpec {
    fn default() -> Self {
        Self {
            per_axis: 24,
            min_margin: 0.1,
            spacing_factor: 1.0,
            harmonic_margin: 0.3,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OutputSpec {
    pub report: Option<PathBuf>,
    /// Directory receiving `nodes.csv`, `density.csv` and `probes.csv`.
    pub csv_dir: Option<PathBuf>,
}

fn default_id() -> String {
    "case".into()
}

fn default_nodes() -> usize {
    128
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseConfig {
    #[serde(default = "default_id")]
    pub id: String,
    pub geometry: GeometrySpec,
    pub problem: ProblemKind,
    /// Robin coefficient; required for Robin problems only.
    #[serde(default)]
    pub h: Option<CoefficientSpec>,
    pub data: DataSpec,
    #[serde(default = "default_nodes")]
    pub nodes_per_component: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub probes: ProbeSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

impl CaseConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn domain(&self, nodes: usize) -> Result<Domain> {
        self.geometry.build(nodes)
    }

    pub fn coefficient(&self, domain: &Domain) -> Result<Option<BoundaryFunction>> {
        match (&self.h, self.problem) {
            (Some(spec), _) => spec.build(domain).map(Some),
            (None, ProblemKind::Robin) => Err(Error::Config("a Robin problem needs `h`".into())),
            (None, _) => Ok(None),
        }
    }
}
