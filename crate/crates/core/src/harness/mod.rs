//! Verification harness: case configuration, manufactured solutions, an
//! independent quadrature oracle, case runners and JSON reports.

pub mod config;
pub mod manufactured;
pub mod oracle;
pub mod report;
pub mod run;

pub use config::{CaseConfig, CoefficientSpec, DataSpec, GeometrySpec, OutputSpec, ProbeSpec, ProblemKind, Tolerances};
pub use manufactured::{manufactured_case, Manufactured, ManufacturedData, PointCharge};
pub use oracle::{oracle_quadrature, FineGrid, OracleKernel, OracleTarget};
pub use report::{Check, ConvergenceRow, Report};
pub use run::{
    field_errors, prepare, probe_grid, run_case, run_convergence, run_detect, run_identities, run_oracle,
    solve_prepared, write_csv_dumps, FieldErrors, PreparedCase,
};
