//! Boundary-integral solvers for the Laplace equation in multiply connected
//! planar domains.
//!
//! Solutions are represented as double layer potentials `u = Dψ` whose
//! densities are themselves generated by single layers, `ψ = Sφ` (plus a
//! constant when the outer boundary has unit logarithmic capacity). The
//! crate covers Robin, Neumann and Dirichlet data, a Nyström discretization
//! with spectral accuracy on smooth closed curves, and a verification
//! harness (manufactured solutions, an independent quadrature oracle,
//! convergence studies and JSON reports).
//!
//! ```no_run
//! use lapbie::geometry::{build_domain, make_circle, Role};
//! use lapbie::operators::BoundaryFunction;
//! use lapbie::solvers::{solve_robin, RobinOptions};
//!
//! let outer = make_circle([0.0, 0.0].into(), 2.0, 128, Role::Outer).unwrap();
//! let hole = make_circle([0.0, 0.0].into(), 0.5, 128, Role::Hole).unwrap();
//! let domain = build_domain(outer, vec![hole]).unwrap();
//! let h = BoundaryFunction::constant(&domain, 1.0);
//! let g = BoundaryFunction::from_fn(&domain, |node| node.point.norm().ln());
//! let sol = solve_robin(&domain, &h, &g, &RobinOptions::default()).unwrap();
//! ```

pub mod error;
pub mod evaluate;
pub mod geometry;
pub mod harness;
pub mod kernels;
pub mod linalg;
pub mod operators;
pub mod solvers;

pub use error::{Error, Result};
pub use geometry::{CurveComponent, Domain, Point, Role};
pub use operators::{BoundaryFunction, DiscreteOperator, LayerOperators, QuadratureFunctional};
pub use solvers::{DirichletSolution, ExceptionalReport, NeumannSolution, RobinSolution, Solution, SolverPath};

