//! Case runners behind the CLI verbs.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use super::config::{CaseConfig, CoefficientSpec, DataSpec, ProbeSpec, ProblemKind};
use super::manufactured::{manufactured_case, ManufacturedData};
use super::oracle::FineGrid;
use super::report::{ConvergenceRow, Report};
use crate::error::{Error, Result};
use crate::evaluate::{
    boundary_residual_robin, circle_average, discrete_laplacian, double_layer_field, energy_residual_robin,
    single_layer_field, solution_field,
};
use crate::geometry::{CurveShape, Domain, Point};
use crate::linalg::Svd;
use crate::operators::{BoundaryFunction, LayerOperators};
use crate::solvers::{
    detect_exceptional, psi_basis_with, solve_dirichlet_with, solve_neumann_with, solve_robin_with, DirichletOptions,
    NeumannOptions, RobinOptions, Solution,
};

/// Oracle resolution multiplier; agreement with twice this is required.
const ORACLE_MULTIPLIER: usize = 8;
/// Highest Fourier mode used by the operator identity suite.
const IDENTITY_MODES: usize = 8;

/// A configuration sampled at one resolution, with data ready to solve.
pub struct PreparedCase {
    pub domain: Domain,
    pub ops: LayerOperators,
    pub h: Option<BoundaryFunction>,
    pub data: BoundaryFunction,
    pub exact: Option<ManufacturedData>,
}

pub fn prepare(config: &CaseConfig, nodes: usize) -> Result<PreparedCase> {
    let domain = config.domain(nodes)?;
    let ops = LayerOperators::assemble(&domain);
    let h = config.coefficient(&domain)?;
    let (data, exact) = match &config.data {
        DataSpec::Manufactured(m) => {
            let md = manufactured_case(m, &domain)?;
            let data = match config.problem {
                ProblemKind::Robin => md.robin(h.as_ref().expect("checked by coefficient"))?,
                ProblemKind::Neumann => md.neumann(),
                ProblemKind::Dirichlet => md.dirichlet(),
            };
            (data, Some(md))
        }
        DataSpec::PerComponent(v) => (BoundaryFunction::piecewise_constant(&domain, v)?, None),
        DataSpec::Values(v) => (BoundaryFunction::from_vec(&domain, v.clone())?, None),
    };
    Ok(PreparedCase {
        domain,
        ops,
        h,
        data,
        exact,
    })
}

fn robin_options(config: &CaseConfig, h: &BoundaryFunction) -> RobinOptions {
    let t = &config.tolerances;
    RobinOptions {
        neumann: h.as_slice().iter().all(|&v| v == 0.0),
        exceptional_tol: t.exceptional,
        condition_cap: t.condition_cap,
        rank_cutoff: t.rank_cutoff,
        flux_tol: t.flux,
        ..RobinOptions::default()
    }
}

fn neumann_options(config: &CaseConfig) -> NeumannOptions {
    NeumannOptions {
        flux_tol: config.tolerances.flux,
        rank_cutoff: config.tolerances.rank_cutoff,
    }
}

pub fn solve_prepared(config: &CaseConfig, case: &PreparedCase) -> Result<Solution> {
    let t = &config.tolerances;
    Ok(match config.problem {
        ProblemKind::Robin => {
            let h = case.h.as_ref().expect("Robin cases carry h");
            solve_robin_with(&case.domain, &case.ops, h, &case.data, &robin_options(config, h))?.into()
        }
        ProblemKind::Neumann => {
            solve_neumann_with(&case.domain, &case.ops, &case.data, &neumann_options(config))?.into()
        }
        ProblemKind::Dirichlet => {
            let opts = DirichletOptions {
                exceptional_tol: t.exceptional,
                rank_cutoff: t.rank_cutoff,
                ..DirichletOptions::default()
            };
            solve_dirichlet_with(&case.domain, &case.ops, &case.data, &opts)?.into()
        }
    })
}

/// Regular grid over the bounding box of the outer curve, restricted to
/// points that keep the configured distance from every component.
pub fn probe_grid(domain: &Domain, spec: &ProbeSpec) -> Vec<Point> {
    let pts = domain.outer().points();
    let (mut lo, mut hi) = (pts[0], pts[0]);
    for p in pts {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    let margins: Vec<f64> = domain
        .components()
        .iter()
        .map(|c| spec.min_margin.max(spec.spacing_factor * c.max_spacing()))
        .collect();
    let n = spec.per_axis.max(1);
    let step = (hi - lo) / n as f64;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = Point::new(lo.x + (i as f64 + 0.5) * step.x, lo.y + (j as f64 + 0.5) * step.y);
            let clear = domain.components().iter().zip(&margins).all(|(c, &m)| c.distance_to(p) >= m);
            if clear && domain.contains(p) {
                out.push(p);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct FieldErrors {
    pub max: f64,
    pub l2: f64,
}

/// Max and RMS error of the solved field at `probes`. With
/// `modulo_constant` the best additive constant is removed first.
pub fn field_errors(
    domain: &Domain,
    solution: &Solution,
    exact: &ManufacturedData,
    probes: &[Point],
    modulo_constant: bool,
) -> FieldErrors {
    let diffs: Vec<f64> = probes
        .iter()
        .map(|&p| solution_field(domain, solution, p) - exact.exact(p))
        .collect();
    if diffs.is_empty() {
        return FieldErrors { max: 0.0, l2: 0.0 };
    }
    let (mid, mean) = if modulo_constant {
        let lo = diffs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = diffs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (0.5 * (lo + hi), diffs.iter().sum::<f64>() / diffs.len() as f64)
    } else {
        (0.0, 0.0)
    };
    FieldErrors {
        max: diffs.iter().map(|d| (d - mid).abs()).fold(0.0, f64::max),
        l2: (diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / diffs.len() as f64).sqrt(),
    }
}

fn with_context<T>(config: &CaseConfig, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Case {
        id: config.id.clone(),
        source: Box::new(e),
    })
}

fn solution_density(solution: &Solution) -> &BoundaryFunction {
    match solution {
        Solution::Robin(s) => &s.density,
        Solution::Neumann(s) => &s.density,
        Solution::Dirichlet(s) => &s.density,
    }
}

/// Solves the configured case, evaluates it on the probe grid and checks
/// every diagnostic that applies to its problem kind.
pub fn run_case(config: &CaseConfig) -> Result<Report> {
    with_context(config, run_case_at(config, config.nodes_per_component))
}

fn run_case_at(config: &CaseConfig, nodes: usize) -> Result<Report> {
    let t = &config.tolerances;
    let mut report = Report::new(&config.id, "solve", nodes);
    let started = Instant::now();
    let case = prepare(config, nodes)?;
    report.timing("assembly", started);
    let started = Instant::now();
    let solution = solve_prepared(config, &case)?;
    report.timing("solve", started);
    report.path = Some(solution.path());
    let domain = &case.domain;
    let m = domain.num_holes();

    match &solution {
        Solution::Robin(s) => {
            let h = case.h.as_ref().expect("Robin cases carry h");
            report.metric("condition_number", s.condition_number);
            report.metric("relative_residual", s.residual);
            report.metric("constant", s.constant);
            report.metric("side_condition", s.side_condition);
            for (j, a) in s.hole_charges.iter().enumerate() {
                report.metric(&format!("hole_charge_{}", j + 1), *a);
            }
            let residual = boundary_residual_robin(domain, &case.ops, s, h, &case.data)?;
            report.metric("boundary_residual", residual);
            report.check("boundary_residual", residual, t.boundary_residual);
            let energy = energy_residual_robin(domain, &case.ops, s, h, &case.data)?;
            report.metric("energy_residual", energy);
            report.check("energy_residual", energy.abs(), t.energy);
            if s.exceptional {
                report.check("side_condition", s.side_condition.abs(), t.side_condition);
            }
            if robin_options(config, h).neumann {
                let n = solve_neumann_with(domain, &case.ops, &case.data, &neumann_options(config))?;
                let diff = (&s.density - &n.density).max_abs();
                report.metric("neumann_agreement", diff);
                report.check("neumann_agreement", diff, t.agreement);
            }
        }
        Solution::Neumann(s) => {
            report.metric("condition_number", s.condition_number);
            report.metric("kernel_dimension", s.kernel_dim as f64);
            report.check_count("kernel_dimension", s.kernel_dim, m + 1);
            for (j, c) in s.charges.iter().enumerate() {
                report.metric(&format!("charge_{}", j + 1), *c);
            }
            let flux = (0..=m)
                .map(|c| case.ops.quadrature.integrate_component(&s.corrected_data, c).abs())
                .fold(0.0, f64::max);
            report.metric("corrected_flux", flux);
            report.check("corrected_flux", flux, t.flux);
        }
        Solution::Dirichlet(s) => {
            let spread = s.constancy_std.iter().cloned().fold(0.0, f64::max);
            report.metric("constancy_std", spread);
            report.check("constancy_std", spread, t.constancy);
            report.metric("jump_residual", s.j_residual);
            report.check("jump_residual", s.j_residual, t.jump_residual);
            for (h, g) in s.psi_coefficients.iter().enumerate() {
                report.metric(&format!("psi_coefficient_{}", h + 1), *g);
            }
        }
    }

    let probes = probe_grid(domain, &config.probes);
    report.metric("probe_count", probes.len() as f64);
    if let Some(exact) = &case.exact {
        let modulo = config.problem == ProblemKind::Neumann
            || matches!(&solution, Solution::Robin(s) if s.path == crate::solvers::SolverPath::Strict);
        let e = field_errors(domain, &solution, exact, &probes, modulo);
        report.metric("interior_max_error", e.max);
        report.metric("interior_l2_error", e.l2);
        report.check("interior_max_error", e.max, t.interior_error);
    }
    harmonicity_checks(config, domain, &solution, &probes, &mut report);

    if let Some(dir) = &config.output.csv_dir {
        write_csv_dumps(dir, domain, &solution, &probes)?;
    }
    Ok(report.finish())
}

/// Five-point Laplacian and mean-value probes at up to eight grid points
/// far from Σ.
fn harmonicity_checks(config: &CaseConfig, domain: &Domain, solution: &Solution, probes: &[Point], report: &mut Report) {
    let far: Vec<(Point, f64)> = probes
        .iter()
        .map(|&p| (p, domain.distance_to_boundary(p)))
        .filter(|&(_, d)| d >= config.probes.harmonic_margin)
        .collect();
    if far.is_empty() {
        return;
    }
    let stride = far.len().div_ceil(8);
    let (mut lap, mut mean) = (0.0f64, 0.0f64);
    for &(p, d) in far.iter().step_by(stride) {
        lap = lap.max(discrete_laplacian(domain, solution, p, 1e-3).abs());
        let avg = circle_average(domain, solution, p, 0.25 * d, 64);
        mean = mean.max((avg - solution_field(domain, solution, p)).abs());
    }
    report.metric("laplacian", lap);
    report.check("laplacian", lap, config.tolerances.laplacian);
    report.metric("mean_value_defect", mean);
    report.check("mean_value_defect", mean, config.tolerances.mean_value);
}

fn write_points_csv(path: &Path, rows: impl Iterator<Item = (Point, f64)>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "x1,x2,value")?;
    for (p, v) in rows {
        writeln!(w, "{:.17e},{:.17e},{:.17e}", p.x, p.y, v)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `nodes.csv` (quadrature weights), `density.csv` (solver density)
/// and `probes.csv` (field values) into `dir`.
pub fn write_csv_dumps(dir: &Path, domain: &Domain, solution: &Solution, probes: &[Point]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let weights = domain.weights();
    write_points_csv(&dir.join("nodes.csv"), domain.points().zip(weights))?;
    let density = solution_density(solution);
    write_points_csv(&dir.join("density.csv"), domain.points().zip(density.as_slice().iter().copied()))?;
    write_points_csv(
        &dir.join("probes.csv"),
        probes.iter().map(|&p| (p, solution_field(domain, solution, p))),
    )?;
    Ok(())
}

/// Repeats the case at each node count and records the interior error on
/// a probe set fixed by the finest level.
pub fn run_convergence(config: &CaseConfig, nodes: &[usize]) -> Result<Report> {
    with_context(config, convergence(config, nodes))
}

fn convergence(config: &CaseConfig, nodes: &[usize]) -> Result<Report> {
    if nodes.is_empty() {
        return Err(Error::Config("no node counts given".into()));
    }
    if !matches!(config.data, DataSpec::Manufactured(_)) {
        return Err(Error::Config("a convergence study needs a manufactured solution".into()));
    }
    let mut levels = nodes.to_vec();
    levels.sort_unstable();
    levels.dedup();
    let finest = *levels.last().unwrap();
    let t = &config.tolerances;
    let mut report = Report::new(&config.id, "convergence", finest);
    let probes = probe_grid(&config.domain(finest)?, &config.probes);
    report.metric("probe_count", probes.len() as f64);
    let modulo = config.problem == ProblemKind::Neumann;
    let floor = match &config.data {
        DataSpec::Manufactured(m) => t.roundoff_floor * probes.iter().map(|&x| m.value(x).abs()).fold(1.0, f64::max),
        _ => unreachable!("checked above"),
    };

    let mut previous: Option<f64> = None;
    for &n in &levels {
        let started = Instant::now();
        let case = prepare(config, n)?;
        let solution = solve_prepared(config, &case)?;
        report.timing(&format!("level_{n}"), started);
        report.path = Some(solution.path());
        let e = field_errors(
            &case.domain,
            &solution,
            case.exact.as_ref().expect("manufactured"),
            &probes,
            modulo,
        );
        if let Solution::Robin(s) = &solution {
            let h = case.h.as_ref().expect("Robin cases carry h");
            let r = boundary_residual_robin(&case.domain, &case.ops, s, h, &case.data)?;
            report.metric(&format!("boundary_residual_{n}"), r);
        }
        let ratio = previous.map(|p| e.max / p);
        if let (Some(r), Some(p)) = (ratio, previous) {
            // Once the coarser level is at roundoff there is nothing left
            // to decay; the finer one must then stay there.
            if p > floor {
                report.check(&format!("decay_ratio_{n}"), r, t.decay_ratio);
            } else {
                report.check(&format!("at_roundoff_{n}"), e.max, floor);
            }
        }
        report.metric(&format!("interior_max_error_{n}"), e.max);
        report.convergence.push(ConvergenceRow {
            nodes_per_component: n,
            interior_max_error: e.max,
            interior_l2_error: e.l2,
            ratio,
        });
        previous = Some(e.max);
    }
    let last = report.convergence.last().expect("at least one level").interior_max_error;
    report.check("interior_max_error", last, t.interior_error);
    Ok(report.finish())
}

/// Trigonometric densities `cos kt` and `sin kt` supported on one component.
fn fourier_modes(domain: &Domain, max_mode: usize) -> Vec<BoundaryFunction> {
    let mut out = Vec::new();
    for c in 0..domain.num_components() {
        for k in 0..=max_mode {
            let kf = k as f64;
            out.push(BoundaryFunction::from_fn(domain, |n| {
                if n.component == c {
                    (kf * n.param).cos()
                } else {
                    0.0
                }
            }));
            if k > 0 {
                out.push(BoundaryFunction::from_fn(domain, |n| {
                    if n.component == c {
                        (kf * n.param).sin()
                    } else {
                        0.0
                    }
                }));
            }
        }
    }
    out
}

/// Operator identity suite on the configured geometry.
pub fn run_identities(config: &CaseConfig) -> Result<Report> {
    with_context(config, identities(config))
}

fn identities(config: &CaseConfig) -> Result<Report> {
    let t = &config.tolerances;
    let nodes = config.nodes_per_component;
    let mut report = Report::new(&config.id, "identities", nodes);
    let started = Instant::now();
    let domain = config.domain(nodes)?;
    let ops = LayerOperators::assemble(&domain);
    report.timing("assembly", started);
    let m = domain.num_holes();
    let one = BoundaryFunction::constant(&domain, 1.0);

    let defect = ops.jprime_j().try_sub(&ops.reduced())?;
    let reduction = fourier_modes(&domain, IDENTITY_MODES)
        .iter()
        .map(|phi| defect.apply(phi).map(|v| v.max_abs()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    report.identities.insert("reduction".into(), reduction);
    report.check("reduction", reduction, t.identity);

    let d1 = ops.double.apply(&one)?.map(|v| v - 0.5).max_abs();
    let trace = ops.double.shift(0.5).apply(&one)?.map(|v| v - 1.0).max_abs();
    report.identities.insert("gauss_principal_value".into(), d1);
    report.identities.insert("gauss_interior_trace".into(), trace);
    report.check("gauss_principal_value", d1, t.gauss);
    report.check("gauss_interior_trace", trace, t.gauss);
    if m == 0 && matches!(domain.outer().shape(), CurveShape::Circle { .. }) {
        let k1 = ops.adjoint.shift(-0.5).apply(&one)?.max_abs();
        report.identities.insert("adjoint_gauss".into(), k1);
        report.check("adjoint_gauss", k1, t.gauss);
    }

    let w = nalgebra::DMatrix::from_diagonal(ops.quadrature.weights());
    let s = ops.single.matrix();
    let sym = (&w * s - s.transpose() * &w).amax();
    report.identities.insert("single_layer_symmetry".into(), sym);
    report.check("single_layer_symmetry", sym, t.adjointness);
    let duality = (&w * ops.double.matrix() - ops.adjoint.matrix().transpose() * &w).amax();
    report.identities.insert("duality".into(), duality);
    report.check("duality", duality, t.duality);

    let derivative_of_one = ops.tangential.apply(&one)?.max_abs();
    report.identities.insert("tangential_derivative_of_constant".into(), derivative_of_one);

    let svd = Svd::new(ops.adjoint.shift(0.5).matrix());
    let small = svd.singular_values.iter().filter(|&&v| v < t.rank_cutoff).count();
    report.metric("eigenspace_dimension", small as f64);
    report.check_count("eigenspace_dimension", small, m);
    let n = svd.singular_values.len();
    let gap = svd.singular_values[n - 1 - small.min(n - 1)];
    report.metric("eigenspace_gap", gap);
    report.check_above("eigenspace_gap", gap, 1e-3);

    if m > 0 {
        let basis = psi_basis_with(&domain, &ops)?;
        let mut anchor = 0.0f64;
        for (h, row) in basis.anchor_values.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                let target = if h == k { 1.0 } else { 0.0 };
                anchor = anchor.max((v - target).abs());
            }
        }
        let outer = basis.outer_max.iter().cloned().fold(0.0, f64::max);
        report.identities.insert("psi_anchor_normalization".into(), anchor);
        report.identities.insert("psi_outer_trace".into(), outer);
        report.check("psi_anchor_normalization", anchor, t.identity);
        report.check("psi_outer_trace", outer, t.identity);
    }

    let exc = detect_exceptional(&domain, t.exceptional)?;
    report.metric("robin_constant", exc.robin_constant);
    Ok(report.finish())
}

/// Capacity test on the outer curve, with the closed form checked when the
/// outer curve is a circle.
pub fn run_detect(config: &CaseConfig) -> Result<Report> {
    with_context(config, detect(config))
}

fn detect(config: &CaseConfig) -> Result<Report> {
    let nodes = config.nodes_per_component;
    let mut report = Report::new(&config.id, "detect-exceptional", nodes);
    let domain = config.domain(nodes)?;
    let exc = detect_exceptional(&domain, config.tolerances.exceptional)?;
    report.metric("robin_constant", exc.robin_constant);
    report.metric("exceptional", if exc.is_exceptional { 1.0 } else { 0.0 });
    let w = domain.outer().weights();
    let mass: f64 = exc.equilibrium_density.iter().zip(&w).map(|(p, w)| p * w).sum();
    report.check("equilibrium_mass", (mass - 1.0).abs(), 1e-12);
    if let CurveShape::Circle { radius, .. } = domain.outer().shape() {
        let expected = radius.ln() / (2.0 * std::f64::consts::PI);
        report.metric("closed_form", expected);
        report.check("closed_form", (exc.robin_constant - expected).abs(), 1e-10);
    }
    Ok(report.finish())
}

fn oracle_density(c: usize, t: f64) -> f64 {
    t.cos() + 0.3 * (2.0 * t).sin() + 0.1 * (c + 1) as f64
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Compares assembled operators and interior fields against the
/// independent fine-grid quadrature.
pub fn run_oracle(config: &CaseConfig) -> Result<Report> {
    with_context(config, oracle(config))
}

fn oracle(config: &CaseConfig) -> Result<Report> {
    let t = &config.tolerances;
    let nodes = config.nodes_per_component;
    let mut report = Report::new(&config.id, "oracle", nodes);
    let domain = config.domain(nodes)?;
    let ops = LayerOperators::assemble(&domain);
    let phi = BoundaryFunction::from_fn(&domain, |n| oracle_density(n.component, n.param));
    let h_spec = config.h.clone().unwrap_or(CoefficientSpec::Constant(1.0));
    let h = h_spec.build(&domain)?;

    let started = Instant::now();
    let grids = [
        FineGrid::new(&domain, ORACLE_MULTIPLIER)?,
        FineGrid::new(&domain, 2 * ORACLE_MULTIPLIER)?,
    ];
    let mut refs: Vec<[Vec<f64>; 4]> = Vec::new();
    for grid in &grids {
        let rho = grid.sample(|c, t, _| oracle_density(c, t));
        let hf = grid.sample(|c, t, _| h_at(&h_spec, &domain, &h, c, t));
        refs.push([
            grid.restrict(&grid.single_layer(&rho)),
            grid.restrict(&grid.double_layer_pv(&rho)),
            grid.restrict(&grid.adjoint_double_layer(&rho)),
            grid.restrict(&grid.h_operator(&hf, &rho)),
        ]);
    }
    report.timing("oracle", started);
    let self_conv = (0..4).map(|k| max_diff(&refs[0][k], &refs[1][k])).fold(0.0, f64::max);
    report.metric("oracle_self_convergence", self_conv);
    report.check("oracle_self_convergence", self_conv, t.oracle);

    let computed = [
        ops.single.apply(&phi)?,
        ops.double.apply(&phi)?,
        ops.adjoint.apply(&phi)?,
        ops.h(&h, h.as_slice().iter().all(|v| *v == 0.0))?.apply(&phi)?,
    ];
    for (k, name) in ["single_layer", "double_layer", "adjoint_double_layer"].iter().enumerate() {
        let d = max_diff(computed[k].as_slice(), &refs[1][k]);
        report.identities.insert(format!("oracle_{name}"), d);
        report.check(&format!("oracle_{name}"), d, t.oracle);
    }
    let dh = max_diff(computed[3].as_slice(), &refs[1][3]);
    report.identities.insert("oracle_h".into(), dh);
    report.check("oracle_h", dh, t.composition);

    let probes: Vec<Point> = probe_grid(&domain, &config.probes)
        .into_iter()
        .filter(|&p| domain.distance_to_boundary(p) >= 0.2)
        .collect();
    let rho = grids[0].sample(|c, t, _| oracle_density(c, t));
    let (mut ds, mut dd) = (0.0f64, 0.0f64);
    for &p in &probes {
        ds = ds.max((single_layer_field(&domain, &phi, p) - grids[0].single_layer_at(&rho, p)).abs());
        dd = dd.max((double_layer_field(&domain, &phi, p) - grids[0].double_layer_at(&rho, p)).abs());
    }
    report.metric("field_probe_count", probes.len() as f64);
    report.identities.insert("oracle_single_layer_field".into(), ds);
    report.identities.insert("oracle_double_layer_field".into(), dd);
    report.check("oracle_single_layer_field", ds, t.oracle);
    report.check("oracle_double_layer_field", dd, t.oracle);
    Ok(report.finish())
}

/// `h` at parameter `t` of component `c`. Nodal `h` is only known on the
/// coarse nodes, so it is interpolated trigonometrically.
fn h_at(spec: &CoefficientSpec, domain: &Domain, h: &BoundaryFunction, c: usize, t: f64) -> f64 {
    match spec {
        CoefficientSpec::Constant(v) => *v,
        CoefficientSpec::PerComponent(v) => v[c],
        CoefficientSpec::Values(_) => trig_interpolate(h.component(c), domain.component(c).params(), t),
    }
}

fn trig_interpolate(values: &[f64], params: &[f64], t: f64) -> f64 {
    let m = values.len();
    let n = m / 2;
    let mut sum = 0.0;
    for k in 0..=n {
        let (mut a, mut b) = (0.0, 0.0);
        for (v, &s) in values.iter().zip(params) {
            a += v * (k as f64 * s).cos();
            b += v * (k as f64 * s).sin();
        }
        let scale = if k == 0 || k == n { 1.0 } else { 2.0 } / m as f64;
        sum += scale * (a * (k as f64 * t).cos() + if k == n { 0.0 } else { b * (k as f64 * t).sin() });
    }
    sum
}
