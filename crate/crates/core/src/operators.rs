//! Nyström discretizations of the boundary operators as dense matrices on
//! the node set of a [`Domain`].
//!
//! Conventions, all with `s(x,y) = (1/2π) log|x−y|` and `ν` outward from Ω:
//!
//! * `S` single layer, `(Sφ)(x) = ∫ φ(y) s(x,y) dσ_y`;
//! * `D_pv` principal-value double layer, kernel `∂s/∂ν_y`; the interior
//!   trace of `Dψ` is `(½I + D_pv)ψ`;
//! * `K` adjoint double layer, kernel `∂s/∂ν_x`; the interior normal
//!   derivative of `Sφ` is `(−½I + K)φ`;
//! * `∂_s` arclength derivative along each component;
//! * `J = J′ = ∂_s S`, so that `J′J = −¼I + K²`;
//! * `H = K² + diag(h)(½S + D_pv S)`.

use std::f64::consts::PI;
use std::io::Write;
use std::ops::{Add, Mul, Sub};
use std::path::Path;
use std::sync::{Arc, OnceLock};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::geometry::{CurveComponent, Domain, Point};
use crate::kernels::{diagonal_limit, double_layer_kernel, log_kernel};

/// Node data handed to [`BoundaryFunction::from_fn`].
#[derive(Clone, Copy, Debug)]
pub struct Node {
    pub component: usize,
    /// Index within the component.
    pub local: usize,
    pub param: f64,
    pub point: Point,
    pub normal: Point,
}

/// Real values at all boundary nodes, partitioned by component.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryFunction {
    domain_id: u64,
    offsets: Arc<[usize]>,
    values: DVector<f64>,
}

impl BoundaryFunction {
    pub fn zeros(domain: &Domain) -> Self {
        Self::constant(domain, 0.0)
    }

    pub fn constant(domain: &Domain, value: f64) -> Self {
        Self {
            domain_id: domain.id(),
            offsets: domain.offsets().into(),
            values: DVector::from_element(domain.num_nodes(), value),
        }
    }

    pub fn from_vec(domain: &Domain, values: Vec<f64>) -> Result<Self> {
        Self::from_vector(domain, DVector::from_vec(values))
    }

    pub fn from_vector(domain: &Domain, values: DVector<f64>) -> Result<Self> {
        if values.len() != domain.num_nodes() {
            return Err(Error::LengthMismatch {
                expected: domain.num_nodes(),
                got: values.len(),
            });
        }
        Ok(Self {
            domain_id: domain.id(),
            offsets: domain.offsets().into(),
            values,
        })
    }

    pub fn from_fn(domain: &Domain, mut f: impl FnMut(&Node) -> f64) -> Self {
        let mut values = Vec::with_capacity(domain.num_nodes());
        for (c, comp) in domain.components().iter().enumerate() {
            for j in 0..comp.len() {
                values.push(f(&Node {
                    component: c,
                    local: j,
                    param: comp.params()[j],
                    point: comp.points()[j],
                    normal: comp.normals()[j],
                }));
            }
        }
        Self {
            domain_id: domain.id(),
            offsets: domain.offsets().into(),
            values: DVector::from_vec(values),
        }
    }

    /// Per-component constants.
    pub fn piecewise_constant(domain: &Domain, values: &[f64]) -> Result<Self> {
        if values.len() != domain.num_components() {
            return Err(Error::LengthMismatch {
                expected: domain.num_components(),
                got: values.len(),
            });
        }
        Ok(Self::from_fn(domain, |n| values[n.component]))
    }

    /// Indicator `χ_c` of component `c`.
    pub fn indicator(domain: &Domain, c: usize) -> Self {
        Self::from_fn(domain, |n| if n.component == c { 1.0 } else { 0.0 })
    }

    pub fn domain_id(&self) -> u64 {
        self.domain_id
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &DVector<f64> {
        &self.values
    }

    pub fn as_slice(&self) -> &[f64] {
        self.values.as_slice()
    }

    pub fn into_vector(self) -> DVector<f64> {
        self.values
    }

    pub fn num_components(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn component(&self, c: usize) -> &[f64] {
        &self.values.as_slice()[self.offsets[c]..self.offsets[c + 1]]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.amax()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            values: self.values.map(f),
            ..self.clone()
        }
    }

    /// Nodewise product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.check(other.domain_id)?;
        Ok(Self {
            values: self.values.component_mul(&other.values),
            ..self.clone()
        })
    }

    pub fn check(&self, domain_id: u64) -> Result<()> {
        if self.domain_id == domain_id {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    fn with_values(&self, values: DVector<f64>) -> Self {
        Self {
            values,
            ..self.clone()
        }
    }
}

impl Add for &BoundaryFunction {
    type Output = BoundaryFunction;

    fn add(self, rhs: &BoundaryFunction) -> BoundaryFunction {
        assert_eq!(self.domain_id, rhs.domain_id, "boundary functions on different domains");
        self.with_values(&self.values + &rhs.values)
    }
}

impl Sub for &BoundaryFunction {
    type Output = BoundaryFunction;

    fn sub(self, rhs: &BoundaryFunction) -> BoundaryFunction {
        assert_eq!(self.domain_id, rhs.domain_id, "boundary functions on different domains");
        self.with_values(&self.values - &rhs.values)
    }
}

impl Mul<f64> for &BoundaryFunction {
    type Output = BoundaryFunction;

    fn mul(self, rhs: f64) -> BoundaryFunction {
        self.with_values(&self.values * rhs)
    }
}

/// Row vector of trapezoidal weights realizing `∫_Σ (·) dσ`.
#[derive(Clone, Debug)]
pub struct QuadratureFunctional {
    domain_id: u64,
    offsets: Arc<[usize]>,
    weights: DVector<f64>,
}

impl QuadratureFunctional {
    pub fn new(domain: &Domain) -> Self {
        Self {
            domain_id: domain.id(),
            offsets: domain.offsets().into(),
            weights: DVector::from_vec(domain.weights()),
        }
    }

    pub fn weights(&self) -> &DVector<f64> {
        &self.weights
    }

    /// The functional restricted to component `c` (zero elsewhere).
    pub fn restricted(&self, c: usize) -> Self {
        let mut w = DVector::zeros(self.weights.len());
        let r = self.offsets[c]..self.offsets[c + 1];
        w.rows_mut(r.start, r.len()).copy_from(&self.weights.rows(r.start, r.len()));
        Self {
            weights: w,
            ..self.clone()
        }
    }

    pub fn integrate(&self, f: &BoundaryFunction) -> f64 {
        assert_eq!(self.domain_id, f.domain_id, "functional and function on different domains");
        self.weights.dot(&f.values)
    }

    pub fn integrate_component(&self, f: &BoundaryFunction, c: usize) -> f64 {
        assert_eq!(self.domain_id, f.domain_id, "functional and function on different domains");
        let r = self.offsets[c]..self.offsets[c + 1];
        self.weights.rows(r.start, r.len()).dot(&f.values.rows(r.start, r.len()))
    }

    /// `|Σ_c|`.
    pub fn measure(&self, c: usize) -> f64 {
        let r = self.offsets[c]..self.offsets[c + 1];
        self.weights.rows(r.start, r.len()).sum()
    }

    /// Weighted mean of `f` over component `c`.
    pub fn mean(&self, f: &BoundaryFunction, c: usize) -> f64 {
        self.integrate_component(f, c) / self.measure(c)
    }
}

/// Dense `N×N` operator on the nodes of one domain.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteOperator {
    domain_id: u64,
    offsets: Arc<[usize]>,
    matrix: DMatrix<f64>,
}

impl DiscreteOperator {
    pub fn from_matrix(domain: &Domain, matrix: DMatrix<f64>) -> Result<Self> {
        let n = domain.num_nodes();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: matrix.nrows(),
            });
        }
        Ok(Self {
            domain_id: domain.id(),
            offsets: domain.offsets().into(),
            matrix,
        })
    }

    pub fn identity(domain: &Domain) -> Self {
        let n = domain.num_nodes();
        Self {
            domain_id: domain.id(),
            offsets: domain.offsets().into(),
            matrix: DMatrix::identity(n, n),
        }
    }

    pub fn domain_id(&self) -> u64 {
        self.domain_id
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn check(&self, other: u64) -> Result<()> {
        if self.domain_id == other {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    pub fn apply(&self, f: &BoundaryFunction) -> Result<BoundaryFunction> {
        self.check(f.domain_id)?;
        Ok(f.with_values(&self.matrix * &f.values))
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs.domain_id)?;
        Ok(self.with_matrix(&self.matrix * &rhs.matrix))
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs.domain_id)?;
        Ok(self.with_matrix(&self.matrix + &rhs.matrix))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs.domain_id)?;
        Ok(self.with_matrix(&self.matrix - &rhs.matrix))
    }

    pub fn scale(&self, alpha: f64) -> Self {
        self.with_matrix(&self.matrix * alpha)
    }

    /// `self + αI`.
    pub fn shift(&self, alpha: f64) -> Self {
        let mut m = self.matrix.clone();
        for i in 0..m.nrows() {
            m[(i, i)] += alpha;
        }
        self.with_matrix(m)
    }

    /// `diag(h) · self`.
    pub fn row_scale(&self, h: &BoundaryFunction) -> Result<Self> {
        self.check(h.domain_id)?;
        let mut m = self.matrix.clone();
        for (i, mut row) in m.row_iter_mut().enumerate() {
            row *= h.values[i];
        }
        Ok(self.with_matrix(m))
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> Result<f64> {
        self.check(rhs.domain_id)?;
        Ok((&self.matrix - &rhs.matrix).amax())
    }

    /// Dumps the matrix as comma separated rows.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        for row in self.matrix.row_iter() {
            let line: Vec<String> = row.iter().map(|v| format!("{v:.17e}")).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    fn with_matrix(&self, matrix: DMatrix<f64>) -> Self {
        Self {
            domain_id: self.domain_id,
            offsets: self.offsets.clone(),
            matrix,
        }
    }
}

/// Log-singular quadrature weights `R_k` for `∫₀^{2π} log(4 sin²((t_i − τ)/2)) f(τ) dτ`
/// on `2n` nodes, indexed by `k = (i − j) mod 2n`.
fn log_weights(n: usize) -> Vec<f64> {
    let nf = n as f64;
    (0..2 * n)
        .map(|k| {
            let tk = PI * k as f64 / nf;
            let s: f64 = (1..n).map(|m| (m as f64 * tk).cos() / m as f64).sum();
            let alt = if k % 2 == 0 { 1.0 } else { -1.0 };
            -2.0 * PI / nf * s - PI / (nf * nf) * alt
        })
        .collect()
}

fn self_single_block(c: &CurveComponent, block: &mut nalgebra::DMatrixViewMut<f64>) {
    let len = c.len();
    let n = c.half_nodes();
    let r = log_weights(n);
    let h = PI / n as f64;
    let (x, t, speed) = (c.points(), c.params(), c.speed());
    let quarter_pi = 1.0 / (4.0 * PI);
    for i in 0..len {
        for j in 0..len {
            let smooth = if i == j {
                speed[i].ln() / (2.0 * PI)
            } else {
                let sin = ((t[i] - t[j]) / 2.0).sin();
                quarter_pi * ((x[i] - x[j]).norm_squared() / (4.0 * sin * sin)).ln()
            };
            let k = (i + len - j) % len;
            block[(i, j)] = speed[j] * (quarter_pi * r[k] + h * smooth);
        }
    }
}

pub fn assemble_single_layer(domain: &Domain) -> DiscreteOperator {
    let n = domain.num_nodes();
    let mut m = DMatrix::zeros(n, n);
    for (a, ca) in domain.components().iter().enumerate() {
        let ra = domain.range(a);
        for (b, cb) in domain.components().iter().enumerate() {
            let rb = domain.range(b);
            let mut block = m.view_mut((ra.start, rb.start), (ra.len(), rb.len()));
            if a == b {
                self_single_block(ca, &mut block);
            } else {
                let w = cb.weights();
                for (i, &xi) in ca.points().iter().enumerate() {
                    for (j, &yj) in cb.points().iter().enumerate() {
                        block[(i, j)] = log_kernel(xi, yj) * w[j];
                    }
                }
            }
        }
    }
    DiscreteOperator::from_matrix(domain, m).expect("square by construction")
}

/// Assembles the double layer (`adjoint = false`) or its adjoint.
fn assemble_double(domain: &Domain, adjoint: bool) -> DiscreteOperator {
    let n = domain.num_nodes();
    let points: Vec<Point> = domain.points().collect();
    let normals: Vec<Point> = domain.normals().collect();
    let weights = domain.weights();
    let curvature: Vec<f64> = domain.components().iter().flat_map(|c| c.curvature().to_vec()).collect();
    let m = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            diagonal_limit(curvature[i]) * weights[i]
        } else if adjoint {
            double_layer_kernel(points[j], points[i], normals[i]) * weights[j]
        } else {
            double_layer_kernel(points[i], points[j], normals[j]) * weights[j]
        }
    });
    DiscreteOperator::from_matrix(domain, m).expect("square by construction")
}

pub fn assemble_double_layer_pv(domain: &Domain) -> DiscreteOperator {
    assemble_double(domain, false)
}

pub fn assemble_adjoint_double_layer(domain: &Domain) -> DiscreteOperator {
    assemble_double(domain, true)
}

/// Block-diagonal arclength derivative built from the periodic spectral
/// differentiation matrix of each component. Arclength runs so that `ν`
/// lies to the right of the tangent on every component, which makes hole
/// curves clockwise.
pub fn assemble_tangential_derivative(domain: &Domain) -> DiscreteOperator {
    let n = domain.num_nodes();
    let mut m = DMatrix::zeros(n, n);
    for (c, comp) in domain.components().iter().enumerate() {
        let r = domain.range(c);
        let len = comp.len();
        let h = 2.0 * PI / len as f64;
        let sign = comp.tangent_sign();
        // column of the parameter-space matrix, antisymmetric: v[len − k] = −v[k]
        let mut v = vec![0.0; len];
        for k in 1..=len / 2 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            v[k] = 0.5 * sign / (0.5 * k as f64 * h).tan();
            if k != len - k {
                v[len - k] = -v[k];
            }
        }
        for i in 0..len {
            for j in 0..len {
                m[(r.start + i, r.start + j)] = sign * v[(i + len - j) % len] / comp.speed()[i];
            }
        }
    }
    DiscreteOperator::from_matrix(domain, m).expect("square by construction")
}

/// Trigonometric interpolation from the nodes of each component onto a
/// grid with twice as many nodes (old nodes at even positions).
fn upsampling_matrix(domain: &Domain) -> DMatrix<f64> {
    let n = domain.num_nodes();
    let mut p = DMatrix::zeros(2 * n, n);
    for (c, comp) in domain.components().iter().enumerate() {
        let r = domain.range(c);
        let len = comp.len();
        let h = 2.0 * PI / len as f64;
        for j in 0..len {
            p[(2 * r.start + 2 * j, r.start + j)] = 1.0;
            for k in 0..len {
                let d = j as f64 - k as f64;
                let sign = if (j + len - k) % 2 == 0 { 1.0 } else { -1.0 };
                p[(2 * r.start + 2 * j + 1, r.start + k)] = sign / ((d + 0.5) * 0.5 * h).tan() / len as f64;
            }
        }
    }
    p
}

/// Single layer and arclength derivative on the twice-refined grid.
///
/// Products such as `∂_s S ∂_s S` are applied there to the interpolated
/// density and sampled back at the original nodes. Multiplying the coarse
/// matrices instead re-interpolates every intermediate result, and on
/// curves with strongly varying speed (the kite) that costs about five
/// digits at 128 nodes.
#[derive(Clone, Debug)]
struct Refined {
    single: DMatrix<f64>,
    tangential: DMatrix<f64>,
    upsampling: DMatrix<f64>,
}

#[derive(Clone, Copy)]
enum Factor {
    S,
    T,
}

impl Refined {
    fn new(domain: &Domain) -> Self {
        let fine = domain.refine(2).expect("refining a valid domain keeps it valid");
        Self {
            single: assemble_single_layer(&fine).into_matrix(),
            tangential: assemble_tangential_derivative(&fine).into_matrix(),
            upsampling: upsampling_matrix(domain),
        }
    }

    /// `R · F_k ⋯ F_1 · P` with `chain = [F_1, …, F_k]` applied first to last.
    fn sample(&self, domain: &Domain, chain: &[Factor]) -> DiscreteOperator {
        let (last, rest) = chain.split_last().expect("non-empty chain");
        let mut m = self.upsampling.clone();
        for f in rest {
            m = self.factor(*f) * m;
        }
        let last = self.factor(*last);
        let n = domain.num_nodes();
        let mut rows = DMatrix::zeros(n, 2 * n);
        for i in 0..n {
            rows.row_mut(i).copy_from(&last.row(2 * i));
        }
        DiscreteOperator::from_matrix(domain, rows * m).expect("square by construction")
    }

    fn factor(&self, f: Factor) -> &DMatrix<f64> {
        match f {
            Factor::S => &self.single,
            Factor::T => &self.tangential,
        }
    }
}

/// `J = ∂_s ∘ S`, evaluated on the twice-refined grid.
pub fn assemble_j(domain: &Domain) -> DiscreteOperator {
    Refined::new(domain).sample(domain, &[Factor::S, Factor::T])
}

/// `J′`, acting on the arclength coefficient of a 1-form. In the plane it
/// has the same kernel as `J`.
pub fn assemble_jprime(domain: &Domain) -> DiscreteOperator {
    assemble_j(domain)
}

/// `H = K² + diag(h)(½S + D_pv S)`. `allow_zero` admits `h ≡ 0`, which
/// reduces `H` to `K²`.
pub fn assemble_h(domain: &Domain, h: &BoundaryFunction, allow_zero: bool) -> Result<DiscreteOperator> {
    LayerOperators::assemble(domain).h(h, allow_zero)
}

/// Checks `h ≥ 0` and `∫ h > 0` (or `h ≡ 0` when allowed).
pub fn validate_robin_coefficient(
    quad: &QuadratureFunctional,
    h: &BoundaryFunction,
    allow_zero: bool,
) -> Result<()> {
    h.check(quad.domain_id)?;
    if let Some(v) = h.as_slice().iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::InvalidCoefficient(format!("h must be finite and non-negative, found {v}")));
    }
    if quad.integrate(h) <= 0.0 && !allow_zero {
        return Err(Error::InvalidCoefficient(
            "h vanishes identically; pass the Neumann flag for h ≡ 0".into(),
        ));
    }
    if allow_zero && h.max_abs() != 0.0 {
        return Err(Error::InvalidCoefficient("the Neumann flag requires h ≡ 0".into()));
    }
    Ok(())
}

/// The assembled operator family for one domain. The derivative
/// compositions are built on first use.
#[derive(Clone, Debug)]
pub struct LayerOperators {
    pub single: DiscreteOperator,
    pub double: DiscreteOperator,
    pub adjoint: DiscreteOperator,
    pub tangential: DiscreteOperator,
    pub quadrature: QuadratureFunctional,
    domain: Domain,
    refined: OnceLock<Refined>,
    j: OnceLock<DiscreteOperator>,
    jprime_j: OnceLock<DiscreteOperator>,
    normal_derivative: OnceLock<DiscreteOperator>,
}

impl LayerOperators {
    pub fn assemble(domain: &Domain) -> Self {
        Self {
            single: assemble_single_layer(domain),
            double: assemble_double_layer_pv(domain),
            adjoint: assemble_adjoint_double_layer(domain),
            tangential: assemble_tangential_derivative(domain),
            quadrature: QuadratureFunctional::new(domain),
            domain: domain.clone(),
            refined: OnceLock::new(),
            j: OnceLock::new(),
            jprime_j: OnceLock::new(),
            normal_derivative: OnceLock::new(),
        }
    }

    pub fn domain_id(&self) -> u64 {
        self.single.domain_id
    }

    fn refined(&self) -> &Refined {
        self.refined.get_or_init(|| Refined::new(&self.domain))
    }

    /// `J = ∂_s ∘ S`.
    pub fn j(&self) -> &DiscreteOperator {
        self.j.get_or_init(|| self.refined().sample(&self.domain, &[Factor::S, Factor::T]))
    }

    /// `J′`, the same matrix as `J`.
    pub fn jprime(&self) -> &DiscreteOperator {
        self.j()
    }

    /// `J′J = ∂_s S ∂_s S`, composed on the refined grid.
    pub fn jprime_j(&self) -> &DiscreteOperator {
        self.jprime_j.get_or_init(|| {
            self.refined()
                .sample(&self.domain, &[Factor::S, Factor::T, Factor::S, Factor::T])
        })
    }

    pub fn k_squared(&self) -> DiscreteOperator {
        self.adjoint.compose(&self.adjoint).expect("same domain")
    }

    /// `−¼I + K²`.
    pub fn reduced(&self) -> DiscreteOperator {
        self.k_squared().shift(-0.25)
    }

    /// `∂_s S ∂_s`, the normal derivative of a double layer, composed on the
    /// refined grid.
    pub fn double_layer_normal_derivative(&self) -> &DiscreteOperator {
        self.normal_derivative.get_or_init(|| {
            self.refined()
                .sample(&self.domain, &[Factor::T, Factor::S, Factor::T])
        })
    }

    pub fn h(&self, h: &BoundaryFunction, allow_zero: bool) -> Result<DiscreteOperator> {
        validate_robin_coefficient(&self.quadrature, h, allow_zero)?;
        let trace_of_sl = self.double.shift(0.5).compose(&self.single)?;
        self.k_squared().try_add(&trace_of_sl.row_scale(h)?)
    }
}
