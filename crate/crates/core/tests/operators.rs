mod common;

use std::f64::consts::PI;

use common::*;
use lapbie::evaluate::double_layer_field;
use lapbie::harness::FineGrid;
use lapbie::operators::{
    assemble_adjoint_double_layer, assemble_double_layer_pv, assemble_h, assemble_j, assemble_jprime,
    assemble_single_layer, assemble_tangential_derivative,
};
use lapbie::{BoundaryFunction, Domain, LayerOperators};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn max_diff(a: &BoundaryFunction, b: &[f64]) -> f64 {
    a.as_slice().iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

fn on_nodes(domain: &Domain, f: impl Fn(usize, f64) -> f64) -> BoundaryFunction {
    BoundaryFunction::from_fn(domain, |n| f(n.component, n.param))
}

fn smooth_density(c: usize, t: f64) -> f64 {
    let c = c as f64;
    (t + 0.3 * c).cos() + 0.4 * (2.0 * t).sin() - 0.2 * (3.0 * t + c).cos() + 0.1 * (c + 1.0)
}

#[test]
fn single_layer_on_circles() {
    let unit = disk(p(0.0, 0.0), 1.0, 64);
    let s = assemble_single_layer(&unit);
    assert!(s.apply(&BoundaryFunction::constant(&unit, 1.0)).unwrap().max_abs() < 1e-10);
    let cos = on_nodes(&unit, |_, t| t.cos());
    let err = (&s.apply(&cos).unwrap() + &cos.map(|v| 0.5 * v)).max_abs();
    assert!(err < 1e-10);
    for k in 2..10 {
        let m = mode(&unit, 0, k, k % 2 == 0);
        let err = (&s.apply(&m).unwrap() + &m.map(|v| v / (2.0 * k as f64))).max_abs();
        assert!(err < 1e-12, "mode {k}: {err:e}");
    }
    let two = disk(p(0.5, 0.5), 2.0, 64);
    let s1 = assemble_single_layer(&two).apply(&BoundaryFunction::constant(&two, 1.0)).unwrap();
    assert!(s1.map(|v| v - 2.0 * 2f64.ln()).max_abs() < 1e-10);
    assert!((2.0 * 2f64.ln() - 1.3862944).abs() < 1e-7);
}

#[test]
fn double_layer_rows_on_a_circle() {
    let r = 1.5;
    let d = disk(p(-1.0, 0.0), r, 32);
    let op = assemble_double_layer_pv(&d);
    let w = d.weights();
    for i in 0..32 {
        for j in 0..32 {
            assert!((op.matrix()[(i, j)] - w[j] / (4.0 * PI * r)).abs() < 1e-14);
        }
    }
}

#[test]
fn gauss_identities() {
    for domain in [disk(p(0.0, 0.0), 1.0, 64), annulus(0.5, 2.0, 64), kite_domain(128)] {
        let one = BoundaryFunction::constant(&domain, 1.0);
        let d1 = assemble_double_layer_pv(&domain).apply(&one).unwrap();
        assert!(d1.map(|v| v - 0.5).max_abs() < 1e-10);
    }
    let c = disk(p(0.2, 0.0), 0.7, 64);
    let one = BoundaryFunction::constant(&c, 1.0);
    let k1 = assemble_adjoint_double_layer(&c).apply(&one).unwrap();
    assert!(k1.map(|v| v - 0.5).max_abs() < 1e-10);
}

#[test]
fn weighted_symmetry_and_duality() {
    let d = kite_domain(64);
    let ops = LayerOperators::assemble(&d);
    let w = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(d.weights()));
    let ws = &w * ops.single.matrix();
    assert!((&ws - ws.transpose()).amax() < 1e-10);
    let winv = w.try_inverse().unwrap();
    let dual = &winv * ops.double.matrix().transpose() * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(d.weights()));
    assert!((ops.adjoint.matrix() - dual).amax() < 1e-12);
}

#[test]
fn tangential_derivative() {
    let unit = disk(p(0.0, 0.0), 1.0, 64);
    let t = assemble_tangential_derivative(&unit);
    let d = t.apply(&on_nodes(&unit, |_, t| t.cos())).unwrap();
    assert!(max_diff(&d, &on_nodes(&unit, |_, t| -t.sin()).as_slice().to_vec()) < 1e-12);
    let two = disk(p(0.0, 0.0), 2.0, 64);
    let d = assemble_tangential_derivative(&two).apply(&on_nodes(&two, |_, t| t.cos())).unwrap();
    assert!(max_diff(&d, on_nodes(&two, |_, t| -t.sin() / 2.0).as_slice()) < 1e-12);
    let k = kite_domain(64);
    let c = assemble_tangential_derivative(&k).apply(&BoundaryFunction::constant(&k, 3.0)).unwrap();
    assert!(c.max_abs() < 1e-12);
}

#[test]
fn j_on_the_unit_circle() {
    let unit = disk(p(0.0, 0.0), 1.0, 64);
    let j = assemble_j(&unit);
    let cos = on_nodes(&unit, |_, t| t.cos());
    let jc = j.apply(&cos).unwrap();
    assert!(max_diff(&jc, on_nodes(&unit, |_, t| 0.5 * t.sin()).as_slice()) < 1e-10);
    let jjc = assemble_jprime(&unit).apply(&jc).unwrap();
    assert!((&jjc + &cos.map(|v| 0.25 * v)).max_abs() < 1e-9);
    assert!(j.apply(&BoundaryFunction::constant(&unit, 1.0)).unwrap().max_abs() < 1e-10);
    let ops = LayerOperators::assemble(&unit);
    assert!((&ops.jprime_j().apply(&cos).unwrap() + &cos.map(|v| 0.25 * v)).max_abs() < 1e-9);
}

#[test]
fn h_examples() {
    let d = annulus(0.5, 2.0, 32);
    let ops = LayerOperators::assemble(&d);
    let zero = BoundaryFunction::zeros(&d);
    assert!(assemble_h(&d, &zero, false).is_err());
    let h0 = assemble_h(&d, &zero, true).unwrap();
    assert_eq!(h0.max_abs_diff(&ops.k_squared()).unwrap(), 0.0);

    let c = disk(p(0.0, 0.0), 2.0, 64);
    let h = assemble_h(&c, &BoundaryFunction::constant(&c, 1.0), false).unwrap();
    let h1 = h.apply(&BoundaryFunction::constant(&c, 1.0)).unwrap();
    assert!(h1.map(|v| v - (0.25 + 2.0 * 2f64.ln())).max_abs() < 1e-10);

    let negative = BoundaryFunction::constant(&c, -1.0);
    assert!(assemble_h(&c, &negative, false).is_err());
}

/// At 256 nodes the kite self-interaction is resolved to roundoff, so the
/// layer operators must agree with the oracle far below 1e−10.
#[test]
fn layer_operators_match_the_fine_grid_oracle() {
    let d = kite_domain(256);
    let ops = LayerOperators::assemble(&d);
    let phi = on_nodes(&d, smooth_density);
    let g4 = FineGrid::new(&d, 4).unwrap();
    let g8 = FineGrid::new(&d, 8).unwrap();
    let (r4, r8) = (g4.sample(|c, t, _| smooth_density(c, t)), g8.sample(|c, t, _| smooth_density(c, t)));
    let single = g8.restrict(&g8.single_layer(&r8));
    assert!(max_diff(&BoundaryFunction::from_vec(&d, g4.restrict(&g4.single_layer(&r4))).unwrap(), &single) < 1e-13);
    assert!(max_diff(&ops.single.apply(&phi).unwrap(), &single) < 1e-11);
    let dpv = g8.restrict(&g8.double_layer_pv(&r8));
    assert!(max_diff(&ops.double.apply(&phi).unwrap(), &dpv) < 1e-11);
    let adj = g8.restrict(&g8.adjoint_double_layer(&r8));
    assert!(max_diff(&ops.adjoint.apply(&phi).unwrap(), &adj) < 1e-11);
}

#[test]
fn h_matches_the_fine_grid_oracle() {
    let d = kite_domain(128);
    let phi = on_nodes(&d, smooth_density);
    let g8 = FineGrid::new(&d, 8).unwrap();
    let r8 = g8.sample(|c, t, _| smooth_density(c, t));
    let h_values = [1.0, 0.5, 2.0];
    let h = BoundaryFunction::piecewise_constant(&d, &h_values).unwrap();
    let h8 = g8.sample(|c, _, _| h_values[c]);
    let oracle = g8.restrict(&g8.h_operator(&h8, &r8));
    let computed = assemble_h(&d, &h, false).unwrap().apply(&phi).unwrap();
    assert!(max_diff(&computed, &oracle) < 1e-8);
}

#[test]
fn reduction_residual_is_spectral() {
    let mut residuals = Vec::new();
    for n in [32, 64, 128] {
        let d = kite_domain(n);
        let ops = LayerOperators::assemble(&d);
        let defect = ops.jprime_j().try_sub(&ops.reduced()).unwrap();
        let mut worst = 0.0_f64;
        for c in 0..3 {
            for k in 0..=4 {
                worst = worst.max(defect.apply(&mode(&d, c, k, false)).unwrap().max_abs());
                worst = worst.max(defect.apply(&mode(&d, c, k, true)).unwrap().max_abs());
            }
        }
        residuals.push(worst);
    }
    assert!(residuals[2] < 1e-8, "{residuals:?}");
    // Each doubling gains more than any fixed low power of n would.
    assert!(residuals[1] < residuals[0] / 100.0 && residuals[2] < residuals[1] / 100.0, "{residuals:?}");
}

/// The normal derivative of `Dψ` from the composed operator against a
/// one-sided difference of the field probed along `−ν` at steps of 1e−3.
#[test]
fn key_formula_against_finite_differences() {
    let d = kite_domain(128);
    let ops = LayerOperators::assemble(&d);
    let psi = on_nodes(&d, |c, t| (t + c as f64).cos() + 0.5 * (2.0 * t).sin());
    let flux = ops.double_layer_normal_derivative().apply(&psi).unwrap();
    let trace = ops.double.shift(0.5).apply(&psi).unwrap();
    let delta = 1e-3;
    let mut worst = 0.0_f64;
    for c in 0..3 {
        let comp = d.component(c);
        let offset = d.range(c).start;
        for j in (0..comp.len()).step_by(8) {
            let (x, nu) = (comp.points()[j], comp.normals()[j]);
            let f: Vec<f64> = (1..=4).map(|k| double_layer_field(&d, &psi, x - nu * (k as f64 * delta))).collect();
            let f0 = trace.as_slice()[offset + j];
            // Derivative along −ν, i.e. minus the outward derivative.
            let inward = (-25.0 * f0 + 48.0 * f[0] - 36.0 * f[1] + 16.0 * f[2] - 3.0 * f[3]) / (12.0 * delta);
            worst = worst.max((flux.as_slice()[offset + j] + inward).abs());
        }
    }
    assert!(worst < 1e-4, "{worst:e}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn duality_pairing(a in prop::collection::vec(-1.0f64..1.0, 6), b in prop::collection::vec(-1.0f64..1.0, 6)) {
        let d = annulus(0.4, 1.5, 32);
        let ops = LayerOperators::assemble(&d);
        let f = on_nodes(&d, |c, t| a[3 * c] + a[3 * c + 1] * t.cos() + a[3 * c + 2] * (2.0 * t).sin());
        let g = on_nodes(&d, |c, t| b[3 * c] + b[3 * c + 1] * (3.0 * t).cos() + b[3 * c + 2] * t.sin());
        let q = &ops.quadrature;
        let lhs = q.integrate(&ops.double.apply(&f).unwrap().hadamard(&g).unwrap());
        let rhs = q.integrate(&f.hadamard(&ops.adjoint.apply(&g).unwrap()).unwrap());
        prop_assert!((lhs - rhs).abs() < 1e-12);
        let ls = q.integrate(&ops.single.apply(&f).unwrap().hadamard(&g).unwrap());
        let rs = q.integrate(&f.hadamard(&ops.single.apply(&g).unwrap()).unwrap());
        prop_assert!((ls - rs).abs() < 1e-12);
    }

    #[test]
    fn gauss_on_random_annuli(r in 0.1f64..0.8, x in -0.3f64..0.3, y in -0.3f64..0.3) {
        let d = lapbie::geometry::build_domain(
            lapbie::geometry::make_circle(p(0.0, 0.0), 1.3, 96, lapbie::Role::Outer).unwrap(),
            vec![lapbie::geometry::make_circle(p(x, y), r * 0.9, 96, lapbie::Role::Hole).unwrap()],
        ).unwrap();
        let one = BoundaryFunction::constant(&d, 1.0);
        let d1 = assemble_double_layer_pv(&d).apply(&one).unwrap();
        prop_assert!(d1.map(|v| v - 0.5).max_abs() < 1e-9);
    }
}
