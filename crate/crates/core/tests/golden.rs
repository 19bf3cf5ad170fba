//! Frozen reference values, each confirmed by a route that does not share
//! code with the closed forms.

use std::f64::consts::FRAC_PI_2;

use frenet_core::families::{circular_helix, kula_slant_helix};
use frenet_core::indicatrix::working_grid;
use frenet_core::involute::involute_point;
use frenet_core::oracle::endpoint_exclusion;
use frenet_core::{
    frenet_apparatus, involute_frame, numeric_frenet_oracle, preset, tangent_indicatrix_data, Domain, InvoluteSpec,
};
use nalgebra::Vector3;

const KULA_LENGTH: f64 = FRAC_PI_2;
const KULA_GAMMA: f64 = -0.25;
const HELIX_KAPPA: f64 = 3.0 / 25.0;
const HELIX_TAU: f64 = 4.0 / 25.0;
/// Tangent image of the Kula involute at t = 0: (0, -4, 1) / sqrt(17).
const KULA_TANGENT_MID: [f64; 3] = [0.0, -0.970_142_500_145_331_9, 0.242_535_625_036_332_97];
/// Radius of the small circle traced by that tangent image, 4 / sqrt(17).
const KULA_TANGENT_RADIUS: f64 = 0.970_142_500_145_332;

fn kula_spec() -> InvoluteSpec {
    let p = preset("kula").unwrap();
    InvoluteSpec::with_anchor(&p.curve().unwrap(), p.c_inv, p.s_anchor).unwrap()
}

/// Composite Simpson on `n` panels with speeds from central differences of
/// positions.
fn simpson_length(position: impl Fn(f64) -> Vector3<f64>, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let e = 1e-5;
    let speed = |t: f64| {
        let d =
            (position(t - 2.0 * e) - position(t + 2.0 * e)) / 12.0 + (position(t + e) - position(t - e)) * (2.0 / 3.0);
        d.norm() / e
    };
    let mut sum = speed(a) + speed(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * speed(a + h * i as f64);
    }
    sum * h / 3.0
}

#[test]
fn kula_length_on_quarter_turn() {
    let d = Domain::new(0.0, FRAC_PI_2).unwrap();
    let curve = kula_slant_helix(0.25, d).unwrap();
    let coarse = simpson_length(|t| curve.position(t), d.min, d.max, 64);
    let fine = simpson_length(|t| curve.position(t), d.min, d.max, 128);
    let extrapolated = fine + (fine - coarse) / 15.0;
    assert!((extrapolated - KULA_LENGTH).abs() < 1e-9, "{extrapolated}");
    let arc = frenet_core::arclength_map(&curve, 64).unwrap();
    assert!((arc.total_length() - KULA_LENGTH).abs() < 1e-12);
}

#[test]
fn standard_helix_scalars() {
    let helix = circular_helix(3.0, 4.0, Domain::new(0.0, 30.0).unwrap());
    for u in [0.0, 2.5, 11.0, 29.0] {
        let s = frenet_apparatus(&helix, u).unwrap();
        assert!((s.kappa - HELIX_KAPPA).abs() < 1e-14);
        assert!((s.tau - HELIX_TAU).abs() < 1e-14);
        assert!((s.f - 4.0 / 3.0).abs() < 1e-13);
    }
    let grid = helix.domain().grid(2001);
    let points: Vec<_> = grid.iter().map(|&u| helix.position(u)).collect();
    let oracle = numeric_frenet_oracle(&points, &grid).unwrap();
    let skip = endpoint_exclusion(&grid);
    for s in &oracle.samples[skip..grid.len() - skip] {
        assert!((s.tau - HELIX_TAU).abs() < 1e-6);
        assert!((s.kappa - HELIX_KAPPA).abs() < 1e-6);
    }
}

#[test]
fn kula_gamma_is_constant() {
    let p = preset("kula").unwrap();
    let curve = p.curve().unwrap();
    let grid = p.domain.grid(2001);
    for &t in grid.iter().step_by(50) {
        assert!((frenet_apparatus(&curve, t).unwrap().gamma_g - KULA_GAMMA).abs() < 1e-12);
    }
    let points: Vec<_> = grid.iter().map(|&t| curve.position(t)).collect();
    let oracle = numeric_frenet_oracle(&points, &grid).unwrap();
    let skip = endpoint_exclusion(&grid);
    for s in &oracle.samples[skip..grid.len() - skip] {
        assert!((s.gamma_g - KULA_GAMMA).abs() < 1e-4);
    }
}

#[test]
fn helix_involute_binormal() {
    let helix = circular_helix(3.0, 4.0, Domain::new(0.0, 30.0).unwrap());
    let spec = InvoluteSpec::with_anchor(&helix, 40.0, 0.0).unwrap();
    let grid = working_grid(&spec, 1001);
    let points: Vec<_> = grid.iter().map(|&u| involute_point(&spec, u).unwrap()).collect();
    let oracle = numeric_frenet_oracle(&points, &grid).unwrap();
    for i in (100..900).step_by(100) {
        let base = frenet_apparatus(&helix, grid[i]).unwrap();
        let expected = base.tangent * 0.8 + base.binormal * 0.6;
        let closed = involute_frame(&spec, grid[i]).unwrap().sample.binormal;
        assert!((closed - expected).norm() < 1e-12);
        assert!((oracle.samples[i].binormal - expected).norm() < 1e-6);
    }
}

#[test]
fn kula_tangent_image_mid_point() {
    let spec = kula_spec();
    let point = tangent_indicatrix_data(&spec, 0.0).unwrap();
    let expected = Vector3::from(KULA_TANGENT_MID);
    assert!((point.sample.position - expected).norm() < 1e-14);

    let p = preset("kula").unwrap();
    let curve = p.curve().unwrap();
    let grid = p.domain.grid(1001);
    let mid = grid.iter().position(|&t| t == 0.0).unwrap();
    let points: Vec<_> = grid.iter().map(|&t| curve.position(t)).collect();
    let oracle = numeric_frenet_oracle(&points, &grid).unwrap();
    assert!((oracle.samples[mid].normal - expected).norm() < 1e-6);
}

#[test]
fn kula_tangent_circle_radius() {
    let spec = kula_spec();
    let at = |t: f64| tangent_indicatrix_data(&spec, t).unwrap();
    let (a, b, c) = (
        at(-1.0).sample.position,
        at(0.1).sample.position,
        at(1.1).sample.position,
    );
    let (ab, bc, ca) = ((b - a).norm(), (c - b).norm(), (a - c).norm());
    let circumradius = ab * bc * ca / (2.0 * (b - a).cross(&(c - a)).norm());
    assert!((circumradius - KULA_TANGENT_RADIUS).abs() < 1e-12);
    assert!((1.0 / at(0.4).sample.kappa - KULA_TANGENT_RADIUS).abs() < 1e-14);
}
