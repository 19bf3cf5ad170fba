use frenet_core::families::{circular_helix, kula_slant_helix, random_fourier};
use frenet_core::indicatrix::{frenet_vector_corollary, working_grid};
use frenet_core::involute::involute_point;
use frenet_core::jet::{Jet, JetVec3};
use frenet_core::oracle::endpoint_exclusion;
use frenet_core::{
    classify_curve, frenet_apparatus, indicatrix_field, involute_scalars, is_constant, numeric_frenet_oracle,
    sampled_frame_field, CurveSpec, DerivativeSource, Domain, IndicatrixKind, InvoluteSpec, ScalarSeries,
};
use nalgebra::{Rotation3, Vector3};
use proptest::prelude::*;

fn unit() -> Domain {
    Domain::new(0.0, 1.0).unwrap()
}

/// `scale * R x + shift` applied to every jet of `curve`.
fn moved(curve: &CurveSpec, rot: Rotation3<f64>, shift: Vector3<f64>, scale: f64) -> CurveSpec {
    let base = curve.clone();
    let m = rot.into_inner() * scale;
    CurveSpec::from_jet_fn(
        format!("moved({})", curve.label()),
        curve.domain(),
        curve.max_order(),
        curve.derivative_source(),
        move |t, order| {
            let p = base.jet(t, order).expect("in domain");
            let row = |i: usize| p.x * m[(i, 0)] + p.y * m[(i, 1)] + p.z * m[(i, 2)] + shift[i];
            JetVec3::new(row(0), row(1), row(2))
        },
    )
}

/// A twisted cubic-like test curve, optionally reparametrized by
/// `t = u + warp u^3`.
fn twisted(warp: f64, domain: Domain) -> CurveSpec {
    CurveSpec::analytic("twisted", domain, move |u: Jet| {
        let t = u + u.powi(3) * warp;
        let (s, c) = t.sin_cos();
        JetVec3::new(c * 2.0, s + t * 0.3, t.powi(2) * 0.5)
    })
}

fn rotation() -> impl Strategy<Value = Rotation3<f64>> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, 0.0f64..std::f64::consts::PI).prop_filter_map(
        "axis",
        |(x, y, z, angle)| {
            let axis = Vector3::new(x, y, z);
            (axis.norm() > 0.1).then(|| Rotation3::new(axis.normalize() * angle))
        },
    )
}

fn fourier_spec(seed: u64) -> Option<InvoluteSpec> {
    let curve = random_fourier(seed, unit());
    curve.check_regular(64).ok()?;
    let spec = InvoluteSpec::with_anchor(&curve, 4.0, 0.0).ok()?;
    let d = spec.domain();
    (d.width() > 0.5).then_some(spec)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn verdicts_survive_rigid_motion_and_scaling(
        mu in 0.15f64..1.5,
        rot in rotation(),
        shift in prop::array::uniform3(-5.0f64..5.0),
        scale in 0.5f64..3.0,
    ) {
        let base = kula_slant_helix(mu, Domain::new(-1.0, 1.0).unwrap()).unwrap();
        let image = moved(&base, rot, Vector3::from(shift), scale);
        let a = classify_curve(&base, 400).unwrap();
        let b = classify_curve(&image, 400).unwrap();
        prop_assert_eq!(a.verdicts, b.verdicts);
        prop_assert!((b.statistics.kappa.mean * scale / a.statistics.kappa.mean - 1.0).abs() < 1e-9);
        prop_assert!((b.statistics.gamma.mean - a.statistics.gamma.mean).abs() < 1e-9);
    }

    #[test]
    fn pointwise_invariants_under_rigid_motion(
        seed in 0u64..1000,
        rot in rotation(),
        scale in 0.5f64..3.0,
        t in 0.05f64..0.95,
    ) {
        let base = random_fourier(seed, unit());
        let image = moved(&base, rot, Vector3::new(1.0, -2.0, 0.5), scale);
        let (Ok(a), Ok(b)) = (frenet_apparatus(&base, t), frenet_apparatus(&image, t)) else {
            return Err(TestCaseError::reject("degenerate sample"));
        };
        prop_assume!(a.kappa > 1e-3);
        prop_assert!((b.kappa * scale - a.kappa).abs() <= 1e-9 * a.kappa);
        prop_assert!((b.tau * scale - a.tau).abs() <= 1e-8 * a.kappa.max(a.tau.abs()));
        prop_assert!((b.f - a.f).abs() <= 1e-8 * (1.0 + a.f.abs()));
        prop_assert!((b.tangent - rot * a.tangent).norm() < 1e-10);
        prop_assert!((b.binormal - rot * a.binormal).norm() < 1e-9);
    }

    #[test]
    fn scalars_ignore_reparametrization(warp in 0.0f64..0.8, u in 0.05f64..0.95) {
        let plain = twisted(0.0, Domain::new(0.0, 2.0).unwrap());
        let warped = twisted(warp, unit());
        let t = u + warp * u.powi(3);
        let a = frenet_apparatus(&plain, t).unwrap();
        let b = frenet_apparatus(&warped, u).unwrap();
        prop_assert!((a.kappa - b.kappa).abs() < 1e-11 * a.kappa);
        prop_assert!((a.tau - b.tau).abs() < 1e-10 * a.kappa);
        prop_assert!((a.gamma_g - b.gamma_g).abs() < 1e-9 * (1.0 + a.gamma_g.abs()));
        prop_assert!((a.normal - b.normal).norm() < 1e-11);
    }

    #[test]
    fn oracle_residual_does_not_grow_with_resolution(seed in 0u64..1000) {
        let curve = random_fourier(seed, unit());
        prop_assume!(curve.check_regular(64).is_ok());
        let residual = |n: usize| -> Option<f64> {
            let grid = curve.domain().grid(n);
            let points: Vec<_> = grid.iter().map(|&t| curve.position(t)).collect();
            let oracle = numeric_frenet_oracle(&points, &grid).ok()?;
            let skip = endpoint_exclusion(&grid);
            let mut worst: f64 = 0.0;
            for i in skip..n - skip {
                let exact = frenet_apparatus(&curve, grid[i]).ok()?;
                worst = worst.max((oracle.samples[i].kappa - exact.kappa).abs() / exact.kappa);
            }
            Some(worst)
        };
        let (Some(coarse), Some(fine)) = (residual(401), residual(801)) else {
            return Err(TestCaseError::reject("degenerate curve"));
        };
        prop_assert!(fine <= 2.0 * coarse + 1e-12, "coarse {coarse:e} fine {fine:e}");
    }

    #[test]
    fn sampled_frames_are_orthonormal(seed in 0u64..1000) {
        let curve = random_fourier(seed, unit());
        prop_assume!(curve.check_regular(64).is_ok());
        let Ok(field) = sampled_frame_field(&curve, &curve.domain().grid(200)) else {
            return Err(TestCaseError::reject("degenerate curve"));
        };
        for s in &field.samples {
            prop_assert!(s.orthonormality_defect() < 1e-12);
            prop_assert!((s.f - s.tau / s.kappa).abs() < 1e-12 * (1.0 + s.f.abs()));
        }
        prop_assert!(field.samples.windows(2).all(|w| w[1].s > w[0].s));
    }

    #[test]
    fn involute_identities_hold_on_random_curves(seed in 0u64..1000) {
        let Some(spec) = fourier_spec(seed) else {
            return Err(TestCaseError::reject("no working subdomain"));
        };
        for t in working_grid(&spec, 40) {
            let s = involute_scalars(&spec, t).unwrap();
            prop_assert!((s.f_tilde - s.gamma_base).abs() < 1e-8 * (1.0 + s.f_tilde.abs()));
            let base = frenet_apparatus(spec.base(), t).unwrap();
            let p = involute_point(&spec, t).unwrap();
            let string = spec.c() - spec.s_of_t(t);
            prop_assert!((p - base.position - base.tangent * string).norm() < 1e-12 * (1.0 + p.norm()));
            let frame = frenet_core::involute_frame(&spec, t).unwrap().sample;
            prop_assert!(frame.tangent.dot(&base.tangent).abs() < 1e-12);
            if !s.planar {
                prop_assert!(frenet_vector_corollary(&spec, t).unwrap().max() < 1e-9);
            }
        }
    }

    #[test]
    fn indicatrices_stay_on_unit_sphere(seed in 0u64..1000) {
        let Some(spec) = fourier_spec(seed) else {
            return Err(TestCaseError::reject("no working subdomain"));
        };
        let grid = working_grid(&spec, 40);
        for kind in [IndicatrixKind::Tangent, IndicatrixKind::PrincipalNormal] {
            for p in indicatrix_field(&spec, kind, &grid).unwrap() {
                prop_assert!((p.sample.position.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn constancy_ignores_scaling_of_values(
        values in prop::collection::vec(-3.0f64..3.0, 10..60),
        offset in 1.0f64..10.0,
        scale in prop::sample::select(vec![-4.0, -0.5, 0.25, 2.0, 1e3]),
    ) {
        let grid: Vec<f64> = (0..values.len()).map(|i| i as f64).collect();
        let shifted: Vec<f64> = values.iter().map(|v| v * 1e-9 + offset).collect();
        let scaled: Vec<f64> = shifted.iter().map(|v| v * scale).collect();
        let a = is_constant(&ScalarSeries::new("a", grid.clone(), shifted).unwrap(), 1e-6).unwrap();
        let b = is_constant(&ScalarSeries::new("b", grid, scaled).unwrap(), 1e-6).unwrap();
        prop_assert!(a.constant);
        prop_assert_eq!(a.constant, b.constant);
        prop_assert!((a.cv - b.cv).abs() <= 1e-6 * a.cv.max(1e-12));
    }
}

#[test]
fn helices_classify_the_same_after_motion() {
    let helix = circular_helix(3.0, 4.0, Domain::new(0.0, 30.0).unwrap());
    let image = moved(
        &helix,
        Rotation3::new(Vector3::new(0.3, -1.1, 0.4)),
        Vector3::new(7.0, 0.0, -2.0),
        0.2,
    );
    assert_eq!(image.derivative_source(), DerivativeSource::Analytic);
    let a = classify_curve(&helix, 500).unwrap();
    let b = classify_curve(&image, 500).unwrap();
    assert_eq!(a.verdicts, b.verdicts);
    assert!(b.verdicts.is_generalized_helix && !b.verdicts.is_planar);
}
