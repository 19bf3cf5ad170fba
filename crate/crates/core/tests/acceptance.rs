//! Acceptance suite. Run with `cargo test --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

use frenet_core::families::{derived_general_helix, monterde_helix};
use frenet_core::indicatrix::{frenet_vector_corollary, working_grid};
use frenet_core::involute::{gamma_tilde_from_gamma, involute_point};
use frenet_core::oracle::endpoint_exclusion;
use frenet_core::{
    build_involute, classify_curve, indicatrix_field, involute_scalars, is_constant, numeric_frenet_oracle, preset,
    run_identity_suite, run_suite, CurveSpec, Domain, FrameField, IndicatrixKind, InvoluteSpec, Preset, ScalarSeries,
    Status, Suite,
};
use nalgebra::Vector3;

const GRID: usize = 1001;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn spec_of(p: &Preset) -> InvoluteSpec {
    InvoluteSpec::with_anchor(&p.curve().unwrap(), p.c_inv, p.s_anchor).unwrap()
}

fn kula() -> (Preset, InvoluteSpec) {
    let p = preset("kula").unwrap();
    let spec = spec_of(&p);
    (p, spec)
}

fn oracle_of(points: &[Vector3<f64>], grid: &[f64]) -> (FrameField, std::ops::Range<usize>) {
    let field = numeric_frenet_oracle(points, grid).unwrap();
    let skip = endpoint_exclusion(grid);
    (field, skip..grid.len() - skip)
}

fn max_over(range: std::ops::Range<usize>, f: impl Fn(usize) -> f64) -> f64 {
    range.map(f).fold(0.0, f64::max)
}

fn cv(label: &str, grid: &[f64], values: Vec<f64>) -> f64 {
    let series = ScalarSeries::new(label, grid.to_vec(), values).unwrap();
    is_constant(&series, 1e-6).unwrap().cv
}

/// Largest relative error of closed-form curvature and torsion against the
/// oracle; torsion is scaled by the curvature where it vanishes.
fn frenet_residual(curve: &CurveSpec, n: usize) -> f64 {
    let grid = curve.domain().grid(n);
    let points: Vec<_> = grid.iter().map(|&t| curve.position(t)).collect();
    let (oracle, interior) = oracle_of(&points, &grid);
    max_over(interior, |i| {
        let exact = frenet_core::frenet_apparatus(curve, grid[i]).unwrap();
        let o = &oracle.samples[i];
        let k = (o.kappa - exact.kappa).abs() / exact.kappa;
        let t = (o.tau - exact.tau).abs() / exact.tau.abs().max(exact.kappa);
        k.max(t)
    })
}

fn frenet_foundation() -> Outcome {
    let circle = preset("circle").unwrap().curve().unwrap();
    let helix = preset("helix").unwrap().curve().unwrap();
    let rc = frenet_residual(&circle, 2001);
    let rh = frenet_residual(&helix, 2001);
    outcome(
        rc < 1e-6 && rh < 1e-6,
        format!("circle {rc:.2e}, helix {rh:.2e} (tol 1e-6)"),
    )
}

fn involute_closed_forms() -> Outcome {
    let (_, spec) = kula();
    let grid = working_grid(&spec, GRID);
    let points: Vec<_> = grid.iter().map(|&t| involute_point(&spec, t).unwrap()).collect();
    let (oracle, interior) = oracle_of(&points, &grid);
    let r = max_over(interior, |i| {
        let s = involute_scalars(&spec, grid[i]).unwrap();
        let o = &oracle.samples[i];
        let k = (o.kappa - s.kappa_tilde).abs() / s.kappa_tilde;
        let t = (o.tau - s.tau_tilde).abs() / s.tau_tilde.abs().max(s.kappa_tilde);
        k.max(t)
    });
    outcome(r < 1e-5, format!("max relative error {r:.2e} (tol 1e-5)"))
}

fn involute_identities() -> Outcome {
    let (_, spec) = kula();
    let grid = working_grid(&spec, GRID);
    let mut f_gap: f64 = 0.0;
    let mut path_gap: f64 = 0.0;
    for &t in &grid {
        let s = involute_scalars(&spec, t).unwrap();
        f_gap = f_gap.max((s.f_tilde - s.gamma_base).abs());
        let other = gamma_tilde_from_gamma(&spec, t).unwrap().value().unwrap();
        path_gap = path_gap.max((other - s.gamma_tilde).abs() / s.gamma_tilde.abs().max(1.0));
    }
    outcome(
        f_gap < 1e-8 && path_gap < 1e-8,
        format!("|f~ - Gamma| {f_gap:.2e}, two-path Gamma~ {path_gap:.2e} (tol 1e-8)"),
    )
}

fn involute_helix_theorem() -> Outcome {
    let (_, spec) = kula();
    let grid = working_grid(&spec, GRID);
    let f: Vec<f64> = grid
        .iter()
        .map(|&t| involute_scalars(&spec, t).unwrap().f_tilde)
        .collect();
    let kula_cv = cv("f~", &grid, f);

    let fourier = preset("fourier").unwrap();
    let curve = fourier.curve().unwrap();
    let evolute_slant = classify_curve(&curve, GRID).unwrap().verdicts.is_slant_helix;
    let involute = build_involute(&spec_of(&fourier));
    let involute_helix = classify_curve(&involute, GRID).unwrap().verdicts.is_generalized_helix;
    outcome(
        kula_cv < 1e-6 && !evolute_slant && !involute_helix,
        format!("kula f~ cv {kula_cv:.2e} (tol 1e-6); fourier evolute slant {evolute_slant}, involute helix {involute_helix}"),
    )
}

fn tangent_indicatrix_circle() -> Outcome {
    let (_, spec) = kula();
    let grid = working_grid(&spec, GRID);
    let pts = indicatrix_field(&spec, IndicatrixKind::Tangent, &grid).unwrap();
    let kappa_cv = cv("kappa_t", &grid, pts.iter().map(|p| p.sample.kappa).collect());
    let tau = pts.iter().map(|p| p.sample.tau.abs()).fold(0.0, f64::max);
    let norm = pts
        .iter()
        .map(|p| (p.sample.position.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    outcome(
        kappa_cv < 1e-6 && tau < 1e-8 && norm < 1e-12,
        format!("kappa_t cv {kappa_cv:.2e}, max |tau_t| {tau:.2e}, unit-norm defect {norm:.2e}"),
    )
}

fn binormal_theorems() -> Outcome {
    let (_, spec) = kula();
    let grid = working_grid(&spec, GRID);
    let pts = indicatrix_field(&spec, IndicatrixKind::Binormal, &grid).unwrap();
    let tau = pts.iter().map(|p| p.scalars.tau.abs()).fold(0.0, f64::max);
    let ratio = pts
        .iter()
        .map(|p| (p.scalars.tau / p.scalars.kappa + p.gamma_tilde).abs())
        .fold(0.0, f64::max);
    outcome(
        tau < 1e-8 && ratio < 1e-9,
        format!("max |tau_b| {tau:.2e} (tol 1e-8), |tau_b/kappa_b + Gamma~| {ratio:.2e} (tol 1e-9)"),
    )
}

fn frenet_vector_relations() -> Outcome {
    let (_, spec) = kula();
    let worst = working_grid(&spec, GRID)
        .iter()
        .map(|&t| frenet_vector_corollary(&spec, t).unwrap().max())
        .fold(0.0, f64::max);
    outcome(
        worst < 1e-9,
        format!("max frame relation defect {worst:.2e} (tol 1e-9)"),
    )
}

/// Oracle curvature of the principal-normal image against the corrected
/// and printed closed forms.
fn normal_curvature(p: &Preset) -> (f64, f64, f64) {
    let spec = spec_of(p);
    let grid = working_grid(&spec, GRID);
    let pts = indicatrix_field(&spec, IndicatrixKind::PrincipalNormal, &grid).unwrap();
    let points: Vec<_> = pts.iter().map(|q| q.sample.position).collect();
    let (oracle, interior) = oracle_of(&points, &grid);
    let mut corrected: f64 = 0.0;
    let mut unit: f64 = 0.0;
    let mut printed: f64 = 0.0;
    for i in interior {
        let k = oracle.samples[i].kappa;
        let expected = (1.0 + pts[i].gamma_tilde.powi(2)).sqrt();
        corrected = corrected.max((k - expected).abs() / expected);
        unit = unit.max((k - 1.0).abs());
        printed = printed.max((k - pts[i].scalars.kappa).abs() / k);
    }
    (corrected, unit, printed)
}

fn normal_indicatrix_errata() -> Outcome {
    let (kc, kula_unit, kp) = normal_curvature(&preset("kula").unwrap());
    let (fc, _, fp) = normal_curvature(&preset("fourier").unwrap());
    let tol = 1e-5;
    let suite_ok = ["kula", "fourier"].iter().all(|name| {
        let r = run_identity_suite(&preset(name).unwrap(), GRID).unwrap();
        r.ok() && r.entry("normal.curvature_as_printed").map(|e| e.status) == Some(Status::ExpectedFail)
    });
    outcome(
        kc < tol && fc < tol && kula_unit < 1e-6 && kp > 10.0 * tol && fp > 10.0 * tol && suite_ok,
        format!(
            "corrected kula {kc:.2e} fourier {fc:.2e}; kula |kappa_n - 1| {kula_unit:.2e}; \
             printed deviates kula {kp:.2e} fourier {fp:.2e}; suite ok with EXPECTED_FAIL {suite_ok}"
        ),
    )
}

fn example_reproduction() -> Outcome {
    let (p, spec) = kula();
    let involute = build_involute(&spec);
    let derived = derived_general_helix(0.25, p.c_inv, p.domain).unwrap();
    let grid = p.domain.grid(GRID);
    let mut position: f64 = 0.0;
    let mut scalars: f64 = 0.0;
    for &t in &grid {
        position = position.max((involute.position(t) - derived.curve.position(t)).norm());
        let s = involute_scalars(&spec, t).unwrap();
        let k = (derived.printed_kappa(t) - s.kappa_tilde).abs() / s.kappa_tilde;
        let tau = (derived.printed_tau(t) - s.tau_tilde).abs() / s.tau_tilde.abs();
        scalars = scalars.max(k.max(tau));
    }
    let monterde = monterde_helix(1.0, Domain::new(-3.0, 3.0).unwrap()).unwrap();
    let sphere = monterde
        .domain()
        .grid(GRID)
        .iter()
        .map(|&t| (monterde.position(t).norm() - 1.0).abs())
        .fold(0.0, f64::max);
    outcome(
        position < 1e-8 && scalars < 1e-6 && sphere < 1e-9,
        format!("position gap {position:.2e}, printed kappa~/tau~ {scalars:.2e}, monterde sphere {sphere:.2e}"),
    )
}

fn determinism() -> Outcome {
    let p = preset("kula").unwrap();
    let a = run_suite(&p, Suite::All, GRID).unwrap().to_json();
    let b = run_suite(&p, Suite::All, GRID).unwrap().to_json();
    outcome(a == b, format!("{} bytes, identical {}", a.len(), a == b))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("frenet foundation", frenet_foundation),
        ("involute closed forms", involute_closed_forms),
        ("involute identities", involute_identities),
        ("involute helix theorem", involute_helix_theorem),
        ("tangent indicatrix circle", tangent_indicatrix_circle),
        ("binormal theorems", binormal_theorems),
        ("frenet vector relations", frenet_vector_relations),
        ("normal indicatrix errata", normal_indicatrix_errata),
        ("example reproduction", example_reproduction),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} {:>2} {name}: {}", i + 1, o.detail);
        if !o.pass {
            failed.push(*name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
