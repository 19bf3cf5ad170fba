//! Closed forms against the finite-difference oracle, and two-sided
//! theorem checks through the classifier.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use nalgebra::Vector3;
use serde::Serialize;

use crate::classify::{classify_curve, Verdicts};
use crate::curve::{CurveSpec, Domain};
use crate::error::{GeometryError, Result};
use crate::families::{preset, Preset};
use crate::frenet::{FrameField, FrenetSample};
use crate::indicatrix::{
    frenet_vector_corollary, frenet_vector_corollary_oracle, indicatrix_curve, indicatrix_field, similar_curves_check,
    working_grid, FrameConvention, IndicatrixKind, IndicatrixPoint,
};
use crate::involute::{build_involute, gamma_tilde_from_gamma, involute_point, involute_scalars, InvoluteSpec};
use crate::oracle::{endpoint_exclusion, numeric_frenet_oracle, ENDPOINT_EXCLUSION, STENCIL_WIDTH};

/// Tolerance for closed form vs oracle curvature, torsion and frames.
pub const ORACLE_TOL: f64 = 1e-5;

/// Γ from the oracle needs one more numerical derivative.
pub const ORACLE_GAMMA_TOL: f64 = 1e-4;

/// Tolerance for two closed forms of the same quantity.
pub const IDENTITY_TOL: f64 = 1e-8;

/// Smallest grid with a non-empty oracle interior.
pub const MIN_VERIFY_GRID: usize = 2 * ENDPOINT_EXCLUSION + STENCIL_WIDTH;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Identities,
    Theorems,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Theorems => "theorems",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "identities" => Ok(Suite::Identities),
            "theorems" => Ok(Suite::Theorems),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    ExpectedFail,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// `max_abs` is compared with the tolerance.
    Abs,
    /// `max_rel` is compared with the tolerance.
    Rel,
    /// Two classifier verdicts are compared.
    Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub id: String,
    /// The statement being checked.
    pub anchor: String,
    pub grid: usize,
    pub metric: Metric,
    pub max_abs: Option<f64>,
    pub max_rel: Option<f64>,
    pub tolerance: Option<f64>,
    pub lhs: Option<bool>,
    pub rhs: Option<bool>,
    pub status: Status,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub suite: Suite,
    pub preset: Preset,
    pub working_domain: Domain,
    pub grid_n: usize,
    pub endpoint_exclusion: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub expected_fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub metadata: Metadata,
    pub summary: Summary,
    pub entries: Vec<Entry>,
}

impl VerificationReport {
    fn new(metadata: Metadata, entries: Vec<Entry>) -> Self {
        let mut summary = Summary::default();
        for e in &entries {
            match e.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::ExpectedFail => summary.expected_fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Self {
            metadata,
            summary,
            entries,
        }
    }

    /// True when no entry failed unexpectedly.
    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn entry(&self, id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub max_abs: f64,
    pub max_rel: f64,
}

fn worst(acc: f64, x: f64) -> f64 {
    if x.is_nan() || x > acc {
        x
    } else {
        acc
    }
}

/// Max abs and relative error of `(value, reference)` pairs, relative to
/// `max(|reference|, scale)`.
pub fn residual(pairs: impl IntoIterator<Item = (f64, f64)>, scale: f64) -> Residual {
    let mut r = Residual {
        max_abs: 0.0,
        max_rel: 0.0,
    };
    for (a, b) in pairs {
        let d = (a - b).abs();
        r.max_abs = worst(r.max_abs, d);
        r.max_rel = worst(r.max_rel, d / b.abs().max(scale));
    }
    r
}

fn abs_only(values: impl IntoIterator<Item = f64>) -> Residual {
    residual(values.into_iter().map(|v| (v, 0.0)), 1.0)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Expect {
    Holds,
    Fails,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Logic {
    Iff,
    Implies,
    BothFalse,
}

struct Check {
    id: &'static str,
    anchor: &'static str,
    metric: Metric,
    tol: f64,
    expect: Expect,
    note: Option<&'static str>,
}

impl Check {
    fn rel(id: &'static str, anchor: &'static str, tol: f64) -> Self {
        Self {
            id,
            anchor,
            metric: Metric::Rel,
            tol,
            expect: Expect::Holds,
            note: None,
        }
    }

    fn abs(id: &'static str, anchor: &'static str, tol: f64) -> Self {
        Self {
            metric: Metric::Abs,
            ..Self::rel(id, anchor, tol)
        }
    }

    fn verdict(id: &'static str, anchor: &'static str) -> Self {
        Self {
            metric: Metric::Verdict,
            ..Self::rel(id, anchor, f64::NAN)
        }
    }

    fn expected_to_fail(mut self, note: &'static str) -> Self {
        self.expect = Expect::Fails;
        self.note = Some(note);
        self
    }

    fn blank(&self, grid: usize, status: Status) -> Entry {
        Entry {
            id: self.id.to_string(),
            anchor: self.anchor.to_string(),
            grid,
            metric: self.metric,
            max_abs: None,
            max_rel: None,
            tolerance: (self.metric != Metric::Verdict).then_some(self.tol),
            lhs: None,
            rhs: None,
            status,
            note: self.note.map(str::to_string),
        }
    }

    fn status(&self, holds: bool) -> Status {
        match (holds, self.expect) {
            (true, _) => Status::Pass,
            (false, Expect::Holds) => Status::Fail,
            (false, Expect::Fails) => Status::ExpectedFail,
        }
    }

    fn measure(&self, grid: usize, r: Residual) -> Entry {
        let value = match self.metric {
            Metric::Abs => r.max_abs,
            _ => r.max_rel,
        };
        let mut e = self.blank(grid, self.status(value < self.tol));
        e.max_abs = Some(r.max_abs);
        e.max_rel = Some(r.max_rel);
        e
    }

    fn logic(&self, grid: usize, lhs: bool, rhs: bool, logic: Logic) -> Entry {
        let holds = match logic {
            Logic::Iff => lhs == rhs,
            Logic::Implies => !lhs || rhs,
            Logic::BothFalse => !lhs && !rhs,
        };
        let mut e = self.blank(grid, self.status(holds));
        e.lhs = Some(lhs);
        e.rhs = Some(rhs);
        e
    }

    fn skip(&self, grid: usize, reason: String) -> Entry {
        let mut e = self.blank(grid, Status::Skipped);
        e.note = Some(reason);
        e
    }
}

/// Base curve, involute and grid shared by all entries.
struct Fixture {
    preset: Preset,
    spec: InvoluteSpec,
    grid: Vec<f64>,
    interior: Range<usize>,
}

impl Fixture {
    fn new(preset: &Preset, n: usize) -> Result<Self> {
        if n < MIN_VERIFY_GRID {
            return Err(GeometryError::GridTooCoarse(format!(
                "verification needs at least {MIN_VERIFY_GRID} grid points, got {n}"
            )));
        }
        let base = preset.curve()?;
        let spec = InvoluteSpec::with_anchor(&base, preset.c_inv, preset.s_anchor)?;
        let grid = working_grid(&spec, n);
        let skip = endpoint_exclusion(&grid);
        Ok(Self {
            preset: *preset,
            spec,
            grid,
            interior: skip..n - skip,
        })
    }

    fn n(&self) -> usize {
        self.grid.len()
    }

    fn metadata(&self, suite: Suite) -> Metadata {
        Metadata {
            suite,
            preset: self.preset,
            working_domain: self.spec.domain(),
            grid_n: self.n(),
            endpoint_exclusion: self.interior.start,
        }
    }

    fn oracle(&self, points: &[Vector3<f64>]) -> Result<FrameField> {
        numeric_frenet_oracle(points, &self.grid)
    }

    fn pairs<'a>(
        &'a self,
        closed: &'a [FrenetSample],
        oracle: &'a FrameField,
        pick: impl Fn(&FrenetSample) -> f64 + 'a,
    ) -> impl Iterator<Item = (f64, f64)> + 'a {
        self.interior
            .clone()
            .map(move |i| (pick(&closed[i]), pick(&oracle.samples[i])))
    }

    fn sup_kappa(&self, closed: &[FrenetSample]) -> f64 {
        self.interior.clone().map(|i| closed[i].kappa).fold(0.0, f64::max)
    }

    fn frame_residual(&self, closed: &[FrenetSample], oracle: &FrameField) -> Residual {
        abs_only(self.interior.clone().map(|i| {
            let (a, b) = (&closed[i], &oracle.samples[i]);
            (a.tangent - b.tangent)
                .norm()
                .max((a.normal - b.normal).norm())
                .max((a.binormal - b.binormal).norm())
        }))
    }

    /// Arc length measured from the first interior sample, relative to the
    /// interior length.
    fn arc_residual(&self, closed: &[FrenetSample], oracle: &FrameField) -> Residual {
        let i0 = self.interior.start;
        let last = self.interior.end - 1;
        let total = (oracle.samples[last].s - oracle.samples[i0].s).abs();
        residual(
            self.interior
                .clone()
                .map(|i| (closed[i].s - closed[i0].s, oracle.samples[i].s - oracle.samples[i0].s)),
            total,
        )
    }
}

fn samples(points: &[IndicatrixPoint]) -> Vec<FrenetSample> {
    points.iter().map(|p| p.sample).collect()
}

fn positions(samples: &[FrenetSample]) -> Vec<Vector3<f64>> {
    samples.iter().map(|s| s.position).collect()
}

fn unit_norm(samples: &[FrenetSample]) -> Residual {
    abs_only(samples.iter().map(|s| (s.position.norm() - 1.0).abs()))
}

fn involute_entries(fx: &Fixture, out: &mut Vec<Entry>) -> Result<()> {
    let n = fx.n();
    let spec = &fx.spec;
    let mut points = Vec::with_capacity(n);
    let mut closed = Vec::with_capacity(n);
    let mut scalars = Vec::with_capacity(n);
    let mut definition = Vec::with_capacity(n);
    let mut via_gamma = Vec::with_capacity(n);
    for &t in &fx.grid {
        points.push(involute_point(spec, t)?);
        let j = spec.jets(t, 5)?;
        let sc = involute_scalars(spec, t)?;
        closed.push(FrenetSample {
            t,
            s: 0.0,
            position: j.position.value(),
            tangent: j.tangent.value(),
            normal: j.normal.value(),
            binormal: j.binormal.value(),
            kappa: sc.kappa_tilde,
            tau: sc.tau_tilde,
            f: sc.f_tilde,
            gamma_g: sc.gamma_tilde,
        });
        definition.push(j.gamma().value());
        via_gamma.push(gamma_tilde_from_gamma(spec, t)?.value());
        scalars.push(sc);
    }
    let oracle = fx.oracle(&points)?;
    let sup = fx.sup_kappa(&closed);

    out.push(
        Check::rel("involute.curvature", "kappa~ = sqrt(1 + f^2) / (c - s)", ORACLE_TOL)
            .measure(n, residual(fx.pairs(&closed, &oracle, |s| s.kappa), 0.0)),
    );
    out.push(
        Check::rel("involute.torsion", "tau~ = f' / (kappa (c - s) (1 + f^2))", ORACLE_TOL)
            .measure(n, residual(fx.pairs(&closed, &oracle, |s| s.tau), sup)),
    );
    out.push(
        Check::abs(
            "involute.frame",
            "T~ = N, N~ = (f B - T) / sqrt(1 + f^2), B~ = (f T + B) / sqrt(1 + f^2)",
            ORACLE_TOL,
        )
        .measure(n, fx.frame_residual(&closed, &oracle)),
    );
    out.push(
        Check::abs("involute.f_equals_gamma", "f~ = Gamma of the evolute", IDENTITY_TOL)
            .measure(n, residual(scalars.iter().map(|s| (s.f_tilde, s.gamma_base)), 1.0)),
    );
    out.push(
        Check::rel(
            "involute.gamma_definition",
            "Gamma~ in evolute terms equals f~' / (kappa~ (1 + f~^2)^(3/2))",
            IDENTITY_TOL,
        )
        .measure(
            n,
            residual(scalars.iter().zip(&definition).map(|(s, d)| (s.gamma_tilde, *d)), 1.0),
        ),
    );
    let gamma_pair = Check::rel(
        "involute.gamma_two_paths",
        "Gamma~ from f, kappa of the evolute equals Gamma~ from Gamma' of the evolute",
        IDENTITY_TOL,
    );
    let defined: Vec<(f64, f64)> = scalars
        .iter()
        .zip(&via_gamma)
        .filter_map(|(s, g)| g.map(|g| (s.gamma_tilde, g)))
        .collect();
    out.push(if defined.is_empty() {
        gamma_pair.skip(n, "involute is planar; Gamma~ undefined".into())
    } else {
        gamma_pair.measure(n, residual(defined, 1.0))
    });
    out.push(
        Check::rel(
            "involute.gamma",
            "Gamma~ = f~' / (kappa~ (1 + f~^2)^(3/2))",
            ORACLE_GAMMA_TOL,
        )
        .measure(n, residual(fx.pairs(&closed, &oracle, |s| s.gamma_g), 1.0)),
    );
    Ok(())
}

fn tangent_entries(fx: &Fixture, out: &mut Vec<Entry>) -> Result<()> {
    let n = fx.n();
    let field = indicatrix_field(&fx.spec, IndicatrixKind::Tangent, &fx.grid)?;
    let closed = samples(&field);
    let oracle = fx.oracle(&positions(&closed))?;
    let sup = fx.sup_kappa(&closed);
    out.push(Check::abs("tangent.unit_norm", "|T~| = 1", 1e-12).measure(n, unit_norm(&closed)));
    out.push(
        Check::rel("tangent.curvature", "kappa_t = sqrt(1 + f~^2)", ORACLE_TOL)
            .measure(n, residual(fx.pairs(&closed, &oracle, |s| s.kappa), 0.0)),
    );
    out.push(
        Check::rel("tangent.torsion", "tau_t = f~' / (kappa~ (1 + f~^2))", ORACLE_TOL)
            .measure(n, residual(fx.pairs(&closed, &oracle, |s| s.tau), sup)),
    );
    out.push(
        Check::abs(
            "tangent.frame",
            "T_t = N~, N_t = (f~ B~ - T~) / sqrt(1 + f~^2), B_t = (f~ T~ + B~) / sqrt(1 + f~^2)",
            ORACLE_TOL,
        )
        .measure(n, fx.frame_residual(&closed, &oracle)),
    );
    out.push(
        Check::rel("tangent.arc_length", "ds_t / ds* = kappa~", 1e-6).measure(n, fx.arc_residual(&closed, &oracle)),
    );
    out.push(
        Check::rel(
            "tangent.gamma",
            "Gamma_t in terms of f~, f~', f~'', kappa~, kappa~'",
            ORACLE_GAMMA_TOL,
        )
        .measure(n, residual(fx.pairs(&closed, &oracle, |s| s.gamma_g), 1.0)),
    );
    out.push(
        Check::rel("tangent.torsion_ratio", "tau_t / kappa_t = Gamma~", 1e-9).measure(
            n,
            residual(
                field.iter().map(|p| (p.scalars.tau / p.scalars.kappa, p.gamma_tilde)),
                1.0,
            ),
        ),
    );
    out.push(
        Check::rel("tangent.gamma_relation", "Gamma_t in terms of Gamma~'", IDENTITY_TOL).measure(
            n,
            residual(
                field
                    .iter()
                    .map(|p| (p.gamma_from_gamma_tilde.unwrap_or(f64::NAN), p.scalars.gamma_g)),
                1.0,
            ),
        ),
    );
    Ok(())
}

fn normal_entries(fx: &Fixture, out: &mut Vec<Entry>) -> Result<()> {
    let n = fx.n();
    let field = indicatrix_field(&fx.spec, IndicatrixKind::PrincipalNormal, &fx.grid)?;
    let closed = samples(&field);
    let oracle = fx.oracle(&positions(&closed))?;
    let sup = fx.sup_kappa(&closed);
    let errata: Vec<_> = field
        .iter()
        .map(|p| p.errata.expect("normal kind carries errata"))
        .collect();
    let printed = |i: usize| field[i].scalars;

    out.push(Check::abs("normal.unit_norm", "|N~| = 1", 1e-12).measure(n, unit_norm(&closed)));
    out.push(
        Check::rel(
            "normal.curvature_as_printed",
            "kappa_n = rho / (kappa~^2 (1 + f~^2)^3)",
            ORACLE_TOL,
        )
        .expected_to_fail("corrected form: normal.curvature")
        .measure(
            n,
            residual(
                fx.interior.clone().map(|i| (printed(i).kappa, oracle.samples[i].kappa)),
                0.0,
            ),
        ),
    );
    out.push(
        Check::rel("normal.curvature", "kappa_n = sqrt(1 + Gamma~^2)", ORACLE_TOL)
            .measure(n, residual(fx.pairs(&closed, &oracle, |s| s.kappa), 0.0)),
    );
    out.push(
        Check::rel(
            "normal.curvature_rho_form",
            "rho / (kappa~ (1 + f~^2)^(3/2)) = sqrt(1 + Gamma~^2)",
            1e-9,
        )
        .measure(
            n,
            residual(
                errata.iter().zip(&closed).map(|(e, s)| (e.kappa_corrected, s.kappa)),
                0.0,
            ),
        ),
    );
    let unit = Check::rel("normal.great_circle", "f~' = 0 implies kappa_n = 1", 1e-6);
    let f_constant = field.iter().all(|p| p.gamma_tilde.abs() < 1e-10);
    out.push(if f_constant {
        unit.measure(
            n,
            residual(fx.interior.clone().map(|i| (oracle.samples[i].kappa, 1.0)), 0.0),
        )
    } else {
        unit.skip(n, "f~ is not constant on this fixture".into())
    });
    out.push(
        Check::rel("normal.torsion_as_printed", "tau_n = sigma", ORACLE_TOL)
            .expected_to_fail("corrected form: normal.torsion")
            .measure(
                n,
                residual(
                    fx.interior
                        .clone()
                        .map(|i| (printed(i).sigma.unwrap_or(f64::NAN), oracle.samples[i].tau)),
                    sup,
                ),
            ),
    );
    out.push(
        Check::rel(
            "normal.torsion",
            "tau_n = Gamma~' / (kappa~ sqrt(1 + f~^2) (1 + Gamma~^2))",
            ORACLE_TOL,
        )
        .measure(n, residual(fx.pairs(&closed, &oracle, |s| s.tau), sup)),
    );
    out.push(
        Check::rel(
            "normal.gamma_as_printed",
            "Gamma_n in terms of sigma, sigma', kappa~, f~",
            ORACLE_GAMMA_TOL,
        )
        .expected_to_fail("corrected form: normal.gamma")
        .measure(
            n,
            residual(
                fx.interior
                    .clone()
                    .map(|i| (printed(i).gamma_g, oracle.samples[i].gamma_g)),
                1.0,
            ),
        ),
    );
    out.push(
        Check::rel(
            "normal.gamma",
            "Gamma_n = f_n' / (kappa_n (1 + f_n^2)^(3/2)) with corrected kappa_n, tau_n",
            ORACLE_GAMMA_TOL,
        )
        .measure(n, residual(fx.pairs(&closed, &oracle, |s| s.gamma_g), 1.0)),
    );
    out.push(
        Check::abs(
            "normal.frame",
            "T_n = (f~ B~ - T~) / sqrt(1 + f~^2), N_n and B_n normalized",
            ORACLE_TOL,
        )
        .measure(n, fx.frame_residual(&closed, &oracle)),
    );
    out.push(
        Check::abs("normal.frame_norm_as_printed", "|N_n| = |B_n| = 1 as printed", 1e-9)
            .expected_to_fail("printed N_n and B_n have norm kappa~ (1 + f~^2)^(3/2)")
            .measure(n, abs_only(errata.iter().map(|e| (e.frame_norm - 1.0).abs()))),
    );
    out.push(
        Check::rel("normal.arc_length", "ds_n / ds* = kappa~ sqrt(1 + f~^2)", 1e-6)
            .measure(n, fx.arc_residual(&closed, &oracle)),
    );
    Ok(())
}

fn binormal_checks() -> Vec<Check> {
    vec![
        Check::abs("binormal.unit_norm", "|B~| = 1", 1e-12),
        Check::rel("binormal.curvature", "|kappa_b| = sqrt(1 + f~^2) / |f~|", ORACLE_TOL),
        Check::rel("binormal.torsion", "tau_b = -f~' / (kappa~ f~ (1 + f~^2))", ORACLE_TOL),
        Check::rel("binormal.arc_length", "ds_b / ds* = |tau~|", 1e-6),
        Check::rel(
            "binormal.gamma",
            "Gamma_b in terms of f~, f~', (f~'/tau~)', tau~",
            ORACLE_GAMMA_TOL,
        ),
        Check::rel("binormal.torsion_ratio", "tau_b / kappa_b = -Gamma~", 1e-9),
        Check::rel(
            "binormal.gamma_relation",
            "Gamma_b in terms of Gamma~' equals sign(tau~) Gamma_b",
            IDENTITY_TOL,
        ),
        Check::abs("corollary.closed_form", "T_t = -T_b, N_t = T_n = N_b, B_t = -B_b", 1e-9),
        Check::abs(
            "corollary.oracle_oriented",
            "T_t = -e T_b, N_t = T_n = -e N_b, B_t = B_b with e = sign(tau~)",
            ORACLE_TOL,
        ),
        Check::abs(
            "corollary.oracle_as_printed",
            "T_t = -T_b, N_t = T_n = N_b, B_t = -B_b",
            ORACLE_TOL,
        )
        .expected_to_fail("frames of the sampled binormal image satisfy B_b = B_t"),
        Check::abs("similar_curves.normals", "N_t = N_b at corresponding points", 1e-9),
        Check::rel("similar_curves.arc_ratio", "ds_b / ds_t = kappa_t / |kappa_b|", 1e-4),
    ]
}

fn binormal_entries(fx: &Fixture, out: &mut Vec<Entry>) -> Result<()> {
    let n = fx.n();
    let checks = binormal_checks();
    let field = match indicatrix_field(&fx.spec, IndicatrixKind::Binormal, &fx.grid) {
        Ok(f) => f,
        Err(e @ GeometryError::PlanarInvolute { .. }) => {
            out.extend(checks.iter().map(|c| c.skip(n, format!("{}: {e}", e.code()))));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let closed = samples(&field);
    let oracle = fx.oracle(&positions(&closed))?;
    let sup = fx.sup_kappa(&closed);
    let mut corollary = 0.0;
    for &t in &fx.grid {
        corollary = worst(corollary, frenet_vector_corollary(&fx.spec, t)?.max());
    }
    let oriented = frenet_vector_corollary_oracle(&fx.spec, &fx.grid, FrameConvention::Oriented, fx.interior.start)?;
    let printed = frenet_vector_corollary_oracle(&fx.spec, &fx.grid, FrameConvention::Printed, fx.interior.start)?;
    let similar = similar_curves_check(&fx.spec, &fx.grid)?;

    let residuals = [
        unit_norm(&closed),
        residual(fx.pairs(&closed, &oracle, |s| s.kappa), 0.0),
        residual(fx.pairs(&closed, &oracle, |s| s.tau), sup),
        fx.arc_residual(&closed, &oracle),
        residual(fx.pairs(&closed, &oracle, |s| s.gamma_g), 1.0),
        residual(
            field.iter().map(|p| (p.scalars.tau / p.scalars.kappa, -p.gamma_tilde)),
            1.0,
        ),
        residual(
            field.iter().map(|p| {
                (
                    p.gamma_from_gamma_tilde.unwrap_or(f64::NAN),
                    p.rate.signum() * p.scalars.gamma_g,
                )
            }),
            1.0,
        ),
        abs_only([corollary]),
        abs_only([oriented.max()]),
        abs_only([printed.max()]),
        abs_only([similar.max_normal_deviation]),
        residual([(similar.max_ratio_rel_error, 0.0)], 1.0),
    ];
    out.extend(checks.iter().zip(residuals).map(|(c, r)| c.measure(n, r)));
    Ok(())
}

/// Closed forms on the preset's involute and indicatrices against the
/// oracle, plus identities between closed forms.
pub fn run_identity_suite(preset: &Preset, n: usize) -> Result<VerificationReport> {
    let fx = Fixture::new(preset, n)?;
    let entries = identity_entries(&fx)?;
    Ok(VerificationReport::new(fx.metadata(Suite::Identities), entries))
}

fn identity_entries(fx: &Fixture) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    involute_entries(fx, &mut out)?;
    tangent_entries(fx, &mut out)?;
    normal_entries(fx, &mut out)?;
    binormal_entries(fx, &mut out)?;
    Ok(out)
}

/// Classifier verdicts for the curves a theorem talks about.
struct Verdict {
    base: Verdicts,
    involute: Verdicts,
    tangent: Verdicts,
    binormal: std::result::Result<Verdicts, GeometryError>,
}

impl Verdict {
    fn of(spec: &InvoluteSpec, n: usize) -> Result<Self> {
        let classify = |c: &CurveSpec| classify_curve(c, n).map(|r| r.verdicts);
        let base = spec.base().with_domain(spec.domain());
        let binormal = match indicatrix_curve(spec, IndicatrixKind::Binormal) {
            Ok(c) => Ok(classify(&c)?),
            Err(e @ GeometryError::PlanarInvolute { .. }) => Err(e),
            Err(e) => return Err(e),
        };
        Ok(Self {
            base: classify(&base)?,
            involute: classify(&build_involute(spec))?,
            tangent: classify(&indicatrix_curve(spec, IndicatrixKind::Tangent)?)?,
            binormal,
        })
    }
}

fn theorem_entries(fx: &Fixture) -> Result<Vec<Entry>> {
    let n = fx.n();
    let v = Verdict::of(&fx.spec, n)?;
    let (b, i, t) = (&v.base, &v.involute, &v.tangent);
    let mut out = vec![
        Check::verdict(
            "theorem.involute_planar_iff_evolute_helix",
            "the involute is planar iff its evolute is a generalized helix",
        )
        .logic(n, i.is_planar, b.is_generalized_helix, Logic::Iff),
        Check::verdict(
            "theorem.involute_helix_iff_evolute_slant",
            "the involute is a generalized helix iff its evolute is a slant helix",
        )
        .logic(n, i.is_generalized_helix, b.is_slant_helix, Logic::Iff),
        Check::verdict(
            "theorem.involute_slant_iff_evolute_slant",
            "the involute is a slant helix iff its evolute is a slant helix",
        )
        .logic(n, i.is_slant_helix, b.is_slant_helix, Logic::Iff),
        Check::verdict(
            "theorem.tangent_circle_if_evolute_helix",
            "evolute is a generalized helix implies the tangent image is a circle",
        )
        .logic(n, b.is_generalized_helix, t.is_spherical_circle, Logic::Implies),
        Check::verdict(
            "theorem.tangent_circle_only_if_evolute_helix",
            "tangent image is a circle implies the evolute is a generalized helix",
        )
        .expected_to_fail("converse fails for evolutes that are slant helices but not generalized helices")
        .logic(n, t.is_spherical_circle, b.is_generalized_helix, Logic::Implies),
        Check::verdict(
            "theorem.tangent_circle_iff_evolute_slant",
            "the tangent image is a circle iff the evolute is a slant helix",
        )
        .logic(n, t.is_spherical_circle, b.is_slant_helix, Logic::Iff),
        Check::verdict(
            "theorem.tangent_helix_iff_involute_slant",
            "the tangent image is a spherical helix iff the involute is a slant helix",
        )
        .logic(n, t.is_generalized_helix, i.is_slant_helix, Logic::Iff),
        Check::verdict(
            "theorem.tangent_helix_if_evolute_slant",
            "evolute is a slant helix implies the tangent image is a generalized helix",
        )
        .logic(n, b.is_slant_helix, t.is_generalized_helix, Logic::Implies),
        Check::verdict(
            "theorem.tangent_slant_if_involute_slant",
            "involute is a slant helix implies the tangent image is a spherical slant helix",
        )
        .logic(n, i.is_slant_helix, t.is_slant_helix, Logic::Implies),
    ];
    let binormal = [
        Check::verdict(
            "theorem.binormal_circle_iff_involute_helix",
            "the binormal image is a circle iff the involute is a generalized helix",
        ),
        Check::verdict(
            "theorem.binormal_helix_iff_involute_slant",
            "the binormal image is a spherical helix iff the involute is a slant helix",
        ),
        Check::verdict(
            "theorem.binormal_slant_iff_involute_slant",
            "the binormal image is a spherical slant helix iff the involute is a slant helix",
        ),
        Check::verdict(
            "theorem.binormal_circle_iff_evolute_slant",
            "the binormal image is a circle iff the evolute is a slant helix",
        ),
    ];
    match &v.binormal {
        Ok(bn) => {
            let sides = [
                (bn.is_spherical_circle, i.is_generalized_helix),
                (bn.is_generalized_helix, i.is_slant_helix),
                (bn.is_slant_helix, i.is_slant_helix),
                (bn.is_spherical_circle, b.is_slant_helix),
            ];
            out.extend(
                binormal
                    .iter()
                    .zip(sides)
                    .map(|(c, (l, r))| c.logic(n, l, r, Logic::Iff)),
            );
        }
        Err(e) => out.extend(binormal.iter().map(|c| c.skip(n, format!("{}: {e}", e.code())))),
    }

    let control = preset("fourier").expect("fourier preset exists");
    let cfx = Fixture::new(&control, n)?;
    let cv = Verdict::of(&cfx.spec, n)?;
    out.push(
        Check::verdict(
            "negative_control.involute_helix_iff_evolute_slant",
            "random Fourier curve: neither side holds",
        )
        .logic(
            n,
            cv.involute.is_generalized_helix,
            cv.base.is_slant_helix,
            Logic::BothFalse,
        ),
    );
    out.push(
        Check::verdict(
            "negative_control.tangent_circle_iff_evolute_slant",
            "random Fourier curve: neither side holds",
        )
        .logic(
            n,
            cv.tangent.is_spherical_circle,
            cv.base.is_slant_helix,
            Logic::BothFalse,
        ),
    );
    Ok(out)
}

/// Two-sided theorem checks through the classifier, with negative controls
/// on the random Fourier fixture.
pub fn run_theorem_suite(preset: &Preset, n: usize) -> Result<VerificationReport> {
    let fx = Fixture::new(preset, n)?;
    let entries = theorem_entries(&fx)?;
    Ok(VerificationReport::new(fx.metadata(Suite::Theorems), entries))
}

pub fn run_suite(preset: &Preset, suite: Suite, n: usize) -> Result<VerificationReport> {
    let fx = Fixture::new(preset, n)?;
    let entries = match suite {
        Suite::Identities => identity_entries(&fx)?,
        Suite::Theorems => theorem_entries(&fx)?,
        Suite::All => {
            let mut e = identity_entries(&fx)?;
            e.extend(theorem_entries(&fx)?);
            e
        }
    };
    Ok(VerificationReport::new(fx.metadata(suite), entries))
}
