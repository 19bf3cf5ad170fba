//! Tangent, principal-normal and binormal spherical indicatrices of an
//! involute, with their closed-form frames, curvatures, torsions and Γ.
//!
//! Closed forms are evaluated from involute jets in the base parameter, so
//! derivatives along `s*` are exact. The principal-normal data carries both
//! the formulas as printed in the literature and the corrected curvature
//! and torsion, plus a finite-difference estimate at the same point.

use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;
use serde::Serialize;

use crate::arclength::ArcLengthMap;
use crate::curve::{central_difference, CurveSpec, Domain};
use crate::error::{GeometryError, Result};
use crate::frenet::FrenetSample;
use crate::involute::{InvoluteJets, InvoluteSpec};
use crate::jet::{Jet, JetVec3};
use crate::oracle::{numeric_frenet_oracle, STENCIL_WIDTH};
use crate::quadrature::integrate;

/// |f~| below which the binormal indicatrix is treated as degenerate.
pub const BINORMAL_FLOOR: f64 = 1e-8;

/// Base jet order used by the tangent and binormal closed forms.
pub const INDICATRIX_ORDER: usize = 6;

/// Base jet order used by the principal-normal closed forms.
pub const NORMAL_ORDER: usize = 7;

/// Grids coarser than this are flagged by [`similar_curves_check`].
pub const MIN_RESOLVED_GRID: usize = 100;

const LOCAL_STEP: f64 = 2e-3;
const ARC_NODES: usize = 64;
const PROBE_POINTS: usize = 257;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndicatrixKind {
    Tangent,
    PrincipalNormal,
    Binormal,
}

impl IndicatrixKind {
    pub const ALL: [IndicatrixKind; 3] = [
        IndicatrixKind::Tangent,
        IndicatrixKind::PrincipalNormal,
        IndicatrixKind::Binormal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IndicatrixKind::Tangent => "tangent",
            IndicatrixKind::PrincipalNormal => "normal",
            IndicatrixKind::Binormal => "binormal",
        }
    }
}

impl fmt::Display for IndicatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndicatrixKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tangent" => Ok(IndicatrixKind::Tangent),
            "normal" | "principal_normal" => Ok(IndicatrixKind::PrincipalNormal),
            "binormal" => Ok(IndicatrixKind::Binormal),
            other => Err(format!("unknown indicatrix kind `{other}`")),
        }
    }
}

/// Closed-form scalars of an indicatrix as printed. `rho` and `sigma` are
/// only defined for the principal-normal kind.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndicatrixScalars {
    pub kappa: f64,
    pub tau: f64,
    pub gamma_g: f64,
    pub rho: Option<f64>,
    pub sigma: Option<f64>,
}

/// Principal-normal quantities that disagree with the printed closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalErrata {
    /// rho / (kappa~^2 (1+f~^2)^3).
    pub kappa_printed: f64,
    /// rho / (kappa~ (1+f~^2)^(3/2)) = sqrt(1 + Γ~^2).
    pub kappa_corrected: f64,
    /// Γ~' / (kappa~ sqrt(1+f~^2) (1+Γ~^2)).
    pub tau_corrected: f64,
    /// Finite-difference curvature of the sampled indicatrix at this point.
    pub oracle_kappa: f64,
    pub oracle_tau: f64,
    /// Norm of the printed normal and binormal vectors before normalization.
    pub frame_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicatrixPoint {
    pub kind: IndicatrixKind,
    /// Frame, position and scalars. `s` is the geometric arc length of the
    /// indicatrix from the anchor; for the principal-normal kind `kappa`,
    /// `tau` and `gamma_g` are the corrected values.
    pub sample: FrenetSample,
    pub scalars: IndicatrixScalars,
    /// ds_ind/ds*, signed (the binormal rate is tau~).
    pub rate: f64,
    /// Γ~ of the involute.
    pub gamma_tilde: f64,
    /// Indicatrix Γ through its relation to Γ~ (tangent and binormal).
    pub gamma_from_gamma_tilde: Option<f64>,
    pub errata: Option<NormalErrata>,
}

/// Involute quantities and their s*-derivatives at one point.
struct Local {
    j: InvoluteJets,
    t: Vector3<f64>,
    n: Vector3<f64>,
    b: Vector3<f64>,
    kappa: f64,
    kappa1: f64,
    tau: f64,
    f: f64,
    f1: f64,
    f2: f64,
    gamma: f64,
    gamma1: f64,
}

fn local(spec: &InvoluteSpec, t: f64, order: usize) -> Result<Local> {
    let j = spec.jets(t, order)?;
    let f1 = j.d_ds_star(&j.f);
    let f2 = j.d_ds_star(&f1);
    let g = j.gamma();
    Ok(Local {
        t: j.tangent.value(),
        n: j.normal.value(),
        b: j.binormal.value(),
        kappa: j.kappa.value(),
        kappa1: j.d_ds_star(&j.kappa).value(),
        tau: j.tau.value(),
        f: j.f.value(),
        f1: f1.value(),
        f2: f2.value(),
        gamma: g.value(),
        gamma1: j.d_ds_star(&g).value(),
        j,
    })
}

/// ds_ind/dt for each kind (signed for the binormal kind).
fn rate_dt(spec: &InvoluteSpec, kind: IndicatrixKind, t: f64) -> Result<f64> {
    let j = spec.jets(t, 5)?;
    let v = match kind {
        IndicatrixKind::Tangent => j.kappa * j.ds_star_dt,
        IndicatrixKind::PrincipalNormal => j.kappa * (j.f * j.f + 1.0).sqrt() * j.ds_star_dt,
        IndicatrixKind::Binormal => j.tau * j.ds_star_dt,
    };
    Ok(v.value())
}

fn indicatrix_jet(j: &InvoluteJets, kind: IndicatrixKind) -> JetVec3 {
    match kind {
        IndicatrixKind::Tangent => j.tangent,
        IndicatrixKind::PrincipalNormal => j.normal,
        IndicatrixKind::Binormal => j.binormal,
    }
}

/// Refuses involutes whose torsion vanishes or changes sign on the
/// working subdomain.
fn check_binormal(spec: &InvoluteSpec) -> Result<()> {
    let mut sign = 0.0;
    for t in spec.domain().grid(PROBE_POINTS) {
        let f = spec.jets(t, 5)?.f.value();
        if f.abs() < BINORMAL_FLOOR || f.signum() * sign < 0.0 {
            return Err(GeometryError::PlanarInvolute { t });
        }
        sign = f.signum();
    }
    Ok(())
}

/// The indicatrix as a unit-sphere curve in the base parameter.
pub fn indicatrix_curve(spec: &InvoluteSpec, kind: IndicatrixKind) -> Result<CurveSpec> {
    if kind == IndicatrixKind::Binormal {
        check_binormal(spec)?;
    }
    let lift = if kind == IndicatrixKind::Tangent { 2 } else { 3 };
    let me = spec.clone();
    let base = spec.base();
    Ok(CurveSpec::from_jet_fn(
        format!("{kind}_indicatrix({})", base.label()),
        spec.domain(),
        base.max_order().saturating_sub(lift),
        base.derivative_source(),
        move |t, order| {
            let j = me.jets(t, order + lift).expect("order checked by caller");
            indicatrix_jet(&j, kind).truncate(order)
        },
    ))
}

/// Geometric arc length of the indicatrix, zero at the spec's anchor.
pub fn indicatrix_arc(spec: &InvoluteSpec, kind: IndicatrixKind) -> Result<ArcLengthMap> {
    if kind == IndicatrixKind::Binormal {
        check_binormal(spec)?;
    }
    let me = spec.clone();
    let d = spec.domain();
    ArcLengthMap::from_speed(
        d.grid(ARC_NODES),
        spec.s_anchor().clamp(d.min, d.max),
        move |t| rate_dt(&me, kind, t).map(f64::abs).unwrap_or(f64::NAN),
        ARC_NODES,
    )
}

fn arc_from_anchor(spec: &InvoluteSpec, kind: IndicatrixKind, t: f64) -> f64 {
    let d = spec.domain();
    let anchor = spec.s_anchor().clamp(d.min, d.max);
    let rate = |x: f64| rate_dt(spec, kind, x).map(f64::abs).unwrap_or(f64::NAN);
    integrate(&rate, anchor, t, 1e-13, 1e-15).value
}

fn sample(
    t: f64,
    s: f64,
    position: Vector3<f64>,
    frame: [Vector3<f64>; 3],
    kappa: f64,
    tau: f64,
    gamma_g: f64,
) -> FrenetSample {
    FrenetSample {
        t,
        s,
        position,
        tangent: frame[0],
        normal: frame[1],
        binormal: frame[2],
        kappa,
        tau,
        f: tau / kappa,
        gamma_g,
    }
}

fn tangent_at(spec: &InvoluteSpec, t: f64, s: f64) -> Result<IndicatrixPoint> {
    let l = local(spec, t, INDICATRIX_ORDER)?;
    let one = 1.0 + l.f * l.f;
    let root = one.sqrt();
    let kappa = root;
    let tau = l.f1 / (l.kappa * one);
    let denom = (l.kappa * l.kappa * one.powi(3) + l.f1 * l.f1).powf(1.5);
    let gamma_g =
        (one * (l.f2 * l.kappa - l.f1 * l.kappa1) - 3.0 * l.kappa * l.f * l.f1 * l.f1) * one.powf(1.5) / denom;
    let relation = l.kappa * l.kappa * one.powi(4) * l.gamma1 / denom;
    let frame = [l.n, (l.b * l.f - l.t) / root, (l.t * l.f + l.b) / root];
    Ok(IndicatrixPoint {
        kind: IndicatrixKind::Tangent,
        sample: sample(t, s, l.t, frame, kappa, tau, gamma_g),
        scalars: IndicatrixScalars {
            kappa,
            tau,
            gamma_g,
            rho: None,
            sigma: None,
        },
        rate: l.kappa,
        gamma_tilde: l.gamma,
        gamma_from_gamma_tilde: Some(relation),
        errata: None,
    })
}

fn binormal_at(spec: &InvoluteSpec, t: f64, s: f64) -> Result<IndicatrixPoint> {
    let l = local(spec, t, INDICATRIX_ORDER)?;
    if l.f.abs() < BINORMAL_FLOOR {
        return Err(GeometryError::PlanarInvolute { t });
    }
    let one = 1.0 + l.f * l.f;
    let root = one.sqrt();
    let kappa = root / l.f;
    let tau = -l.f1 / (l.kappa * l.f * one);
    let q1 = l.j.d_ds_star(&(l.j.d_ds_star(&l.j.f) / l.j.tau)).value();
    let num = one.powf(2.5) * (-l.f * l.f1 * l.f1 * l.tau - l.tau * l.tau * l.f * l.f * q1)
        + 3.0 * l.tau * l.f.powi(3) * l.f1 * l.f1 * one.powf(1.5);
    let gamma_g = num / (l.tau * l.tau * one.powi(3) + l.f * l.f * l.f1 * l.f1).powf(1.5);
    let relation = -l.gamma1 / (l.kappa * root * (1.0 + l.gamma * l.gamma).powf(1.5));
    let frame = [-l.n, (l.b * l.f - l.t) / root, (-l.t * l.f - l.b) / root];
    let mut smp = sample(t, s, l.b, frame, kappa.abs(), tau, gamma_g);
    smp.f = tau / kappa.abs();
    Ok(IndicatrixPoint {
        kind: IndicatrixKind::Binormal,
        sample: smp,
        scalars: IndicatrixScalars {
            kappa,
            tau,
            gamma_g,
            rho: None,
            sigma: None,
        },
        rate: l.tau,
        gamma_tilde: l.gamma,
        gamma_from_gamma_tilde: Some(relation),
        errata: None,
    })
}

/// Oracle curvature and torsion of the principal-normal image from seven
/// nearby samples.
fn local_oracle(spec: &InvoluteSpec, t: f64) -> Result<(f64, f64)> {
    let d = spec.domain();
    let last = STENCIL_WIDTH - 1;
    let h = LOCAL_STEP.min(d.width() / (2 * STENCIL_WIDTH) as f64);
    // index of t inside the window, shifted so the window stays in the domain
    let before = (((t - d.min) / h).floor() as usize).min(last / 2);
    let after = (((d.max - t) / h).floor() as usize).min(last);
    let k = before.max(last - after.min(last));
    let grid: Vec<f64> = (0..STENCIL_WIDTH).map(|i| t + (i as f64 - k as f64) * h).collect();
    let mut points = Vec::with_capacity(STENCIL_WIDTH);
    for &x in &grid {
        points.push(spec.jets(x, 4)?.normal.value());
    }
    let field = numeric_frenet_oracle(&points, &grid)?;
    Ok((field.samples[k].kappa, field.samples[k].tau))
}

/// Printed torsion of the principal-normal image.
fn sigma_jet(j: &InvoluteJets) -> Jet {
    let k = j.kappa;
    let f = j.f;
    let f1 = j.d_ds_star(&f);
    let one = f * f + 1.0;
    let rho = (f1 * f1 + k * k * one.powi(3)).sqrt();
    let a = k * k * one.powf(2.5) / rho;
    let c = k * f1 * one.powf(1.5) / rho;
    let first = -(f * f1 * f1 * k * k * one.powi(3)) / (rho * rho);
    let second = -(f1 * one.powf(1.5)) / rho * j.d_ds_star(&a);
    let third = j.d_ds_star(&c) * (k * one.powf(2.5) / rho);
    first + second + third
}

fn normal_at(spec: &InvoluteSpec, t: f64, s: f64) -> Result<IndicatrixPoint> {
    let l = local(spec, t, NORMAL_ORDER)?;
    let one = 1.0 + l.f * l.f;
    let root = one.sqrt();
    let rho = (l.f1 * l.f1 + l.kappa * l.kappa * one.powi(3)).sqrt();
    let kappa_printed = rho / (l.kappa * l.kappa * one.powi(3));
    let sigma = sigma_jet(&l.j).value();

    // sigma' along the indicatrix arc length, by central differences in t
    let sig = |x: f64| {
        Vector3::new(
            spec.jets(x, INDICATRIX_ORDER)
                .map(|j| sigma_jet(&j).value())
                .unwrap_or(f64::NAN),
            0.0,
            0.0,
        )
    };
    let rate_t = l.kappa * root * l.j.ds_star_dt.value();
    let sigma1 = central_difference(&sig, t, 1).x / rate_t;
    let gamma_printed = l.kappa
        * l.kappa
        * (one * (sigma1 * l.kappa + 2.0 * sigma * l.kappa1) + 6.0 * sigma * l.kappa * l.f * l.f1)
        * one.powf(4.5)
        / (rho * rho + sigma * sigma * l.kappa.powi(4) * one.powi(6)).powf(1.5);

    // corrected forms as jets
    let j = &l.j;
    let g = j.gamma();
    let g1 = j.d_ds_star(&g);
    let froot = (j.f * j.f + 1.0).sqrt();
    let kn = (g * g + 1.0).sqrt();
    let tn = g1 / (j.kappa * froot * (g * g + 1.0));
    let fn_ = tn / kn;
    let fn1 = j.d_ds_star(&fn_) / (j.kappa * froot);
    let kn_v = kn.value();
    let tn_v = tn.value();
    let ffn = fn_.value();
    let gamma_corrected = fn1.value() / (kn_v * (1.0 + ffn * ffn).powf(1.5));

    let tn_vec = (l.b * l.f - l.t) / root;
    let nn_raw = (l.t * (l.kappa * l.f * l.f1 * one) - l.n * (l.kappa * l.kappa * one.powi(3))
        + l.b * (l.kappa * l.f1 * one))
        / rho;
    let bn_raw = (l.t * (l.kappa * l.kappa * l.f * one.powf(2.5))
        + l.n * (l.kappa * l.f1 * one.powf(1.5))
        + l.b * (l.kappa * l.kappa * one.powf(2.5)))
        / rho;
    let frame_norm = nn_raw.norm();
    let frame = [tn_vec, nn_raw / nn_raw.norm(), bn_raw / bn_raw.norm()];

    let (oracle_kappa, oracle_tau) = local_oracle(spec, t)?;
    Ok(IndicatrixPoint {
        kind: IndicatrixKind::PrincipalNormal,
        sample: sample(t, s, l.n, frame, kn_v, tn_v, gamma_corrected),
        scalars: IndicatrixScalars {
            kappa: kappa_printed,
            tau: sigma,
            gamma_g: gamma_printed,
            rho: Some(rho),
            sigma: Some(sigma),
        },
        rate: l.kappa * root,
        gamma_tilde: l.gamma,
        gamma_from_gamma_tilde: None,
        errata: Some(NormalErrata {
            kappa_printed,
            kappa_corrected: rho / (l.kappa * one.powf(1.5)),
            tau_corrected: tn_v,
            oracle_kappa,
            oracle_tau,
            frame_norm,
        }),
    })
}

fn point_at(spec: &InvoluteSpec, kind: IndicatrixKind, t: f64, s: f64) -> Result<IndicatrixPoint> {
    match kind {
        IndicatrixKind::Tangent => tangent_at(spec, t, s),
        IndicatrixKind::PrincipalNormal => normal_at(spec, t, s),
        IndicatrixKind::Binormal => binormal_at(spec, t, s),
    }
}

pub fn tangent_indicatrix_data(spec: &InvoluteSpec, t: f64) -> Result<IndicatrixPoint> {
    tangent_at(spec, t, arc_from_anchor(spec, IndicatrixKind::Tangent, t))
}

pub fn normal_indicatrix_data(spec: &InvoluteSpec, t: f64) -> Result<IndicatrixPoint> {
    normal_at(spec, t, arc_from_anchor(spec, IndicatrixKind::PrincipalNormal, t))
}

pub fn binormal_indicatrix_data(spec: &InvoluteSpec, t: f64) -> Result<IndicatrixPoint> {
    binormal_at(spec, t, arc_from_anchor(spec, IndicatrixKind::Binormal, t))
}

/// Indicatrix data on a strictly increasing grid with cumulative arc length.
pub fn indicatrix_field(spec: &InvoluteSpec, kind: IndicatrixKind, grid: &[f64]) -> Result<Vec<IndicatrixPoint>> {
    if kind == IndicatrixKind::Binormal {
        check_binormal(spec)?;
    }
    let rate = |x: f64| rate_dt(spec, kind, x).map(f64::abs).unwrap_or(f64::NAN);
    let mut out = Vec::with_capacity(grid.len());
    let mut prev: Option<(f64, f64)> = None;
    for &t in grid {
        let s = match prev {
            Some((tp, sp)) => sp + integrate(&rate, tp, t, 1e-13, 1e-15).value,
            None => arc_from_anchor(spec, kind, t),
        };
        prev = Some((t, s));
        out.push(point_at(spec, kind, t, s)?);
    }
    Ok(out)
}

/// Norms of the four relations between indicatrix frames.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct CorollaryResiduals {
    /// |T_t + T_b|
    pub tangent_pair: f64,
    /// |N_t - T_n|
    pub normal_tangent: f64,
    /// |N_t - N_b|
    pub normal_pair: f64,
    /// |B_t + B_b|
    pub binormal_pair: f64,
}

impl CorollaryResiduals {
    pub fn max(&self) -> f64 {
        self.tangent_pair
            .max(self.normal_tangent)
            .max(self.normal_pair)
            .max(self.binormal_pair)
    }

    fn merge(&mut self, o: &CorollaryResiduals) {
        self.tangent_pair = self.tangent_pair.max(o.tangent_pair);
        self.normal_tangent = self.normal_tangent.max(o.normal_tangent);
        self.normal_pair = self.normal_pair.max(o.normal_pair);
        self.binormal_pair = self.binormal_pair.max(o.binormal_pair);
    }
}

/// Frame relations from the closed-form frames at `t`.
pub fn frenet_vector_corollary(spec: &InvoluteSpec, t: f64) -> Result<CorollaryResiduals> {
    let tp = tangent_at(spec, t, 0.0)?.sample;
    let bp = binormal_at(spec, t, 0.0)?.sample;
    let l = local(spec, t, INDICATRIX_ORDER)?;
    let tn = (l.b * l.f - l.t) / (1.0 + l.f * l.f).sqrt();
    Ok(CorollaryResiduals {
        tangent_pair: (tp.tangent + bp.tangent).norm(),
        normal_tangent: (tp.normal - tn).norm(),
        normal_pair: (tp.normal - bp.normal).norm(),
        binormal_pair: (tp.binormal + bp.binormal).norm(),
    })
}

/// How oracle frames of the binormal image are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameConvention {
    /// The relations exactly as stated: T_t = -T_b, N_t = N_b, B_t = -B_b.
    Printed,
    /// With e = sign(tau~): T_t = -e T_b, N_t = -e N_b, B_t = B_b. This is
    /// what the Frenet equations of the binormal image give.
    Oriented,
}

/// Frame relations from finite-difference frames of the three sampled
/// indicatrices, maximized over interior points of `grid`.
pub fn frenet_vector_corollary_oracle(
    spec: &InvoluteSpec,
    grid: &[f64],
    convention: FrameConvention,
    skip: usize,
) -> Result<CorollaryResiduals> {
    check_binormal(spec)?;
    let mut clouds: [Vec<Vector3<f64>>; 3] = Default::default();
    let mut signs = Vec::with_capacity(grid.len());
    for &t in grid {
        let j = spec.jets(t, 5)?;
        clouds[0].push(j.tangent.value());
        clouds[1].push(j.normal.value());
        clouds[2].push(j.binormal.value());
        signs.push(j.tau.value().signum());
    }
    let ft = numeric_frenet_oracle(&clouds[0], grid)?;
    let fnl = numeric_frenet_oracle(&clouds[1], grid)?;
    let fb = numeric_frenet_oracle(&clouds[2], grid)?;
    let mut out = CorollaryResiduals::default();
    let n = grid.len();
    for i in skip..n.saturating_sub(skip) {
        let (a, m, b) = (&ft.samples[i], &fnl.samples[i], &fb.samples[i]);
        let e = match convention {
            FrameConvention::Printed => 1.0,
            FrameConvention::Oriented => signs[i],
        };
        let r = match convention {
            FrameConvention::Printed => CorollaryResiduals {
                tangent_pair: (a.tangent + b.tangent).norm(),
                normal_tangent: (a.normal - m.tangent).norm(),
                normal_pair: (a.normal - b.normal).norm(),
                binormal_pair: (a.binormal + b.binormal).norm(),
            },
            FrameConvention::Oriented => CorollaryResiduals {
                tangent_pair: (a.tangent + b.tangent * e).norm(),
                normal_tangent: (a.normal - m.tangent).norm(),
                normal_pair: (a.normal + b.normal * e).norm(),
                binormal_pair: (a.binormal - b.binormal).norm(),
            },
        };
        out.merge(&r);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimilarCurvesReport {
    pub grid_size: usize,
    /// max |N_t - N_b| at corresponding points.
    pub max_normal_deviation: f64,
    /// max relative error of Δs_b / Δs_t against |kappa_t / kappa_b|.
    pub max_ratio_rel_error: f64,
    pub below_resolution: bool,
}

/// Checks that the tangent and binormal images share principal normals
/// under the arc-length transformation ds_b/ds_t = kappa_t / kappa_b.
pub fn similar_curves_check(spec: &InvoluteSpec, grid: &[f64]) -> Result<SimilarCurvesReport> {
    if grid.len() < 2 {
        return Err(GeometryError::GridTooCoarse(
            "similar-curves check needs two points".into(),
        ));
    }
    let at = indicatrix_arc(spec, IndicatrixKind::Tangent)?;
    let ab = indicatrix_arc(spec, IndicatrixKind::Binormal)?;
    let mut dev: f64 = 0.0;
    for &t in grid {
        let tp = tangent_at(spec, t, 0.0)?.sample;
        let bp = binormal_at(spec, t, 0.0)?.sample;
        dev = dev.max((tp.normal - bp.normal).norm());
    }
    let mut ratio_err: f64 = 0.0;
    for w in grid.windows(2) {
        let ds_t = integrate(&|x| at.speed(x), w[0], w[1], 1e-13, 1e-15).value;
        let ds_b = integrate(&|x| ab.speed(x), w[0], w[1], 1e-13, 1e-15).value;
        let mid = 0.5 * (w[0] + w[1]);
        let tp = tangent_at(spec, mid, 0.0)?.scalars;
        let bp = binormal_at(spec, mid, 0.0)?.scalars;
        let expect = (tp.kappa / bp.kappa).abs();
        ratio_err = ratio_err.max((ds_b / ds_t - expect).abs() / expect);
    }
    Ok(SimilarCurvesReport {
        grid_size: grid.len(),
        max_normal_deviation: dev,
        max_ratio_rel_error: ratio_err,
        below_resolution: grid.len() < MIN_RESOLVED_GRID,
    })
}

/// Grid over the working subdomain of `spec`.
pub fn working_grid(spec: &InvoluteSpec, n: usize) -> Vec<f64> {
    let d: Domain = spec.domain();
    d.grid(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{circle, circular_helix, kula_slant_helix, random_fourier};
    use crate::frenet::FrenetJets;

    fn kula() -> InvoluteSpec {
        let base = kula_slant_helix(0.25, Domain::new(-1.2, 1.2).unwrap()).unwrap();
        InvoluteSpec::with_anchor(&base, 2.0, 0.0).unwrap()
    }

    fn fourier() -> InvoluteSpec {
        InvoluteSpec::new(&random_fourier(7, Domain::new(0.0, 2.0).unwrap()), 12.0).unwrap()
    }

    /// Generic Frenet data of an indicatrix curve, reparametrized by its own arc length.
    fn generic(spec: &InvoluteSpec, kind: IndicatrixKind, t: f64) -> (f64, f64, f64) {
        let c = indicatrix_curve(spec, kind).unwrap();
        let j = FrenetJets::from_position(c.jet(t, 4).unwrap());
        (j.kappa.value(), j.tau.value(), j.gamma().value())
    }

    #[test]
    fn points_lie_on_unit_sphere() {
        let spec = fourier();
        for kind in [IndicatrixKind::Tangent, IndicatrixKind::PrincipalNormal] {
            let c = indicatrix_curve(&spec, kind).unwrap();
            for t in spec.domain().grid(50) {
                assert!((c.position(t).norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn tangent_closed_forms_match_generic() {
        let spec = fourier();
        for t in [0.3, 1.1, 1.8] {
            let p = tangent_indicatrix_data(&spec, t).unwrap();
            let (k, tau, g) = generic(&spec, IndicatrixKind::Tangent, t);
            assert!((p.scalars.kappa - k).abs() < 1e-12 * k);
            assert!((p.scalars.tau - tau).abs() < 1e-10 * k);
            assert!((p.scalars.gamma_g - g).abs() < 1e-8 * g.abs().max(1.0));
            assert!((p.gamma_from_gamma_tilde.unwrap() - g).abs() < 1e-8 * g.abs().max(1.0));
            assert!((p.scalars.tau / p.scalars.kappa - p.gamma_tilde).abs() < 1e-12);
        }
    }

    #[test]
    fn binormal_closed_forms_match_generic_up_to_orientation() {
        let spec = InvoluteSpec::new(&random_fourier(50, Domain::new(0.0, 1.0).unwrap()), 4.0).unwrap();
        for t in [0.1, 0.5, 0.8] {
            let p = binormal_indicatrix_data(&spec, t).unwrap();
            let (k, tau, g) = generic(&spec, IndicatrixKind::Binormal, t);
            let e = p.rate.signum();
            assert!((p.scalars.kappa.abs() - k).abs() < 1e-10 * k);
            assert!((p.scalars.tau - tau).abs() < 1e-9 * k);
            assert!((p.scalars.gamma_g - g).abs() < 1e-8 * g.abs().max(1.0));
            // the relation to Γ~' is taken along the signed s_b
            assert!((p.gamma_from_gamma_tilde.unwrap() - e * g).abs() < 1e-8 * g.abs().max(1.0));
            assert!((p.scalars.tau / p.scalars.kappa + p.gamma_tilde).abs() < 1e-12);
        }
    }

    #[test]
    fn normal_corrected_forms_match_generic() {
        let spec = fourier();
        for t in [0.3, 1.1, 1.8] {
            let p = normal_indicatrix_data(&spec, t).unwrap();
            let (k, tau, g) = generic(&spec, IndicatrixKind::PrincipalNormal, t);
            let e = p.errata.unwrap();
            assert!((e.kappa_corrected - k).abs() < 1e-12 * k);
            assert!((p.sample.kappa - k).abs() < 1e-12 * k);
            assert!((p.sample.tau - tau).abs() < 1e-9 * k);
            assert!((p.sample.gamma_g - g).abs() < 1e-7 * g.abs().max(1.0));
            assert!((e.oracle_kappa - k).abs() < 1e-6 * k);
            assert!((e.oracle_tau - tau).abs() < 1e-5 * k);
            assert!(p.sample.orthonormality_defect() < 1e-12);
            assert!((p.sample.tangent.cross(&p.sample.normal) - p.sample.binormal).norm() < 1e-12);
        }
    }

    #[test]
    fn printed_normal_curvature_fails_on_a_great_circle() {
        // f~' = 0: the normal image of the helix involute is a great circle
        let base = circular_helix(3.0, 4.0, Domain::new(0.0, 30.0).unwrap());
        let spec = InvoluteSpec::new(&base, 40.0).unwrap();
        let p = normal_indicatrix_data(&spec, 12.0).unwrap();
        let e = p.errata.unwrap();
        assert!((e.oracle_kappa - 1.0).abs() < 1e-6);
        assert!((e.kappa_corrected - 1.0).abs() < 1e-12);
        assert!((e.kappa_printed - 1.0).abs() > 1e-3);
    }

    #[test]
    fn binormal_refused_when_torsion_changes_sign() {
        let e = indicatrix_curve(&fourier(), IndicatrixKind::Binormal).unwrap_err();
        assert_eq!(e.code(), "PLANAR_INVOLUTE");
    }

    #[test]
    fn binormal_refused_for_planar_involute() {
        let spec = InvoluteSpec::new(&circle(1.0, Domain::new(0.0, 6.0).unwrap()), 10.0).unwrap();
        let e = indicatrix_curve(&spec, IndicatrixKind::Binormal).unwrap_err();
        assert_eq!(e.code(), "PLANAR_INVOLUTE");
        assert_eq!(
            binormal_indicatrix_data(&spec, 1.0).unwrap_err().code(),
            "PLANAR_INVOLUTE"
        );
    }

    #[test]
    fn kula_tangent_image_is_a_small_circle() {
        let spec = kula();
        for t in spec.domain().grid(21) {
            let p = tangent_indicatrix_data(&spec, t).unwrap();
            assert!((p.scalars.kappa - 1.0625f64.sqrt()).abs() < 1e-12);
            assert!(p.scalars.tau.abs() < 1e-10);
        }
    }

    #[test]
    fn corollary_closed_forms() {
        let spec = kula();
        for t in spec.domain().grid(11) {
            assert!(frenet_vector_corollary(&spec, t).unwrap().max() < 1e-12);
        }
    }

    #[test]
    fn corollary_oracle_needs_orientation() {
        let spec = kula();
        let grid = spec.domain().grid(801);
        let oriented = frenet_vector_corollary_oracle(&spec, &grid, FrameConvention::Oriented, 21).unwrap();
        assert!(oriented.max() < 1e-5, "{oriented:?}");
        let printed = frenet_vector_corollary_oracle(&spec, &grid, FrameConvention::Printed, 21).unwrap();
        assert!(printed.binormal_pair > 1.0);
    }

    #[test]
    fn similar_curves() {
        let spec = kula();
        let r = similar_curves_check(&spec, &spec.domain().grid(200)).unwrap();
        assert!(r.max_normal_deviation < 1e-12);
        assert!(r.max_ratio_rel_error < 1e-6);
        assert!(!r.below_resolution);
        assert!(
            similar_curves_check(&spec, &spec.domain().grid(20))
                .unwrap()
                .below_resolution
        );
    }

    #[test]
    fn field_arc_length_matches_pointwise() {
        let spec = fourier();
        let grid = spec.domain().grid(30);
        let f = indicatrix_field(&spec, IndicatrixKind::Tangent, &grid).unwrap();
        let p = tangent_indicatrix_data(&spec, grid[17]).unwrap();
        assert!((f[17].sample.s - p.sample.s).abs() < 1e-11);
        assert!(f.windows(2).all(|w| w[1].sample.s > w[0].sample.s));
    }
}
