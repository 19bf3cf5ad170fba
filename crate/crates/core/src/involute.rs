//! Involute `s -> gamma(s) + (c - s) T(s)` of a base curve and its
//! closed-form Frenet apparatus.
//!
//! All operations are indexed by the base curve parameter `t`. Arc lengths
//! (base `s`, involute `s*`) are measured from a common anchor parameter.

use std::sync::{Arc, OnceLock};

use nalgebra::Vector3;
use serde::Serialize;

use crate::arclength::ArcLengthMap;
use crate::curve::{CurveSpec, Domain};
use crate::error::{GeometryError, Result};
use crate::frenet::{frenet_jets, FrenetJets, FrenetSample};
use crate::jet::{Jet, JetVec3};

/// Minimum `c - s` kept on the working subdomain.
pub const CLEARANCE: f64 = 1e-3;

/// Below this |f~| (and |f~'| / kappa~) the involute is treated as planar.
pub const PLANAR_TOL: f64 = 1e-10;

const ARC_NODES: usize = 64;
const PROBE_POINTS: usize = 257;

/// Base order needed for the involute frame and scalars including Γ~.
pub const SCALAR_ORDER: usize = 5;

#[derive(Debug, Clone)]
pub struct InvoluteSpec {
    base: CurveSpec,
    c: f64,
    s_anchor: f64,
    arc: ArcLengthMap,
    involute_arc: Arc<OnceLock<Result<ArcLengthMap>>>,
}

impl InvoluteSpec {
    /// Involute with base arc length measured from the start of the domain.
    pub fn new(base: &CurveSpec, c: f64) -> Result<Self> {
        Self::with_anchor(base, c, base.domain().min)
    }

    /// Involute with base arc length zero at parameter `s_anchor`.
    pub fn with_anchor(base: &CurveSpec, c: f64, s_anchor: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(GeometryError::NonFinite(format!("involute constant {c}")));
        }
        let arc = ArcLengthMap::anchored(base, ARC_NODES, s_anchor)?;
        let s_max = arc.s_max();
        if c <= s_max {
            return Err(GeometryError::BadConstant { c, s_max });
        }
        let mut domain = base.domain();
        if c - s_max < CLEARANCE {
            let t_hi = arc.t_of_s(c - CLEARANCE);
            if t_hi <= domain.min {
                return Err(GeometryError::BadConstant { c, s_max });
            }
            domain = Domain {
                min: domain.min,
                max: t_hi,
            };
        }
        let base = base.with_domain(domain);
        for t in domain.grid(PROBE_POINTS) {
            frenet_jets(&base, t, 2)?;
        }
        Ok(Self {
            base,
            c,
            s_anchor,
            arc,
            involute_arc: Arc::new(OnceLock::new()),
        })
    }

    pub fn base(&self) -> &CurveSpec {
        &self.base
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Sign of `c - s`; always +1.
    pub fn epsilon(&self) -> f64 {
        1.0
    }

    pub fn s_anchor(&self) -> f64 {
        self.s_anchor
    }

    /// Working subdomain in the base parameter.
    pub fn domain(&self) -> Domain {
        self.base.domain()
    }

    pub fn base_arc(&self) -> &ArcLengthMap {
        &self.arc
    }

    pub fn s_of_t(&self, t: f64) -> f64 {
        self.arc.s_of_t(t)
    }

    pub fn t_of_s(&self, s: f64) -> f64 {
        self.arc.t_of_s(s)
    }

    /// Arc-length map of the involute, `ds*/dt = kappa (c - s) |gamma'|`.
    pub fn involute_arc(&self) -> Result<&ArcLengthMap> {
        self.involute_arc
            .get_or_init(|| {
                let me = self.clone_without_cache();
                ArcLengthMap::from_speed(
                    self.domain().grid(ARC_NODES),
                    self.s_anchor.clamp(self.domain().min, self.domain().max),
                    move |t| me.ds_star_dt(t),
                    ARC_NODES,
                )
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn clone_without_cache(&self) -> Self {
        Self {
            involute_arc: Arc::new(OnceLock::new()),
            ..self.clone()
        }
    }

    fn ds_star_dt(&self, t: f64) -> f64 {
        let j = FrenetJets::from_position(self.base.jet(t, 2).expect("order 2"));
        j.kappa.value() * (self.c - self.arc.s_of_t(t)) * j.speed.value()
    }

    /// Involute quantities as jets in `t` from a base jet of order
    /// `order` (at least 4).
    pub fn jets(&self, t: f64, order: usize) -> Result<InvoluteJets> {
        let order = order.max(4);
        let base = frenet_jets(&self.base, t, order)?;
        let s = base.speed.integrate(self.arc.s_of_t(t));
        Ok(InvoluteJets::new(base, s, self.c))
    }
}

/// Involute Frenet data as jets in the base parameter.
///
/// With a base jet of order `K`: the frame has order `K-3`, curvature
/// `K-3`, torsion and `f~` order `K-4`, Γ~ order `K-5`.
#[derive(Debug, Clone, Copy)]
pub struct InvoluteJets {
    pub base: FrenetJets,
    /// Base arc length.
    pub s: Jet,
    /// `c - s`.
    pub lambda: Jet,
    /// ds*/dt.
    pub ds_star_dt: Jet,
    pub position: JetVec3,
    pub tangent: JetVec3,
    pub normal: JetVec3,
    pub binormal: JetVec3,
    pub kappa: Jet,
    pub tau: Jet,
    pub f: Jet,
}

impl InvoluteJets {
    fn new(base: FrenetJets, s: Jet, c: f64) -> Self {
        let lambda = c - s;
        let f = base.f;
        let root = (f * f + 1.0).sqrt();
        let f_s = base.d_ds(&f);
        let kappa = root / lambda;
        let tau = f_s / (base.kappa * lambda * (f * f + 1.0));
        Self {
            base,
            s,
            lambda,
            ds_star_dt: base.speed * base.kappa * lambda,
            position: base.position + base.tangent.scale(lambda),
            tangent: base.normal,
            normal: (base.binormal.scale(f) - base.tangent).scale(root.recip()),
            binormal: (base.tangent.scale(f) + base.binormal).scale(root.recip()),
            kappa,
            tau,
            f: tau / kappa,
        }
    }

    /// d/ds* of a jet in `t`.
    pub fn d_ds_star(&self, q: &Jet) -> Jet {
        q.deriv() / self.ds_star_dt
    }

    /// Γ of the base curve.
    pub fn gamma_base(&self) -> Jet {
        self.base.gamma()
    }

    /// Γ~ directly from its definition on the involute.
    pub fn gamma(&self) -> Jet {
        let one_f2 = self.f * self.f + 1.0;
        self.d_ds_star(&self.f) / (self.kappa * one_f2.powf(1.5))
    }

    /// Γ~ written in base quantities.
    pub fn gamma_from_base(&self) -> Jet {
        let b = &self.base;
        let f = b.f;
        let f1 = b.d_ds(&f);
        let f2 = b.d_ds(&f1);
        let k = b.kappa;
        let k1 = b.d_ds(&k);
        let one_f2 = f * f + 1.0;
        let num = (one_f2 * (f2 * k - f1 * k1) - 3.0 * k * f * f1 * f1) * one_f2.powf(1.5);
        num / (k * k * one_f2.powi(3) + f1 * f1).powf(1.5)
    }

    /// Γ~ from the base Γ and its arc-length derivative.
    pub fn gamma_from_base_gamma(&self) -> Jet {
        let b = &self.base;
        let f = b.f;
        let f1 = b.d_ds(&f);
        let k = b.kappa;
        let one_f2 = f * f + 1.0;
        let g1 = b.d_ds(&b.gamma());
        k * k * one_f2.powi(4) * g1 / (k * k * one_f2.powi(3) + f1 * f1).powf(1.5)
    }

    fn is_planar(&self) -> bool {
        let f = self.f.value();
        let f1 = self.d_ds_star(&self.f).value();
        f.abs() < PLANAR_TOL && (f1 / self.kappa.value()).abs() < PLANAR_TOL
    }
}

/// Builds the involute as a curve in the base parameter. Its jets are
/// assembled from base Frenet data, one order below the base.
pub fn build_involute(spec: &InvoluteSpec) -> CurveSpec {
    let me = spec.clone_without_cache();
    let base = spec.base();
    CurveSpec::from_jet_fn(
        format!("involute({}, c={})", base.label(), spec.c),
        spec.domain(),
        base.max_order().saturating_sub(1),
        base.derivative_source(),
        move |t, order| {
            let pos = me.base.jet(t, (order + 1).max(2)).expect("order checked by caller");
            let j = FrenetJets::from_position(pos);
            let s = j.speed.integrate(me.arc.s_of_t(t));
            (pos + j.tangent.scale(me.c - s)).truncate(order)
        },
    )
}

/// Involute frame at base parameter `t` with `ds/ds* = 1 / (kappa (c - s))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvoluteFrame {
    pub sample: FrenetSample,
    pub ds_ds_star: f64,
}

pub fn involute_frame(spec: &InvoluteSpec, t: f64) -> Result<InvoluteFrame> {
    let j = spec.jets(t, SCALAR_ORDER)?;
    let s_star = spec.involute_arc()?.s_of_t(t);
    Ok(InvoluteFrame {
        sample: FrenetSample {
            t,
            s: s_star,
            position: j.position.value(),
            tangent: j.tangent.value(),
            normal: j.normal.value(),
            binormal: j.binormal.value(),
            kappa: j.kappa.value(),
            tau: j.tau.value(),
            f: j.f.value(),
            gamma_g: j.gamma_from_base().value(),
        },
        ds_ds_star: 1.0 / (j.base.kappa.value() * j.lambda.value()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvoluteScalars {
    pub kappa_tilde: f64,
    pub tau_tilde: f64,
    pub f_tilde: f64,
    pub gamma_tilde: f64,
    /// Γ of the base curve; equal to `f_tilde`.
    pub gamma_base: f64,
    pub planar: bool,
}

pub fn involute_scalars(spec: &InvoluteSpec, t: f64) -> Result<InvoluteScalars> {
    let j = spec.jets(t, SCALAR_ORDER)?;
    Ok(InvoluteScalars {
        kappa_tilde: j.kappa.value(),
        tau_tilde: j.tau.value(),
        f_tilde: j.f.value(),
        gamma_tilde: j.gamma_from_base().value(),
        gamma_base: j.gamma_base().value(),
        planar: j.is_planar(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum GammaTilde {
    Value(f64),
    UndefinedPlanar,
}

impl GammaTilde {
    pub fn value(&self) -> Option<f64> {
        match self {
            GammaTilde::Value(v) => Some(*v),
            GammaTilde::UndefinedPlanar => None,
        }
    }
}

/// Γ~ from the base Γ' relation; undefined where the involute is planar.
pub fn gamma_tilde_from_gamma(spec: &InvoluteSpec, t: f64) -> Result<GammaTilde> {
    let j = spec.jets(t, SCALAR_ORDER)?;
    if j.is_planar() {
        return Ok(GammaTilde::UndefinedPlanar);
    }
    Ok(GammaTilde::Value(j.gamma_from_base_gamma().value()))
}

/// Involute position at `t` without building a curve.
pub fn involute_point(spec: &InvoluteSpec, t: f64) -> Result<Vector3<f64>> {
    Ok(spec.jets(t, 4)?.position.value())
}
