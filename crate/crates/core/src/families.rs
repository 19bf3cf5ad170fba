//! Executable curve families and named presets.
//!
//! All constructors write the position once over [`Jet`]s, so every family
//! has exact derivatives up to [`crate::jet::MAX_ORDER`].

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curve::{CurveSpec, Domain};
use crate::error::{GeometryError, Result};
use crate::jet::{Jet, JetVec3};

/// `w = sqrt(1 + p^2) / p` for the Monterde and Kula families.
pub fn w_of(p: f64) -> Result<f64> {
    if p == 0.0 || !p.is_finite() {
        return Err(GeometryError::ZeroParam("mu/c_m"));
    }
    Ok((1.0 + p * p).sqrt() / p)
}

/// Parameters of the worked families. `w` is always derived from its
/// source parameter, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyParams {
    pub mu: Option<f64>,
    pub c_m: Option<f64>,
    /// Involute constant, distinct from the Monterde `c_m`.
    pub c_inv: Option<f64>,
}

impl FamilyParams {
    pub fn w_mu(&self) -> Result<f64> {
        w_of(self.mu.ok_or(GeometryError::ZeroParam("mu"))?)
    }

    pub fn w_c(&self) -> Result<f64> {
        w_of(self.c_m.ok_or(GeometryError::ZeroParam("c_m"))?)
    }
}

fn zero(t: Jet) -> Jet {
    t * 0.0
}

pub fn unit_circle() -> CurveSpec {
    circle(1.0, Domain { min: 0.0, max: TAU })
}

pub fn circle(radius: f64, domain: Domain) -> CurveSpec {
    CurveSpec::analytic(format!("circle(r={radius})"), domain, move |t| {
        let (s, c) = t.sin_cos();
        JetVec3::new(c * radius, s * radius, zero(t))
    })
}

/// Unit-speed circular helix `(a cos(u/c), a sin(u/c), b u/c)`,
/// `c = sqrt(a^2 + b^2)`.
pub fn circular_helix(a: f64, b: f64, domain: Domain) -> CurveSpec {
    let c = (a * a + b * b).sqrt();
    CurveSpec::analytic(format!("helix(a={a},b={b})"), domain, move |u| {
        let (s, co) = (u / c).sin_cos();
        JetVec3::new(co * a, s * a, u * (b / c))
    })
}

pub fn straight_line(domain: Domain) -> CurveSpec {
    CurveSpec::analytic("line", domain, |t| JetVec3::new(t, zero(t), zero(t)))
}

/// Monterde's spherical helix `alpha_c`.
pub fn monterde_helix(c_m: f64, domain: Domain) -> Result<CurveSpec> {
    if c_m == 0.0 {
        return Err(GeometryError::ZeroParam("c_m"));
    }
    let w = w_of(c_m)?;
    Ok(CurveSpec::analytic(format!("monterde(c_m={c_m})"), domain, move |t| {
        let (s, c) = t.sin_cos();
        let (sw, cw) = (t * w).sin_cos();
        JetVec3::new(c * cw + s * sw / w, -(c * sw) + s * cw / w, s / (c_m * w))
    }))
}

/// Kula's slant helix `gamma_mu`. The printed `s` and `t` are one parameter.
pub fn kula_slant_helix(mu: f64, domain: Domain) -> Result<CurveSpec> {
    if mu == 0.0 {
        return Err(GeometryError::ZeroParam("mu"));
    }
    let w = w_of(mu)?;
    if (w - 1.0).abs() < 1e-9 {
        return Err(GeometryError::DegenerateW { w });
    }
    Ok(CurveSpec::analytic(format!("kula(mu={mu})"), domain, move |t| {
        kula_position(t, mu, w)
    }))
}

fn kula_position(t: Jet, mu: f64, w: f64) -> JetVec3 {
    let (sp, cp) = (t * (w + 1.0)).sin_cos();
    let (sm, cm) = (t * (w - 1.0)).sin_cos();
    let x = sp * ((w - 1.0) / (2.0 * w * (w + 1.0))) + sm * ((w + 1.0) / (2.0 * w * (w - 1.0)));
    let y = cm * ((w + 1.0) / (2.0 * w * (w - 1.0))) + cp * ((w - 1.0) / (2.0 * w * (w + 1.0)));
    let z = -t.cos() / (mu * w);
    JetVec3::new(x, y, z)
}

/// The general-helix family obtained as the involute of Kula's slant helix,
/// in its printed closed form, together with the printed curvature,
/// torsion and parametrization factor.
#[derive(Debug, Clone)]
pub struct DerivedHelix {
    pub curve: CurveSpec,
    pub mu: f64,
    pub c_inv: f64,
    w: f64,
}

/// Minimum |cos t| on the working domain of the derived family.
pub const COS_FLOOR: f64 = 1e-6;

pub fn derived_general_helix(mu: f64, c_inv: f64, domain: Domain) -> Result<DerivedHelix> {
    if mu == 0.0 {
        return Err(GeometryError::ZeroParam("mu"));
    }
    let w = w_of(mu)?;
    if (w - 1.0).abs() < 1e-9 {
        return Err(GeometryError::DegenerateW { w });
    }
    if c_inv <= domain.max {
        return Err(GeometryError::BadConstant {
            c: c_inv,
            s_max: domain.max,
        });
    }
    if let Some(t) = cos_zero_in(domain) {
        return Err(GeometryError::SingularParameter { t });
    }
    let curve = CurveSpec::analytic(format!("derived_helix(mu={mu},c_inv={c_inv})"), domain, move |t| {
        let lam = (t - c_inv) * -1.0;
        let (sp, cp) = (t * (w + 1.0)).sin_cos();
        let (sm, cm) = (t * (w - 1.0)).sin_cos();
        let k = 1.0 / (2.0 * w * (w * w - 1.0));
        let (wp, wm) = ((w + 1.0) * (w + 1.0), (w - 1.0) * (w - 1.0));
        let x = lam * (cm * (w + 1.0) + cp * (w - 1.0)) / (2.0 * w) + (sm * wp + sp * wm) * k;
        let y = -(lam * (sm * (w + 1.0) + sp * (w - 1.0))) / (2.0 * w) + (cm * wp + cp * wm) * k;
        let (s, c) = t.sin_cos();
        let z = (lam * s - c) / (mu * w);
        JetVec3::new(x, y, z)
    });
    Ok(DerivedHelix { curve, mu, c_inv, w })
}

fn cos_zero_in(d: Domain) -> Option<f64> {
    // zeros of cos at pi/2 + k pi
    let k_lo = ((d.min - FRAC_PI_2) / PI).ceil() as i64;
    let k_hi = ((d.max - FRAC_PI_2) / PI).floor() as i64;
    if k_lo <= k_hi {
        return Some(FRAC_PI_2 + k_lo as f64 * PI);
    }
    [d.min, d.max].into_iter().find(|t| t.cos().abs() < COS_FLOOR)
}

impl DerivedHelix {
    pub fn w(&self) -> f64 {
        self.w
    }

    /// Printed curvature sqrt(2) / ((c - s) sqrt(cos 2t + 1)).
    pub fn printed_kappa(&self, t: f64) -> f64 {
        2f64.sqrt() / ((self.c_inv - t) * ((2.0 * t).cos() + 1.0).sqrt())
    }

    /// Printed torsion -mu / ((c - s) cos t).
    pub fn printed_tau(&self, t: f64) -> f64 {
        -self.mu / ((self.c_inv - t) * t.cos())
    }

    /// Printed ds/ds*.
    pub fn printed_ds_ds_star(&self, t: f64) -> f64 {
        let (mu, w) = (self.mu, self.w);
        mu * w * 2f64.sqrt()
            / ((self.c_inv - t) * ((mu * mu * (w * w - 1.0).powi(2) + 1.0) * ((2.0 * t).cos() + 1.0)).sqrt())
    }
}

/// A seeded random trigonometric curve
/// `sum_{k=1..3} (a_k cos kt + b_k sin kt) / k + d t`, coefficients uniform
/// in [-1, 1].
pub fn random_fourier(seed: u64, domain: Domain) -> CurveSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> [f64; 3] {
        [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ]
    };
    let mut a = [[0.0; 3]; 3];
    let mut b = [[0.0; 3]; 3];
    for k in 0..3 {
        a[k] = draw();
        b[k] = draw();
    }
    let d = draw();
    CurveSpec::analytic(format!("fourier(seed={seed})"), domain, move |t| {
        let mut comp = [t * d[0], t * d[1], t * d[2]];
        for k in 0..3 {
            let kf = (k + 1) as f64;
            let (s, c) = (t * kf).sin_cos();
            for (i, slot) in comp.iter_mut().enumerate() {
                *slot = *slot + (c * a[k][i] + s * b[k][i]) / kf;
            }
        }
        JetVec3::new(comp[0], comp[1], comp[2])
    })
}

/// Names of the shipped families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Circle {
        radius: f64,
    },
    Helix {
        a: f64,
        b: f64,
    },
    Monterde {
        c_m: f64,
    },
    Kula {
        mu: f64,
    },
    /// `c_inv` is the involute constant the helix is built from.
    DerivedHelix {
        mu: f64,
        c_inv: f64,
    },
    Fourier {
        seed: u64,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Circle { .. } => "circle",
            Family::Helix { .. } => "helix",
            Family::Monterde { .. } => "monterde",
            Family::Kula { .. } => "kula",
            Family::DerivedHelix { .. } => "derived",
            Family::Fourier { .. } => "fourier",
        }
    }
}

/// A family with a working subdomain, arc-length anchor and involute
/// constant chosen so that `c_inv - s > 0` and `cos t != 0` hold throughout.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Preset {
    pub name: &'static str,
    pub family: Family,
    pub domain: Domain,
    /// Parameter value where base arc length is zero.
    pub s_anchor: f64,
    pub c_inv: f64,
}

pub const PRESET_NAMES: [&str; 6] = ["circle", "helix", "monterde", "kula", "derived", "fourier"];

pub fn preset(name: &str) -> Option<Preset> {
    let p = match name {
        "circle" => Preset {
            name: "circle",
            family: Family::Circle { radius: 1.0 },
            domain: Domain { min: 0.0, max: TAU },
            s_anchor: 0.0,
            c_inv: 10.0,
        },
        "helix" => Preset {
            name: "helix",
            family: Family::Helix { a: 3.0, b: 4.0 },
            domain: Domain { min: 0.0, max: 30.0 },
            s_anchor: 0.0,
            c_inv: 40.0,
        },
        "monterde" => Preset {
            name: "monterde",
            family: Family::Monterde { c_m: 1.0 },
            domain: Domain { min: -1.2, max: 1.2 },
            s_anchor: 0.0,
            c_inv: 2.0,
        },
        "kula" => Preset {
            name: "kula",
            family: Family::Kula { mu: 0.25 },
            domain: Domain { min: -1.2, max: 1.2 },
            s_anchor: 0.0,
            c_inv: 2.0,
        },
        "derived" => Preset {
            name: "derived",
            family: Family::DerivedHelix { mu: 0.25, c_inv: 2.0 },
            domain: Domain { min: -1.2, max: 1.2 },
            s_anchor: 0.0,
            c_inv: 8.0,
        },
        "fourier" => Preset {
            name: "fourier",
            family: Family::Fourier { seed: FOURIER_SEED },
            domain: Domain { min: 0.0, max: 1.0 },
            s_anchor: 0.0,
            c_inv: 4.0,
        },
        _ => return None,
    };
    Some(p)
}

/// Seed whose curve keeps kappa > 0 and a one-signed, non-constant Γ on
/// the preset domain.
pub const FOURIER_SEED: u64 = 50;

impl Preset {
    /// The base curve for this preset. For `derived`, this is the printed
    /// general helix itself.
    pub fn curve(&self) -> Result<CurveSpec> {
        match self.family {
            Family::Circle { radius } => Ok(circle(radius, self.domain)),
            Family::Helix { a, b } => Ok(circular_helix(a, b, self.domain)),
            Family::Monterde { c_m } => monterde_helix(c_m, self.domain),
            Family::Kula { mu } => kula_slant_helix(mu, self.domain),
            Family::DerivedHelix { mu, c_inv } => Ok(derived_general_helix(mu, c_inv, self.domain)?.curve),
            Family::Fourier { seed } => Ok(random_fourier(seed, self.domain)),
        }
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_c_inv(mut self, c_inv: f64) -> Self {
        self.c_inv = c_inv;
        self
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }
}
