//! Planar / generalized helix / slant helix / spherical circle verdicts
//! from sampled scalar series.

use nalgebra::{DMatrix, DVector, Vector3};
use serde::Serialize;

use crate::curve::{CurveSpec, DerivativeSource};
use crate::error::{GeometryError, Result};
use crate::frenet::{sampled_frame_field, FrameField};

pub const MIN_SERIES: usize = 10;

/// Constancy tolerance for curves with exact derivatives.
pub const ANALYTIC_TOL: f64 = 1e-6;

/// Constancy tolerance for curves with synthesized derivatives.
pub const SYNTHESIZED_TOL: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarSeries {
    pub label: String,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl ScalarSeries {
    pub fn new(label: impl Into<String>, grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(GeometryError::GridTooCoarse(format!(
                "{} grid values but {} samples",
                grid.len(),
                values.len()
            )));
        }
        if !grid.windows(2).all(|w| w[1] > w[0]) {
            return Err(GeometryError::GridTooCoarse(
                "series grid is not strictly increasing".into(),
            ));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite(format!("series value {v}")));
        }
        Ok(Self {
            label: label.into(),
            grid,
            values,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesStats {
    pub mean: f64,
    pub std: f64,
    /// std / |mean|.
    pub cv: f64,
    pub constant: bool,
}

impl SeriesStats {
    fn of(values: &[f64], tol: f64) -> Result<Self> {
        if values.len() < MIN_SERIES {
            return Err(GeometryError::EmptySeries { min: MIN_SERIES });
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let std = var.sqrt();
        let cv = if mean == 0.0 { f64::INFINITY } else { std / mean.abs() };
        Ok(Self {
            mean,
            std,
            cv,
            constant: constant_verdict(mean, std, cv, tol),
        })
    }
}

fn constant_verdict(mean: f64, std: f64, cv: f64, tol: f64) -> bool {
    if mean.abs() < tol {
        std < tol
    } else {
        cv < tol
    }
}

/// Coefficient-of-variation test with an absolute fallback near zero mean.
pub fn is_constant(series: &ScalarSeries, tol: f64) -> Result<SeriesStats> {
    SeriesStats::of(&series.values, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereFit {
    pub center: [f64; 3],
    pub radius: f64,
    /// max | |p - center| - radius | / radius.
    pub max_radial_deviation: f64,
}

/// Algebraic least-squares sphere through `points`:
/// |p|^2 = 2 c.p + (r^2 - |c|^2), solved by SVD after centering and scaling.
pub fn fit_sphere(points: &[Vector3<f64>]) -> Result<SphereFit> {
    if points.len() < 4 {
        return Err(GeometryError::EmptySeries { min: 4 });
    }
    let n = points.len();
    let centroid = points.iter().fold(Vector3::zeros(), |a, p| a + p) / n as f64;
    let scale = (points.iter().map(|p| (p - centroid).norm_squared()).sum::<f64>() / n as f64).sqrt();
    if !(scale > 0.0) {
        return Err(GeometryError::GridTooCoarse("all points coincide".into()));
    }
    let mut a = DMatrix::zeros(n, 4);
    let mut b = DVector::zeros(n);
    for (i, p) in points.iter().enumerate() {
        let q = (p - centroid) / scale;
        a[(i, 0)] = 2.0 * q.x;
        a[(i, 1)] = 2.0 * q.y;
        a[(i, 2)] = 2.0 * q.z;
        a[(i, 3)] = 1.0;
        b[i] = q.norm_squared();
    }
    // coplanar points leave one direction free; the cutoff drops it
    let normal = a.tr_mul(&a);
    let rhs = a.tr_mul(&b);
    let svd = normal.svd(true, true);
    let cutoff = svd.singular_values.max() * 1e-12;
    let x = svd
        .solve(&rhs, cutoff)
        .map_err(|e| GeometryError::NonFinite(format!("sphere fit: {e}")))?;
    let c = Vector3::new(x[0], x[1], x[2]);
    let r = (x[3] + c.norm_squared()).sqrt();
    let center = centroid + c * scale;
    let radius = r * scale;
    let dev = points
        .iter()
        .map(|p| ((p - center).norm() - radius).abs() / radius)
        .fold(0.0, f64::max);
    Ok(SphereFit {
        center: [center.x, center.y, center.z],
        radius,
        max_radial_deviation: dev,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub is_planar: bool,
    pub is_generalized_helix: bool,
    pub is_slant_helix: bool,
    pub is_spherical_circle: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Statistics {
    pub samples: usize,
    pub kappa: SeriesStats,
    /// Torsion divided by the mean curvature (dimensionless).
    pub tau: SeriesStats,
    pub f: SeriesStats,
    pub gamma: SeriesStats,
    pub sphere: SphereFit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub constancy: f64,
    pub sphere: f64,
}

impl Tolerances {
    pub fn for_source(source: DerivativeSource) -> Self {
        let tol = match source {
            DerivativeSource::Analytic => ANALYTIC_TOL,
            DerivativeSource::Synthesized => SYNTHESIZED_TOL,
        };
        Self {
            constancy: tol,
            sphere: tol,
        }
    }
}

/// Serialized with keys in the order `verdicts`, `statistics`, `tolerances`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub verdicts: Verdicts,
    pub statistics: Statistics,
    pub tolerances: Tolerances,
}

impl ClassificationReport {
    /// Re-derives the verdicts from recorded statistics and tolerances.
    pub fn from_statistics(statistics: Statistics, tolerances: Tolerances) -> Self {
        let tol = tolerances.constancy;
        let c = |s: &SeriesStats| constant_verdict(s.mean, s.std, s.cv, tol);
        let is_planar = c(&statistics.tau) && statistics.tau.mean.abs() < tol;
        let verdicts = Verdicts {
            is_planar,
            is_generalized_helix: c(&statistics.f),
            is_slant_helix: c(&statistics.gamma),
            is_spherical_circle: statistics.sphere.max_radial_deviation < tolerances.sphere
                && c(&statistics.kappa)
                && is_planar,
        };
        Self {
            verdicts,
            statistics,
            tolerances,
        }
    }
}

/// Classifies `curve` on `n` equally spaced samples with the default
/// tolerance for its derivative source.
pub fn classify_curve(curve: &CurveSpec, n: usize) -> Result<ClassificationReport> {
    classify_curve_with(curve, n, Tolerances::for_source(curve.derivative_source()))
}

pub fn classify_curve_with(curve: &CurveSpec, n: usize, tolerances: Tolerances) -> Result<ClassificationReport> {
    if n < MIN_SERIES {
        return Err(GeometryError::EmptySeries { min: MIN_SERIES });
    }
    let field = sampled_frame_field(curve, &curve.domain().grid(n))?;
    classify_field(&field, tolerances)
}

/// Classifies an already sampled frame field.
pub fn classify_field(field: &FrameField, tolerances: Tolerances) -> Result<ClassificationReport> {
    let tol = tolerances.constancy;
    let kappa = field.series(|s| s.kappa);
    let kappa_stats = SeriesStats::of(&kappa, tol)?;
    let tau_scaled: Vec<f64> = field.series(|s| s.tau / kappa_stats.mean);
    let points: Vec<Vector3<f64>> = field.samples.iter().map(|s| s.position).collect();
    let statistics = Statistics {
        samples: field.len(),
        kappa: kappa_stats,
        tau: SeriesStats::of(&tau_scaled, tol)?,
        f: SeriesStats::of(&field.series(|s| s.f), tol)?,
        gamma: SeriesStats::of(&field.series(|s| s.gamma_g), tol)?,
        sphere: fit_sphere(&points)?,
    };
    Ok(ClassificationReport::from_statistics(statistics, tolerances))
}
