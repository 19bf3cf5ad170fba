//! Finite-difference Frenet oracle on sampled point clouds.
//!
//! Derivatives come from Fornberg weights on a sliding window of
//! [`STENCIL_WIDTH`] nodes, so the grid may be non-uniform. On fine grids
//! the window strides over samples (see [`stencil_stride`]) to keep node
//! spacing above [`MIN_NODE_SPACING`] of the sampled range. The window is
//! clamped (one-sided) near the ends; accuracy there is lower and
//! comparisons should drop [`endpoint_exclusion`] samples at each end.

use nalgebra::Vector3;

use crate::error::{GeometryError, Result};
use crate::frenet::{FrameField, FrenetSample, CURVATURE_FLOOR};
use crate::quadrature::fornberg_weights;

pub const STENCIL_WIDTH: usize = 7;

/// Stencil nodes excluded at each end of an oracle field before comparison.
pub const ENDPOINT_EXCLUSION: usize = 3 * STENCIL_WIDTH;

/// Smallest mean spacing between stencil nodes, as a fraction of the
/// sampled parameter range.
pub const MIN_NODE_SPACING: f64 = 1.0 / 256.0;

/// Number of samples between consecutive stencil nodes.
pub fn stencil_stride(grid: &[f64]) -> usize {
    let n = grid.len();
    if n < 2 {
        return 1;
    }
    let mean = (grid[n - 1] - grid[0]) / (n - 1) as f64;
    let want = ((grid[n - 1] - grid[0]) * MIN_NODE_SPACING / mean).floor() as usize;
    want.clamp(1, ((n - 1) / (STENCIL_WIDTH - 1)).max(1))
}

/// Samples to drop at each end of a field sampled on `grid`.
pub fn endpoint_exclusion(grid: &[f64]) -> usize {
    ENDPOINT_EXCLUSION * stencil_stride(grid)
}

/// Indices of the stencil nodes used at sample `i`.
fn stencil(i: usize, n: usize, stride: usize) -> impl Iterator<Item = usize> {
    let span = (STENCIL_WIDTH - 1) * stride;
    let start = i.saturating_sub(span / 2).min(n - 1 - span);
    (0..STENCIL_WIDTH).map(move |k| start + k * stride)
}

/// Derivative `deriv` of sampled `values` at every grid point.
fn derivative<T>(grid: &[f64], values: &[T], deriv: usize, stride: usize) -> Vec<T>
where
    T: Copy + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T>,
{
    let n = grid.len();
    (0..n)
        .map(|i| {
            let idx: Vec<usize> = stencil(i, n, stride).collect();
            let nodes: Vec<f64> = idx.iter().map(|&j| grid[j]).collect();
            let w = fornberg_weights(grid[i], &nodes, deriv);
            idx.iter()
                .zip(&w[deriv])
                .map(|(&j, &c)| values[j] * c)
                .reduce(|a, b| a + b)
                .expect("stencil is non-empty")
        })
        .collect()
}

/// Oracle output plus the parametric speed |dγ/dt| at each sample.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleField {
    pub field: FrameField,
    pub speed: Vec<f64>,
}

impl OracleField {
    pub fn interior_range(&self) -> std::ops::Range<usize> {
        let n = self.field.len();
        let skip = endpoint_exclusion(&self.field.grid);
        if 2 * skip >= n {
            0..0
        } else {
            skip..n - skip
        }
    }
}

fn validate(points: &[Vector3<f64>], grid: &[f64]) -> Result<()> {
    if points.len() != grid.len() {
        return Err(GeometryError::GridTooCoarse(format!(
            "{} points but {} grid values",
            points.len(),
            grid.len()
        )));
    }
    if grid.len() < STENCIL_WIDTH {
        return Err(GeometryError::GridTooCoarse(format!(
            "need at least {STENCIL_WIDTH} points, got {}",
            grid.len()
        )));
    }
    let scale = points.iter().map(|p| p.norm()).fold(1.0, f64::max);
    for (i, w) in grid.windows(2).enumerate() {
        let floor = 64.0 * f64::EPSILON * w[0].abs().max(w[1].abs()).max(1.0);
        if !(w[1] - w[0] > floor) {
            return Err(GeometryError::GridTooCoarse(format!(
                "grid not strictly increasing above noise floor at index {i}"
            )));
        }
        if (points[i + 1] - points[i]).norm() <= 64.0 * f64::EPSILON * scale {
            return Err(GeometryError::GridTooCoarse(format!(
                "points {i} and {} coincide within round-off",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Frenet frame, κ, τ, f and Γ purely from the sampled points.
pub fn numeric_frenet_oracle(points: &[Vector3<f64>], grid: &[f64]) -> Result<FrameField> {
    Ok(numeric_frenet_oracle_with_speed(points, grid)?.field)
}

pub fn numeric_frenet_oracle_with_speed(points: &[Vector3<f64>], grid: &[f64]) -> Result<OracleField> {
    validate(points, grid)?;
    let stride = stencil_stride(grid);
    let d1 = derivative(grid, points, 1, stride);
    let d2 = derivative(grid, points, 2, stride);
    let d3 = derivative(grid, points, 3, stride);
    let n = grid.len();

    let speed: Vec<f64> = d1.iter().map(|v| v.norm()).collect();
    let arc = cumulative_integral(grid, &speed);

    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let cross = d1[i].cross(&d2[i]);
        let cross_norm = cross.norm();
        let kappa = cross_norm / speed[i].powi(3);
        if !(kappa > CURVATURE_FLOOR) {
            return Err(GeometryError::VanishingCurvature { t: grid[i], kappa });
        }
        let tangent = d1[i] / speed[i];
        let binormal = cross / cross_norm;
        let normal = binormal.cross(&tangent);
        let tau = cross.dot(&d3[i]) / (cross_norm * cross_norm);
        samples.push(FrenetSample {
            t: grid[i],
            s: arc[i],
            position: points[i],
            tangent,
            normal,
            binormal,
            kappa,
            tau,
            f: tau / kappa,
            gamma_g: 0.0,
        });
    }

    let f: Vec<f64> = samples.iter().map(|s| s.f).collect();
    let df = derivative(grid, &f, 1, stride);
    for (i, s) in samples.iter_mut().enumerate() {
        let f_s = df[i] / speed[i];
        s.gamma_g = f_s / (s.kappa * (1.0 + s.f * s.f).powf(1.5));
    }

    Ok(OracleField {
        field: FrameField {
            samples,
            grid: grid.to_vec(),
        },
        speed,
    })
}

/// Running integral of sampled `values` using the cubic through the four
/// nearest samples on each interval (3-point Gauss on the interpolant).
pub fn cumulative_integral(grid: &[f64], values: &[f64]) -> Vec<f64> {
    let n = grid.len();
    let gauss = [
        (-(0.6f64).sqrt(), 5.0 / 9.0),
        (0.0, 8.0 / 9.0),
        ((0.6f64).sqrt(), 5.0 / 9.0),
    ];
    let width = 4.min(n);
    let mut out = Vec::with_capacity(n);
    out.push(0.0);
    let mut acc = 0.0;
    for i in 0..n - 1 {
        let start = (i.saturating_sub(1)).min(n - width);
        let nodes = &grid[start..start + width];
        let vals = &values[start..start + width];
        let (a, b) = (grid[i], grid[i + 1]);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut part = 0.0;
        for (x, w) in gauss {
            part += w * lagrange(nodes, vals, mid + half * x);
        }
        acc += part * half;
        out.push(acc);
    }
    out
}

fn lagrange(nodes: &[f64], vals: &[f64], x: f64) -> f64 {
    let mut sum = 0.0;
    for (i, (&xi, &yi)) in nodes.iter().zip(vals).enumerate() {
        let mut l = 1.0;
        for (j, &xj) in nodes.iter().enumerate() {
            if i != j {
                l *= (x - xj) / (xi - xj);
            }
        }
        sum += l * yi;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn sample<F: Fn(f64) -> Vector3<f64>>(f: F, lo: f64, hi: f64, n: usize) -> (Vec<Vector3<f64>>, Vec<f64>) {
        let grid: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
        (grid.iter().map(|&t| f(t)).collect(), grid)
    }

    #[test]
    fn circle_curvature_is_one() {
        let (p, g) = sample(|t| Vector3::new(t.cos(), t.sin(), 0.0), 0.0, TAU, 1001);
        let ff = numeric_frenet_oracle(&p, &g).unwrap();
        for s in ff.interior(endpoint_exclusion(&g)) {
            assert!((s.kappa - 1.0).abs() < 1e-6, "kappa {}", s.kappa);
            assert!(s.tau.abs() < 1e-6);
        }
        assert!((ff.samples.last().unwrap().s - TAU).abs() < 1e-8);
    }

    #[test]
    fn helix_torsion() {
        let (p, g) = sample(
            |u| Vector3::new(3.0 * (u / 5.0).cos(), 3.0 * (u / 5.0).sin(), 0.8 * u),
            0.0,
            30.0,
            2001,
        );
        let ff = numeric_frenet_oracle(&p, &g).unwrap();
        for s in ff.interior(endpoint_exclusion(&g)) {
            assert!((s.tau - 4.0 / 25.0).abs() < 1e-6);
            assert!((s.kappa - 3.0 / 25.0).abs() < 1e-6);
        }
    }

    #[test]
    fn non_uniform_grid_works() {
        let g: Vec<f64> = (0..400)
            .map(|i| {
                let x = i as f64 / 399.0;
                TAU * (x + 0.05 * (TAU * x).sin() / TAU)
            })
            .collect();
        let p: Vec<Vector3<f64>> = g
            .iter()
            .map(|&t| Vector3::new(2.0 * t.cos(), 2.0 * t.sin(), 0.0))
            .collect();
        let ff = numeric_frenet_oracle(&p, &g).unwrap();
        for s in ff.interior(endpoint_exclusion(&g)) {
            assert!((s.kappa - 0.5).abs() < 1e-7);
        }
    }

    #[test]
    fn too_few_points() {
        let (p, g) = sample(|t| Vector3::new(t.cos(), t.sin(), 0.0), 0.0, 1.0, 5);
        assert!(matches!(
            numeric_frenet_oracle(&p, &g),
            Err(GeometryError::GridTooCoarse(_))
        ));
    }

    #[test]
    fn duplicate_parameters_rejected() {
        let (p, mut g) = sample(|t| Vector3::new(t.cos(), t.sin(), t), 0.0, 1.0, 10);
        g[4] = g[3];
        assert!(matches!(
            numeric_frenet_oracle(&p, &g),
            Err(GeometryError::GridTooCoarse(_))
        ));
    }

    #[test]
    fn cumulative_integral_of_cubic_is_exact() {
        let g: Vec<f64> = (0..20).map(|i| i as f64 * 0.1).collect();
        let v: Vec<f64> = g.iter().map(|x| x * x * x).collect();
        let c = cumulative_integral(&g, &v);
        assert!((c[19] - 1.9f64.powi(4) / 4.0).abs() < 1e-13);
    }
}
