//! Arc-length reparametrization of a regular curve.

use std::sync::Arc;

use crate::curve::{CurveSpec, REGULARITY_FLOOR};
use crate::error::{GeometryError, Result};
use crate::quadrature::integrate;

/// Relative tolerance for each node-to-node quadrature panel.
pub const QUADRATURE_REL_TOL: f64 = 1e-13;

pub const MIN_NODES: usize = 16;

type SpeedFn = dyn Fn(f64) -> f64 + Send + Sync;

/// Monotone map between a curve parameter `t` and arc length `s`.
///
/// `s` is measured from an anchor parameter (by default the start of the
/// domain), so it is negative before the anchor. The forward map is exact
/// to quadrature accuracy at every `t`, not only at the nodes; the inverse
/// starts from a monotone cubic Hermite guess and polishes it with Newton
/// steps bracketed to the node interval.
#[derive(Clone)]
pub struct ArcLengthMap {
    nodes: Vec<(f64, f64)>,
    speeds: Vec<f64>,
    error_estimate: f64,
    speed: Arc<SpeedFn>,
}

impl std::fmt::Debug for ArcLengthMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ArcLengthMap")
            .field("nodes", &self.nodes.len())
            .field("total_length", &self.total_length())
            .field("error_estimate", &self.error_estimate)
            .finish()
    }
}

/// Arc-length map of `curve` on `n_nodes` equally spaced nodes, anchored at
/// the start of the domain.
pub fn arclength_map(curve: &CurveSpec, n_nodes: usize) -> Result<ArcLengthMap> {
    ArcLengthMap::anchored(curve, n_nodes, curve.domain().min)
}

impl ArcLengthMap {
    pub fn anchored(curve: &CurveSpec, n_nodes: usize, anchor: f64) -> Result<Self> {
        let c = curve.clone();
        Self::from_speed(
            curve.domain().grid(n_nodes.max(2)),
            anchor,
            move |t| c.speed(t),
            n_nodes,
        )
    }

    /// Builds the map from an arbitrary positive speed function `ds/dt`.
    pub fn from_speed<F>(grid: Vec<f64>, anchor: f64, speed: F, n_nodes: usize) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if n_nodes < MIN_NODES {
            return Err(GeometryError::GridTooCoarse(format!(
                "arc-length map needs at least {MIN_NODES} nodes, got {n_nodes}"
            )));
        }
        let mut speeds = Vec::with_capacity(grid.len());
        for &t in &grid {
            let v = speed(t);
            if !(v > REGULARITY_FLOOR) {
                return Err(GeometryError::NonRegular { t, speed: v });
            }
            speeds.push(v);
        }
        let mut nodes = Vec::with_capacity(grid.len());
        let mut s = 0.0;
        let mut err = 0.0;
        nodes.push((grid[0], 0.0));
        for w in grid.windows(2) {
            let r = integrate(&speed, w[0], w[1], QUADRATURE_REL_TOL, 1e-15);
            s += r.value;
            err += r.error;
            nodes.push((w[1], s));
        }
        let mut map = Self {
            nodes,
            speeds,
            error_estimate: err,
            speed: Arc::new(speed),
        };
        let offset = map.s_of_t(anchor);
        for n in map.nodes.iter_mut() {
            n.1 -= offset;
        }
        Ok(map)
    }

    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    pub fn error_estimate(&self) -> f64 {
        self.error_estimate
    }

    pub fn total_length(&self) -> f64 {
        self.nodes.last().unwrap().1 - self.nodes[0].1
    }

    pub fn s_min(&self) -> f64 {
        self.nodes[0].1
    }

    pub fn s_max(&self) -> f64 {
        self.nodes.last().unwrap().1
    }

    /// ds/dt at `t`.
    pub fn speed(&self, t: f64) -> f64 {
        (self.speed)(t)
    }

    fn interval_of_t(&self, t: f64) -> usize {
        let i = self.nodes.partition_point(|&(tn, _)| tn <= t);
        i.saturating_sub(1).min(self.nodes.len() - 2)
    }

    fn interval_of_s(&self, s: f64) -> usize {
        let i = self.nodes.partition_point(|&(_, sn)| sn <= s);
        i.saturating_sub(1).min(self.nodes.len() - 2)
    }

    pub fn s_of_t(&self, t: f64) -> f64 {
        let i = self.interval_of_t(t);
        let (t0, s0) = self.nodes[i];
        s0 + integrate(&*self.speed, t0, t, QUADRATURE_REL_TOL, 1e-15).value
    }

    pub fn t_of_s(&self, s: f64) -> f64 {
        let i = self.interval_of_s(s);
        let (t0, s0) = self.nodes[i];
        let (t1, s1) = self.nodes[i + 1];
        let mut t = self.hermite_guess(i, s).clamp(t0, t1);
        let (mut lo, mut hi) = (t0, t1);
        for _ in 0..50 {
            let g = s0 + integrate(&*self.speed, t0, t, QUADRATURE_REL_TOL, 1e-15).value - s;
            if g.abs() <= 4.0 * f64::EPSILON * s.abs().max(s1.abs()).max(1.0) {
                break;
            }
            if g > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let next = t - g / (self.speed)(t);
            t = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
        }
        t
    }

    /// Cubic Hermite in `s` for `t(s)` with slopes `dt/ds = 1/speed`.
    fn hermite_guess(&self, i: usize, s: f64) -> f64 {
        let (t0, s0) = self.nodes[i];
        let (t1, s1) = self.nodes[i + 1];
        let h = s1 - s0;
        let u = (s - s0) / h;
        let m0 = h / self.speeds[i];
        let m1 = h / self.speeds[i + 1];
        let u2 = u * u;
        let u3 = u2 * u;
        (2.0 * u3 - 3.0 * u2 + 1.0) * t0 + (u3 - 2.0 * u2 + u) * m0 + (-2.0 * u3 + 3.0 * u2) * t1 + (u3 - u2) * m1
    }
}
