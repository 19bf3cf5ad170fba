//! Regular parametric curves in 3-space and their derivative stacks.

use std::fmt;
use std::sync::Arc;

use nalgebra::Vector3;

use crate::error::{GeometryError, Result};
use crate::jet::{Jet, JetVec3, MAX_ORDER};
use crate::quadrature::fornberg_weights;

/// Smallest admissible parametric speed |gamma'(t)|.
pub const REGULARITY_FLOOR: f64 = 1e-10;

/// Highest derivative order synthesized by finite differences.
pub const SYNTHESIZED_ORDER: usize = 5;

/// Closed parameter interval `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Domain {
    pub min: f64,
    pub max: f64,
}

impl Domain {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(GeometryError::InvalidDomain { lo: min, hi: max });
        }
        Ok(Self { min, max })
    }

    pub fn width(&self) -> f64 {
        self.max - self.min
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.min && t <= self.max
    }

    /// `n` equally spaced parameters including both ends.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        assert!(n >= 2);
        let h = self.width() / (n - 1) as f64;
        (0..n)
            .map(|i| if i + 1 == n { self.max } else { self.min + h * i as f64 })
            .collect()
    }
}

/// How a curve obtains derivatives beyond its position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeSource {
    /// Exact derivatives (jet arithmetic or user-supplied evaluators).
    Analytic,
    /// Central differences of order 6 with a per-order step.
    Synthesized,
}

type JetEval = dyn Fn(f64, usize) -> JetVec3 + Send + Sync;
type PointEval = dyn Fn(f64) -> Vector3<f64> + Send + Sync;

/// A parametric space curve with derivatives up to [`CurveSpec::max_order`].
///
/// Every evaluator is `Send + Sync`; the spec is cheap to clone and may be
/// shared across threads.
#[derive(Clone)]
pub struct CurveSpec {
    label: String,
    domain: Domain,
    eval: Arc<JetEval>,
    max_order: usize,
    source: DerivativeSource,
}

impl fmt::Debug for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurveSpec")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("max_order", &self.max_order)
            .field("source", &self.source)
            .finish()
    }
}

impl CurveSpec {
    /// A curve whose position is written once over [`Jet`]s; all derivatives
    /// up to [`MAX_ORDER`] are exact.
    pub fn analytic<F>(label: impl Into<String>, domain: Domain, position: F) -> Self
    where
        F: Fn(Jet) -> JetVec3 + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            domain,
            eval: Arc::new(move |t, order| position(Jet::variable(t, order))),
            max_order: MAX_ORDER,
            source: DerivativeSource::Analytic,
        }
    }

    /// A curve assembled from a raw jet evaluator `(t, order) -> jet`.
    pub fn from_jet_fn<F>(
        label: impl Into<String>,
        domain: Domain,
        max_order: usize,
        source: DerivativeSource,
        eval: F,
    ) -> Self
    where
        F: Fn(f64, usize) -> JetVec3 + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            domain,
            eval: Arc::new(eval),
            max_order: max_order.min(MAX_ORDER),
            source,
        }
    }

    /// A curve known only through its position; derivatives 1..=5 are
    /// synthesized by central differences.
    pub fn from_position<F>(label: impl Into<String>, domain: Domain, position: F) -> Self
    where
        F: Fn(f64) -> Vector3<f64> + Send + Sync + 'static,
    {
        Self::from_derivatives(label, domain, vec![Arc::new(position)])
    }

    /// A curve from evaluators `[position, d1, d2, ...]`. Orders beyond the
    /// supplied ones (up to 5) are differenced from the highest supplied
    /// evaluator.
    pub fn from_derivatives(label: impl Into<String>, domain: Domain, evaluators: Vec<Arc<PointEval>>) -> Self {
        assert!(!evaluators.is_empty(), "at least the position evaluator is required");
        let supplied = evaluators.len() - 1;
        let max_order = supplied.max(SYNTHESIZED_ORDER);
        let source = if supplied >= SYNTHESIZED_ORDER {
            DerivativeSource::Analytic
        } else {
            DerivativeSource::Synthesized
        };
        let eval = move |t: f64, order: usize| -> JetVec3 {
            let mut stack = Vec::with_capacity(order + 1);
            for k in 0..=order {
                if k <= supplied {
                    stack.push(evaluators[k](t));
                } else {
                    let base = &evaluators[supplied];
                    stack.push(central_difference(base.as_ref(), t, k - supplied));
                }
            }
            JetVec3::from_derivatives(&stack)
        };
        Self {
            label: label.into(),
            domain,
            eval: Arc::new(eval),
            max_order,
            source,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn derivative_source(&self) -> DerivativeSource {
        self.source
    }

    pub fn with_domain(&self, domain: Domain) -> Self {
        let mut c = self.clone();
        c.domain = domain;
        c
    }

    pub fn with_label(&self, label: impl Into<String>) -> Self {
        let mut c = self.clone();
        c.label = label.into();
        c
    }

    /// Taylor expansion of the position around `t` up to `order`.
    pub fn jet(&self, t: f64, order: usize) -> Result<JetVec3> {
        if order > self.max_order {
            return Err(GeometryError::InsufficientOrder {
                needed: order,
                available: self.max_order,
            });
        }
        Ok((self.eval)(t, order))
    }

    pub fn position(&self, t: f64) -> Vector3<f64> {
        (self.eval)(t, 0).value()
    }

    pub fn derivative(&self, t: f64, k: usize) -> Result<Vector3<f64>> {
        Ok(self.jet(t, k)?.derivative(k))
    }

    /// `[gamma(t), gamma'(t), ..., gamma^(order)(t)]`.
    pub fn derivative_stack(&self, t: f64, order: usize) -> Result<Vec<Vector3<f64>>> {
        let j = self.jet(t, order)?;
        Ok((0..=order).map(|k| j.derivative(k)).collect())
    }

    pub fn speed(&self, t: f64) -> f64 {
        (self.eval)(t, 1).derivative(1).norm()
    }

    /// Checks |gamma'| above [`REGULARITY_FLOOR`] on `n` equally spaced points.
    pub fn check_regular(&self, n: usize) -> Result<()> {
        for t in self.domain.grid(n.max(2)) {
            let speed = self.speed(t);
            if !(speed > REGULARITY_FLOOR) {
                return Err(GeometryError::NonRegular { t, speed });
            }
        }
        Ok(())
    }

    /// Largest relative disagreement between each derivative of order
    /// `1..=max_k` and a central difference of the order below it, over `n`
    /// probe points strictly inside the domain.
    pub fn derivative_consistency(&self, max_k: usize, n: usize) -> Result<f64> {
        let max_k = max_k.min(self.max_order);
        let mut worst: f64 = 0.0;
        let inner = shrink(self.domain, 0.05);
        for t in inner.grid(n.max(2)) {
            let stack = self.derivative_stack(t, max_k)?;
            for k in 1..=max_k {
                let lower = |x: f64| self.jet(x, k - 1).map(|j| j.derivative(k - 1)).unwrap();
                let fd = central_difference(&lower, t, 1);
                let scale = stack[k].norm().max(stack[k - 1].norm()).max(1.0);
                worst = worst.max((fd - stack[k]).norm() / scale);
            }
        }
        Ok(worst)
    }
}

fn shrink(d: Domain, frac: f64) -> Domain {
    let pad = d.width() * frac;
    Domain {
        min: d.min + pad,
        max: d.max - pad,
    }
}

/// Order-6 central difference of the `k`-th derivative with step
/// `eps^(1/(k+2)) * max(1, |t|)`.
pub fn central_difference<F>(f: &F, t: f64, k: usize) -> Vector3<f64>
where
    F: Fn(f64) -> Vector3<f64> + ?Sized,
{
    if k == 0 {
        return f(t);
    }
    let h = f64::EPSILON.powf(1.0 / (k as f64 + 2.0)) * t.abs().max(1.0);
    let half = 3 + (k - 1) / 2;
    let offsets: Vec<f64> = (-(half as i64)..=half as i64).map(|j| j as f64).collect();
    let weights = fornberg_weights(0.0, &offsets, k);
    let scale = h.powi(k as i32);
    offsets
        .iter()
        .zip(&weights[k])
        .fold(Vector3::zeros(), |acc, (o, w)| acc + f(t + o * h) * *w)
        / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> CurveSpec {
        CurveSpec::analytic("circle", Domain::new(0.0, std::f64::consts::TAU).unwrap(), |t| {
            let (s, c) = t.sin_cos();
            JetVec3::new(c, s, t * 0.0)
        })
    }

    #[test]
    fn analytic_stack_matches_trig() {
        let c = circle();
        let st = c.derivative_stack(0.4, 5).unwrap();
        assert!((st[3] - Vector3::new(0.4f64.sin(), -(0.4f64.cos()), 0.0)).norm() < 1e-14);
        assert!((st[4] - Vector3::new(0.4f64.cos(), 0.4f64.sin(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn synthesized_derivatives_track_analytic_ones() {
        let dom = Domain::new(0.0, 3.0).unwrap();
        let fd = CurveSpec::from_position("circle-fd", dom, |t| Vector3::new(t.cos(), t.sin(), 0.5 * t));
        assert_eq!(fd.derivative_source(), DerivativeSource::Synthesized);
        assert_eq!(fd.max_order(), 5);
        let t: f64 = 1.1;
        let tolerances = [0.0, 1e-9, 1e-6, 1e-5, 1e-4, 5e-3];
        let exact = [
            Vector3::new(t.cos(), t.sin(), 0.5 * t),
            Vector3::new(-t.sin(), t.cos(), 0.5),
            Vector3::new(-t.cos(), -t.sin(), 0.0),
            Vector3::new(t.sin(), -t.cos(), 0.0),
            Vector3::new(t.cos(), t.sin(), 0.0),
            Vector3::new(-t.sin(), t.cos(), 0.0),
        ];
        for k in 1..=5 {
            let d = fd.derivative(t, k).unwrap();
            assert!(
                (d - exact[k]).norm() < tolerances[k],
                "order {k}: {}",
                (d - exact[k]).norm()
            );
        }
        assert!(matches!(fd.jet(t, 6), Err(GeometryError::InsufficientOrder { .. })));
    }

    #[test]
    fn line_is_regular_point_is_not() {
        let dom = Domain::new(-1.0, 1.0).unwrap();
        let line = CurveSpec::analytic("line", dom, |t| JetVec3::new(t, t * 0.0, t * 0.0));
        assert!(line.check_regular(64).is_ok());
        let point = CurveSpec::analytic("point", dom, |t| JetVec3::new(t * 0.0 + 1.0, t * 0.0, t * 0.0));
        assert!(matches!(point.check_regular(8), Err(GeometryError::NonRegular { .. })));
    }

    #[test]
    fn supplied_derivatives_pass_consistency_and_wrong_ones_fail() {
        let dom = Domain::new(0.0, 2.0).unwrap();
        let good = CurveSpec::from_derivatives(
            "good",
            dom,
            vec![
                Arc::new(|t: f64| Vector3::new(t.cos(), t.sin(), t)),
                Arc::new(|t: f64| Vector3::new(-t.sin(), t.cos(), 1.0)),
            ],
        );
        assert!(good.derivative_consistency(1, 16).unwrap() < 1e-9);
        let bad = CurveSpec::from_derivatives(
            "bad",
            dom,
            vec![
                Arc::new(|t: f64| Vector3::new(t.cos(), t.sin(), t)),
                Arc::new(|t: f64| Vector3::new(-t.sin(), t.cos(), 2.0)),
            ],
        );
        assert!(bad.derivative_consistency(1, 16).unwrap() > 0.1);
    }

    #[test]
    fn analytic_families_are_self_consistent() {
        assert!(circle().derivative_consistency(5, 16).unwrap() < 1e-7);
    }

    #[test]
    fn invalid_domain_rejected() {
        assert!(Domain::new(1.0, 1.0).is_err());
        assert!(Domain::new(f64::NAN, 1.0).is_err());
    }
}
