//! Frenet apparatus of a regular curve from its derivative stack.

use nalgebra::Vector3;

use crate::arclength::ArcLengthMap;
use crate::curve::CurveSpec;
use crate::error::{GeometryError, Result};
use crate::jet::{Jet, JetVec3};
use crate::quadrature::integrate;

/// Curvature below which the principal normal is declared undefined.
pub const CURVATURE_FLOOR: f64 = 1e-9;

/// Pointwise Frenet data of a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetSample {
    /// Curve parameter.
    pub t: f64,
    /// Arc length.
    pub s: f64,
    pub position: Vector3<f64>,
    pub tangent: Vector3<f64>,
    pub normal: Vector3<f64>,
    pub binormal: Vector3<f64>,
    pub kappa: f64,
    pub tau: f64,
    /// tau / kappa.
    pub f: f64,
    /// Geodesic curvature of the principal-normal image, f_s / (kappa (1+f^2)^(3/2)).
    pub gamma_g: f64,
}

impl FrenetSample {
    /// Largest entry of |G - I| for the Gram matrix of (T, N, B).
    pub fn orthonormality_defect(&self) -> f64 {
        let v = [self.tangent, self.normal, self.binormal];
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v[i].dot(&v[j]) - target).abs());
            }
        }
        worst
    }
}

/// Ordered Frenet samples over a strictly increasing parameter grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameField {
    pub samples: Vec<FrenetSample>,
    pub grid: Vec<f64>,
}

impl FrameField {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Samples with `skip` entries dropped at each end.
    pub fn interior(&self, skip: usize) -> &[FrenetSample] {
        if 2 * skip >= self.samples.len() {
            &[]
        } else {
            &self.samples[skip..self.samples.len() - skip]
        }
    }

    pub fn check_invariants(&self) -> bool {
        self.grid.windows(2).all(|w| w[1] > w[0])
            && self.samples.windows(2).all(|w| w[1].s > w[0].s)
            && self.samples.len() == self.grid.len()
    }

    pub fn series(&self, pick: impl Fn(&FrenetSample) -> f64) -> Vec<f64> {
        self.samples.iter().map(pick).collect()
    }
}

/// Frenet quantities as jets in the curve parameter.
///
/// With a position jet of order `K`: tangent and speed have order `K-1`,
/// normal, binormal and curvature `K-2`, torsion and `f` order `K-3`
/// (NaN when `K < 3`).
#[derive(Debug, Clone, Copy)]
pub struct FrenetJets {
    pub position: JetVec3,
    pub speed: Jet,
    pub tangent: JetVec3,
    pub normal: JetVec3,
    pub binormal: JetVec3,
    pub kappa: Jet,
    pub tau: Jet,
    pub f: Jet,
}

impl FrenetJets {
    pub fn from_position(position: JetVec3) -> Self {
        let vel = position.deriv();
        let acc = vel.deriv();
        let speed = vel.norm();
        let cross = vel.cross(&acc);
        let cross_sq = cross.dot(&cross);
        let cross_norm = cross_sq.sqrt();
        let tangent = vel.scale(speed.recip());
        let binormal = cross.scale(cross_norm.recip());
        let normal = binormal.cross(&tangent);
        let kappa = cross_norm / speed.powi(3);
        let tau = if acc.order() >= 1 {
            cross.dot(&acc.deriv()) / cross_sq
        } else {
            Jet::constant(f64::NAN, 0)
        };
        let f = tau / kappa;
        Self {
            position,
            speed,
            tangent,
            normal,
            binormal,
            kappa,
            tau,
            f,
        }
    }

    /// Derivative with respect to arc length of a jet in `t`.
    pub fn d_ds(&self, q: &Jet) -> Jet {
        q.deriv() / self.speed
    }

    /// Geodesic curvature of the principal-normal image as a jet
    /// (order `K-4`).
    pub fn gamma(&self) -> Jet {
        let one_f2 = self.f * self.f + 1.0;
        self.d_ds(&self.f) / (self.kappa * one_f2.powf(1.5))
    }
}

pub(crate) fn frenet_jets(curve: &CurveSpec, t: f64, order: usize) -> Result<FrenetJets> {
    let j = FrenetJets::from_position(curve.jet(t, order)?);
    let kappa = j.kappa.value();
    if !(kappa > CURVATURE_FLOOR) {
        return Err(GeometryError::VanishingCurvature { t, kappa });
    }
    Ok(j)
}

fn sample_from_jets(j: &FrenetJets, t: f64, s: f64) -> FrenetSample {
    FrenetSample {
        t,
        s,
        position: j.position.value(),
        tangent: j.tangent.value(),
        normal: j.normal.value(),
        binormal: j.binormal.value(),
        kappa: j.kappa.value(),
        tau: j.tau.value(),
        f: j.f.value(),
        gamma_g: j.gamma().value(),
    }
}

/// Frenet frame, curvature, torsion, `f` and Γ at `t`; `s` is measured from
/// the start of the curve's domain.
pub fn frenet_apparatus(curve: &CurveSpec, t: f64) -> Result<FrenetSample> {
    let j = frenet_jets(curve, t, 4)?;
    let d = curve.domain();
    let s = integrate(&|x| curve.speed(x), d.min, t, 1e-13, 1e-15).value;
    Ok(sample_from_jets(&j, t, s))
}

/// Γ = f' / (κ (1 + f²)^(3/2)) with f' taken with respect to arc length.
pub fn gamma_geodesic(curve: &CurveSpec, t: f64) -> Result<f64> {
    Ok(frenet_jets(curve, t, 4)?.gamma().value())
}

/// Frenet samples of `curve` on `grid`; arc length from the first grid
/// point by cubic quadrature of the sampled speed.
pub fn sampled_frame_field(curve: &CurveSpec, grid: &[f64]) -> Result<FrameField> {
    let jets = grid
        .iter()
        .map(|&t| frenet_jets(curve, t, 4))
        .collect::<Result<Vec<_>>>()?;
    let speed: Vec<f64> = jets.iter().map(|j| j.speed.value()).collect();
    let s = crate::oracle::cumulative_integral(grid, &speed);
    Ok(FrameField {
        samples: jets
            .iter()
            .zip(grid)
            .zip(s)
            .map(|((j, &t), s)| sample_from_jets(j, t, s))
            .collect(),
        grid: grid.to_vec(),
    })
}

/// Frenet samples of `curve` on `grid` with arc length from `arc`.
pub fn frame_field(curve: &CurveSpec, grid: &[f64], arc: &ArcLengthMap) -> Result<FrameField> {
    let mut samples = Vec::with_capacity(grid.len());
    let mut prev: Option<(f64, f64)> = None;
    for &t in grid {
        let s = match prev {
            Some((tp, sp)) => sp + integrate(&|x| arc.speed(x), tp, t, 1e-13, 1e-15).value,
            None => arc.s_of_t(t),
        };
        prev = Some((t, s));
        let j = frenet_jets(curve, t, 4)?;
        samples.push(sample_from_jets(&j, t, s));
    }
    Ok(FrameField {
        samples,
        grid: grid.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Domain;
    use std::f64::consts::TAU;

    fn circle() -> CurveSpec {
        CurveSpec::analytic("circle", Domain::new(0.0, TAU).unwrap(), |t| {
            let (s, c) = t.sin_cos();
            JetVec3::new(c, s, t * 0.0)
        })
    }

    fn helix(a: f64, b: f64) -> CurveSpec {
        let c = (a * a + b * b).sqrt();
        CurveSpec::analytic("helix", Domain::new(0.0, 30.0).unwrap(), move |u| {
            let (s, co) = (u / c).sin_cos();
            JetVec3::new(co * a, s * a, u * (b / c))
        })
    }

    #[test]
    fn circle_frame_at_zero() {
        let s = frenet_apparatus(&circle(), 0.0).unwrap();
        assert!((s.tangent - Vector3::new(0.0, 1.0, 0.0)).norm() < 1e-15);
        assert!((s.normal - Vector3::new(-1.0, 0.0, 0.0)).norm() < 1e-15);
        assert!((s.binormal - Vector3::new(0.0, 0.0, 1.0)).norm() < 1e-15);
        assert!((s.kappa - 1.0).abs() < 1e-15);
        assert!(s.tau.abs() < 1e-15);
        assert_eq!(s.s, 0.0);
    }

    #[test]
    fn circular_helix_scalars() {
        // kappa = a/(a^2+b^2), tau = b/(a^2+b^2)
        for u in [0.0, 1.3, 17.0] {
            let s = frenet_apparatus(&helix(3.0, 4.0), u).unwrap();
            assert!((s.kappa - 3.0 / 25.0).abs() < 1e-15);
            assert!((s.tau - 4.0 / 25.0).abs() < 1e-15);
            assert!((s.f - 4.0 / 3.0).abs() < 1e-14);
            assert!(s.gamma_g.abs() < 1e-13);
            assert!(s.orthonormality_defect() < 1e-15);
        }
    }

    #[test]
    fn straight_line_has_no_normal() {
        let line = CurveSpec::analytic("line", Domain::new(0.0, 1.0).unwrap(), |t| {
            JetVec3::new(t, t * 0.0, t * 0.0)
        });
        assert!(matches!(
            frenet_apparatus(&line, 0.5),
            Err(GeometryError::VanishingCurvature { .. })
        ));
    }

    #[test]
    fn planar_curve_has_zero_gamma() {
        let ellipse = CurveSpec::analytic("ellipse", Domain::new(0.0, TAU).unwrap(), |t| {
            let (s, c) = t.sin_cos();
            JetVec3::new(c * 2.0, s, t * 0.0)
        });
        for t in [0.1, 1.0, 2.5] {
            assert!(gamma_geodesic(&ellipse, t).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn frame_field_arc_length_increases() {
        let c = circle();
        let arc = crate::arclength::arclength_map(&c, 32).unwrap();
        let grid = c.domain().grid(50);
        let ff = frame_field(&c, &grid, &arc).unwrap();
        assert!(ff.check_invariants());
        assert!((ff.samples.last().unwrap().s - TAU).abs() < 1e-12);
    }
}
