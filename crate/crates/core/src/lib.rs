//! Frenet apparatus of space curves, their involutes and the tangent,
//! principal-normal and binormal spherical indicatrices of an involute.
//!
//! Closed forms are evaluated from truncated Taylor series ([`jet`]), so
//! every derivative along arc length is exact to round-off. A
//! finite-difference [`oracle`] recomputes the same quantities from sampled
//! points only, and [`verify`] compares the two. [`classify`] turns sampled
//! scalar series into planar / helix / slant-helix / circle verdicts.
//!
//! ```
//! use frenet_core::{preset, InvoluteSpec, IndicatrixKind, tangent_indicatrix_data};
//!
//! let p = preset("kula").unwrap();
//! let spec = InvoluteSpec::with_anchor(&p.curve().unwrap(), p.c_inv, p.s_anchor).unwrap();
//! let point = tangent_indicatrix_data(&spec, 0.3).unwrap();
//! assert_eq!(point.kind, IndicatrixKind::Tangent);
//! assert!((point.sample.kappa - 1.0625f64.sqrt()).abs() < 1e-12);
//! ```

pub mod arclength;
pub mod classify;
pub mod curve;
pub mod error;
pub mod families;
pub mod frenet;
pub mod indicatrix;
pub mod involute;
pub mod jet;
pub mod oracle;
pub mod quadrature;
pub mod verify;

pub use arclength::{arclength_map, ArcLengthMap};
pub use classify::{
    classify_curve, classify_curve_with, classify_field, fit_sphere, is_constant, ClassificationReport, ScalarSeries,
    Tolerances, Verdicts,
};
pub use curve::{CurveSpec, DerivativeSource, Domain};
pub use error::{GeometryError, Result};
pub use families::{preset, Family, FamilyParams, Preset, PRESET_NAMES};
pub use frenet::{frame_field, frenet_apparatus, gamma_geodesic, sampled_frame_field, FrameField, FrenetSample};
pub use indicatrix::{
    binormal_indicatrix_data, indicatrix_curve, indicatrix_field, normal_indicatrix_data, tangent_indicatrix_data,
    IndicatrixKind, IndicatrixPoint,
};
pub use involute::{build_involute, involute_frame, involute_scalars, InvoluteScalars, InvoluteSpec};
pub use oracle::numeric_frenet_oracle;
pub use verify::{run_identity_suite, run_suite, run_theorem_suite, Status, Suite, VerificationReport};
