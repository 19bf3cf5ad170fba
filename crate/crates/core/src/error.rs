use thiserror::Error;

/// Geometry and numerics failures raised by the library.
///
/// Every variant has a stable upper-case name (see [`GeometryError::code`])
/// which the command-line tool prints on stderr.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("curve is not regular at t = {t}: |gamma'| = {speed:e}")]
    NonRegular { t: f64, speed: f64 },

    #[error("curvature {kappa:e} at t = {t} is below the floor; principal normal undefined")]
    VanishingCurvature { t: f64, kappa: f64 },

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("involute constant c = {c} must exceed the largest base arc length {s_max}")]
    BadConstant { c: f64, s_max: f64 },

    #[error("involute is planar at t = {t} (torsion ~ 0); binormal indicatrix degenerates")]
    PlanarInvolute { t: f64 },

    #[error("parameter `{0}` must be non-zero")]
    ZeroParam(&'static str),

    #[error("w = {w} is too close to 1")]
    DegenerateW { w: f64 },

    #[error("singular parameter t = {t} (cos t ~ 0)")]
    SingularParameter { t: f64 },

    #[error("series is empty or shorter than {min} samples")]
    EmptySeries { min: usize },

    #[error("derivative order {needed} requested but the curve only provides {available}")]
    InsufficientOrder { needed: usize, available: usize },

    #[error("invalid domain [{lo}, {hi}]")]
    InvalidDomain { lo: f64, hi: f64 },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
}

impl GeometryError {
    pub fn code(&self) -> &'static str {
        match self {
            GeometryError::NonRegular { .. } => "NON_REGULAR",
            GeometryError::VanishingCurvature { .. } => "VANISHING_CURVATURE",
            GeometryError::GridTooCoarse(_) => "GRID_TOO_COARSE",
            GeometryError::BadConstant { .. } => "BAD_CONSTANT",
            GeometryError::PlanarInvolute { .. } => "PLANAR_INVOLUTE",
            GeometryError::ZeroParam(_) => "ZERO_PARAM",
            GeometryError::DegenerateW { .. } => "DEGENERATE_W",
            GeometryError::SingularParameter { .. } => "SINGULAR_PARAMETER",
            GeometryError::EmptySeries { .. } => "EMPTY_SERIES",
            GeometryError::InsufficientOrder { .. } => "INSUFFICIENT_ORDER",
            GeometryError::InvalidDomain { .. } => "INVALID_DOMAIN",
            GeometryError::NonFinite(_) => "NON_FINITE",
        }
    }
}

pub type Result<T> = std::result::Result<T, GeometryError>;
