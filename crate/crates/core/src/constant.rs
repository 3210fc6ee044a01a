//! Closed-form trace constant of a cone and of a planar corner.

use serde::Serialize;

use crate::ball::{chebyshev_ball, classify, Ball, TangencyClass, TangencyKind};
use crate::error::{Error, Result};
use crate::geometry::PolyhedralBase;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConstantKind {
    /// The value is the optimal constant.
    Exact,
    /// The value bounds the optimal constant from above.
    UpperBound,
    /// Heuristic value for a base outside the convex theory.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantResult {
    pub value: f64,
    pub kind: ConstantKind,
    pub ball: Ball,
    pub class: TangencyClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

/// `√(1+R²)/R`, evaluated as `√(1 + R⁻²)`.
pub fn alpha_formula(radius: f64) -> Result<f64> {
    if radius.is_nan() || radius <= 0.0 {
        return Err(Error::Domain(format!("radius must be positive, got {radius}")));
    }
    if radius == f64::INFINITY {
        return Ok(1.0);
    }
    Ok(radius.recip().hypot(1.0))
}

/// Optimal trace constant of the cone over `base` (axis through the
/// Chebyshev center).
pub fn constant_for(base: &PolyhedralBase, tol: f64) -> Result<ConstantResult> {
    let ball = chebyshev_ball(base)?;
    let class = classify(base, &ball, tol);
    let value = alpha_formula(ball.radius)?;
    let (kind, caveat) = match class.kind {
        TangencyKind::ExactInscribed => (ConstantKind::Exact, None),
        TangencyKind::BoundOnly => (ConstantKind::UpperBound, None),
        TangencyKind::Unsupported => (
            ConstantKind::Unknown,
            Some(
                "base is not convex; value is computed for its convex hull and is neither \
                 an established bound nor the optimal constant"
                    .to_string(),
            ),
        ),
    };
    Ok(ConstantResult {
        value,
        kind,
        ball,
        class,
        caveat,
    })
}

/// Trace constant `1/sin(θ/2)` at a convex planar corner with interior
/// angle `θ ∈ (0, π]`.
pub fn corner_q_2d(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta <= std::f64::consts::PI) {
        return Err(Error::Domain(format!(
            "corner angle must lie in (0, pi], got {theta}"
        )));
    }
    Ok(1.0 / (0.5 * theta).sin())
}
