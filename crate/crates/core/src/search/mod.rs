//! Empirical maximization of `β` over parametric families of candidate sets.
//!
//! A search scans a fixed grid over the family's parameter box, then refines
//! the best grid point with Nelder–Mead, restarting from the incumbent while
//! evaluations remain. Parameters that do not produce a valid bounded set
//! score `−∞`. Given the same cone, family, budget and seed the report is
//! bit-for-bit identical: the grid is evaluated in parallel but reduced in
//! index order, and all randomness comes from a seeded ChaCha stream.

mod nelder_mead;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use nelder_mead::{Minimum, NelderMead};

use crate::ball::{classify, Ball, TangencyKind};
use crate::constant::{alpha_formula, ConstantKind};
use crate::error::{Error, Result};
use crate::functional::{evaluate_beta, halfspace_cut, perturbed_cut, strip_prism, PolyhedralSet};
use crate::geometry::{norm, Cone, VecN, DEFAULT_TOL};

pub const DEFAULT_BUDGET: usize = 5000;

/// Tilt (radians) below which a cut counts as horizontal.
pub const ANGULAR_TOL: f64 = 1e-3;

/// Per-axis grid resolution before the budget cap.
const GRID_PER_AXIS: usize = 32;
const MAX_RESTARTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum SearchFamily {
    /// `𝒞 ∩ {x·d ≤ 1}` with `d ∝ (p, 1)`, `p ∈ [−max_slope, max_slope]ⁿ⁻¹`.
    /// `None` picks `1 / max‖v‖` over the base vertices.
    TiltedCut { max_slope: Option<f64> },
    /// Horizontal cut with the cut point on edge ray `i` moved to height
    /// `1 + δᵢ`, `|δᵢ| ≤ max_offset`.
    PerturbedCut { max_offset: f64 },
    /// Strip-cone prisms of height `h ∈ (0, max_height]`.
    PrismFamily { max_height: f64 },
}

impl SearchFamily {
    pub fn tilted() -> Self {
        Self::TiltedCut { max_slope: None }
    }

    pub fn perturbed() -> Self {
        Self::PerturbedCut { max_offset: 0.5 }
    }

    pub fn prism() -> Self {
        Self::PrismFamily { max_height: 1.0 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::TiltedCut { .. } => "tilted",
            Self::PerturbedCut { .. } => "perturbed",
            Self::PrismFamily { .. } => "prism",
        }
    }
}

/// One evaluated parameter vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    pub params: Vec<f64>,
    /// `None` marks a parameter vector outside the valid region.
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub family: SearchFamily,
    pub best_beta: f64,
    pub best_params: Vec<f64>,
    /// Angle between the best cut normal and the cone axis (tilted family).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_tilt: Option<f64>,
    pub bound: f64,
    pub bound_kind: ConstantKind,
    pub gap: f64,
    pub evaluations: usize,
    pub budget: usize,
    pub seed: u64,
    pub grid_per_axis: usize,
    pub history: Vec<Sample>,
}

impl SearchReport {
    /// Largest finite `β` in the history.
    pub fn max_evaluated(&self) -> f64 {
        self.history
            .iter()
            .filter_map(|s| s.beta)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Parameter box and set constructor of a family bound to a cone.
struct Family<'a> {
    cone: &'a Cone,
    family: SearchFamily,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl<'a> Family<'a> {
    fn bind(cone: &'a Cone, family: SearchFamily) -> Result<Self> {
        let (k, half) = match family {
            SearchFamily::TiltedCut { max_slope } => {
                let k = cone.dim() - 1;
                let slope = match max_slope {
                    Some(s) if s > 0.0 && s.is_finite() => s,
                    Some(s) => {
                        return Err(Error::Configuration(format!("max_slope must be positive, got {s}")))
                    }
                    None => match cone.base().vertices() {
                        Ok(vs) => 1.0 / vs.iter().map(|v| norm(v)).fold(f64::MIN_POSITIVE, f64::max),
                        Err(_) => 1.0,
                    },
                };
                (k, slope)
            }
            SearchFamily::PerturbedCut { max_offset } => {
                if !(max_offset > 0.0 && max_offset < 1.0) {
                    return Err(Error::Configuration(format!(
                        "max_offset must lie in (0, 1), got {max_offset}"
                    )));
                }
                let rays = cone.edge_rays().map_err(|_| {
                    Error::Configuration("perturbed cuts need a cone with bounded base".into())
                })?;
                (rays.len(), max_offset)
            }
            SearchFamily::PrismFamily { max_height } => {
                if cone.strip().is_none() {
                    return Err(Error::Configuration(
                        "the prism family only applies to strip (book) cones".into(),
                    ));
                }
                if !(max_height > 0.0 && max_height.is_finite()) {
                    return Err(Error::Configuration(format!(
                        "max_height must be positive, got {max_height}"
                    )));
                }
                return Ok(Self {
                    cone,
                    family,
                    lo: vec![0.0],
                    hi: vec![max_height],
                });
            }
        };
        Ok(Self {
            cone,
            family,
            lo: vec![-half; k],
            hi: vec![half; k],
        })
    }

    fn dim(&self) -> usize {
        self.lo.len()
    }

    fn build(&self, p: &[f64]) -> Result<PolyhedralSet> {
        match self.family {
            SearchFamily::TiltedCut { .. } => halfspace_cut(self.cone, &tilt_direction(p), 1.0),
            SearchFamily::PerturbedCut { .. } => perturbed_cut(self.cone, p),
            SearchFamily::PrismFamily { .. } => strip_prism(self.cone, p[0]),
        }
    }

    fn beta(&self, p: &[f64]) -> Option<f64> {
        let inside = p
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(x, (lo, hi))| x.is_finite() && *x >= *lo && *x <= *hi);
        if !inside {
            return None;
        }
        let set = self.build(p).ok()?;
        evaluate_beta(self.cone, &set, DEFAULT_TOL)
            .ok()
            .map(|r| r.beta)
            .filter(|b| b.is_finite())
    }

    fn grid(&self, per_axis: usize) -> Vec<Vec<f64>> {
        let axis = |j: usize| -> Vec<f64> {
            let (lo, hi) = (self.lo[j], self.hi[j]);
            match self.family {
                // Heights must stay positive: (0, hi] in equal steps.
                SearchFamily::PrismFamily { .. } => {
                    (1..=per_axis).map(|i| hi * i as f64 / per_axis as f64).collect()
                }
                // Cell midpoints: the box boundary is where tilted cuts stop
                // being bounded.
                _ => (0..per_axis)
                    .map(|i| lo + (hi - lo) * (i as f64 + 0.5) / per_axis as f64)
                    .collect(),
            }
        };
        let axes: Vec<Vec<f64>> = (0..self.dim()).map(axis).collect();
        let total = per_axis.pow(self.dim() as u32);
        (0..total)
            .map(|mut idx| {
                axes.iter()
                    .map(|ax| {
                        let v = ax[idx % per_axis];
                        idx /= per_axis;
                        v
                    })
                    .collect()
            })
            .collect()
    }
}

/// Unit normal `(p, 1)/‖(p, 1)‖`.
pub fn tilt_direction(p: &[f64]) -> Vec<f64> {
    let mut d = p.to_vec();
    d.push(1.0);
    let len = norm(&d);
    d.iter().map(|c| c / len).collect()
}

/// Angle between `(p, 1)` and the axis `eₙ`.
pub fn tilt_angle(p: &[f64]) -> f64 {
    norm(p).atan()
}

/// The constant bound that applies to a given cone: `α(R)` for the radius of
/// the largest axis-centred ball in its base, with exactness decided by
/// tangency of every facet.
pub fn cone_bound(cone: &Cone) -> Result<(f64, ConstantKind)> {
    let radius = cone.axis_radius();
    let ball = Ball {
        center: VecN::new(vec![0.0; cone.dim() - 1])?,
        radius,
    };
    let kind = match classify(cone.base(), &ball, DEFAULT_TOL).kind {
        TangencyKind::ExactInscribed => ConstantKind::Exact,
        TangencyKind::BoundOnly => ConstantKind::UpperBound,
        TangencyKind::Unsupported => ConstantKind::Unknown,
    };
    Ok((alpha_formula(radius)?, kind))
}

fn grid_resolution(k: usize, budget: usize) -> usize {
    let share = (budget / 2).max(1);
    let mut m = GRID_PER_AXIS;
    while m > 1 && m.pow(k as u32) > share {
        m -= 1;
    }
    m
}

pub fn search(cone: &Cone, family: SearchFamily, budget: usize, seed: u64) -> Result<SearchReport> {
    if budget == 0 {
        return Err(Error::Precondition("search budget must be at least 1".into()));
    }
    let fam = Family::bind(cone, family)?;
    let (bound, bound_kind) = cone_bound(cone)?;
    let k = fam.dim();
    let per_axis = grid_resolution(k, budget);

    let grid = fam.grid(per_axis);
    let scores: Vec<Option<f64>> = grid.par_iter().map(|p| fam.beta(p)).collect();
    let mut history: Vec<Sample> = grid
        .into_iter()
        .zip(scores)
        .map(|(params, beta)| Sample { params, beta })
        .collect();
    history.truncate(budget);

    let mut best_idx: Option<usize> = None;
    for (i, s) in history.iter().enumerate() {
        if let Some(b) = s.beta {
            if best_idx.is_none_or(|j| b > history[j].beta.unwrap_or(f64::NEG_INFINITY)) {
                best_idx = Some(i);
            }
        }
    }
    let Some(best_idx) = best_idx else {
        return Err(Error::UnboundedCut(format!(
            "no parameter of the {} family yields a valid bounded set",
            fam.family.name()
        )));
    };
    let mut best_x = history[best_idx].params.clone();
    let mut best_f = history[best_idx].beta.unwrap_or(f64::NEG_INFINITY);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cell: Vec<f64> = (0..k)
        .map(|j| (fam.hi[j] - fam.lo[j]) / per_axis as f64)
        .collect();
    let nm = NelderMead::default();
    let mut scale = 1.0;
    for _ in 0..=MAX_RESTARTS {
        let remaining = budget.saturating_sub(history.len());
        if remaining < k + 2 {
            break;
        }
        let mut simplex = vec![best_x.clone()];
        for j in 0..k {
            let mut x = best_x.clone();
            let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            x[j] += sign * scale * cell[j] * rng.gen_range(0.5..1.0);
            simplex.push(x);
        }
        let objective = |p: &[f64]| {
            let b = fam.beta(p);
            history.push(Sample {
                params: p.to_vec(),
                beta: b,
            });
            b.map_or(f64::INFINITY, |b| -b)
        };
        let m = nm.minimize(objective, simplex, remaining);
        let improved = -m.f > best_f;
        if improved {
            best_f = -m.f;
            best_x = m.x;
        }
        if !improved && scale < 1e-6 {
            break;
        }
        scale *= 0.1;
    }

    let best_tilt = match fam.family {
        SearchFamily::TiltedCut { .. } => Some(tilt_angle(&best_x)),
        _ => None,
    };
    Ok(SearchReport {
        family: fam.family,
        best_beta: best_f,
        best_params: best_x,
        best_tilt,
        bound,
        bound_kind,
        gap: bound - best_f,
        evaluations: history.len(),
        budget,
        seed,
        grid_per_axis: per_axis,
        history,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximizerCheck {
    pub verified: bool,
    pub expected: f64,
    pub value_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tilt: Option<f64>,
    pub diagnostics: Vec<String>,
}

/// Checks that a search on an exactly inscribed cone reached the closed-form
/// constant with a horizontal cut.
pub fn verify_maximizer(cone: &Cone, report: &SearchReport, tol: f64) -> Result<MaximizerCheck> {
    let (expected, kind) = cone_bound(cone)?;
    if kind != ConstantKind::Exact {
        return Err(Error::Precondition(
            "maximizer verification needs a cone whose base is tangent to its inscribed ball".into(),
        ));
    }
    let value_error = (report.best_beta - expected).abs();
    let mut diagnostics = Vec::new();
    if value_error.is_nan() || value_error > tol {
        diagnostics.push(format!(
            "best beta {} differs from {expected} by {value_error:e} > {tol:e}",
            report.best_beta
        ));
    }
    let tilt = match report.family {
        SearchFamily::TiltedCut { .. } => Some(tilt_angle(&report.best_params)),
        SearchFamily::PerturbedCut { .. } => Some(
            report
                .best_params
                .iter()
                .fold(0.0f64, |m, d| m.max(d.abs()))
                .atan(),
        ),
        SearchFamily::PrismFamily { .. } => {
            diagnostics.push("prism family contains no horizontal cut".into());
            None
        }
    };
    if let Some(t) = tilt {
        if t >= ANGULAR_TOL {
            diagnostics.push(format!(
                "tilt exceeds tolerance: {t:e} rad >= {ANGULAR_TOL:e} rad"
            ));
        }
    }
    Ok(MaximizerCheck {
        verified: diagnostics.is_empty(),
        expected,
        value_error,
        tilt,
        diagnostics,
    })
}
