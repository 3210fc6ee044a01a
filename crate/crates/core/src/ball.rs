//! Largest inscribed (Chebyshev) ball of a cone base and the tangency
//! classification that decides whether the closed-form constant is exact.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{dot, interior_radius, norm, PolyhedralBase, VecN, DEFAULT_TOL};
use crate::lp::{DenseLp, LpOutcome};

/// Sphere `S_R(center)` in the base hyperplane.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ball {
    pub center: VecN,
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TangencyKind {
    /// Every facet line of the base is tangent to the ball.
    ExactInscribed,
    /// Facet lines are tangent to or miss the ball.
    BoundOnly,
    /// The base came from a non-convex input, or some facet line cuts the
    /// ball.
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangencyClass {
    pub kind: TangencyKind,
    pub ball: Ball,
    /// Distance from the center to each constraint line minus the radius,
    /// in constraint order.
    pub slack: Vec<f64>,
    /// Tolerance the slacks were compared against.
    pub tolerance: f64,
}

/// Chebyshev ball of `base`: the center maximizing the smallest distance to
/// the constraint lines, and that distance.
///
/// When the optimal center is not unique the tie is broken deterministically:
/// the distance vector is maximized in leximin order (smallest distance first,
/// then the next smallest, and so on) and any remaining freedom is resolved by
/// taking the point of least norm. For a strip this gives the origin of the
/// mid-line, for a rectangle its center.
pub fn chebyshev_ball(base: &PolyhedralBase) -> Result<Ball> {
    let cs = base.constraints();
    if base.dim() == 1 {
        let v = base
            .vertices()
            .map_err(|_| Error::Unbounded("interval base is unbounded; no largest ball".into()))?;
        let (lo, hi) = (v[0][0], v[1][0]);
        return Ok(Ball {
            center: VecN::from_vec_unchecked(vec![0.5 * (lo + hi)]),
            radius: 0.5 * (hi - lo),
        });
    }

    let radius = interior_radius(cs, None)?;
    if radius == f64::INFINITY {
        return Err(Error::Unbounded(format!(
            "inscribed radius is unbounded: the {} constraint normals (rank {}) lie in an open \
             half-space of R^{}",
            cs.len(),
            normal_rank(base),
            base.dim()
        )));
    }
    if radius.is_nan() || radius <= 0.0 {
        return Err(Error::Infeasible("base has no interior".into()));
    }

    let center = leximin_center(base, radius)?;
    Ok(Ball {
        center: VecN::from_vec_unchecked(center),
        radius,
    })
}

fn normal_rank(base: &PolyhedralBase) -> usize {
    let rows: Vec<(Vec<f64>, f64)> = base
        .constraints()
        .iter()
        .map(|c| (c.normal().to_vec(), 0.0))
        .collect();
    orthonormalize(&rows).len()
}

/// Gram–Schmidt on the rows of `A x = c`, dropping dependent rows. Returns
/// orthonormal rows `q` with transformed right-hand sides.
fn orthonormalize(rows: &[(Vec<f64>, f64)]) -> Vec<(Vec<f64>, f64)> {
    let mut out: Vec<(Vec<f64>, f64)> = Vec::new();
    for (a, c) in rows {
        let mut v = a.clone();
        let mut rhs = *c;
        for (q, qc) in &out {
            let p = dot(&v, q);
            v.iter_mut().zip(q).for_each(|(vi, qi)| *vi -= p * qi);
            rhs -= p * qc;
        }
        let len = norm(&v);
        if len > 1e-10 * norm(a).max(1.0) {
            out.push((v.iter().map(|x| x / len).collect(), rhs / len));
        }
    }
    out
}

fn leximin_center(base: &PolyhedralBase, radius: f64) -> Result<Vec<f64>> {
    let cs = base.constraints();
    let d = base.dim();
    let m = cs.len();
    let eps = DEFAULT_TOL * radius.max(1.0);

    // levels[i] = Some(l): distance to constraint i is pinned at l.
    let mut levels: Vec<Option<f64>> = vec![None; m];
    let mut level = radius;
    let mut last_point: Option<Vec<f64>> = None;

    loop {
        // Which free constraints cannot move beyond the current level?
        let mut best: Vec<(usize, f64)> = Vec::new();
        for j in (0..m).filter(|&j| levels[j].is_none()) {
            let mut lp = DenseLp::new(cs[j].normal().iter().map(|a| -a).collect());
            for (i, c) in cs.iter().enumerate() {
                lp.le(c.normal().to_vec(), c.offset() - levels[i].unwrap_or(level));
            }
            let reach = match lp.maximize()? {
                LpOutcome::Optimal { objective, x } => {
                    last_point.get_or_insert(x);
                    cs[j].offset() + objective
                }
                LpOutcome::Unbounded => f64::INFINITY,
                LpOutcome::Infeasible => level,
            };
            best.push((j, reach));
        }
        let mut pinned_any = false;
        for &(j, reach) in &best {
            if reach <= level + eps {
                levels[j] = Some(level);
                pinned_any = true;
            }
        }
        if !pinned_any {
            if let Some(&(j, _)) = best.iter().min_by(|a, b| a.1.total_cmp(&b.1)) {
                levels[j] = Some(level);
            }
        }
        if levels.iter().all(Option::is_some) {
            break;
        }

        let mut obj = vec![0.0; d + 1];
        obj[d] = 1.0;
        let mut lp = DenseLp::new(obj);
        for (i, c) in cs.iter().enumerate() {
            let mut row = c.normal().to_vec();
            match levels[i] {
                Some(l) => {
                    row.push(0.0);
                    lp.le(row, c.offset() - l);
                }
                None => {
                    row.push(1.0);
                    lp.le(row, c.offset());
                }
            }
        }
        match lp.maximize()? {
            LpOutcome::Optimal { objective, x } => {
                last_point = Some(x[..d].to_vec());
                level = objective.max(level);
            }
            _ => break,
        }
    }

    let rows: Vec<(Vec<f64>, f64)> = cs
        .iter()
        .zip(&levels)
        .filter_map(|(c, l)| l.map(|l| (c.normal().to_vec(), c.offset() - l)))
        .collect();
    let q = orthonormalize(&rows);
    let mut x = vec![0.0; d];
    for (qi, ci) in &q {
        x.iter_mut().zip(qi).for_each(|(xk, qk)| *xk += ci * qk);
    }
    let feasible = cs
        .iter()
        .zip(&levels)
        .all(|(c, l)| c.distance(&x) >= l.unwrap_or(level) - eps);
    if feasible {
        Ok(x)
    } else {
        last_point
            .map(|p| p[..d].to_vec())
            .ok_or_else(|| Error::Solver("no center recovered".into()))
    }
}

/// Compares the facet distances of `ball.center` with `ball.radius`.
///
/// The comparison tolerance is `tol · max(1, R)`.
pub fn classify(base: &PolyhedralBase, ball: &Ball, tol: f64) -> TangencyClass {
    let tolerance = tol * ball.radius.max(1.0);
    let slack: Vec<f64> = base
        .constraints()
        .iter()
        .map(|c| c.distance(&ball.center) - ball.radius)
        .collect();
    let max = slack.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = slack.iter().copied().fold(f64::INFINITY, f64::min);
    let kind = if base.is_convexified() || min < -tolerance {
        TangencyKind::Unsupported
    } else if max <= tolerance {
        TangencyKind::ExactInscribed
    } else {
        TangencyKind::BoundOnly
    };
    TangencyClass {
        kind,
        ball: ball.clone(),
        slack,
        tolerance,
    }
}
