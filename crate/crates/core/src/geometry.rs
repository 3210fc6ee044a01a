//! Vectors, half-space descriptions of cone bases, and the cones built over
//! them.
//!
//! A cone in `ℝⁿ` is stored through its basis: the slice `G` of the cone at
//! height `xₙ = 1`, a convex polyhedron in `ℝⁿ⁻¹` given as an intersection of
//! half-spaces `a·y ≤ b` with unit normals. The cone itself is
//! `{(t·y, t) : y ∈ G, t > 0}` together with the apex. Each half-space of the
//! basis produces one lateral facet `{x : a·x' = b·xₙ}` of the cone.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::ball;
use crate::error::{Error, Result};
use crate::lp::{DenseLp, LpOutcome};

/// Default tolerance for geometric predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

const UNIT_TOL: f64 = 1e-12;

/// A point or direction with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct VecN(Vec<f64>);

impl VecN {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Validation("vector has no coordinates".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Validation(format!(
                "vector has non-finite coordinates: {coords:?}"
            )));
        }
        Ok(Self(coords))
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        Self(coords)
    }

    /// `k`-th standard basis vector of `ℝⁿ`.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut c = vec![0.0; n];
        c[k] = 1.0;
        Self(c)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &[f64]) -> f64 {
        dot(&self.0, other)
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self(self.0.iter().map(|c| c * s).collect())
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for VecN {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for VecN {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<VecN> for Vec<f64> {
    fn from(v: VecN) -> Self {
        v.0
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// The half-space `normal·y ≤ offset` with `‖normal‖ = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfPlaneConstraint {
    normal: VecN,
    offset: f64,
}

impl HalfPlaneConstraint {
    /// Builds a constraint from an arbitrary nonzero normal; the normal and
    /// offset are rescaled so the normal has unit length.
    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self> {
        let normal = VecN::new(normal)?;
        if !offset.is_finite() {
            return Err(Error::Validation(format!("offset {offset} is not finite")));
        }
        let len = normal.norm();
        if len <= f64::MIN_POSITIVE {
            return Err(Error::Validation("constraint normal is zero".into()));
        }
        if (len - 1.0).abs() <= UNIT_TOL {
            return Ok(Self { normal, offset });
        }
        Ok(Self {
            normal: normal.scaled(1.0 / len),
            offset: offset / len,
        })
    }

    pub fn normal(&self) -> &VecN {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// Signed distance from `y` to the boundary line, positive inside.
    pub fn distance(&self, y: &[f64]) -> f64 {
        self.offset - self.normal.dot(y)
    }

    /// Unit outward normal `(a, −b)/√(1+b²)` of the lateral cone facet
    /// `{x : a·x' = b·xₙ}` generated by this constraint.
    ///
    /// Its last component is `−b/√(1+b²)` for every point of the facet,
    /// which is what makes the constant vector field `eₙ` useful in the
    /// divergence argument.
    pub fn lateral_normal(&self) -> Result<VecN> {
        if self.offset <= 0.0 {
            return Err(Error::Precondition(format!(
                "lateral normal needs a positive offset (origin interior to the base), got {}",
                self.offset
            )));
        }
        let scale = 1.0 / self.offset.hypot(1.0);
        let mut coords: Vec<f64> = self.normal.iter().map(|a| a * scale).collect();
        coords.push(-self.offset * scale);
        Ok(VecN(coords))
    }
}

/// Convex polyhedral basis of a cone in half-space form.
///
/// Construction normalizes every constraint, drops duplicate and redundant
/// half-spaces, and rejects bases without interior.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyhedralBase {
    constraints: Vec<HalfPlaneConstraint>,
    bounded: bool,
    /// Set when the base was built from a vertex list that was not in convex
    /// position; the stored constraints then describe its convex hull.
    convexified: bool,
}

impl PolyhedralBase {
    pub fn from_constraints(raw: Vec<HalfPlaneConstraint>) -> Result<Self> {
        let dim = match raw.first() {
            Some(c) => c.dim(),
            None => return Err(Error::Validation("base has no constraints".into())),
        };
        if raw.iter().any(|c| c.dim() != dim) {
            return Err(Error::Validation(
                "constraint normals have different dimensions".into(),
            ));
        }

        let r = interior_radius(&raw, Some(1.0))?;
        if r <= 1e-12 {
            return Err(Error::Infeasible(
                "base has empty or degenerate interior".into(),
            ));
        }

        // Parallel duplicates: keep the tightest.
        let mut unique: Vec<HalfPlaneConstraint> = Vec::with_capacity(raw.len());
        for c in raw {
            match unique
                .iter_mut()
                .find(|u| (u.normal.dot(&c.normal) - 1.0).abs() <= UNIT_TOL)
            {
                Some(u) => u.offset = u.offset.min(c.offset),
                None => unique.push(c),
            }
        }

        let mut kept = unique;
        let mut j = 0;
        while j < kept.len() {
            if kept.len() > 1 && is_redundant(&kept, j)? {
                kept.remove(j);
            } else {
                j += 1;
            }
        }

        let bounded = is_bounded(&kept)?;
        Ok(Self {
            constraints: kept,
            bounded,
            convexified: false,
        })
    }

    /// Builds the base as the convex hull of a vertex list.
    ///
    /// Points strictly inside the hull mark the base as `convexified`, which
    /// downstream classification treats as a non-convex input.
    pub fn from_vertices(points: &[Vec<f64>]) -> Result<Self> {
        let dim = match points.first() {
            Some(p) => p.len(),
            None => return Err(Error::Validation("vertex list is empty".into())),
        };
        if dim == 0 || points.iter().any(|p| p.len() != dim) {
            return Err(Error::Validation("vertices have inconsistent dimensions".into()));
        }
        if points.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::Validation("vertex coordinates must be finite".into()));
        }
        if points.len() < dim + 1 {
            return Err(Error::Validation(format!(
                "need at least {} vertices for a {dim}-dimensional base",
                dim + 1
            )));
        }
        let hull = match dim {
            1 => {
                let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
                let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
                vec![
                    HalfPlaneConstraint::new(vec![1.0], hi)?,
                    HalfPlaneConstraint::new(vec![-1.0], -lo)?,
                ]
            }
            2 => hull_2d(points)?,
            _ => hull_brute_force(points)?,
        };
        let mut base = Self::from_constraints(hull)?;
        let scale = points.iter().map(|p| norm(p)).fold(1.0, f64::max);
        base.convexified = points.iter().any(|p| {
            base.constraints
                .iter()
                .all(|c| c.distance(p) > DEFAULT_TOL * scale)
        });
        Ok(base)
    }

    /// Approximates the basis `{r·u : 0 ≤ r ≤ f(u)}` of a radial function `f`
    /// on the unit sphere of `ℝᵈ` (`d = 1` or `2`) by an inscribed polygon
    /// through `samples` equally spaced directions.
    pub fn from_radial_samples<F>(base_dim: usize, f: F, samples: usize) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64,
    {
        let radius = |u: &[f64]| -> Result<f64> {
            let r = f(u);
            if r.is_finite() && r > 0.0 {
                Ok(r)
            } else {
                Err(Error::Validation(format!(
                    "radial function must be finite and positive, got {r} at {u:?}"
                )))
            }
        };
        match base_dim {
            1 => Self::from_constraints(vec![
                HalfPlaneConstraint::new(vec![1.0], radius(&[1.0])?)?,
                HalfPlaneConstraint::new(vec![-1.0], radius(&[-1.0])?)?,
            ]),
            2 => {
                if samples < 3 {
                    return Err(Error::Validation("need at least 3 samples".into()));
                }
                let pts = (0..samples)
                    .map(|k| {
                        let th = std::f64::consts::TAU * k as f64 / samples as f64;
                        let u = [th.cos(), th.sin()];
                        radius(&u).map(|r| vec![r * u[0], r * u[1]])
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::from_vertices(&pts)
            }
            d => Err(Error::Validation(format!(
                "radial sampling supports base dimension 1 or 2, got {d}"
            ))),
        }
    }

    pub fn constraints(&self) -> &[HalfPlaneConstraint] {
        &self.constraints
    }

    /// Dimension `n − 1` of the hyperplane holding the base.
    pub fn dim(&self) -> usize {
        self.constraints[0].dim()
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    pub fn is_convexified(&self) -> bool {
        self.convexified
    }

    pub fn contains(&self, y: &[f64], tol: f64) -> bool {
        self.constraints.iter().all(|c| c.distance(y) >= -tol)
    }

    /// Translates the base so that `center` becomes the origin. Offsets
    /// become the distances from `center` to the constraint lines.
    pub fn recenter(&self, center: &[f64]) -> Result<Self> {
        if center.len() != self.dim() {
            return Err(Error::Validation(format!(
                "center has dimension {}, base has {}",
                center.len(),
                self.dim()
            )));
        }
        let mut out = self.clone();
        for c in &mut out.constraints {
            let d = c.distance(center);
            if d <= 0.0 {
                return Err(Error::Domain(format!(
                    "center {center:?} is not strictly inside the base"
                )));
            }
            c.offset = d;
        }
        Ok(out)
    }

    /// The base scaled by `factor > 0` about the origin.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::Domain(format!("scale factor must be positive, got {factor}")));
        }
        let mut out = self.clone();
        for c in &mut out.constraints {
            c.offset *= factor;
        }
        Ok(out)
    }

    /// Vertices of a bounded base of dimension 1 or 2, counterclockwise.
    pub fn vertices(&self) -> Result<Vec<Vec<f64>>> {
        if !self.bounded {
            return Err(Error::UnboundedCut("base is unbounded and has no vertex cycle".into()));
        }
        match self.dim() {
            1 => {
                let hi = self.constraints.iter().find(|c| c.normal[0] > 0.0);
                let lo = self.constraints.iter().find(|c| c.normal[0] < 0.0);
                match (lo, hi) {
                    (Some(lo), Some(hi)) => Ok(vec![vec![-lo.offset], vec![hi.offset]]),
                    _ => Err(Error::UnboundedCut("interval base is unbounded".into())),
                }
            }
            2 => {
                let mut sorted: Vec<&HalfPlaneConstraint> = self.constraints.iter().collect();
                sorted.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
                let m = sorted.len();
                (0..m)
                    .map(|i| line_intersection(sorted[i], sorted[(i + 1) % m]))
                    .collect()
            }
            d => Err(Error::Validation(format!(
                "vertex enumeration supports base dimension 1 or 2, got {d}"
            ))),
        }
    }
}

fn angle(c: &HalfPlaneConstraint) -> f64 {
    c.normal[1].atan2(c.normal[0])
}

fn line_intersection(a: &HalfPlaneConstraint, b: &HalfPlaneConstraint) -> Result<Vec<f64>> {
    let (a1, a2, b1, b2) = (a.normal[0], a.normal[1], b.normal[0], b.normal[1]);
    let det = a1 * b2 - a2 * b1;
    if det.abs() <= 1e-14 {
        return Err(Error::Validation("adjacent base edges are parallel".into()));
    }
    Ok(vec![
        (a.offset * b2 - a2 * b.offset) / det,
        (a1 * b.offset - a.offset * b1) / det,
    ])
}

/// Largest `r` with `aᵢ·y + r ≤ bᵢ` for all `i`, optionally capped.
pub(crate) fn interior_radius(cs: &[HalfPlaneConstraint], cap: Option<f64>) -> Result<f64> {
    let d = cs[0].dim();
    let mut obj = vec![0.0; d + 1];
    obj[d] = 1.0;
    let mut lp = DenseLp::new(obj).bound(d, f64::NEG_INFINITY, cap.unwrap_or(f64::INFINITY));
    for c in cs {
        let mut row = c.normal.to_vec();
        row.push(1.0);
        lp.le(row, c.offset);
    }
    match lp.maximize()? {
        LpOutcome::Optimal { objective, .. } => Ok(objective),
        LpOutcome::Infeasible => Ok(f64::NEG_INFINITY),
        LpOutcome::Unbounded => Ok(f64::INFINITY),
    }
}

fn support(cs: &[HalfPlaneConstraint], dir: &[f64]) -> Result<Option<f64>> {
    let mut lp = DenseLp::new(dir.to_vec());
    for c in cs {
        lp.le(c.normal.to_vec(), c.offset);
    }
    match lp.maximize()? {
        LpOutcome::Optimal { objective, .. } => Ok(Some(objective)),
        LpOutcome::Unbounded => Ok(None),
        LpOutcome::Infeasible => Err(Error::Infeasible("base is empty".into())),
    }
}

fn is_redundant(cs: &[HalfPlaneConstraint], j: usize) -> Result<bool> {
    let others: Vec<HalfPlaneConstraint> = cs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, c)| c.clone())
        .collect();
    let c = &cs[j];
    Ok(match support(&others, &c.normal)? {
        Some(h) => h <= c.offset + DEFAULT_TOL * c.offset.abs().max(1.0),
        None => false,
    })
}

fn is_bounded(cs: &[HalfPlaneConstraint]) -> Result<bool> {
    let d = cs[0].dim();
    for k in 0..d {
        for s in [1.0, -1.0] {
            let mut dir = vec![0.0; d];
            dir[k] = s;
            if support(cs, &dir)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn cross2(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Andrew's monotone chain; returns the hull edges as outward half-planes.
fn hull_2d(points: &[Vec<f64>]) -> Result<Vec<HalfPlaneConstraint>> {
    let mut pts: Vec<&Vec<f64>> = points.iter().collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    let mut hull: Vec<&Vec<f64>> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &&Vec<f64>>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while hull.len() >= start + 2
                && cross2(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() < 3 {
        return Err(Error::Infeasible("vertices are collinear".into()));
    }
    let m = hull.len();
    (0..m)
        .map(|i| {
            let (p, q) = (hull[i], hull[(i + 1) % m]);
            let normal = vec![q[1] - p[1], p[0] - q[0]];
            let offset = dot(&normal, p);
            HalfPlaneConstraint::new(normal, offset)
        })
        .collect()
}

/// Facets of the convex hull of points in `ℝᵈ`, `d ≥ 3`, by testing every
/// `d`-subset. Intended for the small vertex lists of cone bases.
fn hull_brute_force(points: &[Vec<f64>]) -> Result<Vec<HalfPlaneConstraint>> {
    let d = points[0].len();
    let scale = points.iter().map(|p| norm(p)).fold(1.0, f64::max);
    let tol = DEFAULT_TOL * scale;
    let mut facets: Vec<HalfPlaneConstraint> = Vec::new();
    for combo in Combinations::new(points.len(), d) {
        let base = &points[combo[0]];
        let rows: Vec<Vec<f64>> = combo[1..]
            .iter()
            .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let normal = generalized_cross(&rows);
        let len = norm(&normal);
        if len <= 1e-12 * scale.powi(d as i32 - 1) {
            continue;
        }
        let normal: Vec<f64> = normal.iter().map(|c| c / len).collect();
        let offset = dot(&normal, base);
        let side: Vec<f64> = points.iter().map(|p| dot(&normal, p) - offset).collect();
        let (c, b) = if side.iter().all(|&s| s <= tol) {
            (normal, offset)
        } else if side.iter().all(|&s| s >= -tol) {
            (normal.iter().map(|c| -c).collect(), -offset)
        } else {
            continue;
        };
        if !facets
            .iter()
            .any(|f| (f.normal.dot(&c) - 1.0).abs() <= UNIT_TOL && (f.offset - b).abs() <= tol)
        {
            facets.push(HalfPlaneConstraint::new(c, b)?);
        }
    }
    if facets.len() < d + 1 {
        return Err(Error::Infeasible("vertices do not span a full-dimensional hull".into()));
    }
    Ok(facets)
}

/// Vector orthogonal to the `d − 1` rows of a `(d−1) × d` matrix, with
/// components given by signed maximal minors.
fn generalized_cross(rows: &[Vec<f64>]) -> Vec<f64> {
    let d = rows.len() + 1;
    (0..d)
        .map(|skip| {
            let minor: Vec<Vec<f64>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if skip % 2 == 0 { 1.0 } else { -1.0 };
            sign * determinant(minor)
        })
        .collect()
}

fn determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap_or(col);
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        let (upper, lower) = m.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            let f = row[col] / pivot_row[col];
            for (x, p) in row[col..n].iter_mut().zip(&pivot_row[col..n]) {
                *x -= f * p;
            }
        }
    }
    det
}

struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// The cone `{(t·y, t) : y ∈ base, t > 0} ∪ {0}` in `ℝⁿ`, `n = base.dim() + 1`.
///
/// The origin of the base must be strictly interior, so every lateral facet
/// has a positive offset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cone {
    base: PolyhedralBase,
    dim: usize,
}

impl Cone {
    pub fn new(base: PolyhedralBase) -> Result<Self> {
        if let Some((i, c)) = base
            .constraints
            .iter()
            .enumerate()
            .find(|(_, c)| c.offset <= 0.0)
        {
            return Err(Error::Precondition(format!(
                "constraint {i} has offset {} <= 0; the base origin must be interior",
                c.offset
            )));
        }
        let dim = base.dim() + 1;
        Ok(Self { base, dim })
    }

    /// Cone whose axis passes through the Chebyshev center of `base`.
    pub fn recentered(base: &PolyhedralBase) -> Result<Self> {
        let ball = ball::chebyshev_ball(base)?;
        Self::new(base.recenter(&ball.center)?)
    }

    pub fn base(&self) -> &PolyhedralBase {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Smallest lateral offset: the radius of the largest ball centred on the
    /// cone axis inside the base.
    pub fn axis_radius(&self) -> f64 {
        self.base
            .constraints
            .iter()
            .map(|c| c.offset)
            .fold(f64::INFINITY, f64::min)
    }

    /// Unit outward normal of lateral facet `i`.
    pub fn lateral_normal(&self, i: usize) -> Result<VecN> {
        self.base
            .constraints
            .get(i)
            .ok_or_else(|| Error::Validation(format!("no lateral facet {i}")))?
            .lateral_normal()
    }

    /// Membership in the closed cone: `x′/xₙ` must satisfy every base
    /// constraint within `tol`; the apex belongs to the cone.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.dim {
            return false;
        }
        let (head, last) = x.split_at(self.dim - 1);
        let xn = last[0];
        if xn > 0.0 {
            let y: Vec<f64> = head.iter().map(|c| c / xn).collect();
            self.base.contains(&y, tol)
        } else {
            xn == 0.0 && head.iter().all(|&c| c == 0.0)
        }
    }

    /// Signed distance from `x` to the plane of lateral facet `i`, positive
    /// inside the cone.
    pub fn facet_distance(&self, i: usize, x: &[f64]) -> f64 {
        let c = &self.base.constraints[i];
        let (head, last) = x.split_at(self.dim - 1);
        (c.offset * last[0] - c.normal.dot(head)) / c.offset.hypot(1.0)
    }

    /// Direction vectors `(v, 1)` of the edge rays, in counterclockwise
    /// order of the base vertices `v`.
    pub fn edge_rays(&self) -> Result<Vec<Vec<f64>>> {
        Ok(self
            .base
            .vertices()?
            .into_iter()
            .map(|mut v| {
                v.push(1.0);
                v
            })
            .collect())
    }

    /// Recognizes a base of the form `{|a·y| ≤ b}`, returning `(a, b)`.
    pub fn strip(&self) -> Option<(VecN, f64)> {
        match self.base.constraints.as_slice() {
            [p, q] if self.dim == 3
                && (p.normal.dot(&q.normal) + 1.0).abs() <= UNIT_TOL
                && (p.offset - q.offset).abs() <= DEFAULT_TOL * p.offset.max(1.0) =>
            {
                Some((p.normal.clone(), p.offset))
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(n: &[f64], b: f64) -> HalfPlaneConstraint {
        HalfPlaneConstraint::new(n.to_vec(), b).unwrap()
    }

    pub(crate) fn square() -> PolyhedralBase {
        PolyhedralBase::from_constraints(vec![
            hp(&[1.0, 0.0], 1.0),
            hp(&[-1.0, 0.0], 1.0),
            hp(&[0.0, 1.0], 1.0),
            hp(&[0.0, -1.0], 1.0),
        ])
        .unwrap()
    }

    fn offsets(b: &PolyhedralBase) -> Vec<f64> {
        b.constraints().iter().map(|c| c.offset()).collect()
    }

    #[test]
    fn recenter_square_at_origin_is_identity() {
        let s = square();
        assert_eq!(s.recenter(&[0.0, 0.0]).unwrap(), s);
    }

    #[test]
    fn recenter_shifted_strip() {
        let strip = PolyhedralBase::from_constraints(vec![
            hp(&[1.0, 0.0], 1.5),
            hp(&[-1.0, 0.0], 0.5),
        ])
        .unwrap();
        assert_eq!(offsets(&strip), vec![1.5, 0.5]);
        let r = strip.recenter(&[0.5, 0.0]).unwrap();
        assert_eq!(offsets(&r), vec![1.0, 1.0]);
        assert!(!strip.is_bounded());
    }

    #[test]
    fn recenter_triangle_at_incenter() {
        let tri = PolyhedralBase::from_vertices(&[
            vec![0.0, 0.0],
            vec![4.0, 0.0],
            vec![0.0, 3.0],
        ])
        .unwrap();
        // Incircle of the 3-4-5 right triangle: r = (3 + 4 − 5)/2 = 1.
        let r = tri.recenter(&[1.0, 1.0]).unwrap();
        for b in offsets(&r) {
            assert!((b - 1.0).abs() < 1e-12, "{b}");
        }
    }

    #[test]
    fn recenter_rejects_outside_center() {
        assert!(matches!(square().recenter(&[2.0, 0.0]), Err(Error::Domain(_))));
        assert!(matches!(square().recenter(&[1.0, 0.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn lateral_normal_examples() {
        let n = hp(&[1.0, 0.0], 1.0).lateral_normal().unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for (a, b) in n.iter().zip([s, 0.0, -s]) {
            assert!((a - b).abs() < 1e-15);
        }

        let n = hp(&[0.0, 1.0], 2.0).lateral_normal().unwrap();
        let r5 = 5f64.sqrt();
        for (a, b) in n.iter().zip([0.0, 1.0 / r5, -2.0 / r5]) {
            assert!((a - b).abs() < 1e-15);
        }

        let phi = std::f64::consts::FRAC_PI_4;
        let n = hp(&[1.0], phi.tan()).lateral_normal().unwrap();
        assert!((n[1] + phi.sin()).abs() < 1e-15);

        assert!(matches!(
            hp(&[1.0, 0.0], 0.0).lateral_normal(),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn contains_examples() {
        let cone = Cone::new(square()).unwrap();
        assert!(cone.contains(&[0.5, 0.5, 1.0], DEFAULT_TOL));
        assert!(!cone.contains(&[2.0, 0.0, 1.0], DEFAULT_TOL));
        assert!(cone.contains(&[1.0, 1.0, 1.0], 1e-9));
        assert!(cone.contains(&[0.0, 0.0, 0.0], DEFAULT_TOL));
        assert!(!cone.contains(&[0.1, 0.0, 0.0], DEFAULT_TOL));
        assert!(!cone.contains(&[0.0, 0.0, -1.0], DEFAULT_TOL));
    }

    #[test]
    fn redundant_and_duplicate_constraints_are_dropped() {
        let b = PolyhedralBase::from_constraints(vec![
            hp(&[1.0, 0.0], 1.0),
            hp(&[2.0, 0.0], 4.0),
            hp(&[-1.0, 0.0], 1.0),
            hp(&[0.0, 1.0], 1.0),
            hp(&[0.0, -1.0], 1.0),
            hp(&[1.0, 1.0], 2.0),
            hp(&[1.0, 1.0], 5.0),
        ])
        .unwrap();
        assert_eq!(b.constraints().len(), 4);
        assert!(b.is_bounded());
    }

    #[test]
    fn empty_interior_is_rejected() {
        let e = PolyhedralBase::from_constraints(vec![hp(&[1.0, 0.0], -1.0), hp(&[-1.0, 0.0], -1.0)]);
        assert!(matches!(e, Err(Error::Infeasible(_))));
        let flat = PolyhedralBase::from_constraints(vec![
            hp(&[1.0, 0.0], 0.0),
            hp(&[-1.0, 0.0], 0.0),
            hp(&[0.0, 1.0], 1.0),
            hp(&[0.0, -1.0], 1.0),
        ]);
        assert!(matches!(flat, Err(Error::Infeasible(_))));
        assert!(matches!(
            PolyhedralBase::from_constraints(vec![]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn square_vertices_ccw() {
        let v = square().vertices().unwrap();
        assert_eq!(v.len(), 4);
        let area: f64 = (0..4).map(|i| cross2(&[0.0, 0.0], &v[i], &v[(i + 1) % 4])).sum();
        assert!((area / 2.0 - 4.0).abs() < 1e-12);
    }

    #[test]
    fn nonconvex_vertex_list_is_convexified() {
        let b = PolyhedralBase::from_vertices(&[
            vec![0.0, 0.0],
            vec![2.0, 0.0],
            vec![2.0, 2.0],
            vec![1.0, 0.5],
            vec![0.0, 2.0],
        ])
        .unwrap();
        assert!(b.is_convexified());
        assert_eq!(b.constraints().len(), 4);
        assert!(!square().is_convexified());
    }

    #[test]
    fn three_dimensional_hull() {
        let mut pts = Vec::new();
        for x in [-1.0, 1.0] {
            for y in [-1.0, 1.0] {
                for z in [-1.0, 1.0] {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        pts.push(vec![0.1, 0.2, 0.3]);
        let b = PolyhedralBase::from_vertices(&pts).unwrap();
        assert_eq!(b.constraints().len(), 6);
        assert!(b.is_convexified());
        for c in b.constraints() {
            assert!((c.offset() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn radial_samples() {
        let hex = PolyhedralBase::from_radial_samples(2, |_| 2.0, 6).unwrap();
        assert_eq!(hex.constraints().len(), 6);
        for c in hex.constraints() {
            assert!((c.offset() - 3f64.sqrt()).abs() < 1e-12);
        }
        let interval = PolyhedralBase::from_radial_samples(1, |u| if u[0] > 0.0 { 2.0 } else { 0.5 }, 0)
            .unwrap();
        assert_eq!(interval.vertices().unwrap(), vec![vec![-0.5], vec![2.0]]);
        assert!(PolyhedralBase::from_radial_samples(2, |_| f64::INFINITY, 8).is_err());
    }

    #[test]
    fn strip_detection() {
        let strip = PolyhedralBase::from_constraints(vec![hp(&[1.0, 0.0], 1.0), hp(&[-1.0, 0.0], 1.0)])
            .unwrap();
        let cone = Cone::new(strip).unwrap();
        let (a, b) = cone.strip().unwrap();
        assert_eq!(a.to_vec(), vec![1.0, 0.0]);
        assert_eq!(b, 1.0);
        assert!(Cone::new(square()).unwrap().strip().is_none());
        assert!(cone.edge_rays().is_err());
    }
}
