//! Exact evaluation of the trace-to-perimeter ratio `β(E)` on polyhedral
//! subsets of a cone, and constructors for the standard candidate sets.
//!
//! A candidate set `E` is given by its closed, outward-oriented boundary
//! mesh (triangles in `ℝ³`, segments in `ℝ²`). For such a set the trace of
//! `𝟙_E` on `∂𝒞` is 1 exactly on the boundary facets that lie in a lateral
//! facet of the cone and 0 elsewhere, so
//!
//! ```text
//! β(E) = area(facets on ∂𝒞) / area(facets inside 𝒞)
//! ```
//!
//! and both areas are sums of exact facet areas.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{dot, norm, Cone, HalfPlaneConstraint, PolyhedralBase, VecN};

/// Facets whose unit normal differs from a lateral normal by more than this
/// (in `1 − cos`) are never counted as lateral.
const PARALLEL_TOL: f64 = 1e-6;

/// Closed boundary mesh of a candidate set `E ⊂ 𝒞`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyhedralSet {
    vertices: Vec<VecN>,
    facets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FacetClass {
    /// Lies in lateral facet `i` of the cone; contributes to the trace.
    Lateral(usize),
    /// Lies inside the cone; contributes to the relative perimeter.
    Interior,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaReport {
    pub trace_area: f64,
    pub interior_perimeter: f64,
    pub beta: f64,
    pub facet_classification: Vec<FacetClass>,
    pub volume: f64,
    /// `‖Σ area·ν‖ / Σ area`; zero for a closed surface.
    pub closure_residual: f64,
    /// `(Σ_lateral eₙ·ν area + Σ_interior eₙ·ν area) / Σ area`, the discrete
    /// divergence identity for the field `eₙ`.
    pub divergence_residual: f64,
}

impl PolyhedralSet {
    /// Validates structure and closedness: facet arity equals the dimension,
    /// every directed edge (vertex, in `ℝ²`) is matched by exactly one
    /// opposite, facets are nondegenerate, and the area vectors sum to zero.
    pub fn new(vertices: Vec<VecN>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let n = match vertices.first() {
            Some(v) => v.dim(),
            None => return Err(Error::Validation("set has no vertices".into())),
        };
        if !(n == 2 || n == 3) {
            return Err(Error::Validation(format!(
                "polyhedral sets are supported in dimension 2 or 3, got {n}"
            )));
        }
        if vertices.iter().any(|v| v.dim() != n) {
            return Err(Error::Validation("vertices have inconsistent dimensions".into()));
        }
        if facets.is_empty() {
            return Err(Error::Validation("set has no facets".into()));
        }
        for (k, f) in facets.iter().enumerate() {
            if f.len() != n {
                return Err(Error::Validation(format!(
                    "facet {k} has {} vertices, expected {n}",
                    f.len()
                )));
            }
            if f.iter().any(|&i| i >= vertices.len()) {
                return Err(Error::Validation(format!("facet {k} references a missing vertex")));
            }
            if (0..n).any(|a| (a + 1..n).any(|b| f[a] == f[b])) {
                return Err(Error::Validation(format!("facet {k} repeats a vertex")));
            }
        }
        let set = Self { vertices, facets };
        set.check_watertight()?;

        let scale = set.scale();
        let areas: Vec<Vec<f64>> = (0..set.facets.len()).map(|k| set.area_vector(k)).collect();
        let min_area = 1e-14 * scale.powi(n as i32 - 1);
        if let Some(k) = areas.iter().position(|a| norm(a) <= min_area) {
            return Err(Error::Validation(format!("facet {k} is degenerate")));
        }
        let total = pairwise_sum(&areas.iter().map(|a| norm(a)).collect::<Vec<_>>());
        let residual = set.closure(&areas);
        if residual > 1e-10 * total {
            return Err(Error::Validation(format!(
                "surface is not closed: area vectors sum to {residual:e} (total area {total:e})"
            )));
        }
        Ok(set)
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn vertices(&self) -> &[VecN] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Largest vertex norm; the length scale for tolerances.
    pub fn scale(&self) -> f64 {
        self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    fn check_watertight(&self) -> Result<()> {
        let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
        if self.dim() == 2 {
            // Each used vertex must start exactly one segment and end exactly one.
            let mut deg: HashMap<usize, (usize, usize)> = HashMap::new();
            for f in &self.facets {
                deg.entry(f[0]).or_default().0 += 1;
                deg.entry(f[1]).or_default().1 += 1;
            }
            if let Some((v, _)) = deg.iter().find(|(_, &(o, i))| o != 1 || i != 1) {
                return Err(Error::Validation(format!(
                    "boundary is not a closed curve at vertex {v}"
                )));
            }
            return Ok(());
        }
        for f in &self.facets {
            for k in 0..3 {
                *edges.entry((f[k], f[(k + 1) % 3])).or_default() += 1;
            }
        }
        for (&(a, b), &count) in &edges {
            if count != 1 || edges.get(&(b, a)) != Some(&1) {
                return Err(Error::Validation(format!(
                    "mesh is not watertight along edge ({a}, {b})"
                )));
            }
        }
        Ok(())
    }

    /// Area times unit outward normal of facet `k`.
    fn area_vector(&self, k: usize) -> Vec<f64> {
        let f = &self.facets[k];
        let p = |i: usize| &self.vertices[f[i]];
        if self.dim() == 2 {
            let (a, b) = (p(0), p(1));
            vec![b[1] - a[1], a[0] - b[0]]
        } else {
            let (a, b, c) = (p(0), p(1), p(2));
            let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
            vec![
                0.5 * (u[1] * v[2] - u[2] * v[1]),
                0.5 * (u[2] * v[0] - u[0] * v[2]),
                0.5 * (u[0] * v[1] - u[1] * v[0]),
            ]
        }
    }

    fn closure(&self, areas: &[Vec<f64>]) -> f64 {
        let n = self.dim();
        let sum: Vec<f64> = (0..n)
            .map(|j| pairwise_sum(&areas.iter().map(|a| a[j]).collect::<Vec<_>>()))
            .collect();
        norm(&sum)
    }

    /// Enclosed volume by the divergence theorem with the field `x/n`.
    pub fn volume(&self) -> f64 {
        let n = self.dim() as f64;
        let terms: Vec<f64> = (0..self.facets.len())
            .map(|k| dot(&self.vertices[self.facets[k][0]], &self.area_vector(k)) / n)
            .collect();
        pairwise_sum(&terms)
    }
}

/// Pairwise (cascade) summation; the reduction tree depends only on the
/// length, so results are reproducible bit for bit.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// `β(E)` together with the trace area, relative perimeter and per-facet
/// classification.
///
/// A facet is lateral for constraint `i` when all its vertices lie on the
/// plane of lateral facet `i` (within `tol · scale`) and its outward normal
/// agrees with the cone's outward normal there. Facets that only touch `∂𝒞`
/// along an edge are interior.
pub fn evaluate_beta(cone: &Cone, set: &PolyhedralSet, tol: f64) -> Result<BetaReport> {
    let n = cone.dim();
    if set.dim() != n {
        return Err(Error::Validation(format!(
            "set dimension {} does not match cone dimension {n}",
            set.dim()
        )));
    }
    let scale = set.scale();
    let dist_tol = tol * scale;
    for (k, v) in set.vertices.iter().enumerate() {
        let inside = v[n - 1] >= -dist_tol
            && (0..cone.base().constraints().len()).all(|i| cone.facet_distance(i, v) >= -dist_tol);
        if !inside {
            return Err(Error::Validation(format!("vertex {k} lies outside the cone")));
        }
    }

    let volume = set.volume();
    if volume < 0.0 {
        return Err(Error::Validation(
            "facets are oriented inward (negative volume)".into(),
        ));
    }
    if volume <= 1e-12 * scale.powi(n as i32) {
        return Err(Error::Degenerate(format!("set has zero volume ({volume:e})")));
    }

    let normals: Vec<VecN> = (0..cone.base().constraints().len())
        .map(|i| cone.lateral_normal(i))
        .collect::<Result<_>>()?;
    let areas: Vec<Vec<f64>> = (0..set.facets.len()).map(|k| set.area_vector(k)).collect();

    let mut classes = Vec::with_capacity(areas.len());
    for (k, (f, a)) in set.facets.iter().zip(&areas).enumerate() {
        let len = norm(a);
        let mut hits = normals.iter().enumerate().filter(|(i, nu)| {
            f.iter()
                .all(|&v| cone.facet_distance(*i, &set.vertices[v]).abs() <= dist_tol)
                && 1.0 - nu.dot(a) / len <= PARALLEL_TOL
        });
        let class = match (hits.next(), hits.next()) {
            (None, _) => FacetClass::Interior,
            (Some((i, _)), None) => FacetClass::Lateral(i),
            (Some((i, _)), Some((j, _))) => {
                return Err(Error::Classification {
                    facet: k,
                    message: format!("lies on lateral facets {i} and {j}"),
                })
            }
        };
        classes.push(class);
    }

    let split = |lateral: bool| -> Vec<usize> {
        (0..areas.len())
            .filter(|&k| matches!(classes[k], FacetClass::Lateral(_)) == lateral)
            .collect()
    };
    let (lat, int) = (split(true), split(false));
    let area_sum = |ks: &[usize]| pairwise_sum(&ks.iter().map(|&k| norm(&areas[k])).collect::<Vec<_>>());
    let up_sum = |ks: &[usize]| pairwise_sum(&ks.iter().map(|&k| areas[k][n - 1]).collect::<Vec<_>>());
    let trace_area = area_sum(&lat);
    let interior_perimeter = area_sum(&int);
    if interior_perimeter.is_nan() || interior_perimeter <= 0.0 {
        return Err(Error::Degenerate("relative perimeter is zero".into()));
    }
    let total = trace_area + interior_perimeter;

    Ok(BetaReport {
        trace_area,
        interior_perimeter,
        beta: trace_area / interior_perimeter,
        facet_classification: classes,
        volume,
        closure_residual: set.closure(&areas) / total,
        divergence_residual: (up_sum(&lat) + up_sum(&int)) / total,
    })
}

/// Boundary mesh of `𝒞 ∩ {x : x·d ≤ t}` for a cone with bounded base.
pub fn halfspace_cut(cone: &Cone, d: &[f64], t: f64) -> Result<PolyhedralSet> {
    let n = cone.dim();
    if d.len() != n {
        return Err(Error::Validation(format!(
            "cut direction has dimension {}, cone has {n}",
            d.len()
        )));
    }
    if (norm(d) - 1.0).abs() > 1e-9 {
        return Err(Error::Validation("cut direction must be a unit vector".into()));
    }
    if d[n - 1].is_nan() || d[n - 1] <= 0.0 {
        return Err(Error::Domain("cut direction needs a positive last component".into()));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("cut level must be positive, got {t}")));
    }
    let rays = cone.edge_rays()?;
    let heights = rays
        .iter()
        .map(|r| {
            let s = dot(r, d);
            if s > 0.0 {
                Ok(t / s)
            } else {
                Err(Error::UnboundedCut(format!(
                    "plane does not cut the edge ray {r:?}"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<Vec<f64>> = rays
        .iter()
        .zip(&heights)
        .map(|(r, h)| r.iter().map(|c| c * h).collect())
        .collect();
    cut_mesh(n, points, None)
}

/// Horizontal cut at height 1 whose cut points on the edge rays are moved to
/// heights `1 + δᵢ`; the top surface is the fan from the axis point
/// `(0, …, 0, 1)`.
pub fn perturbed_cut(cone: &Cone, offsets: &[f64]) -> Result<PolyhedralSet> {
    let n = cone.dim();
    let rays = cone.edge_rays()?;
    if offsets.len() != rays.len() {
        return Err(Error::Validation(format!(
            "expected {} height offsets, got {}",
            rays.len(),
            offsets.len()
        )));
    }
    let points = rays
        .iter()
        .zip(offsets)
        .map(|(r, &dh)| {
            let h = 1.0 + dh;
            if h > 0.0 && h.is_finite() {
                Ok(r.iter().map(|c| c * h).collect())
            } else {
                Err(Error::Domain(format!("cut height {h} is not positive")))
            }
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    let mut center = vec![0.0; n];
    center[n - 1] = 1.0;
    cut_mesh(n, points, Some(center))
}

/// Apex, cut points on the edge rays (counterclockwise), optional top center.
fn cut_mesh(n: usize, points: Vec<Vec<f64>>, center: Option<Vec<f64>>) -> Result<PolyhedralSet> {
    let k = points.len();
    let mut vertices = vec![vec![0.0; n]];
    let top = center.is_some();
    vertices.extend(center);
    let first = vertices.len();
    vertices.extend(points);
    let mut facets = Vec::new();
    if n == 2 {
        // points: [left, right]
        let (left, right) = (first, first + 1);
        facets.push(vec![0, right]);
        if top {
            facets.push(vec![right, 1]);
            facets.push(vec![1, left]);
        } else {
            facets.push(vec![right, left]);
        }
        facets.push(vec![left, 0]);
    } else {
        for i in 0..k {
            facets.push(vec![0, first + (i + 1) % k, first + i]);
        }
        if top {
            for i in 0..k {
                facets.push(vec![1, first + i, first + (i + 1) % k]);
            }
        } else {
            for i in 1..k - 1 {
                facets.push(vec![first, first + i, first + i + 1]);
            }
        }
    }
    let vertices = vertices.into_iter().map(VecN::new).collect::<Result<_>>()?;
    PolyhedralSet::new(vertices, facets)
}

/// Prism of height `h` and unit length inside a strip cone `{|a·x′| ≤ b·x₃}`:
/// its cross-section is the triangle between the two lateral planes below
/// `x₃ = h`, extruded along the strip direction.
pub fn strip_prism(cone: &Cone, h: f64) -> Result<PolyhedralSet> {
    let (a, b) = cone
        .strip()
        .ok_or_else(|| Error::Configuration("prism sets need a strip (book) cone".into()))?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!("prism height must be positive, got {h}")));
    }
    let along = [-a[1], a[0], 0.0];
    let p0 = [b * h * a[0], b * h * a[1], h];
    let q0 = [-b * h * a[0], -b * h * a[1], h];
    let shift = |p: [f64; 3]| vec![p[0] + along[0], p[1] + along[1], p[2]];
    let vertices = vec![
        vec![0.0, 0.0, 0.0],
        shift([0.0; 3]),
        p0.to_vec(),
        q0.to_vec(),
        shift(p0),
        shift(q0),
    ];
    let facets = vec![
        vec![0, 1, 4],
        vec![0, 4, 2],
        vec![0, 3, 5],
        vec![0, 5, 1],
        vec![2, 4, 5],
        vec![2, 5, 3],
        vec![0, 2, 3],
        vec![1, 5, 4],
    ];
    let vertices = vertices.into_iter().map(VecN::new).collect::<Result<_>>()?;
    PolyhedralSet::new(vertices, facets)
}

/// The book cone over the strip `{|y₁| ≤ 1}`.
pub fn book_cone() -> Cone {
    let base = PolyhedralBase::from_constraints(vec![
        HalfPlaneConstraint::new(vec![1.0, 0.0], 1.0).expect("unit normal"),
        HalfPlaneConstraint::new(vec![-1.0, 0.0], 1.0).expect("unit normal"),
    ])
    .expect("strip has interior");
    Cone::new(base).expect("origin is interior")
}

/// Book cone and its prism of height `1/n`.
pub fn book_cone_prism(n: u32) -> Result<(Cone, PolyhedralSet)> {
    if n == 0 {
        return Err(Error::Domain("prism index must be at least 1".into()));
    }
    let cone = book_cone();
    let set = strip_prism(&cone, 1.0 / f64::from(n))?;
    Ok((cone, set))
}

/// `λE`: every vertex multiplied by `λ > 0`.
pub fn scale_set(set: &PolyhedralSet, lambda: f64) -> Result<PolyhedralSet> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("scale factor must be positive, got {lambda}")));
    }
    Ok(PolyhedralSet {
        vertices: set.vertices.iter().map(|v| v.scaled(lambda)).collect(),
        facets: set.facets.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::DEFAULT_TOL;
    use std::f64::consts::SQRT_2;

    fn square_cone() -> Cone {
        let hp = |n: [f64; 2]| HalfPlaneConstraint::new(n.to_vec(), 1.0).unwrap();
        Cone::new(
            PolyhedralBase::from_constraints(vec![
                hp([1.0, 0.0]),
                hp([-1.0, 0.0]),
                hp([0.0, 1.0]),
                hp([0.0, -1.0]),
            ])
            .unwrap(),
        )
        .unwrap()
    }

    fn tri_area(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
        let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
        let w = [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        0.5 * (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt()
    }

    #[test]
    fn pyramid_oracle() {
        // Lateral triangle of the pyramid over [-1,1]² at height 1.
        let lateral = tri_area([0.0; 3], [1.0, 1.0, 1.0], [1.0, -1.0, 1.0]);
        assert!((lateral - SQRT_2).abs() < 1e-15);

        let cone = square_cone();
        let set = halfspace_cut(&cone, &[0.0, 0.0, 1.0], 1.0).unwrap();
        let r = evaluate_beta(&cone, &set, DEFAULT_TOL).unwrap();
        assert!((r.trace_area - 4.0 * lateral).abs() < 1e-14);
        assert!((r.interior_perimeter - 4.0).abs() < 1e-14);
        assert!((r.beta - SQRT_2).abs() <= 1e-12 * SQRT_2);
        assert!((r.volume - 4.0 / 3.0).abs() < 1e-14);
        assert_eq!(
            r.facet_classification.iter().filter(|c| **c == FacetClass::Interior).count(),
            2
        );
    }

    #[test]
    fn pyramid_top_vertices() {
        let cone = square_cone();
        for t in [1.0, 2.0] {
            let set = halfspace_cut(&cone, &[0.0, 0.0, 1.0], t).unwrap();
            let mut tops: Vec<Vec<f64>> = set.vertices()[1..].iter().map(|v| v.to_vec()).collect();
            tops.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut want = vec![
                vec![-t, -t, t],
                vec![-t, t, t],
                vec![t, -t, t],
                vec![t, t, t],
            ];
            want.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in tops.iter().zip(&want) {
                for (x, y) in a.iter().zip(b) {
                    assert!((x - y).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn tilted_cut_is_worse() {
        let cone = square_cone();
        let d = [0.1f64.sin(), 0.0, 0.1f64.cos()];
        let set = halfspace_cut(&cone, &d, 1.0).unwrap();
        let r = evaluate_beta(&cone, &set, DEFAULT_TOL).unwrap();
        assert!(r.beta < SQRT_2 - 1e-6, "{}", r.beta);
    }

    #[test]
    fn book_prism_values() {
        let (cone, set) = book_cone_prism(1).unwrap();
        let r = evaluate_beta(&cone, &set, DEFAULT_TOL).unwrap();
        assert!((r.trace_area - 2.0 * SQRT_2).abs() < 1e-14);
        assert!((r.interior_perimeter - 4.0).abs() < 1e-14);
        assert!((r.beta - SQRT_2 / 2.0).abs() < 1e-15);

        let (cone, set) = book_cone_prism(10).unwrap();
        let r = evaluate_beta(&cone, &set, DEFAULT_TOL).unwrap();
        assert!((r.beta - 2.0 * SQRT_2 / 2.2).abs() < 1e-12);
        assert!(book_cone_prism(0).is_err());
    }

    #[test]
    fn scaling() {
        let cone = square_cone();
        let set = halfspace_cut(&cone, &[0.0, 0.0, 1.0], 1.0).unwrap();
        assert_eq!(scale_set(&set, 1.0).unwrap(), set);
        let r = evaluate_beta(&cone, &scale_set(&set, 2.0).unwrap(), DEFAULT_TOL).unwrap();
        assert!((r.trace_area - 16.0 * SQRT_2).abs() < 1e-13);
        assert!((r.interior_perimeter - 16.0).abs() < 1e-13);

        let (book, prism) = book_cone_prism(1).unwrap();
        let r = evaluate_beta(&book, &scale_set(&prism, 0.5).unwrap(), DEFAULT_TOL).unwrap();
        assert!((r.beta - SQRT_2 / 2.0).abs() < 1e-15);
        assert!(scale_set(&set, 0.0).is_err());
    }

    #[test]
    fn unbounded_cut_on_book_cone() {
        let cone = book_cone();
        assert!(matches!(
            halfspace_cut(&cone, &[0.0, 0.0, 1.0], 1.0),
            Err(Error::UnboundedCut(_))
        ));
    }

    #[test]
    fn open_mesh_is_rejected() {
        let cone = square_cone();
        let set = halfspace_cut(&cone, &[0.0, 0.0, 1.0], 1.0).unwrap();
        let mut facets = set.facets().to_vec();
        facets.pop();
        let e = PolyhedralSet::new(set.vertices().to_vec(), facets);
        assert!(matches!(e, Err(Error::Validation(_))));
    }

    #[test]
    fn inverted_mesh_is_rejected() {
        let cone = square_cone();
        let set = halfspace_cut(&cone, &[0.0, 0.0, 1.0], 1.0).unwrap();
        let facets = set.facets().iter().map(|f| vec![f[0], f[2], f[1]]).collect();
        let flipped = PolyhedralSet::new(set.vertices().to_vec(), facets).unwrap();
        assert!(matches!(
            evaluate_beta(&cone, &flipped, DEFAULT_TOL),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn set_outside_cone_is_rejected() {
        let cone = square_cone();
        let set = halfspace_cut(&cone, &[0.0, 0.0, 1.0], 1.0).unwrap();
        let moved: Vec<VecN> = set
            .vertices()
            .iter()
            .map(|v| VecN::new(vec![v[0] + 0.5, v[1], v[2]]).unwrap())
            .collect();
        let moved = PolyhedralSet::new(moved, set.facets().to_vec()).unwrap();
        assert!(evaluate_beta(&cone, &moved, DEFAULT_TOL).is_err());
    }

    #[test]
    fn two_dimensional_wedge() {
        let base = PolyhedralBase::from_constraints(vec![
            HalfPlaneConstraint::new(vec![1.0], 1.0).unwrap(),
            HalfPlaneConstraint::new(vec![-1.0], 1.0).unwrap(),
        ])
        .unwrap();
        let cone = Cone::new(base).unwrap();
        let set = halfspace_cut(&cone, &[0.0, 1.0], 1.0).unwrap();
        let r = evaluate_beta(&cone, &set, DEFAULT_TOL).unwrap();
        assert!((r.trace_area - 2.0 * SQRT_2).abs() < 1e-15);
        assert!((r.interior_perimeter - 2.0).abs() < 1e-15);
        assert!((r.volume - 1.0).abs() < 1e-15);

        let p = perturbed_cut(&cone, &[0.0, 0.0]).unwrap();
        let rp = evaluate_beta(&cone, &p, DEFAULT_TOL).unwrap();
        assert!((rp.beta - r.beta).abs() < 1e-15);
        let p = perturbed_cut(&cone, &[0.1, -0.05]).unwrap();
        assert!(evaluate_beta(&cone, &p, DEFAULT_TOL).unwrap().beta < r.beta);
    }

    #[test]
    fn perturbed_zero_matches_horizontal() {
        let cone = square_cone();
        let flat = evaluate_beta(&cone, &perturbed_cut(&cone, &[0.0; 4]).unwrap(), DEFAULT_TOL).unwrap();
        assert!((flat.beta - SQRT_2).abs() < 1e-14);
        let bumped =
            evaluate_beta(&cone, &perturbed_cut(&cone, &[0.2; 4]).unwrap(), DEFAULT_TOL).unwrap();
        assert!(bumped.beta < SQRT_2);
    }

    #[test]
    fn pairwise_sum_matches_naive_on_integers() {
        let xs: Vec<f64> = (1..=100).map(f64::from).collect();
        assert_eq!(pairwise_sum(&xs), 5050.0);
    }
}
