//! Corner-by-corner trace constants of planar polygonal domains.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Corners with `|θ − π|` below this are treated as smooth boundary points.
pub const FLAT_TOL: f64 = 1e-9;

/// Simple polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polygon2D {
    vertices: Vec<[f64; 2]>,
    /// Index of each stored vertex in the caller's input.
    source_index: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CornerStatus {
    ExactCorner,
    Smooth,
    ReflexLowerBound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CornerReport {
    pub vertex: usize,
    pub interior_angle: f64,
    pub q: f64,
    pub status: CornerStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolygonReport {
    pub corners: Vec<CornerReport>,
    /// Supremum of the local constants over the boundary.
    #[serde(rename = "Q")]
    pub q_max: f64,
    /// Input was clockwise and has been reversed.
    pub reoriented: bool,
}

impl Polygon2D {
    /// Drops consecutive duplicate vertices, checks simplicity, and reverses
    /// clockwise input.
    pub fn new(input: &[[f64; 2]]) -> Result<Self> {
        if input.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::Validation("polygon coordinates must be finite".into()));
        }
        let mut vertices: Vec<[f64; 2]> = Vec::with_capacity(input.len());
        let mut source_index = Vec::with_capacity(input.len());
        for (i, v) in input.iter().enumerate() {
            if vertices.last() != Some(v) {
                vertices.push(*v);
                source_index.push(i);
            }
        }
        while vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
            source_index.pop();
        }
        if vertices.len() < 3 {
            return Err(Error::Validation("polygon needs at least 3 distinct vertices".into()));
        }
        let poly = Self {
            vertices,
            source_index,
        };
        poly.check_simple()?;
        let area = poly.signed_area();
        if area.abs() <= f64::EPSILON * poly.extent().powi(2) {
            return Err(Error::Validation("polygon has zero area".into()));
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    fn extent(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| v[0].abs().max(v[1].abs()))
            .fold(0.0, f64::max)
    }

    pub fn signed_area(&self) -> f64 {
        let m = self.vertices.len();
        0.5 * (0..m)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % m]);
                a[0] * b[1] - a[1] * b[0]
            })
            .sum::<f64>()
    }

    fn check_simple(&self) -> Result<()> {
        let m = self.vertices.len();
        let seg = |i: usize| (self.vertices[i], self.vertices[(i + 1) % m]);
        for i in 0..m {
            for j in i + 1..m {
                let adjacent = j == i + 1 || (i == 0 && j == m - 1);
                let (a, b) = seg(i);
                let (c, d) = seg(j);
                if adjacent {
                    // Adjacent edges may only share their common endpoint.
                    let shared = if j == i + 1 { b } else { a };
                    let (p, q) = if j == i + 1 { (a, d) } else { (c, b) };
                    if collinear_overlap(shared, p, q) {
                        return Err(Error::Validation(format!(
                            "edges {i} and {j} fold back onto each other"
                        )));
                    }
                } else if segments_intersect(a, b, c, d) {
                    return Err(Error::Validation(format!(
                        "polygon is self-intersecting: edges {i} and {j} meet"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn on_segment(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

fn segments_intersect(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return true;
    }
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}

/// Edges `shared→p` and `shared→q` point in the same direction.
fn collinear_overlap(shared: [f64; 2], p: [f64; 2], q: [f64; 2]) -> bool {
    let u = [p[0] - shared[0], p[1] - shared[1]];
    let v = [q[0] - shared[0], q[1] - shared[1]];
    u[0] * v[1] - u[1] * v[0] == 0.0 && u[0] * v[0] + u[1] * v[1] > 0.0
}

/// Interior angle, local constant and status of every corner, plus the
/// boundary supremum `Q = max(1, max q)`.
pub fn analyze_polygon(poly: &Polygon2D) -> PolygonReport {
    let reoriented = poly.signed_area() < 0.0;
    let mut order: Vec<usize> = (0..poly.vertices.len()).collect();
    if reoriented {
        order.reverse();
    }
    let m = order.len();
    let mut corners: Vec<CornerReport> = (0..m)
        .map(|k| {
            let prev = poly.vertices[order[(k + m - 1) % m]];
            let cur = poly.vertices[order[k]];
            let next = poly.vertices[order[(k + 1) % m]];
            let e1 = [cur[0] - prev[0], cur[1] - prev[1]];
            let e2 = [next[0] - cur[0], next[1] - cur[1]];
            let cross = e1[0] * e2[1] - e1[1] * e2[0];
            let dotp = e1[0] * e2[0] + e1[1] * e2[1];
            let turn = cross.atan2(dotp);
            let theta = PI - turn;
            let (q, status, note) = if (theta - PI).abs() < FLAT_TOL {
                (1.0, CornerStatus::Smooth, None)
            } else if theta < PI {
                // 1/sin(θ/2) = √(2/(1 − cos θ)) with cos θ = −cos(turn).
                let cos_theta = -dotp / (e1[0].hypot(e1[1]) * e2[0].hypot(e2[1]));
                let q = (2.0 / (1.0 - cos_theta)).sqrt();
                (q, CornerStatus::ExactCorner, None)
            } else {
                (
                    1.0,
                    CornerStatus::ReflexLowerBound,
                    Some("smooth-side lower bound; the value at reflex corners is not established"),
                )
            };
            CornerReport {
                vertex: poly.source_index[order[k]],
                interior_angle: theta,
                q,
                status,
                note,
            }
        })
        .collect();
    corners.sort_by_key(|c| c.vertex);
    let q_max = corners.iter().map(|c| c.q).fold(1.0, f64::max);
    PolygonReport {
        corners,
        q_max,
        reoriented,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn unit_square() {
        let p = Polygon2D::new(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        let r = analyze_polygon(&p);
        assert_eq!(r.q_max, SQRT_2);
        for c in &r.corners {
            assert_eq!(c.status, CornerStatus::ExactCorner);
            assert!((c.interior_angle - PI / 2.0).abs() < 1e-15);
            assert_eq!(c.q, SQRT_2);
        }
        assert!(!r.reoriented);
    }

    #[test]
    fn regular_hexagon() {
        let pts: Vec<[f64; 2]> = (0..6)
            .map(|k| {
                let t = PI / 3.0 * k as f64;
                [t.cos(), t.sin()]
            })
            .collect();
        let r = analyze_polygon(&Polygon2D::new(&pts).unwrap());
        let want = 2.0 / 3f64.sqrt();
        for c in &r.corners {
            assert!((c.interior_angle - 2.0 * PI / 3.0).abs() < 1e-12);
            assert!((c.q - want).abs() < 1e-12);
        }
        assert!((r.q_max - want).abs() < 1e-12);
    }

    #[test]
    fn l_hexomino() {
        // 2 × 4 block with a 1 × 2 notch: outline of six unit squares.
        let pts = [[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [1.0, 2.0], [1.0, 4.0], [0.0, 4.0]];
        let r = analyze_polygon(&Polygon2D::new(&pts).unwrap());
        let exact = r.corners.iter().filter(|c| c.status == CornerStatus::ExactCorner).count();
        let reflex: Vec<_> = r
            .corners
            .iter()
            .filter(|c| c.status == CornerStatus::ReflexLowerBound)
            .collect();
        assert_eq!(exact, 5);
        assert_eq!(reflex.len(), 1);
        assert_eq!(reflex[0].vertex, 3);
        assert_eq!(reflex[0].q, 1.0);
        assert!(reflex[0].note.is_some());
        assert_eq!(r.q_max, SQRT_2);
    }

    #[test]
    fn clockwise_input_is_reoriented() {
        let p = Polygon2D::new(&[[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]).unwrap();
        let r = analyze_polygon(&p);
        assert!(r.reoriented);
        assert_eq!(r.q_max, SQRT_2);
        assert_eq!(r.corners.iter().map(|c| c.vertex).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn flat_corner_is_smooth() {
        let p = Polygon2D::new(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]]).unwrap();
        let r = analyze_polygon(&p);
        assert_eq!(r.corners[1].status, CornerStatus::Smooth);
        assert_eq!(r.corners[1].q, 1.0);
    }

    #[test]
    fn invalid_polygons() {
        let bowtie = [[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]];
        assert!(Polygon2D::new(&bowtie).is_err());
        assert!(Polygon2D::new(&[[0.0, 0.0], [1.0, 0.0]]).is_err());
        assert!(Polygon2D::new(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]).is_err());
        let spike = [[0.0, 0.0], [2.0, 0.0], [1.0, 0.0], [1.0, 1.0]];
        assert!(Polygon2D::new(&spike).is_err());
    }
}
