#![allow(dead_code)]

use std::f64::consts::TAU;

use bvtrace_core::{Cone, HalfPlaneConstraint, PolyhedralBase};
use rand::Rng;

pub fn hp(n: &[f64], b: f64) -> HalfPlaneConstraint {
    HalfPlaneConstraint::new(n.to_vec(), b).unwrap()
}

pub fn rect_base(a: f64, b: f64) -> PolyhedralBase {
    PolyhedralBase::from_constraints(vec![
        hp(&[1.0, 0.0], a),
        hp(&[-1.0, 0.0], a),
        hp(&[0.0, 1.0], b),
        hp(&[0.0, -1.0], b),
    ])
    .unwrap()
}

pub fn rect_cone(a: f64, b: f64) -> Cone {
    Cone::new(rect_base(a, b)).unwrap()
}

pub fn regular_polygon(m: usize, circumradius: f64, phase: f64) -> Vec<[f64; 2]> {
    (0..m)
        .map(|k| {
            let t = phase + TAU * k as f64 / m as f64;
            [circumradius * t.cos(), circumradius * t.sin()]
        })
        .collect()
}

/// Counterclockwise convex polygon: points on a rotated, shifted ellipse at
/// sorted angles with gaps of at least `0.2` rad.
pub fn convex_polygon<R: Rng>(rng: &mut R, m: usize) -> Vec<[f64; 2]> {
    let min_gap = 0.2;
    let slack = TAU - min_gap * m as f64;
    assert!(slack > 0.0);
    let mut cuts: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..slack)).collect();
    cuts.sort_by(f64::total_cmp);
    let phase = rng.gen_range(0.0..TAU);
    let angles: Vec<f64> = cuts
        .iter()
        .enumerate()
        .map(|(k, c)| phase + c + min_gap * k as f64)
        .collect();
    let (a, b) = (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0));
    let rot = rng.gen_range(0.0..TAU);
    let shift = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
    angles
        .iter()
        .map(|t| {
            let (x, y) = (a * t.cos(), b * t.sin());
            [
                shift[0] + rot.cos() * x - rot.sin() * y,
                shift[1] + rot.sin() * x + rot.cos() * y,
            ]
        })
        .collect()
}

pub fn base_from_points(pts: &[[f64; 2]]) -> PolyhedralBase {
    let v: Vec<Vec<f64>> = pts.iter().map(|p| p.to_vec()).collect();
    PolyhedralBase::from_vertices(&v).unwrap()
}

/// Interior angles of a counterclockwise polygon from edge-vector dot
/// products.
pub fn interior_angles(pts: &[[f64; 2]]) -> Vec<f64> {
    let m = pts.len();
    (0..m)
        .map(|i| {
            let (p, c, n) = (pts[(i + m - 1) % m], pts[i], pts[(i + 1) % m]);
            let u = [p[0] - c[0], p[1] - c[1]];
            let v = [n[0] - c[0], n[1] - c[1]];
            let cos = (u[0] * v[0] + u[1] * v[1]) / (u[0].hypot(u[1]) * v[0].hypot(v[1]));
            cos.clamp(-1.0, 1.0).acos()
        })
        .collect()
}

/// Largest inscribed radius of a convex counterclockwise polygon by scanning
/// a grid of the given step over its bounding box.
pub fn brute_force_inradius(pts: &[[f64; 2]], step: f64) -> (f64, [f64; 2]) {
    let m = pts.len();
    let lines: Vec<([f64; 2], f64)> = (0..m)
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % m]);
            let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
            let len = dx.hypot(dy);
            let n = [dy / len, -dx / len];
            (n, n[0] * a[0] + n[1] * a[1])
        })
        .collect();
    let lo = [
        pts.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min),
        pts.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min),
    ];
    let hi = [
        pts.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max),
        pts.iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max),
    ];
    let (nx, ny) = (
        ((hi[0] - lo[0]) / step) as usize + 1,
        ((hi[1] - lo[1]) / step) as usize + 1,
    );
    let mut best = (f64::NEG_INFINITY, lo);
    for i in 0..nx {
        let x = lo[0] + step * i as f64;
        for j in 0..ny {
            let y = lo[1] + step * j as f64;
            let d = lines
                .iter()
                .map(|(n, b)| b - n[0] * x - n[1] * y)
                .fold(f64::INFINITY, f64::min);
            if d > best.0 {
                best = (d, [x, y]);
            }
        }
    }
    best
}
