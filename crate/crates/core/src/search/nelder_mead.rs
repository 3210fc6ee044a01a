//! Nelder–Mead downhill simplex with fixed coefficients.
//!
//! Reflection 1, expansion 2, contraction 1/2 (outside and inside), shrink
//! 1/2 towards the best vertex. Vertices are kept sorted with a stable sort,
//! so equal objective values keep their insertion order and runs are
//! reproducible.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMead {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    /// Stop once the objective spread across the simplex falls below this.
    pub f_tol: f64,
    /// ... and the simplex diameter falls below this.
    pub x_tol: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            f_tol: 1e-15,
            x_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
    pub evaluations: usize,
}

impl NelderMead {
    /// Minimizes `f` from the given initial simplex (`k + 1` points in `ℝᵏ`),
    /// spending at most `max_evals` evaluations including the initial ones.
    pub fn minimize<F>(&self, mut f: F, simplex: Vec<Vec<f64>>, max_evals: usize) -> Minimum
    where
        F: FnMut(&[f64]) -> f64,
    {
        assert!(simplex.len() >= 2, "simplex needs at least two vertices");
        let k = simplex.len() - 1;
        let mut evals = 0;
        let mut pts: Vec<(Vec<f64>, f64)> = Vec::with_capacity(k + 1);
        for x in simplex {
            if evals >= max_evals && !pts.is_empty() {
                break;
            }
            let fx = f(&x);
            evals += 1;
            pts.push((x, fx));
        }
        if pts.len() < k + 1 {
            return best_of(pts, evals);
        }

        let combine = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
            a.iter().zip(b).map(|(ai, bi)| ai + t * (bi - ai)).collect()
        };

        loop {
            pts.sort_by(|a, b| a.1.total_cmp(&b.1));
            if evals >= max_evals || self.converged(&pts) {
                break;
            }
            let centroid: Vec<f64> = (0..k)
                .map(|j| pts[..k].iter().map(|p| p.0[j]).sum::<f64>() / k as f64)
                .collect();
            let (worst_x, worst_f) = pts[k].clone();
            let second_f = pts[k - 1].1;
            let best_f = pts[0].1;

            let xr = combine(&centroid, &worst_x, -self.reflection);
            let fr = f(&xr);
            evals += 1;

            if fr < best_f {
                if evals >= max_evals {
                    pts[k] = (xr, fr);
                    continue;
                }
                let xe = combine(&centroid, &xr, self.expansion);
                let fe = f(&xe);
                evals += 1;
                pts[k] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < second_f {
                pts[k] = (xr, fr);
                continue;
            }
            if evals >= max_evals {
                if fr < worst_f {
                    pts[k] = (xr, fr);
                }
                continue;
            }
            let (xc, fc, accept) = if fr < worst_f {
                let xc = combine(&centroid, &xr, self.contraction);
                let fc = f(&xc);
                (xc, fc, fc <= fr)
            } else {
                let xc = combine(&centroid, &worst_x, self.contraction);
                let fc = f(&xc);
                (xc, fc, fc < worst_f)
            };
            evals += 1;
            if accept {
                pts[k] = (xc, fc);
                continue;
            }
            let best_x = pts[0].0.clone();
            for p in pts.iter_mut().skip(1) {
                if evals >= max_evals {
                    break;
                }
                let x = combine(&best_x, &p.0, self.shrink);
                let fx = f(&x);
                evals += 1;
                *p = (x, fx);
            }
        }
        best_of(pts, evals)
    }

    fn converged(&self, sorted: &[(Vec<f64>, f64)]) -> bool {
        let (best, worst) = (&sorted[0], &sorted[sorted.len() - 1]);
        if !best.1.is_finite() {
            return false;
        }
        let spread = worst.1 - best.1;
        let diameter = sorted
            .iter()
            .skip(1)
            .map(|p| {
                p.0.iter()
                    .zip(&best.0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        (spread <= self.f_tol && diameter <= self.x_tol) || diameter <= 1e-15
    }
}

fn best_of(pts: Vec<(Vec<f64>, f64)>, evaluations: usize) -> Minimum {
    let (x, f) = pts
        .into_iter()
        .reduce(|a, b| if b.1 < a.1 { b } else { a })
        .expect("at least one evaluated point");
    Minimum { x, f, evaluations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + 10.0 * (x[1] + 2.0).powi(2);
        let m = NelderMead::default().minimize(f, vec![vec![0.0, 0.0], vec![0.5, 0.0], vec![0.0, 0.5]], 2000);
        assert!((m.x[0] - 1.0).abs() < 1e-6 && (m.x[1] + 2.0).abs() < 1e-6, "{m:?}");
        assert!(m.evaluations <= 2000);
    }

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2);
        let m = NelderMead::default().minimize(f, vec![vec![-1.2, 1.0], vec![-1.0, 1.0], vec![-1.2, 1.2]], 5000);
        assert!((m.x[0] - 1.0).abs() < 1e-5 && (m.x[1] - 1.0).abs() < 1e-5, "{m:?}");
    }

    #[test]
    fn respects_budget_and_infinite_values() {
        let mut calls = 0;
        let f = |x: &[f64]| {
            calls += 1;
            if x[0] < 0.0 {
                f64::INFINITY
            } else {
                (x[0] - 0.3).powi(2)
            }
        };
        let m = NelderMead::default().minimize(f, vec![vec![1.0], vec![0.9]], 37);
        assert!(m.evaluations <= 37);
        assert_eq!(calls, m.evaluations);
        assert!(m.f.is_finite());
    }
}
