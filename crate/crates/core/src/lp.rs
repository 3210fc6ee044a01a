//! Thin adapter over `microlp` for the small dense programs used by the
//! base and inscribed-ball routines.

use microlp::{ComparisonOp, OptimizationDirection, Problem};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal { objective: f64, x: Vec<f64> },
    Unbounded,
    Infeasible,
}

/// Dense linear program `max c·x` subject to rows `a·x ≤ b` and
/// per-variable bounds.
#[derive(Debug, Clone)]
pub(crate) struct DenseLp {
    objective: Vec<f64>,
    bounds: Vec<(f64, f64)>,
    rows_le: Vec<(Vec<f64>, f64)>,
}

impl DenseLp {
    pub(crate) fn new(objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            objective,
            bounds: vec![(f64::NEG_INFINITY, f64::INFINITY); n],
            rows_le: Vec::new(),
        }
    }

    pub(crate) fn bound(mut self, var: usize, lo: f64, hi: f64) -> Self {
        self.bounds[var] = (lo, hi);
        self
    }

    pub(crate) fn le(&mut self, row: Vec<f64>, rhs: f64) {
        debug_assert_eq!(row.len(), self.objective.len());
        self.rows_le.push((row, rhs));
    }

    pub(crate) fn maximize(&self) -> Result<LpOutcome> {
        let mut problem = Problem::new(OptimizationDirection::Maximize);
        // microlp misreports programs with a free variable that appears in no
        // row as unbounded, so such variables are pinned here.
        let mut bounds = self.bounds.clone();
        for (j, b) in bounds.iter_mut().enumerate() {
            let used = self
                .rows_le
                .iter()
                .any(|(row, _)| row[j] != 0.0);
            if used {
                continue;
            }
            let c = self.objective[j];
            if (c > 0.0 && b.1 == f64::INFINITY) || (c < 0.0 && b.0 == f64::NEG_INFINITY) {
                return Ok(LpOutcome::Unbounded);
            }
            let v = if c > 0.0 {
                b.1
            } else if c < 0.0 || b.0.is_finite() {
                b.0
            } else {
                b.1.min(0.0)
            };
            *b = (v, v);
        }
        // microlp can stall on free variables, so every variable is rewritten
        // over nonnegative parts: `lo + s`, `hi − s` or `p − n`.
        let parts: Vec<Vec<(f64, f64)>> = bounds
            .iter()
            .map(|&(lo, hi)| {
                if lo.is_finite() {
                    vec![(1.0, hi - lo)]
                } else if hi.is_finite() {
                    vec![(-1.0, f64::INFINITY)]
                } else {
                    vec![(1.0, f64::INFINITY), (-1.0, f64::INFINITY)]
                }
            })
            .collect();
        let shift: Vec<f64> = bounds
            .iter()
            .map(|&(lo, hi)| {
                if lo.is_finite() {
                    lo
                } else if hi.is_finite() {
                    hi
                } else {
                    0.0
                }
            })
            .collect();
        let vars: Vec<Vec<(microlp::Variable, f64)>> = parts
            .iter()
            .zip(&self.objective)
            .map(|(ps, &c)| {
                ps.iter()
                    .map(|&(sign, ub)| (problem.add_var(sign * c, (0.0, ub)), sign))
                    .collect()
            })
            .collect();
        let expr = |row: &[f64]| -> (Vec<(microlp::Variable, f64)>, f64) {
            let mut terms = Vec::new();
            let mut offset = 0.0;
            for (j, &a) in row.iter().enumerate().filter(|(_, &a)| a != 0.0) {
                offset += a * shift[j];
                terms.extend(vars[j].iter().map(|&(v, sign)| (v, sign * a)));
            }
            (terms, offset)
        };
        for (row, rhs) in &self.rows_le {
            let (terms, offset) = expr(row);
            problem.add_constraint(terms.as_slice(), ComparisonOp::Le, rhs - offset);
        }
        let base_objective: f64 = self.objective.iter().zip(&shift).map(|(c, s)| c * s).sum();
        match problem.solve() {
            Ok(outcome) => {
                let solution = outcome
                    .into_solution()
                    .map_err(|_| Error::Solver("solve interrupted".into()))?;
                Ok(LpOutcome::Optimal {
                    objective: solution.objective() + base_objective,
                    x: vars
                        .iter()
                        .zip(&shift)
                        .map(|(ps, s)| s + ps.iter().map(|&(v, sign)| sign * solution.var_value(v)).sum::<f64>())
                        .collect(),
                })
            }
            Err(microlp::Error::Unbounded) => Ok(LpOutcome::Unbounded),
            Err(microlp::Error::Infeasible) => Ok(LpOutcome::Infeasible),
            Err(e) => Err(Error::Solver(e.to_string())),
        }
    }
}
