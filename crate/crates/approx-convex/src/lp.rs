//! A small dense linear-program solver shared by the geometry and stability
//! modules.
//!
//! Problems arrive in standard form: minimize c.x subject to A x = b with
//! x >= 0. The solver is a textbook two-phase simplex method with Bland's
//! anti-cycling rule, generic over the scalar: f64 with an explicit pivot
//! tolerance, or exact BigRational with zero tolerance. Every consumer in
//! this crate builds tiny dense systems (at most a few hundred columns and a
//! handful of rows), so a dense tableau is the right tool; optimal bases are
//! returned, which gives convex-combination supports of size at most the row
//! count for free.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Scalar types the simplex method runs on.
pub trait LpScalar: Clone + PartialOrd + Signed {
    /// Magnitudes at or below this threshold are treated as zero.
    fn eps() -> Self;
}

impl LpScalar for f64 {
    fn eps() -> f64 {
        crate::tolerances::LP_F64
    }
}

impl LpScalar for BigRational {
    fn eps() -> BigRational {
        BigRational::zero()
    }
}

/// Errors from malformed linear programs.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    /// The constraint matrix, right-hand side, and objective disagree on
    /// dimensions.
    #[error("LP dimensions disagree: {rows} rows, rhs {rhs}, {cols} columns, objective {objective}")]
    DimensionMismatch {
        /// Number of constraint rows.
        rows: usize,
        /// Length of the right-hand side.
        rhs: usize,
        /// Number of columns.
        cols: usize,
        /// Length of the objective.
        objective: usize,
    },
    /// The pivot loop exceeded its defensive iteration cap; with exact
    /// arithmetic this cannot happen, and with floats it signals a
    /// numerically hostile instance.
    #[error("simplex stalled after {pivots} pivots")]
    Stalled {
        /// Number of pivots performed before giving up.
        pivots: usize,
    },
}

/// Outcome of a linear program.
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    /// An optimal basic solution.
    Optimal {
        /// The optimizing point, a basic solution with support at most the
        /// number of rows.
        x: Vec<T>,
        /// The optimal objective value.
        objective: T,
    },
    /// No x >= 0 satisfies A x = b.
    Infeasible,
    /// The objective decreases without bound on the feasible set.
    Unbounded,
}

struct Tableau<T> {
    rows: Vec<Vec<T>>, // each row: n columns then the right-hand side
    basis: Vec<usize>,
    cols: usize,
}

impl<T: LpScalar> Tableau<T> {
    fn rhs(&self, i: usize) -> &T {
        &self.rows[i][self.cols]
    }

    /// Pivots on (row, col): normalizes the row and eliminates the column
    /// elsewhere, including the supplied cost row. Zero entries of the pivot
    /// row are skipped; they leave their column untouched, and most of the
    /// tableau is zero on the problems this crate builds.
    fn pivot(&mut self, row: usize, col: usize, cost: &mut Vec<T>) {
        let pivot_value = self.rows[row][col].clone();
        for entry in self.rows[row].iter_mut() {
            if !entry.is_zero() {
                *entry = entry.clone() / pivot_value.clone();
            }
        }
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let factor = self.rows[i][col].clone();
            if factor.abs() > T::eps() {
                for j in 0..=self.cols {
                    if self.rows[row][j].is_zero() {
                        continue;
                    }
                    let delta = factor.clone() * self.rows[row][j].clone();
                    self.rows[i][j] = self.rows[i][j].clone() - delta;
                }
            }
        }
        let factor = cost[col].clone();
        if factor.abs() > T::eps() {
            for j in 0..=self.cols {
                if self.rows[row][j].is_zero() {
                    continue;
                }
                let delta = factor.clone() * self.rows[row][j].clone();
                cost[j] = cost[j].clone() - delta;
            }
        }
        self.basis[row] = col;
    }

    /// One simplex phase over the allowed columns.
    ///
    /// The entering column is chosen by Dantzig's rule (most negative
    /// reduced cost), which reaches the optimum in a handful of pivots on
    /// the small dense systems this crate builds. Dantzig's rule alone can
    /// cycle on degenerate instances, so after `bland_after` pivots the
    /// phase switches to Bland's smallest-index rule, which terminates
    /// unconditionally with exact scalars.
    fn optimize(&mut self, cost: &mut Vec<T>, active_cols: usize, cap: usize) -> Result<(), LpError> {
        let bland_after = 32 * (self.rows.len() + 2);
        for pivots in 0.. {
            if pivots > cap {
                return Err(LpError::Stalled { pivots });
            }
            let entering = if pivots < bland_after {
                let mut best: Option<usize> = None;
                for j in 0..active_cols {
                    if cost[j] < -T::eps()
                        && best.map_or(true, |b| cost[j] < cost[b])
                        && !self.basis.contains(&j)
                    {
                        best = Some(j);
                    }
                }
                best
            } else {
                (0..active_cols).find(|&j| cost[j] < -T::eps() && !self.basis.contains(&j))
            };
            let Some(col) = entering else {
                return Ok(());
            };
            // Ratio test; ties leave the smallest basis variable (Bland).
            let mut best: Option<(T, usize)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][col] > T::eps() {
                    let ratio = self.rhs(i).clone() / self.rows[i][col].clone();
                    let better = match &best {
                        None => true,
                        Some((r, bi)) => {
                            ratio < *r || (ratio == *r && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((ratio, i));
                    }
                }
            }
            let Some((_, row)) = best else {
                // No leaving row: the column is a direction of unbounded
                // decrease. Flag it via a sentinel basis entry.
                self.basis.push(usize::MAX);
                return Ok(());
            };
            self.pivot(row, col, cost);
        }
        unreachable!()
    }
}

/// Solves min c.x subject to A x = b, x >= 0 by the two-phase simplex
/// method. `a` is row-major with one inner Vec per constraint.
pub fn solve_lp<T: LpScalar>(
    a: &[Vec<T>],
    b: &[T],
    c: &[T],
) -> Result<LpOutcome<T>, LpError> {
    let m = a.len();
    let n = c.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(LpError::DimensionMismatch {
            rows: m,
            rhs: b.len(),
            cols: a.first().map_or(n, Vec::len),
            objective: n,
        });
    }
    let cap = 2000 + 40 * (n + m) * (m + 1);

    // Build the phase-one tableau: original columns, artificial columns,
    // right-hand side. Rows are flipped so b >= 0.
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i] < T::zero();
        let mut row: Vec<T> = Vec::with_capacity(n + m + 1);
        for j in 0..n {
            let v = a[i][j].clone();
            row.push(if flip { -v } else { v });
        }
        for k in 0..m {
            row.push(if k == i { T::one() } else { T::zero() });
        }
        let rhs = b[i].clone();
        row.push(if flip { -rhs } else { rhs });
        rows.push(row);
    }
    let mut tableau = Tableau {
        rows,
        basis: (n..n + m).collect(),
        cols: n + m,
    };

    // Phase-one cost: sum of artificials, reduced against the initial basis.
    let mut cost: Vec<T> = vec![T::zero(); n + m + 1];
    for k in n..n + m {
        cost[k] = T::one();
    }
    for i in 0..m {
        for j in 0..=tableau.cols {
            let delta = tableau.rows[i][j].clone();
            cost[j] = cost[j].clone() - delta;
        }
    }
    tableau.optimize(&mut cost, n + m, cap)?;
    debug_assert!(tableau.basis.last() != Some(&usize::MAX), "phase one is bounded");
    // Feasible iff every artificial is zero, i.e. the phase-one objective
    // (-cost[rhs]) vanished.
    let artificial_mass = -cost[tableau.cols].clone();
    if artificial_mass.abs() > T::eps() + T::eps() {
        return Ok(LpOutcome::Infeasible);
    }
    // Drive leftover zero-valued artificials out of the basis.
    for i in 0..m {
        if tableau.basis[i] >= n {
            if let Some(col) = (0..n).find(|&j| tableau.rows[i][j].abs() > T::eps()) {
                let mut scratch = vec![T::zero(); n + m + 1];
                tableau.pivot(i, col, &mut scratch);
            }
            // Otherwise the row is redundant (all-zero over original
            // columns with zero rhs); it stays inert.
        }
    }

    // Phase two over the original columns.
    let mut cost: Vec<T> = c.iter().cloned().chain(vec![T::zero(); m + 1]).collect();
    for i in 0..m {
        let var = tableau.basis[i];
        if var < n && cost[var].abs() > T::eps() {
            let factor = cost[var].clone();
            for j in 0..=tableau.cols {
                let delta = factor.clone() * tableau.rows[i][j].clone();
                cost[j] = cost[j].clone() - delta;
            }
        }
    }
    tableau.optimize(&mut cost, n, cap)?;
    if tableau.basis.last() == Some(&usize::MAX) {
        return Ok(LpOutcome::Unbounded);
    }

    let mut x = vec![T::zero(); n];
    for i in 0..m {
        let var = tableau.basis[i];
        if var < n {
            x[var] = tableau.rhs(i).clone();
            if x[var] < T::zero() {
                // Clamp tolerance-level negatives from float pivoting.
                debug_assert!(x[var].abs() <= T::eps() + T::eps());
                x[var] = T::zero();
            }
        }
    }
    let objective = c
        .iter()
        .zip(&x)
        .fold(T::zero(), |acc, (ci, xi)| acc + ci.clone() * xi.clone());
    Ok(LpOutcome::Optimal { x, objective })
}
