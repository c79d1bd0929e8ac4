//! Stability of approximate convexity: a sampled function whose midpoint
//! violations stay within epsilon lies within `kappa(d) * epsilon` of its
//! convex minorant, where d is the affine dimension of the sample.
//!
//! Everything here is exact: sample coordinates, values, and epsilon are
//! rationals, the convex minorant is computed with an exact-arithmetic
//! simplex method, and the pass/fail verdict is a rational comparison with
//! no floating-point tolerance.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extremal::kappa;
use crate::io::rational_string;
use crate::lp::{solve_lp, LpError, LpOutcome};

/// Errors from sampled-function validation and analysis.
#[derive(Debug, Error)]
pub enum StabilityError {
    /// Points and values must align.
    #[error("got {points} points but {values} values")]
    MismatchedLengths {
        /// Number of points.
        points: usize,
        /// Number of values.
        values: usize,
    },
    /// All points must share one dimension.
    #[error("point {index} has dimension {got}, expected {expected}")]
    InconsistentDimension {
        /// Offending point.
        index: usize,
        /// Its dimension.
        got: usize,
        /// Dimension of the first point.
        expected: usize,
    },
    /// At least one sample is required.
    #[error("no samples supplied")]
    Empty,
    /// Sample points must be distinct.
    #[error("points {first} and {second} coincide")]
    DuplicatePoint {
        /// First occurrence.
        first: usize,
        /// Second occurrence.
        second: usize,
    },
    /// The slack must be nonnegative.
    #[error("epsilon is negative")]
    NegativeEpsilon,
    /// The sample breaks its own approximate-convexity promise.
    #[error(
        "midpoint violation: f at sample {midpoint} exceeds the average over \
         samples {left} and {right} by more than epsilon (excess {excess})"
    )]
    NotApproxConvex {
        /// Index of the left endpoint.
        left: usize,
        /// Index of the right endpoint.
        right: usize,
        /// Index of the sample sitting at the midpoint.
        midpoint: usize,
        /// How far beyond epsilon the violation goes, as a decimal.
        excess: f64,
    },
    /// The minorant program failed unexpectedly.
    #[error("convex minorant program failed at sample {index}: {reason}")]
    Minorant {
        /// Sample whose program failed.
        index: usize,
        /// What happened.
        reason: String,
    },
    /// Propagated LP failure.
    #[error(transparent)]
    Lp(#[from] LpError),
}

/// A function sampled at finitely many rational points, promising that
/// sampled midpoint violations stay within `epsilon`.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    points: Vec<Vec<BigRational>>,
    values: Vec<BigRational>,
    epsilon: BigRational,
}

/// One sampled midpoint relation that breaks the epsilon promise.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MidpointViolation {
    /// Index of the left endpoint.
    pub left: usize,
    /// Index of the right endpoint.
    pub right: usize,
    /// Index of the sample at the midpoint.
    pub midpoint: usize,
    /// Amount by which f(midpoint) exceeds the allowed average plus epsilon.
    #[serde(with = "rational_string")]
    pub excess: BigRational,
}

impl SampledFunction {
    /// Validates and builds a sampled function.
    pub fn new(
        points: Vec<Vec<BigRational>>,
        values: Vec<BigRational>,
        epsilon: BigRational,
    ) -> Result<Self, StabilityError> {
        if points.is_empty() {
            return Err(StabilityError::Empty);
        }
        if points.len() != values.len() {
            return Err(StabilityError::MismatchedLengths {
                points: points.len(),
                values: values.len(),
            });
        }
        if epsilon.is_negative() {
            return Err(StabilityError::NegativeEpsilon);
        }
        let dim = points[0].len();
        let mut seen: HashMap<&[BigRational], usize> = HashMap::new();
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(StabilityError::InconsistentDimension {
                    index,
                    got: p.len(),
                    expected: dim,
                });
            }
            if let Some(first) = seen.insert(p.as_slice(), index) {
                return Err(StabilityError::DuplicatePoint {
                    first,
                    second: index,
                });
            }
        }
        Ok(SampledFunction {
            points,
            values,
            epsilon,
        })
    }

    /// Number of samples.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Whether the sample is empty (never true for a validated sample).
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Ambient coordinate dimension.
    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    /// The sample points.
    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.points
    }

    /// The sampled values.
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// The promised midpoint slack.
    pub fn epsilon(&self) -> &BigRational {
        &self.epsilon
    }

    /// Affine dimension of the sample: the rank of the displacement vectors
    /// from the first point, computed exactly.
    pub fn affine_dimension(&self) -> usize {
        let dim = self.dim();
        let mut rows: Vec<Vec<BigRational>> = self.points[1..]
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&self.points[0])
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..dim {
            let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let factor = &row[col] / &pivot_row[col];
                    for (entry, p) in row.iter_mut().zip(&pivot_row) {
                        *entry -= &factor * p;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// Every sampled midpoint relation that exceeds the promised epsilon:
    /// pairs (i, j) whose exact midpoint is itself a sample k with
    /// `f_k > (f_i + f_j) / 2 + epsilon`. Empty means the promise holds.
    pub fn midpoint_violations(&self) -> Vec<MidpointViolation> {
        let index: HashMap<&[BigRational], usize> = self
            .points
            .iter()
            .enumerate()
            .map(|(k, p)| (p.as_slice(), k))
            .collect();
        let two = BigRational::from_integer(2.into());
        let mut violations = Vec::new();
        for i in 0..self.points.len() {
            for j in i..self.points.len() {
                let mid: Vec<BigRational> = self.points[i]
                    .iter()
                    .zip(&self.points[j])
                    .map(|(a, b)| (a + b) / &two)
                    .collect();
                let Some(&k) = index.get(mid.as_slice()) else {
                    continue;
                };
                let allowed = (&self.values[i] + &self.values[j]) / &two + &self.epsilon;
                if self.values[k] > allowed {
                    violations.push(MidpointViolation {
                        left: i,
                        right: j,
                        midpoint: k,
                        excess: &self.values[k] - &allowed,
                    });
                }
            }
        }
        violations
    }

    /// The convex minorant of the sample, evaluated at every sample point:
    /// `g(x_k)` is the least value at `x_k` of any convex combination of the
    /// samples, computed as an exact-arithmetic linear program.
    ///
    /// Always `g(x_k) <= f(x_k)` (the sample itself is a feasible
    /// combination), with equality everywhere exactly when the sample is
    /// convex.
    pub fn convex_minorant(&self) -> Result<Vec<BigRational>, StabilityError> {
        let dim = self.dim();
        let n = self.len();
        let one = BigRational::from_integer(1.into());
        // Constraint matrix shared by all programs: coordinates plus the
        // total-weight row.
        let mut a = vec![vec![BigRational::zero(); n]; dim + 1];
        for (col, p) in self.points.iter().enumerate() {
            for (row, coord) in p.iter().enumerate() {
                a[row][col] = coord.clone();
            }
            a[dim][col] = one.clone();
        }
        (0..n)
            .into_par_iter()
            .map(|k| {
                let mut b: Vec<BigRational> = self.points[k].clone();
                b.push(one.clone());
                match solve_lp(&a, &b, &self.values)? {
                    LpOutcome::Optimal { objective, .. } => Ok(objective),
                    other => Err(StabilityError::Minorant {
                        index: k,
                        reason: format!("expected an optimum, got {other:?}"),
                    }),
                }
            })
            .collect()
    }
}

/// The verdict of a stability analysis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StabilityReport {
    /// Number of samples.
    pub samples: usize,
    /// Ambient coordinate dimension.
    pub ambient_dimension: usize,
    /// Affine dimension of the sample's hull; the constant uses this.
    pub affine_dimension: usize,
    /// The promised midpoint slack.
    #[serde(with = "rational_string")]
    pub epsilon: BigRational,
    /// The extremal constant for the affine dimension.
    #[serde(with = "rational_string")]
    pub kappa: BigRational,
    /// The certified bound `kappa * epsilon`.
    #[serde(with = "rational_string")]
    pub bound: BigRational,
    /// Largest gap between the sample and its convex minorant, exact.
    #[serde(with = "rational_string")]
    pub sup_gap: BigRational,
    /// The same gap as a float, for reading convenience.
    pub sup_gap_f64: f64,
    /// Index of a sample achieving the gap.
    pub argmax: usize,
    /// Whether `sup_gap <= kappa * epsilon`, compared exactly.
    pub pass: bool,
    /// Half the bound: the sample lies within this uniform distance of the
    /// shifted convex function g + bound/2.
    pub uniform_distance_bound: f64,
    /// Per-sample gaps `f - g`, as floats.
    pub gaps: Vec<f64>,
}

/// Analyzes a sampled function: verifies its midpoint promise, computes the
/// exact convex minorant, and compares the largest gap against
/// `kappa(affine dimension) * epsilon`.
///
/// Fails with [`StabilityError::NotApproxConvex`] if the sample does not
/// satisfy its own epsilon promise, since the bound's hypothesis would be
/// void.
pub fn stability_report(f: &SampledFunction) -> Result<StabilityReport, StabilityError> {
    if let Some(violation) = f.midpoint_violations().into_iter().next() {
        return Err(StabilityError::NotApproxConvex {
            left: violation.left,
            right: violation.right,
            midpoint: violation.midpoint,
            excess: violation.excess.to_f64().unwrap_or(f64::NAN),
        });
    }
    let minorant = f.convex_minorant()?;
    let mut sup_gap = BigRational::zero();
    let mut argmax = 0usize;
    let mut gaps = Vec::with_capacity(f.len());
    for (k, (value, g)) in f.values().iter().zip(&minorant).enumerate() {
        let gap = value - g;
        debug_assert!(
            !gap.is_negative(),
            "the minorant must not exceed the sample"
        );
        if gap > sup_gap {
            sup_gap = gap.clone();
            argmax = k;
        }
        gaps.push(gap.to_f64().unwrap_or(f64::NAN));
    }
    let affine_dimension = f.affine_dimension();
    let kappa_value = kappa(affine_dimension as u64);
    let bound = &kappa_value * f.epsilon();
    let pass = sup_gap <= bound;
    Ok(StabilityReport {
        samples: f.len(),
        ambient_dimension: f.dim(),
        affine_dimension,
        epsilon: f.epsilon().clone(),
        kappa: kappa_value,
        bound: bound.clone(),
        sup_gap_f64: sup_gap.to_f64().unwrap_or(f64::NAN),
        sup_gap,
        argmax,
        pass,
        uniform_distance_bound: bound.to_f64().unwrap_or(f64::NAN) / 2.0,
        gaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::DyadicSimplexPoint;
    use crate::extremal::e_dyadic;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn line_points(fracs: &[(i64, i64)]) -> Vec<Vec<BigRational>> {
        fracs.iter().map(|(n, d)| vec![rat(*n, *d)]).collect()
    }

    #[test]
    fn validation_catches_malformed_samples() {
        let points = line_points(&[(0, 1), (1, 2), (1, 1)]);
        assert!(SampledFunction::new(points.clone(), vec![rat(0, 1); 2], rat(1, 1)).is_err());
        assert!(SampledFunction::new(points.clone(), vec![rat(0, 1); 3], rat(-1, 1)).is_err());
        let dup = line_points(&[(0, 1), (1, 2), (2, 4)]);
        assert!(matches!(
            SampledFunction::new(dup, vec![rat(0, 1); 3], rat(1, 1)),
            Err(StabilityError::DuplicatePoint { first: 1, second: 2 })
        ));
        assert!(SampledFunction::new(vec![], vec![], rat(1, 1)).is_err());
        let mixed = vec![vec![rat(0, 1)], vec![rat(1, 1), rat(0, 1)]];
        assert!(SampledFunction::new(mixed, vec![rat(0, 1); 2], rat(1, 1)).is_err());
    }

    #[test]
    fn a_single_midpoint_bump_is_measured_exactly() {
        // f = (0, c, 0) on {0, 1/2, 1} with c = epsilon: the promise holds
        // with equality, the minorant is zero, and the gap is exactly c.
        let points = line_points(&[(0, 1), (1, 2), (1, 1)]);
        let eps = rat(3, 7);
        let f = SampledFunction::new(
            points,
            vec![rat(0, 1), rat(3, 7), rat(0, 1)],
            eps.clone(),
        )
        .unwrap();
        assert!(f.midpoint_violations().is_empty());
        let report = stability_report(&f).unwrap();
        assert_eq!(report.sup_gap, rat(3, 7));
        assert_eq!(report.argmax, 1);
        assert_eq!(report.affine_dimension, 1);
        assert_eq!(report.kappa, rat(2, 1));
        assert_eq!(report.bound, rat(6, 7));
        assert!(report.pass);
    }

    #[test]
    fn a_promise_breaking_bump_is_rejected() {
        let points = line_points(&[(0, 1), (1, 2), (1, 1)]);
        let f = SampledFunction::new(
            points,
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
            rat(1, 2),
        )
        .unwrap();
        let violations = f.midpoint_violations();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].midpoint, 1);
        assert_eq!(violations[0].excess, rat(1, 2));
        assert!(matches!(
            stability_report(&f),
            Err(StabilityError::NotApproxConvex { midpoint: 1, .. })
        ));
    }

    #[test]
    fn convex_samples_have_exactly_zero_gap() {
        // f(x) = x^2 on a rational grid is convex: the minorant equals f.
        let fracs = [(0i64, 1i64), (1, 4), (1, 2), (3, 4), (1, 1)];
        let points = line_points(&fracs);
        let values: Vec<BigRational> = fracs
            .iter()
            .map(|(n, d)| rat(n * n, d * d))
            .collect();
        let f = SampledFunction::new(points, values.clone(), rat(0, 1)).unwrap();
        let report = stability_report(&f).unwrap();
        assert_eq!(report.sup_gap, BigRational::zero());
        assert!(report.pass);
        let minorant = f.convex_minorant().unwrap();
        assert_eq!(minorant, values);
    }

    #[test]
    fn extremal_function_saturates_on_a_simplex_grid() {
        // f = E on the depth-3 grid of the 2-simplex: the minorant vanishes
        // (the vertices have value zero), so the gap is the grid maximum of
        // E, and the bound kappa(2) * 1 = 3 holds.
        let depth = 3u32;
        let total = 1u128 << depth;
        let mut points = Vec::new();
        let mut values = Vec::new();
        let mut expected_max = BigRational::zero();
        for i in 0..=total {
            for j in 0..=(total - i) {
                let p =
                    DyadicSimplexPoint::from_numerators(&[i, j, total - i - j], depth).unwrap();
                let e = e_dyadic(&p);
                if e > expected_max {
                    expected_max = e.clone();
                }
                points.push(p.rational_coords());
                values.push(e);
            }
        }
        let f = SampledFunction::new(points, values, rat(1, 1)).unwrap();
        assert!(f.midpoint_violations().is_empty(), "E is approximately convex");
        let report = stability_report(&f).unwrap();
        assert_eq!(report.affine_dimension, 2);
        assert_eq!(report.kappa, rat(3, 1));
        assert_eq!(report.sup_gap, expected_max);
        assert!(report.pass);
        // The grid maximum at depth 3 is within the certified range.
        assert!(report.sup_gap > rat(2, 1));
        assert!(report.sup_gap <= rat(3, 1));
    }

    #[test]
    fn affine_dimension_sees_through_the_ambient_space() {
        // Barycentric triples live on a plane in R^3.
        let points = vec![
            vec![rat(1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(1, 1)],
            vec![rat(1, 3), rat(1, 3), rat(1, 3)],
        ];
        let f = SampledFunction::new(points, vec![rat(0, 1); 4], rat(1, 1)).unwrap();
        assert_eq!(f.dim(), 3);
        assert_eq!(f.affine_dimension(), 2);
        // A degenerate sample: one point has affine dimension zero.
        let single = SampledFunction::new(
            vec![vec![rat(5, 1)]],
            vec![rat(2, 1)],
            rat(1, 1),
        )
        .unwrap();
        assert_eq!(single.affine_dimension(), 0);
        let report = stability_report(&single).unwrap();
        assert_eq!(report.sup_gap, BigRational::zero());
        assert!(report.pass);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn convex_plus_bounded_bumps_stays_within_the_bound(
            slopes in prop::collection::vec(-4i64..4, 3),
            offsets in prop::collection::vec(-2i64..2, 3),
            bumps in prop::collection::vec(0i64..=4, 9),
            eps_num in 1i64..6,
        ) {
            // f = max of affine functions plus bumps in [0, eps]: the
            // midpoint promise holds automatically and the theorem bounds
            // the gap by kappa(1) * eps = 2 eps.
            let eps = rat(eps_num, 4);
            let points = line_points(&[
                (0, 1), (1, 8), (1, 4), (3, 8), (1, 2), (5, 8), (3, 4), (7, 8), (1, 1),
            ]);
            let mut values = Vec::new();
            for (k, p) in points.iter().enumerate() {
                let x = &p[0];
                let convex = slopes
                    .iter()
                    .zip(&offsets)
                    .map(|(s, o)| BigRational::from_integer((*s).into()) * x
                        + BigRational::from_integer((*o).into()))
                    .max()
                    .unwrap();
                let bump = &eps * rat(bumps[k], 4);
                values.push(convex + bump);
            }
            let f = SampledFunction::new(points, values, eps.clone()).unwrap();
            prop_assert!(f.midpoint_violations().is_empty());
            let report = stability_report(&f).unwrap();
            prop_assert!(report.pass, "gap {} exceeded bound {}", report.sup_gap, report.bound);
            prop_assert!(report.sup_gap <= rat(2, 1) * &eps);
        }
    }
}
