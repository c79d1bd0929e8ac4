//! Finite point sets, their midpoint defect, and certified distance bounds
//! from convex-hull points back to the set.
//!
//! The pipeline: [`midpoint_defect`] measures how far midpoints of a set A
//! stray from A; [`caratheodory_weights`] expresses a hull point as a short
//! convex combination; [`certify_hull_point`] turns that combination into a
//! checked certificate `dist(z, A) <= E(alpha) * delta`; and
//! [`hull_defect_estimate`] searches the hull for points far from A,
//! producing a lower bound on the worst case.

use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::extremal::{e_point, EnclosedValue, EvalMode};
use crate::lp::{solve_lp, LpOutcome};
use crate::tolerances;

use super::norms::{norm_eval, Norm};
use super::{check_finite, midpoint, sub, GeometryError};

/// Bits of enclosure precision used when evaluating the extremal function at
/// rationalized certificate weights.
const CERTIFICATE_PRECISION: u32 = 40;

/// A finite set of points in R^dim.
///
/// Serialized as `{"dim": d, "points": [[..], ..]}`; deserialization
/// re-validates dimensions and finiteness.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "PointSetDoc")]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct PointSetDoc {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl TryFrom<PointSetDoc> for PointSet {
    type Error = GeometryError;

    fn try_from(doc: PointSetDoc) -> Result<Self, Self::Error> {
        PointSet::new(doc.dim, doc.points)
    }
}

impl PointSet {
    /// Validates dimensions and finiteness and builds the set.
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::EmptySet);
        }
        for p in &points {
            if p.len() != dim {
                return Err(GeometryError::Dimension {
                    expected: dim,
                    got: p.len(),
                });
            }
            check_finite(p)?;
        }
        Ok(PointSet { dim, points })
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The points.
    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Whether the set is empty (never true for a validated set).
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A seven-point planar demonstration set whose midpoint defect is exactly 1
/// while its hull contains points at distance 2 from the set, showing the
/// planar constant 2 cannot be improved.
pub fn seven_point_demo() -> PointSet {
    let s = 3.0f64.sqrt();
    PointSet::new(
        2,
        vec![
            vec![0.0, 1.0],
            vec![s, 2.0],
            vec![-s, 2.0],
            vec![2.0 * s, 1.0],
            vec![-2.0 * s, 1.0],
            vec![3.0 * s, 0.0],
            vec![-3.0 * s, 0.0],
        ],
    )
    .expect("demo set is valid")
}

/// Result of a midpoint-defect measurement.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MidpointDefect {
    /// The defect: max over pairs of the distance from their midpoint to
    /// the set.
    pub delta: f64,
    /// Index of the first point of the worst pair.
    pub i: usize,
    /// Index of the second point of the worst pair.
    pub j: usize,
    /// The worst midpoint.
    pub midpoint: Vec<f64>,
    /// Index of the set point nearest to that midpoint.
    pub nearest: usize,
    /// Number of midpoints examined.
    pub pairs: u64,
}

/// Measures the midpoint defect of `set` under `norm`: the largest distance
/// from the midpoint of two set members back to the set.
///
/// Ties are broken deterministically toward the lexicographically smallest
/// pair of indices. O(N^3) norm evaluations, parallelized over rows.
pub fn midpoint_defect(set: &PointSet, norm: &Norm) -> MidpointDefect {
    let points = set.points();
    let n = points.len();
    if n == 1 {
        return MidpointDefect {
            delta: 0.0,
            i: 0,
            j: 0,
            midpoint: points[0].clone(),
            nearest: 0,
            pairs: 1,
        };
    }
    let row_best: Vec<MidpointDefect> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut best = MidpointDefect {
                delta: f64::NEG_INFINITY,
                i,
                j: i,
                midpoint: Vec::new(),
                nearest: 0,
                pairs: 0,
            };
            for j in (i + 1)..n {
                let m = midpoint(&points[i], &points[j]);
                let (dist, nearest) = dist_to_set(&m, set, norm);
                if dist > best.delta {
                    best = MidpointDefect {
                        delta: dist,
                        i,
                        j,
                        midpoint: m,
                        nearest,
                        pairs: 0,
                    };
                }
            }
            best
        })
        .collect();
    let mut best: Option<MidpointDefect> = None;
    for candidate in row_best {
        if candidate.delta.is_finite()
            && best.as_ref().is_none_or(|b| candidate.delta > b.delta)
        {
            best = Some(candidate);
        }
    }
    let mut result = best.expect("at least one pair exists");
    result.pairs = (n as u64) * (n as u64 - 1) / 2;
    result
}

/// Distance from `z` to the nearest point of `set` under `norm`, together
/// with the index of a nearest point (smallest index on ties).
pub fn dist_to_set(z: &[f64], set: &PointSet, norm: &Norm) -> (f64, usize) {
    let mut best = f64::INFINITY;
    let mut arg = 0;
    for (k, p) in set.points().iter().enumerate() {
        let d = norm_eval(norm, &sub(z, p));
        if d < best {
            best = d;
            arg = k;
        }
    }
    (best, arg)
}

/// A short convex combination expressing a hull point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaratheodoryWeights {
    /// Indices of the participating set points.
    pub indices: Vec<usize>,
    /// Their weights; nonnegative, summing to 1 up to float error.
    pub weights: Vec<f64>,
}

/// Expresses `z` as a convex combination of at most dim + 1 points of `set`,
/// or reports that `z` lies outside the hull.
///
/// Solved as a pure feasibility linear program; the basic solution the
/// simplex method returns automatically has support at most dim + 1.
pub fn caratheodory_weights(
    z: &[f64],
    set: &PointSet,
) -> Result<CaratheodoryWeights, GeometryError> {
    if z.len() != set.dim() {
        return Err(GeometryError::Dimension {
            expected: set.dim(),
            got: z.len(),
        });
    }
    check_finite(z)?;
    let dim = set.dim();
    let n = set.len();
    let mut a = vec![vec![0.0f64; n]; dim + 1];
    for (col, p) in set.points().iter().enumerate() {
        for (row, coord) in p.iter().enumerate() {
            a[row][col] = *coord;
        }
        a[dim][col] = 1.0;
    }
    let mut b = z.to_vec();
    b.push(1.0);
    let c = vec![0.0f64; n];
    match solve_lp(&a, &b, &c)? {
        LpOutcome::Optimal { x, .. } => {
            let mut indices = Vec::new();
            let mut weights = Vec::new();
            for (k, w) in x.iter().enumerate() {
                if *w > 0.0 {
                    indices.push(k);
                    weights.push(*w);
                }
            }
            debug_assert!(indices.len() <= dim + 1, "basic solution support bound");
            let scale = z.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
            let mut residual = 0.0f64;
            for row in 0..dim {
                let mut acc = -z[row];
                for (idx, w) in indices.iter().zip(&weights) {
                    acc += w * set.points()[*idx][row];
                }
                residual = residual.max(acc.abs());
            }
            if residual > 1e-6 * scale {
                return Err(GeometryError::Numeric {
                    reason: format!("combination residual {residual} too large"),
                });
            }
            Ok(CaratheodoryWeights { indices, weights })
        }
        LpOutcome::Infeasible => Err(GeometryError::OutsideHull),
        LpOutcome::Unbounded => Err(GeometryError::Numeric {
            reason: "feasibility program reported unbounded".to_string(),
        }),
    }
}

/// A checked certificate that a hull point is close to the set.
///
/// The weights are exact rationals (serialized as strings); `point` is the
/// exact recombination of the set points under those weights, so the
/// inequality `dist <= bound + tolerance` is a genuine theorem instance
/// rather than an artifact of rounding.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HullCertificate {
    /// Indices of the support points.
    pub indices: Vec<usize>,
    /// Exact weights, as rational strings aligned with `indices`.
    pub weights: Vec<String>,
    /// The certified point: the exact convex combination, rounded to f64.
    pub point: Vec<f64>,
    /// How far the certified point sits from the queried point.
    pub displacement: f64,
    /// Enclosure of the extremal value of the weight vector.
    pub extremal: EnclosedValue,
    /// Midpoint defect used in the bound.
    pub delta: f64,
    /// The certified bound: upper enclosure of the extremal value times
    /// `delta`.
    pub bound: f64,
    /// Measured distance from the certified point to the set.
    pub dist: f64,
    /// Whether `dist <= bound + tolerance`.
    pub pass: bool,
}

/// Certifies that `z` (a point of the hull of `set`) lies within
/// `E(alpha) * delta` of the set, where `alpha` are Caratheodory weights
/// for `z` and `delta` is the midpoint defect.
///
/// Pass `known_defect` to reuse a previously computed defect; otherwise it
/// is measured here. The returned certificate rationalizes the weights
/// exactly, recombines the point, and measures the actual distance, so
/// `pass` reports an honestly checked inequality.
pub fn certify_hull_point(
    z: &[f64],
    set: &PointSet,
    norm: &Norm,
    known_defect: Option<f64>,
) -> Result<HullCertificate, GeometryError> {
    let combo = caratheodory_weights(z, set)?;
    let delta = match known_defect {
        Some(d) => d,
        None => midpoint_defect(set, norm).delta,
    };
    // Rationalize the weights exactly and renormalize so they sum to 1.
    let mut exact: Vec<BigRational> = combo
        .weights
        .iter()
        .map(|w| BigRational::from_f64(w.max(0.0)).expect("finite weight"))
        .collect();
    let total: BigRational = exact.iter().cloned().sum();
    if total.is_zero() {
        return Err(GeometryError::Numeric {
            reason: "certificate weights sum to zero".to_string(),
        });
    }
    for w in &mut exact {
        *w /= total.clone();
    }
    // Recombine the point exactly under the normalized weights.
    let dim = set.dim();
    let mut recombined = vec![BigRational::zero(); dim];
    for (idx, w) in combo.indices.iter().zip(&exact) {
        for (row, coord) in set.points()[*idx].iter().enumerate() {
            recombined[row] += w * BigRational::from_f64(*coord).expect("finite coordinate");
        }
    }
    let point: Vec<f64> = recombined
        .iter()
        .map(|v| v.to_f64().expect("representable"))
        .collect();
    let extremal = e_point(
        &exact,
        EvalMode::Enclose {
            precision: CERTIFICATE_PRECISION,
        },
    )?
    .enclosure();
    let bound = extremal.hi().to_f64().expect("representable") * delta;
    let (dist, _) = dist_to_set(&point, set, norm);
    let displacement = norm_eval(norm, &sub(&point, z));
    Ok(HullCertificate {
        indices: combo.indices,
        weights: exact.iter().map(crate::io::format_rational).collect(),
        point,
        displacement,
        extremal,
        delta,
        bound,
        dist,
        pass: dist <= bound + tolerances::GEOMETRY,
    })
}

/// Strategy for sampling hull points in [`hull_defect_estimate`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Sampler {
    /// Scan an axis-aligned grid of the bounding box at the given spacing,
    /// keeping points inside the hull.
    Grid {
        /// Grid spacing; must be positive.
        resolution: f64,
    },
    /// Sample random convex combinations of the set points.
    Random {
        /// Seed for the deterministic generator.
        seed: u64,
        /// Number of samples.
        count: u64,
    },
}

/// A sampled lower bound for the worst distance from hull points to the set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DefectEstimate {
    /// Largest distance found.
    pub value: f64,
    /// A hull point achieving it.
    pub argmax: Vec<f64>,
    /// Number of candidate points examined (grid cells scanned or random
    /// samples drawn).
    pub samples: u64,
}

/// Searches the convex hull of `set` for points far from the set, returning
/// the largest distance found. This is a lower bound for the true supremum;
/// the companion upper bound is `kappa` times the midpoint defect.
///
/// Deterministic: grid points are scanned in axis order, random samples are
/// drawn from a seeded generator, and ties keep the earliest sample.
pub fn hull_defect_estimate(
    set: &PointSet,
    norm: &Norm,
    sampler: &Sampler,
) -> Result<DefectEstimate, GeometryError> {
    match sampler {
        Sampler::Grid { resolution } => grid_estimate(set, norm, *resolution),
        Sampler::Random { seed, count } => random_estimate(set, norm, *seed, *count),
    }
}

fn grid_estimate(
    set: &PointSet,
    norm: &Norm,
    resolution: f64,
) -> Result<DefectEstimate, GeometryError> {
    if !resolution.is_finite() || resolution <= 0.0 {
        return Err(GeometryError::BadSampler {
            reason: format!("grid resolution {resolution} must be positive"),
        });
    }
    let dim = set.dim();
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for p in set.points() {
        for (k, v) in p.iter().enumerate() {
            lo[k] = lo[k].min(*v);
            hi[k] = hi[k].max(*v);
        }
    }
    let counts: Vec<u64> = (0..dim)
        .map(|k| ((hi[k] - lo[k]) / resolution).floor() as u64 + 1)
        .collect();
    let total: u64 = counts.iter().try_fold(1u64, |acc, c| acc.checked_mul(*c)).ok_or(
        GeometryError::BadSampler {
            reason: "grid has too many points".to_string(),
        },
    )?;
    if total > 200_000_000 {
        return Err(GeometryError::BadSampler {
            reason: format!("grid has {total} points; refine the resolution or the box"),
        });
    }
    let hull_2d = if dim == 2 {
        Some(convex_hull_2d(set.points()))
    } else {
        None
    };
    let scale = set
        .points()
        .iter()
        .flat_map(|p| p.iter())
        .fold(1.0f64, |acc, v| acc.max(v.abs()));
    let inside_tol = tolerances::GEOMETRY * scale * scale;

    // Scan slices of the first axis in parallel; each slice walks the
    // remaining axes in mixed-radix order so the flat index is recoverable.
    let per_slice: u64 = counts[1..].iter().product::<u64>().max(1);
    let slice_results: Vec<Option<(f64, u64, Vec<f64>)>> = (0..counts[0])
        .into_par_iter()
        .map(|first| {
            let mut best: Option<(f64, u64, Vec<f64>)> = None;
            let mut point = vec![0.0f64; dim];
            point[0] = lo[0] + first as f64 * resolution;
            for rest in 0..per_slice {
                let mut r = rest;
                for axis in (1..dim).rev() {
                    let idx = r % counts[axis];
                    r /= counts[axis];
                    point[axis] = lo[axis] + idx as f64 * resolution;
                }
                let inside = match &hull_2d {
                    Some(hull) => point_in_convex_polygon(hull, &point, inside_tol),
                    None => caratheodory_weights(&point, set).is_ok(),
                };
                if inside {
                    let (dist, _) = dist_to_set(&point, set, norm);
                    if best.as_ref().is_none_or(|(v, _, _)| dist > *v) {
                        best = Some((dist, first * per_slice + rest, point.clone()));
                    }
                }
            }
            best
        })
        .collect();
    let mut best: Option<(f64, u64, Vec<f64>)> = None;
    for candidate in slice_results.into_iter().flatten() {
        match &best {
            None => best = Some(candidate),
            Some((v, idx, _)) => {
                if candidate.0 > *v || (candidate.0 == *v && candidate.1 < *idx) {
                    best = Some(candidate);
                }
            }
        }
    }
    let (value, _, argmax) = best.ok_or(GeometryError::BadSampler {
        reason: "no grid point fell inside the hull".to_string(),
    })?;
    Ok(DefectEstimate {
        value,
        argmax,
        samples: total,
    })
}

fn random_estimate(
    set: &PointSet,
    norm: &Norm,
    seed: u64,
    count: u64,
) -> Result<DefectEstimate, GeometryError> {
    if count == 0 {
        return Err(GeometryError::BadSampler {
            reason: "random sampler needs a positive count".to_string(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = set.len();
    let dim = set.dim();
    let mut best_value = f64::NEG_INFINITY;
    let mut best_point = Vec::new();
    let mut weights = vec![0.0f64; n];
    let mut point = vec![0.0f64; dim];
    for _ in 0..count {
        let mut total = 0.0;
        for w in &mut weights {
            let u: f64 = rng.gen();
            *w = -(1.0 - u).ln();
            total += *w;
        }
        point.iter_mut().for_each(|v| *v = 0.0);
        for (w, p) in weights.iter().zip(set.points()) {
            let scaled = w / total;
            for (acc, coord) in point.iter_mut().zip(p) {
                *acc += scaled * coord;
            }
        }
        let (dist, _) = dist_to_set(&point, set, norm);
        if dist > best_value {
            best_value = dist;
            best_point = point.clone();
        }
    }
    Ok(DefectEstimate {
        value: best_value,
        argmax: best_point,
        samples: count,
    })
}

/// Report combining the defect measurement with the worst pair, suitable for
/// serialization by callers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DefectReport {
    /// Which norm distances were measured in.
    pub norm: String,
    /// The midpoint defect.
    pub delta: f64,
    /// The worst midpoint and where it came from.
    pub worst_pair: MidpointDefect,
    /// Number of midpoints examined.
    pub samples: u64,
}

impl DefectReport {
    /// Measures the defect of `set` under `norm` and packages the report.
    pub fn measure(set: &PointSet, norm: &Norm) -> Self {
        let worst = midpoint_defect(set, norm);
        DefectReport {
            norm: norm.label(),
            delta: worst.delta,
            samples: worst.pairs,
            worst_pair: worst,
        }
    }
}

/// Convex hull of planar points in counterclockwise order (monotone chain).
fn convex_hull_2d(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut pts: Vec<Vec<f64>> = points.to_vec();
    pts.sort_by(|a, b| {
        a[0].partial_cmp(&b[0])
            .expect("finite")
            .then(a[1].partial_cmp(&b[1]).expect("finite"))
    });
    pts.dedup_by(|a, b| a[0] == b[0] && a[1] == b[1]);
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: &[f64], a: &[f64], b: &[f64]| -> f64 {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut lower: Vec<Vec<f64>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0.0
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<f64>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0.0
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Whether `p` lies inside (or within `tol` of the boundary of) the convex
/// polygon `hull`, given in counterclockwise order.
pub(super) fn point_in_convex_polygon(hull: &[Vec<f64>], p: &[f64], tol: f64) -> bool {
    if hull.len() == 1 {
        return (p[0] - hull[0][0]).abs() <= tol && (p[1] - hull[0][1]).abs() <= tol;
    }
    if hull.len() == 2 {
        // Degenerate hull: a segment. Check collinearity and betweenness.
        let (a, b) = (&hull[0], &hull[1]);
        let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
        if cross.abs() > tol {
            return false;
        }
        let dot = (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1]);
        let len2 = (b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2);
        dot >= -tol && dot <= len2 + tol
    } else {
        hull.iter().enumerate().all(|(k, a)| {
            let b = &hull[(k + 1) % hull.len()];
            let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
            cross >= -tol
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_square() -> PointSet {
        PointSet::new(
            2,
            vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![1.0, 1.0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn point_set_validation_catches_mistakes() {
        assert!(PointSet::new(2, vec![]).is_err());
        assert!(PointSet::new(2, vec![vec![1.0]]).is_err());
        assert!(PointSet::new(1, vec![vec![f64::NAN]]).is_err());
        assert!(PointSet::new(2, vec![vec![0.5, -0.25]]).is_ok());
    }

    #[test]
    fn point_set_json_round_trip() {
        let set = unit_square();
        let text = serde_json::to_string(&set).unwrap();
        let back: PointSet = serde_json::from_str(&text).unwrap();
        assert_eq!(back.dim(), 2);
        assert_eq!(back.points(), set.points());
        let bad = r#"{"dim":2,"points":[[1.0,2.0,3.0]]}"#;
        assert!(serde_json::from_str::<PointSet>(bad).is_err());
    }

    #[test]
    fn square_defect_matches_hand_values() {
        let set = unit_square();
        let euclid = midpoint_defect(&set, &Norm::Euclidean);
        assert!((euclid.delta - 0.5f64.sqrt()).abs() < 1e-12);
        let l1 = midpoint_defect(&set, &Norm::ell_1());
        assert!((l1.delta - 1.0).abs() < 1e-12);
        let linf = midpoint_defect(&set, &Norm::EllInf);
        assert!((linf.delta - 0.5).abs() < 1e-12);
        assert_eq!(euclid.pairs, 6);
    }

    #[test]
    fn seven_point_demo_has_defect_one() {
        let set = seven_point_demo();
        let report = midpoint_defect(&set, &Norm::Euclidean);
        assert!(
            (report.delta - 1.0).abs() <= tolerances::GEOMETRY,
            "defect {} should be 1",
            report.delta
        );
    }

    #[test]
    fn singleton_set_has_zero_defect() {
        let set = PointSet::new(2, vec![vec![3.0, -1.0]]).unwrap();
        let report = midpoint_defect(&set, &Norm::Euclidean);
        assert_eq!(report.delta, 0.0);
        assert_eq!((report.i, report.j), (0, 0));
    }

    #[test]
    fn dist_to_set_breaks_ties_toward_smaller_index() {
        let set = PointSet::new(1, vec![vec![-1.0], vec![1.0]]).unwrap();
        let (d, k) = dist_to_set(&[0.0], &set, &Norm::Euclidean);
        assert_eq!(d, 1.0);
        assert_eq!(k, 0);
    }

    #[test]
    fn caratheodory_expresses_the_square_center() {
        let set = unit_square();
        let combo = caratheodory_weights(&[0.5, 0.5], &set).unwrap();
        assert!(combo.indices.len() <= 3, "support {:?}", combo.indices);
        let total: f64 = combo.weights.iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
        let mut rebuilt = [0.0f64; 2];
        for (idx, w) in combo.indices.iter().zip(&combo.weights) {
            rebuilt[0] += w * set.points()[*idx][0];
            rebuilt[1] += w * set.points()[*idx][1];
        }
        assert!((rebuilt[0] - 0.5).abs() < 1e-9);
        assert!((rebuilt[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn caratheodory_rejects_outside_points() {
        let set = unit_square();
        assert!(matches!(
            caratheodory_weights(&[1.5, 0.5], &set),
            Err(GeometryError::OutsideHull)
        ));
        assert!(matches!(
            caratheodory_weights(&[-0.2, 0.0], &set),
            Err(GeometryError::OutsideHull)
        ));
    }

    #[test]
    fn certificate_for_square_center_passes() {
        let set = unit_square();
        let cert = certify_hull_point(&[0.5, 0.5], &set, &Norm::Euclidean, None).unwrap();
        assert!(cert.pass, "certificate should pass: {cert:?}");
        assert!(cert.dist <= cert.bound + tolerances::GEOMETRY);
        assert!(cert.displacement < 1e-9);
        // The center sits at distance sqrt(1/2) from the corners.
        assert!((cert.dist - 0.5f64.sqrt()).abs() < 1e-9);
        let reused = certify_hull_point(&[0.5, 0.5], &set, &Norm::Euclidean, Some(cert.delta))
            .unwrap();
        assert_eq!(reused.delta, cert.delta);
    }

    #[test]
    fn certificate_weights_are_exact_rationals_summing_to_one() {
        let set = unit_square();
        let cert = certify_hull_point(&[0.25, 0.75], &set, &Norm::Euclidean, None).unwrap();
        let mut total = BigRational::zero();
        for w in &cert.weights {
            total += crate::io::parse_rational(w).unwrap();
        }
        assert_eq!(total, BigRational::from_integer(1.into()));
    }

    #[test]
    fn certificate_rejects_outside_points() {
        let set = unit_square();
        assert!(matches!(
            certify_hull_point(&[2.0, 2.0], &set, &Norm::Euclidean, None),
            Err(GeometryError::OutsideHull)
        ));
    }

    #[test]
    fn grid_estimate_finds_the_square_center() {
        let set = unit_square();
        let estimate = hull_defect_estimate(
            &set,
            &Norm::Euclidean,
            &Sampler::Grid { resolution: 0.25 },
        )
        .unwrap();
        assert!((estimate.value - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((estimate.argmax[0] - 0.5).abs() < 1e-12);
        assert!((estimate.argmax[1] - 0.5).abs() < 1e-12);
        assert_eq!(estimate.samples, 25);
    }

    #[test]
    fn grid_estimate_handles_three_dimensions_via_feasibility() {
        let mut corners = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    corners.push(vec![x, y, z]);
                }
            }
        }
        let set = PointSet::new(3, corners).unwrap();
        let estimate = hull_defect_estimate(
            &set,
            &Norm::Euclidean,
            &Sampler::Grid { resolution: 0.5 },
        )
        .unwrap();
        assert!((estimate.value - 0.75f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn grid_estimate_rejects_bad_resolutions() {
        let set = unit_square();
        assert!(hull_defect_estimate(&set, &Norm::Euclidean, &Sampler::Grid { resolution: 0.0 })
            .is_err());
        assert!(hull_defect_estimate(
            &set,
            &Norm::Euclidean,
            &Sampler::Grid {
                resolution: -1.0
            }
        )
        .is_err());
    }

    #[test]
    fn random_estimate_is_deterministic_and_bounded() {
        let set = unit_square();
        let sampler = Sampler::Random {
            seed: 7,
            count: 2000,
        };
        let a = hull_defect_estimate(&set, &Norm::Euclidean, &sampler).unwrap();
        let b = hull_defect_estimate(&set, &Norm::Euclidean, &sampler).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.argmax, b.argmax);
        assert!(a.value <= 0.5f64.sqrt() + 1e-12);
        assert!(a.value > 0.4, "random samples should approach the center");
        assert_eq!(a.samples, 2000);
    }

    #[test]
    fn defect_report_round_trips_through_json() {
        let set = unit_square();
        let report = DefectReport::measure(&set, &Norm::EllInf);
        let text = serde_json::to_string(&report).unwrap();
        let back: DefectReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.delta, report.delta);
        assert_eq!(back.samples, 6);
    }

    fn arb_planar_set() -> impl Strategy<Value = PointSet> {
        prop::collection::vec(
            prop::collection::vec(-5.0f64..5.0, 2),
            3..7,
        )
        .prop_map(|points| PointSet::new(2, points).expect("valid"))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn planar_hull_distance_is_at_most_twice_the_defect(set in arb_planar_set()) {
            // Planar sharp bound: every hull point lies within 2 * defect.
            for norm in [Norm::Euclidean, Norm::ell_1()] {
                let delta = midpoint_defect(&set, &norm).delta;
                let estimate = hull_defect_estimate(
                    &set,
                    &norm,
                    &Sampler::Random { seed: 11, count: 300 },
                ).unwrap();
                prop_assert!(
                    estimate.value <= 2.0 * delta + 1e-7,
                    "estimate {} exceeds twice the defect {}",
                    estimate.value,
                    delta
                );
            }
        }

        #[test]
        fn certificates_pass_on_random_hull_points(
            set in arb_planar_set(),
            w in prop::collection::vec(0.01f64..1.0, 7),
        ) {
            let total: f64 = w.iter().take(set.len()).sum();
            let mut z = vec![0.0f64; 2];
            for (weight, p) in w.iter().zip(set.points()) {
                z[0] += weight / total * p[0];
                z[1] += weight / total * p[1];
            }
            let cert = certify_hull_point(&z, &set, &Norm::Euclidean, None).unwrap();
            prop_assert!(cert.pass, "certificate failed: {cert:?}");
        }
    }
}
