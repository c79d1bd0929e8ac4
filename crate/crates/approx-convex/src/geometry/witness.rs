//! Construction of finite sets witnessing that the extremal-function bound
//! on hull distances is essentially sharp.
//!
//! Given a barycentric point alpha, the witness sample places scaled copies
//! of a regular simplex's barycentric grid in a horizontal plane and hangs a
//! vertical ladder of points over every grid column: the column's extremal
//! value at the bottom, then half-spaced rungs up to a fixed top. The
//! distinguished hull point b sits at height zero over alpha. Two exhaustive
//! scans then measure the sample honestly:
//!
//! * `measured_dist` is the exact distance from b to the sample, and
//! * `measured_delta` is a certified upper bound on the sample's midpoint
//!   defect, obtained by bounding every midpoint through candidate columns
//!   of the refined grid.
//!
//! The ratio `measured_dist / measured_delta` is therefore a true lower
//! bound for the worst-case hull distance per unit defect, and approaches
//! the extremal value of alpha as the scale and depth grow.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dyadic::DyadicSimplexPoint;
use crate::extremal::{e_dyadic, kappa};
use crate::io::{rational_string, rational_vec};
use crate::tolerances;

use super::euclidean::regular_simplex;
use super::hull::PointSet;
use super::norms::{norm_eval, Norm};
use super::{sub, GeometryError};

/// Largest sample for which the witness materializes explicit coordinates.
/// Above this, the sample is reported through its generating parameters.
pub const EXPLICIT_POINT_LIMIT: u64 = 250_000;

/// Cap on the size of the refined grid scanned for the defect bound.
const MIDPOINT_GRID_LIMIT: u128 = 300_000_000;

/// The witness sample's points: explicit coordinates for small samples,
/// generator parameters for large ones.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessPoints {
    /// Every point, materialized.
    Explicit {
        /// The sample.
        set: PointSet,
    },
    /// The sample is defined by the witness parameters; only counts are
    /// reported.
    Implicit {
        /// Total number of points in the sample.
        total_points: u64,
        /// Number of grid columns carrying ladders.
        columns: u64,
        /// The materialization threshold that was exceeded.
        explicit_limit: u64,
    },
}

/// A near-extremal witness sample together with its measurements.
///
/// Invariant (checked at construction): `measured_dist` is the exact
/// distance from `b` to the sample, `measured_delta` is an upper bound on
/// the sample's midpoint defect, and
/// `measured_dist / measured_delta >= E(alpha) - slack` with
/// `slack <= eps`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessSet {
    /// Label of the norm distances were measured in.
    pub norm: String,
    /// Number of barycentric coordinates (the sample lives in R^dim).
    pub dim: usize,
    /// The barycentric point whose extremal value is being witnessed.
    #[serde(with = "rational_vec")]
    pub alpha: Vec<BigRational>,
    /// Horizontal scale factor applied to the base simplex.
    pub m_scale: f64,
    /// Depth of the barycentric grid carrying the ladders.
    pub grid_depth: u32,
    /// Unit base directions (the regular simplex vertices in R^(dim-1)).
    pub base: Vec<Vec<f64>>,
    /// The distinguished hull point: alpha's base position at height zero.
    pub b: Vec<f64>,
    /// Convex weights expressing `b` over the vertex-column floor points
    /// (equal to alpha).
    #[serde(with = "rational_vec")]
    pub b_weights: Vec<BigRational>,
    /// Exact extremal value of alpha.
    #[serde(with = "rational_string")]
    pub e_alpha: BigRational,
    /// The same value as a float, for reading convenience.
    pub e_alpha_f64: f64,
    /// Exact distance from `b` to the sample.
    pub measured_dist: f64,
    /// Certified upper bound on the sample's midpoint defect.
    pub measured_delta: f64,
    /// `measured_dist / measured_delta`.
    pub ratio: f64,
    /// `max(0, E(alpha) - ratio)`.
    pub slack: f64,
    /// The sample.
    pub points: WitnessPoints,
}

/// Builds the witness sample for `alpha` and measures it.
///
/// * `norm` is the norm distances are measured in. The Euclidean norm uses
///   closed-form horizontal distances; other norms evaluate vectors
///   directly, which is slower (polyhedral norms solve a linear program per
///   evaluation, so keep depths small for those).
/// * `n` is the number of barycentric coordinates; `alpha` must have
///   exactly `n` coordinates and dyadic depth at most `grid_depth`.
/// * `eps` is the largest acceptable slack: if the measured ratio falls
///   more than `eps` below the extremal value of alpha, the parameters were
///   too small and [`GeometryError::InsufficientScale`] is returned.
/// * `m_scale` is the horizontal stretch; it must satisfy
///   `m_scale * n / (n - 1) > 2 * kappa(n - 1) + 1` so the base is wide
///   compared to the ladders.
pub fn witness_set(
    norm: &Norm,
    n: usize,
    alpha: &DyadicSimplexPoint,
    eps: f64,
    m_scale: f64,
    grid_depth: u32,
) -> Result<WitnessSet, GeometryError> {
    if n < 2 {
        return Err(GeometryError::BadWitnessParameter {
            reason: format!("need at least 2 coordinates, got {n}"),
        });
    }
    if alpha.coords().len() != n {
        return Err(GeometryError::BadWitnessParameter {
            reason: format!(
                "alpha has {} coordinates, expected {n}",
                alpha.coords().len()
            ),
        });
    }
    if !(1..=30).contains(&grid_depth) {
        return Err(GeometryError::BadWitnessParameter {
            reason: format!("grid depth {grid_depth} out of the supported range 1..=30"),
        });
    }
    if alpha.depth() > grid_depth {
        return Err(GeometryError::BadWitnessParameter {
            reason: format!(
                "alpha has depth {}, deeper than the grid depth {grid_depth}",
                alpha.depth()
            ),
        });
    }
    if !m_scale.is_finite() || m_scale <= 0.0 {
        return Err(GeometryError::BadWitnessParameter {
            reason: format!("scale {m_scale} must be positive"),
        });
    }
    if !eps.is_finite() || eps < 0.0 {
        return Err(GeometryError::BadWitnessParameter {
            reason: format!("slack allowance {eps} must be nonnegative"),
        });
    }
    if let Some(required) = norm.required_dim() {
        if required != n {
            return Err(GeometryError::Dimension {
                expected: n,
                got: required,
            });
        }
    }
    let top = kappa(n as u64 - 1) + BigRational::from_integer(1.into());
    let top_f = top.to_f64().expect("small rational");
    let base_width = m_scale * n as f64 / (n as f64 - 1.0);
    if base_width <= 2.0 * top_f - 1.0 {
        return Err(GeometryError::BadWitnessParameter {
            reason: format!(
                "scale {m_scale} is too small: the base width {base_width} must exceed \
                 twice the ladder top minus one ({})",
                2.0 * top_f - 1.0
            ),
        });
    }
    let mid_count = composition_count(1u128 << (grid_depth + 1), n);
    if mid_count > MIDPOINT_GRID_LIMIT {
        return Err(GeometryError::BadWitnessParameter {
            reason: format!(
                "the refined grid has {mid_count} columns, above the limit \
                 {MIDPOINT_GRID_LIMIT}; lower the grid depth"
            ),
        });
    }

    let geometry = WitnessGeometry::new(norm.clone(), n, m_scale, grid_depth, top_f);
    let alpha_nums: Vec<u64> = alpha
        .coords()
        .iter()
        .map(|c| {
            c.numerator_at_depth(grid_depth)
                .to_u64()
                .expect("depth is at most 30")
        })
        .collect();
    let b = geometry.embed(&alpha_nums, grid_depth, 0.0);

    let (total_points, measured_dist) = geometry.scan_columns(&alpha_nums);
    let measured_delta = geometry.scan_midpoints();
    let e_alpha = e_dyadic(alpha);
    let e_alpha_f64 = e_alpha.to_f64().expect("small rational");

    // The distance bound theorem applied to this very sample: a violation
    // here means a measurement bug, not bad parameters.
    if measured_dist > e_alpha_f64 * measured_delta * (1.0 + 1e-12) + tolerances::GEOMETRY {
        return Err(GeometryError::Numeric {
            reason: format!(
                "distance {measured_dist} exceeds E(alpha) * delta = {}",
                e_alpha_f64 * measured_delta
            ),
        });
    }
    let ratio = measured_dist / measured_delta;
    let slack = (e_alpha_f64 - ratio).max(0.0);
    if slack > eps {
        return Err(GeometryError::InsufficientScale {
            slack,
            eps,
            dist: measured_dist,
            delta: measured_delta,
            target: e_alpha_f64,
        });
    }

    let columns = composition_count(1u128 << grid_depth, n) as u64;
    let points = if total_points <= EXPLICIT_POINT_LIMIT {
        WitnessPoints::Explicit {
            set: geometry.materialize(total_points)?,
        }
    } else {
        WitnessPoints::Implicit {
            total_points,
            columns,
            explicit_limit: EXPLICIT_POINT_LIMIT,
        }
    };

    Ok(WitnessSet {
        norm: norm.label(),
        dim: n,
        alpha: alpha.rational_coords(),
        m_scale,
        grid_depth,
        base: geometry.base.clone(),
        b,
        b_weights: alpha.rational_coords(),
        e_alpha,
        e_alpha_f64,
        measured_dist,
        measured_delta,
        ratio,
        slack,
        points,
    })
}

/// Shared geometry for the scans: base directions, scale, and ladder shape.
struct WitnessGeometry {
    norm: Norm,
    n: usize,
    m_scale: f64,
    depth: u32,
    /// Ladder top as a float (exact: a small dyadic).
    top: f64,
    /// Largest integer k with k/2 <= top.
    k_top: i64,
    /// Whether the top itself sits strictly above the last half rung.
    top_off_grid: bool,
    /// Unit regular simplex vertices in R^(n-1).
    base: Vec<Vec<f64>>,
}

impl WitnessGeometry {
    fn new(norm: Norm, n: usize, m_scale: f64, depth: u32, top: f64) -> Self {
        let k_top = (2.0 * top).floor() as i64;
        let top_off_grid = (2.0 * top) != k_top as f64;
        WitnessGeometry {
            norm,
            n,
            m_scale,
            depth,
            top,
            k_top,
            top_off_grid,
            base: regular_simplex(n - 1),
        }
    }

    fn euclidean(&self) -> bool {
        matches!(self.norm, Norm::Euclidean)
    }

    /// Embeds barycentric numerators at `depth` and a height into R^n.
    fn embed(&self, nums: &[u64], depth: u32, height: f64) -> Vec<f64> {
        let denom = (1u64 << depth) as f64;
        let mut point = vec![0.0f64; self.n];
        for (num, dir) in nums.iter().zip(&self.base) {
            let w = self.m_scale * (*num as f64) / denom;
            for (acc, d) in point.iter_mut().zip(dir) {
                *acc += w * d;
            }
        }
        point[self.n - 1] = height;
        point
    }

    /// Squared horizontal distance between two numerator vectors at equal
    /// depth, in the Euclidean norm (closed form through the simplex Gram
    /// matrix, exact for dyadic data of moderate depth).
    fn horiz_dist_sq(&self, a: &[u64], b: &[u64], depth: u32) -> f64 {
        let mut sum_sq = 0.0f64;
        for (x, y) in a.iter().zip(b) {
            let d = *x as f64 - *y as f64;
            sum_sq += d * d;
        }
        let denom = (1u64 << depth) as f64;
        let factor = self.n as f64 / (self.n as f64 - 1.0);
        let scaled = self.m_scale / denom;
        factor * scaled * scaled * sum_sq
    }

    /// The ladder heights over a column with extremal numerator `e_num`:
    /// the floor E, half rungs from ceil(2E)/2 through k_top/2, and the top
    /// if it lies off the half grid.
    fn ladder(&self, e_num: u64) -> Vec<f64> {
        let floor = e_num as f64 / (1u64 << self.depth) as f64;
        let half = 1u64 << (self.depth - 1);
        let k_start = e_num.div_ceil(half) as i64;
        let floor_on_grid = e_num % half == 0;
        let mut heights = vec![floor];
        for k in k_start..=self.k_top {
            if floor_on_grid && k == k_start {
                continue;
            }
            heights.push(k as f64 / 2.0);
        }
        if self.top_off_grid {
            heights.push(self.top);
        }
        heights
    }

    fn ladder_len(&self, e_num: u64) -> u64 {
        let half = 1u64 << (self.depth - 1);
        let k_start = e_num.div_ceil(half) as i64;
        let dup = u64::from(e_num % half == 0 && k_start <= self.k_top);
        let rungs = (self.k_top - k_start + 1).max(0) as u64;
        1 + rungs - dup + u64::from(self.top_off_grid)
    }

    /// One pass over every column: counts ladder points and finds the exact
    /// distance from `b` (alpha's base position at height zero) to the
    /// sample.
    fn scan_columns(&self, alpha_nums: &[u64]) -> (u64, f64) {
        let total = 1u64 << self.depth;
        let b = self.embed(alpha_nums, self.depth, 0.0);
        let slices: Vec<(u64, f64)> = (0..=total)
            .into_par_iter()
            .map(|first| {
                let mut count = 0u64;
                let mut best = f64::INFINITY;
                let mut nums = vec![0u64; self.n];
                nums[0] = first;
                for_each_composition(total - first, 1, &mut nums, &mut |nums| {
                    let e_num = e_num(nums, self.depth);
                    count += self.ladder_len(e_num);
                    let dist = if self.euclidean() {
                        // The floor is the closest ladder point to height 0.
                        let h = e_num as f64 / (1u64 << self.depth) as f64;
                        (self.horiz_dist_sq(alpha_nums, nums, self.depth) + h * h).sqrt()
                    } else {
                        self.ladder(e_num)
                            .iter()
                            .map(|h| {
                                let p = self.embed(nums, self.depth, *h);
                                norm_eval(&self.norm, &sub(&b, &p))
                            })
                            .fold(f64::INFINITY, f64::min)
                    };
                    if dist < best {
                        best = dist;
                    }
                });
                (count, best)
            })
            .collect();
        let mut count = 0u64;
        let mut best = f64::INFINITY;
        for (c, d) in slices {
            count += c;
            if d < best {
                best = d;
            }
        }
        (count, best)
    }

    /// Scans the refined grid (depth + 1) and certifies an upper bound on
    /// the sample's midpoint defect.
    ///
    /// Every midpoint of two sample points projects onto a refined-grid
    /// column v with height in [max(E(v) - 1, 0), top]. For each v the
    /// bound routes the midpoint to a nearby true column c: heights below
    /// E(c) reach c's floor within the vertical gap, heights above reach a
    /// half rung within 1/4. Candidate columns come from rounding v's odd
    /// coordinates in balanced pairs.
    fn scan_midpoints(&self) -> f64 {
        let mid_depth = self.depth + 1;
        let total = 1u64 << mid_depth;
        let denom = (1u64 << mid_depth) as f64;
        let slices: Vec<f64> = (0..=total)
            .into_par_iter()
            .map(|first| {
                let mut worst = 0.0f64;
                let mut nums = vec![0u64; self.n];
                nums[0] = first;
                let mut candidate = vec![0u64; self.n];
                for_each_composition(total - first, 1, &mut nums, &mut |nums| {
                    let ev = e_num(nums, mid_depth) as f64 / denom;
                    let floor = (ev - 1.0).max(0.0);
                    let odd: Vec<usize> = (0..self.n).filter(|k| nums[*k] % 2 == 1).collect();
                    let ub = if odd.is_empty() {
                        for (c, w) in candidate.iter_mut().zip(nums) {
                            *c = *w / 2;
                        }
                        self.route_bound(nums, &candidate, floor)
                    } else {
                        // Balanced roundings over consecutive odd pairs:
                        // halve everything (odd coordinates round down) and
                        // hand each pair's spare unit to one member. The
                        // two orientations are exhaustive for n <= 3 and a
                        // sound candidate set in general.
                        debug_assert!(odd.len() % 2 == 0, "odd coordinate count is even");
                        let mut best = f64::INFINITY;
                        for flip in [false, true] {
                            for (c, w) in candidate.iter_mut().zip(nums.iter()) {
                                *c = *w / 2;
                            }
                            for chunk in odd.chunks(2) {
                                let receiver = if flip { chunk[1] } else { chunk[0] };
                                candidate[receiver] += 1;
                            }
                            let bound = self.route_bound(nums, &candidate, floor);
                            if bound < best {
                                best = bound;
                            }
                        }
                        best
                    };
                    if ub > worst {
                        worst = ub;
                    }
                });
                worst
            })
            .collect();
        slices.into_iter().fold(0.0f64, f64::max)
    }

    /// Bounds the distance from any point over refined column `v_nums`
    /// (depth + 1) with height in [floor, top] to the ladder of the true
    /// column `c_nums` (depth).
    fn route_bound(&self, v_nums: &[u64], c_nums: &[u64], floor: f64) -> f64 {
        let ec = e_num(c_nums, self.depth) as f64 / (1u64 << self.depth) as f64;
        let lo_gap = ec - floor;
        if self.euclidean() {
            // Exact squared horizontal offset between v and c, both read at
            // depth + 1 (the rounding moved v by small integer steps).
            let mut sum_sq = 0.0f64;
            for (v, c) in v_nums.iter().zip(c_nums) {
                let d = *v as f64 - 2.0 * *c as f64;
                sum_sq += d * d;
            }
            let denom = (1u64 << (self.depth + 1)) as f64;
            let s = self.m_scale / denom;
            let factor = self.n as f64 / (self.n as f64 - 1.0);
            let horiz_sq = factor * s * s * sum_sq;
            let vertical = lo_gap.max(0.25);
            (horiz_sq + vertical * vertical).sqrt()
        } else {
            let v_base = self.embed_mid(v_nums);
            let c_base = self.embed(c_nums, self.depth, 0.0);
            let mut dvec = sub(&v_base, &c_base);
            // Heights below E(c) route to the floor: offset in (-lo_gap, 0].
            let mut bound: f64 = 0.0;
            if lo_gap > 0.0 {
                dvec[self.n - 1] = 0.0;
                bound = bound.max(norm_eval(&self.norm, &dvec));
                dvec[self.n - 1] = -lo_gap;
                bound = bound.max(norm_eval(&self.norm, &dvec));
            }
            // Heights above E(c) reach a half rung within a quarter.
            dvec[self.n - 1] = 0.25;
            bound = bound.max(norm_eval(&self.norm, &dvec));
            dvec[self.n - 1] = -0.25;
            bound = bound.max(norm_eval(&self.norm, &dvec));
            bound
        }
    }

    /// Embeds refined-grid numerators at height zero.
    fn embed_mid(&self, nums: &[u64]) -> Vec<f64> {
        self.embed(nums, self.depth + 1, 0.0)
    }

    /// Materializes the full sample (only called when small).
    fn materialize(&self, expected: u64) -> Result<PointSet, GeometryError> {
        let total = 1u64 << self.depth;
        let mut points = Vec::with_capacity(expected as usize);
        let mut nums = vec![0u64; self.n];
        for first in 0..=total {
            nums[0] = first;
            for_each_composition(total - first, 1, &mut nums, &mut |nums| {
                let e_num = e_num(nums, self.depth);
                for h in self.ladder(e_num) {
                    points.push(self.embed(nums, self.depth, h));
                }
            });
        }
        debug_assert_eq!(points.len() as u64, expected);
        PointSet::new(self.n, points)
    }
}

/// Extremal numerator of `p / 2^depth` in units of `2^-depth`: the digit
/// series of the dyadic expansion, summed in exact integer arithmetic.
fn e_num(nums: &[u64], depth: u32) -> u64 {
    nums.iter().map(|p| h_num(*p, depth)).sum()
}

/// Numerator of H(p / 2^depth) over denominator 2^depth: each set bit at
/// position `pos` is digit `depth - pos` of the expansion and contributes
/// `(depth - pos) * 2^pos`.
fn h_num(p: u64, depth: u32) -> u64 {
    debug_assert!(p <= 1u64 << depth);
    let mut acc = 0u64;
    let mut bits = p;
    while bits != 0 {
        let pos = bits.trailing_zeros();
        bits &= bits - 1;
        acc += ((depth - pos) as u64) << pos;
    }
    acc
}

/// Streams compositions of `remaining` into the tail of `buf` starting at
/// index `from`, invoking `f` with the full buffer for each one.
fn for_each_composition(
    remaining: u64,
    from: usize,
    buf: &mut Vec<u64>,
    f: &mut impl FnMut(&[u64]),
) {
    if from == buf.len() - 1 {
        buf[from] = remaining;
        f(buf);
        return;
    }
    for value in 0..=remaining {
        buf[from] = value;
        for_each_composition(remaining - value, from + 1, buf, f);
    }
}

/// Number of compositions of `total` into `parts` nonnegative parts:
/// C(total + parts - 1, parts - 1), saturating.
fn composition_count(total: u128, parts: usize) -> u128 {
    let k = (parts - 1) as u128;
    let mut result = 1u128;
    for i in 0..k {
        result = result.saturating_mul(total + k - i);
        result /= i as u128 + 1;
    }
    result
}
