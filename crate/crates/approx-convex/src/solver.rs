//! Midpoint-relaxation solvers on dyadic simplex grids.
//!
//! The midpoint operator of approximate convexity,
//!
//!   (S f)(x) = min over grid pairs y + z = 2x, y != x of (f(y)+f(z))/2 + 1,
//!
//! pins vertex values and relaxes everything else. Iterating f <- min(f, Sf)
//! from a large seed converges downward, and h <- max(h, Sh) from a small
//! approximately convex seed converges upward; both land, in exactly
//! representable rational arithmetic, on the same fixed point: the extremal
//! function e plus the affine interpolation of the boundary values. The
//! convergence is exact because every non-vertex dyadic point splits as a
//! midpoint of two shallower points with disjoint digit supports, and on
//! those pairs the relaxation is an equality.
//!
//! For general polytopes the infimum over exact barycentric preimages is not
//! a grid object, so [`polytope_extremal`] returns a certified enclosure
//! instead: a concavity argument gives the lower end on the vertices of the
//! exact preimage polytope, and explicit preimages give the upper end.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::dyadic::{DyadicError, DyadicRational, DyadicSimplexPoint};
use crate::extremal::{e_point, h_enclose, kappa, EnclosedValue, EvalMode, ExtremalError};
use crate::io::{format_rational, parse_rational};

/// Errors from grid construction and the solvers.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    /// The requested grid would have too many points.
    #[error("grid with {points} points exceeds the limit of {limit}")]
    GridTooLarge {
        /// Number of points the grid would hold.
        points: u64,
        /// The configured limit.
        limit: u64,
    },
    /// Boundary values must list one value per vertex.
    #[error("expected {expected} boundary values (one per vertex), got {got}")]
    BoundaryLength {
        /// Required number of values.
        expected: usize,
        /// Number supplied.
        got: usize,
    },
    /// The query point does not match the polytope's ambient dimension.
    #[error("query has dimension {got}, polytope lives in dimension {expected}")]
    QueryDimension {
        /// Ambient dimension of the polytope.
        expected: usize,
        /// Dimension of the query.
        got: usize,
    },
    /// The query point lies outside the convex hull of the vertices.
    #[error("query point lies outside the convex hull of the polytope vertices")]
    OutsideHull,
    /// A polytope needs at least one vertex, all of one dimension.
    #[error("polytope vertices are empty or of mixed dimensions")]
    MalformedPolytope,
    /// Propagated exact-arithmetic failure.
    #[error(transparent)]
    Dyadic(#[from] DyadicError),
    /// Propagated extremal-function failure.
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
}

/// Hard cap on grid sizes; protects against accidental exponential requests.
const GRID_POINT_LIMIT: u64 = 5_000_000;

/// The depth-d dyadic grid on the n-dimensional simplex: all points whose
/// coordinates are integer multiples of 2^-d summing to one.
///
/// Construction precomputes, for every grid point x, the list of unordered
/// grid pairs (y, z) with y + z = 2x and y != x; the relaxation sweeps then
/// touch each pair once.
#[derive(Debug)]
pub struct DyadicGrid {
    dim: usize,
    depth: u32,
    points: Vec<DyadicSimplexPoint>,
    index: HashMap<Vec<u64>, usize>,
    vertex_indices: Vec<usize>,
    pairs: Vec<Vec<(u32, u32)>>,
}

impl DyadicGrid {
    /// Builds the depth-d grid on the n-dimensional simplex.
    pub fn new(dim: usize, depth: u32) -> Result<Self, SolverError> {
        let scale = 1u64 << depth;
        let size = binomial(scale + dim as u64, dim as u64);
        if size > GRID_POINT_LIMIT {
            return Err(SolverError::GridTooLarge {
                points: size,
                limit: GRID_POINT_LIMIT,
            });
        }

        let mut numerators = Vec::with_capacity(size as usize);
        let mut current = vec![0u64; dim + 1];
        enumerate_compositions(scale, dim + 1, 0, &mut current, &mut numerators);

        let index: HashMap<Vec<u64>, usize> = numerators
            .iter()
            .enumerate()
            .map(|(i, nums)| (nums.clone(), i))
            .collect();

        let points = numerators
            .iter()
            .map(|nums| {
                let coords = nums
                    .iter()
                    .map(|&m| DyadicRational::new(m.into(), depth))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(DyadicSimplexPoint::new(coords)?)
            })
            .collect::<Result<Vec<_>, SolverError>>()?;

        let vertex_indices = (0..=dim)
            .map(|k| {
                let mut nums = vec![0u64; dim + 1];
                nums[k] = scale;
                index[&nums]
            })
            .collect();

        // Midpoint pairs: for x and every candidate y with y <= 2x
        // coordinatewise, the partner z = 2x - y must land on the grid.
        let pairs: Vec<Vec<(u32, u32)>> = numerators
            .par_iter()
            .enumerate()
            .map(|(xi, x)| {
                let mut list = Vec::new();
                for (yi, y) in numerators.iter().enumerate() {
                    if yi == xi {
                        continue;
                    }
                    let mut z = Vec::with_capacity(dim + 1);
                    let mut ok = true;
                    for k in 0..=dim {
                        let doubled = 2 * x[k];
                        if y[k] > doubled {
                            ok = false;
                            break;
                        }
                        z.push(doubled - y[k]);
                    }
                    if !ok {
                        continue;
                    }
                    if let Some(&zi) = index.get(&z) {
                        if yi <= zi {
                            list.push((yi as u32, zi as u32));
                        }
                    }
                }
                list
            })
            .collect();

        Ok(Self {
            dim,
            depth,
            points,
            index,
            vertex_indices,
            pairs,
        })
    }

    /// Simplex dimension n.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Grid depth d.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// The grid points in enumeration order.
    pub fn points(&self) -> &[DyadicSimplexPoint] {
        &self.points
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// True when the grid is empty (never, for valid construction).
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index of vertex k.
    pub fn vertex_index(&self, k: usize) -> usize {
        self.vertex_indices[k]
    }

    /// Index of an exact grid point, if it lies on this grid.
    pub fn position(&self, point: &DyadicSimplexPoint) -> Option<usize> {
        if point.depth() > self.depth || point.dim() != self.dim {
            return None;
        }
        let nums: Vec<u64> = point
            .coords()
            .iter()
            .map(|c| {
                let scaled = c.numerator_at_depth(self.depth);
                // Depth is capped by the grid limit, so this fits in u64.
                u64::try_from(&scaled).expect("grid numerator fits in u64")
            })
            .collect();
        self.index.get(&nums).copied()
    }

    /// The precomputed midpoint pairs of point i.
    pub fn midpoint_pairs(&self, i: usize) -> &[(u32, u32)] {
        &self.pairs[i]
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut result = 1u64;
    for i in 0..k {
        result = result.saturating_mul(n - i) / (i + 1);
    }
    result
}

fn enumerate_compositions(
    remaining: u64,
    parts: usize,
    pos: usize,
    current: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if pos == parts - 1 {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for value in 0..=remaining {
        current[pos] = value;
        enumerate_compositions(remaining - value, parts, pos + 1, current, out);
    }
}

/// Exact rational values attached to every point of a [`DyadicGrid`].
#[derive(Debug, Clone)]
pub struct GridFunction<'g> {
    grid: &'g DyadicGrid,
    values: Vec<BigRational>,
}

impl<'g> GridFunction<'g> {
    /// Builds a grid function by evaluating a closure at every point.
    pub fn from_fn(
        grid: &'g DyadicGrid,
        mut f: impl FnMut(&DyadicSimplexPoint) -> BigRational,
    ) -> Self {
        let values = grid.points().iter().map(&mut f).collect();
        Self { grid, values }
    }

    /// Wraps explicit values (one per grid point, in enumeration order).
    pub fn from_values(grid: &'g DyadicGrid, values: Vec<BigRational>) -> Self {
        assert_eq!(values.len(), grid.len(), "one value per grid point");
        Self { grid, values }
    }

    /// The underlying grid.
    pub fn grid(&self) -> &'g DyadicGrid {
        self.grid
    }

    /// Values in grid enumeration order.
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Value at grid index i.
    pub fn value(&self, i: usize) -> &BigRational {
        &self.values[i]
    }

    /// Largest absolute difference against another function on the same grid.
    pub fn max_abs_diff(&self, other: &Self) -> BigRational {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    /// CSV header and exact-fraction rows (coordinates then value).
    pub fn csv_rows(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let mut header: Vec<String> = (0..=self.grid.dim).map(|k| format!("x{k}")).collect();
        header.push("value".to_string());
        let rows = self
            .grid
            .points()
            .iter()
            .zip(&self.values)
            .map(|(p, v)| {
                let mut row: Vec<String> = p
                    .rational_coords()
                    .iter()
                    .map(format_rational)
                    .collect();
                row.push(format_rational(v));
                row
            })
            .collect();
        (header, rows)
    }
}

/// One midpoint-relaxation step: vertices keep their values, every other
/// point is replaced by the best midpoint bound
/// min over pairs y + z = 2x, y != x of (f(y)+f(z))/2 + 1.
pub fn s_step<'g>(f: &GridFunction<'g>) -> GridFunction<'g> {
    let grid = f.grid;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let one = BigRational::one();
    let values: Vec<BigRational> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let pairs = grid.midpoint_pairs(i);
            if pairs.is_empty() {
                // Only vertices have no nontrivial midpoint decomposition.
                return f.values[i].clone();
            }
            pairs
                .iter()
                .map(|&(y, z)| {
                    (&f.values[y as usize] + &f.values[z as usize]) * &half + &one
                })
                .min()
                .expect("nonempty pair list")
        })
        .collect();
    GridFunction {
        grid,
        values,
    }
}

/// Which side a relaxation run approaches the fixed point from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    FromAbove,
    FromBelow,
}

/// Seed for [`solve_lower`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerSeed {
    /// The affine interpolation of the boundary values; always a valid
    /// approximately convex starting point.
    Affine,
    /// Zero everywhere except the vertices, which are pinned to the boundary
    /// values. Intended for zero boundary data; with other boundary values
    /// the affine seed is the principled choice.
    Zero,
}

/// Result of a relaxation run.
#[derive(Debug)]
pub struct SolveResult<'g> {
    /// The final iterate; the exact fixed point when `converged` is true.
    pub function: GridFunction<'g>,
    /// Number of sweeps performed.
    pub iterations: usize,
    /// True when two consecutive sweeps were exactly equal.
    pub converged: bool,
    /// Largest pointwise change in the last sweep (zero iff converged).
    pub residual: BigRational,
}

fn affine_interpolation(point: &DyadicSimplexPoint, phi: &[BigRational]) -> BigRational {
    point
        .rational_coords()
        .iter()
        .zip(phi)
        .map(|(x, p)| x * p)
        .sum()
}

fn default_max_iters(grid: &DyadicGrid, phi: &[BigRational]) -> usize {
    let lo = phi.iter().min().cloned().unwrap_or_else(BigRational::zero);
    let hi = phi.iter().max().cloned().unwrap_or_else(BigRational::zero);
    let spread = (hi - lo + kappa(grid.dim() as u64) + BigRational::from(BigInt::from(2)))
        .ceil()
        .to_integer();
    let spread = u64::try_from(&spread).unwrap_or(u64::MAX).max(1);
    usize::try_from((grid.len() as u64).saturating_mul(spread)).unwrap_or(usize::MAX)
}

fn relax<'g>(
    grid: &'g DyadicGrid,
    phi: &[BigRational],
    seed: GridFunction<'g>,
    direction: Direction,
    max_iters: Option<usize>,
) -> Result<SolveResult<'g>, SolverError> {
    if phi.len() != grid.dim() + 1 {
        return Err(SolverError::BoundaryLength {
            expected: grid.dim() + 1,
            got: phi.len(),
        });
    }
    let cap = max_iters.unwrap_or_else(|| default_max_iters(grid, phi));
    let mut current = seed;
    let mut iterations = 0;
    let mut residual = BigRational::zero();
    let mut converged = false;
    while iterations < cap {
        let stepped = s_step(&current);
        let next_values: Vec<BigRational> = stepped
            .values
            .into_iter()
            .zip(&current.values)
            .map(|(s, c)| match direction {
                Direction::FromAbove => s.min(c.clone()),
                Direction::FromBelow => s.max(c.clone()),
            })
            .collect();
        let next = GridFunction {
            grid,
            values: next_values,
        };
        iterations += 1;
        residual = next.max_abs_diff(&current);
        current = next;
        if residual.is_zero() {
            converged = true;
            break;
        }
    }
    Ok(SolveResult {
        function: current,
        iterations,
        converged,
        residual,
    })
}

/// Relaxes downward from the seed kappa(face dimension) + affine boundary
/// interpolation, with f <- min(f, Sf).
///
/// The seed dominates the extremal fixed point on every face, each sweep
/// preserves that, and a stable point is exactly e + (affine interpolation
/// of the boundary values): stability makes the function approximately
/// convex with the given vertex values, which forces it below the extremal
/// function, while the seed and the sweeps keep it above.
pub fn solve_upper<'g>(
    grid: &'g DyadicGrid,
    phi: &[BigRational],
    max_iters: Option<usize>,
) -> Result<SolveResult<'g>, SolverError> {
    if phi.len() != grid.dim() + 1 {
        return Err(SolverError::BoundaryLength {
            expected: grid.dim() + 1,
            got: phi.len(),
        });
    }
    let seed = GridFunction::from_fn(grid, |p| {
        let support = p
            .coords()
            .iter()
            .filter(|c| !c.is_zero())
            .count() as u64;
        kappa(support - 1) + affine_interpolation(p, phi)
    });
    relax(grid, phi, seed, Direction::FromAbove, max_iters)
}

/// Relaxes upward from a small approximately convex seed, with
/// h <- max(h, Sh).
///
/// Iterates stay below e + affine interpolation (sweeps preserve the bound
/// because the disjoint-support decomposition saturates it), increase
/// monotonically, and stabilize exactly at the fixed point in rational
/// arithmetic.
pub fn solve_lower<'g>(
    grid: &'g DyadicGrid,
    phi: &[BigRational],
    seed: LowerSeed,
    max_iters: Option<usize>,
) -> Result<SolveResult<'g>, SolverError> {
    if phi.len() != grid.dim() + 1 {
        return Err(SolverError::BoundaryLength {
            expected: grid.dim() + 1,
            got: phi.len(),
        });
    }
    let seed = match seed {
        LowerSeed::Affine => GridFunction::from_fn(grid, |p| affine_interpolation(p, phi)),
        LowerSeed::Zero => GridFunction::from_fn(grid, |p| match p.vertex_index() {
            Some(k) => phi[k].clone(),
            None => BigRational::zero(),
        }),
    };
    relax(grid, phi, seed, Direction::FromBelow, max_iters)
}

/// A polytope with boundary data: vertices in R^d and one boundary value
/// per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct PolytopeSpec {
    /// Vertex coordinates, all of one dimension.
    pub vertices: Vec<Vec<BigRational>>,
    /// Boundary value attached to each vertex.
    pub phi: Vec<BigRational>,
}

impl PolytopeSpec {
    /// Validates dimensions: at least one vertex, equal coordinate lengths,
    /// one boundary value per vertex.
    pub fn validate(&self) -> Result<usize, SolverError> {
        let Some(first) = self.vertices.first() else {
            return Err(SolverError::MalformedPolytope);
        };
        let dim = first.len();
        if self.vertices.iter().any(|v| v.len() != dim) || self.phi.len() != self.vertices.len() {
            return Err(SolverError::MalformedPolytope);
        }
        Ok(dim)
    }
}

#[derive(Serialize, Deserialize)]
struct PolytopeSpecDoc {
    vertices: Vec<Vec<String>>,
    phi: Vec<String>,
}

impl Serialize for PolytopeSpec {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let doc = PolytopeSpecDoc {
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(format_rational).collect())
                .collect(),
            phi: self.phi.iter().map(format_rational).collect(),
        };
        doc.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PolytopeSpec {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let doc = PolytopeSpecDoc::deserialize(de)?;
        let vertices = doc
            .vertices
            .iter()
            .map(|v| v.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()
            .map_err(D::Error::custom)?;
        let phi = doc
            .phi
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<_, _>>()
            .map_err(D::Error::custom)?;
        Ok(Self { vertices, phi })
    }
}

enum LinearSolution {
    None,
    Unique(Vec<BigRational>),
    Underdetermined,
}

/// Exact Gaussian elimination on a dense rational system.
fn solve_linear_exact(a: &[Vec<BigRational>], b: &[BigRational]) -> LinearSolution {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, found);
        let inv = m[pivot_row][col].clone();
        for entry in m[pivot_row].iter_mut() {
            *entry = entry.clone() / inv.clone();
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in 0..=cols {
                    let delta = &factor * &m[pivot_row][j];
                    m[r][j] = &m[r][j] - delta;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    // Inconsistent row: all-zero coefficients with nonzero rhs.
    for r in pivot_row..rows {
        if !m[r][cols].is_zero() {
            return LinearSolution::None;
        }
    }
    if pivot_cols.len() < cols {
        return LinearSolution::Underdetermined;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = m[r][cols].clone();
    }
    LinearSolution::Unique(x)
}

/// Vertices of the exact preimage polytope
/// P = { alpha >= 0 : sum alpha_k v_k = x, sum alpha_k = 1 }.
///
/// Every vertex of P is a basic solution supported on at most d+1 vertices
/// (d the ambient dimension), so enumerating supports of that size with
/// exact elimination finds them all. Returns the empty vector exactly when
/// x lies outside the convex hull.
fn preimage_vertices(
    vertices: &[Vec<BigRational>],
    x: &[BigRational],
) -> Vec<Vec<BigRational>> {
    let count = vertices.len();
    let dim = x.len();
    let max_support = (dim + 1).min(count);
    let mut found: Vec<Vec<BigRational>> = Vec::new();

    let mut subset: Vec<usize> = Vec::new();
    enumerate_subsets(count, max_support, 0, &mut subset, &mut |s: &[usize]| {
        // Solve sum_{k in s} alpha_k v_k = x, sum alpha_k = 1.
        let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(dim + 1);
        for coord in 0..dim {
            a.push(s.iter().map(|&k| vertices[k][coord].clone()).collect());
        }
        a.push(vec![BigRational::one(); s.len()]);
        let mut b: Vec<BigRational> = x.to_vec();
        b.push(BigRational::one());
        if let LinearSolution::Unique(alpha_s) = solve_linear_exact(&a, &b) {
            if alpha_s.iter().all(|w| !w.is_negative()) {
                let mut alpha = vec![BigRational::zero(); count];
                for (i, &k) in s.iter().enumerate() {
                    alpha[k] = alpha_s[i].clone();
                }
                if !found.contains(&alpha) {
                    found.push(alpha);
                }
            }
        }
    });
    found
}

fn enumerate_subsets(
    count: usize,
    max_size: usize,
    start: usize,
    current: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if !current.is_empty() {
        visit(current);
    }
    if current.len() == max_size {
        return;
    }
    for k in start..count {
        current.push(k);
        enumerate_subsets(count, max_size, k + 1, current, visit);
        current.pop();
    }
}

/// Certified lower bound on sum_k alpha_k log2(1/alpha_k) in exact rational
/// form, via downward-adjusted double arithmetic.
fn entropy_lower_bound(alpha: &[BigRational]) -> BigRational {
    let mut exact_zero = true;
    let mut total = 0.0f64;
    for a in alpha {
        if a.is_zero() || a.is_one() {
            continue;
        }
        exact_zero = false;
        let v = crate::io::rational_to_f64(a);
        total += v * (1.0 / v).log2();
    }
    if exact_zero {
        return BigRational::zero();
    }
    let adjusted = total - total.abs() * 1e-12 - crate::tolerances::LOG2_SLOP;
    crate::io::f64_to_rational(adjusted).unwrap_or_else(BigRational::zero)
}

/// Grid candidates at the given depth: barycentric coordinate vectors over
/// the polytope vertices, kept when they hit x exactly. Skipped when the
/// candidate count would be enormous; the enclosure stays valid either way.
fn grid_preimages(
    vertices: &[Vec<BigRational>],
    x: &[BigRational],
    depth: u32,
) -> Vec<Vec<BigRational>> {
    const CANDIDATE_LIMIT: u64 = 300_000;
    let parts = vertices.len();
    let scale = 1u64 << depth;
    if binomial(scale + parts as u64 - 1, parts as u64 - 1) > CANDIDATE_LIMIT {
        return Vec::new();
    }
    let mut combos = Vec::new();
    let mut current = vec![0u64; parts];
    enumerate_compositions(scale, parts, 0, &mut current, &mut combos);

    let denom = BigRational::new(BigInt::one(), BigInt::from(scale));
    let dim = x.len();
    combos
        .into_par_iter()
        .filter_map(|combo| {
            let alpha: Vec<BigRational> = combo
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)) * &denom)
                .collect();
            for coord in 0..dim {
                let image: BigRational = alpha
                    .iter()
                    .zip(vertices)
                    .map(|(a, v)| a * &v[coord])
                    .sum();
                if image != x[coord] {
                    return None;
                }
            }
            Some(alpha)
        })
        .collect()
}

/// Certified enclosure of the extremal boundary-value problem on a polytope:
/// the infimum over exact barycentric representations alpha of x of
/// e(alpha) + sum_k alpha_k phi_k.
///
/// Lower end: the entropy sandwich bounds e from below by the concave
/// entropy, and a concave-plus-affine objective attains its minimum over the
/// preimage polytope at one of its vertices, which are enumerated exactly.
/// Upper end: the minimum of certified upper evaluations at explicit
/// representations (the preimage-polytope vertices, plus every dyadic grid
/// combination of the requested depth that hits x exactly).
pub fn polytope_extremal(
    spec: &PolytopeSpec,
    x: &[BigRational],
    depth: u32,
) -> Result<EnclosedValue, SolverError> {
    let dim = spec.validate()?;
    if x.len() != dim {
        return Err(SolverError::QueryDimension {
            expected: dim,
            got: x.len(),
        });
    }
    let corners = preimage_vertices(&spec.vertices, x);
    if corners.is_empty() {
        return Err(SolverError::OutsideHull);
    }
    let boundary = |alpha: &[BigRational]| -> BigRational {
        alpha.iter().zip(&spec.phi).map(|(a, p)| a * p).sum()
    };

    let lower = corners
        .iter()
        .map(|alpha| entropy_lower_bound(alpha) + boundary(alpha))
        .min()
        .expect("at least one preimage vertex");

    let mut upper: Option<BigRational> = None;
    let mut consider = |alpha: &[BigRational]| -> Result<(), SolverError> {
        let value = match e_point(alpha, EvalMode::Exact) {
            Ok(v) => v.hi(),
            Err(ExtremalError::NonDyadicCoordinate { .. }) => {
                let mut total = EnclosedValue::exact(BigRational::zero());
                for a in alpha {
                    total = total.add(&h_enclose(a, 64)?);
                }
                total.hi().clone()
            }
            Err(e) => return Err(e.into()),
        } + boundary(alpha);
        if upper.as_ref().is_none_or(|u| &value < u) {
            upper = Some(value);
        }
        Ok(())
    };
    for alpha in &corners {
        consider(alpha)?;
    }
    for alpha in grid_preimages(&spec.vertices, x, depth) {
        consider(&alpha)?;
    }
    let upper = upper.expect("at least one candidate");
    Ok(EnclosedValue::new(lower.min(upper.clone()), upper))
}
