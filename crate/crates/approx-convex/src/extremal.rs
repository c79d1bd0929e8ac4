//! The extremal functions of approximate convexity and their growth constant.
//!
//! A function f is approximately convex when every midpoint satisfies
//! f((x+y)/2) <= (f(x)+f(y))/2 + 1. On the unit interval the largest lower
//! semicontinuous function that is sub-affine in this sense and vanishes at
//! the endpoints is
//!
//!   h(x) = sum_i i * x_i / 2^i   for a finite binary expansion x = sum x_i/2^i,
//!
//! extended to all of [0, 1] by the series h(x) = sum_k frac(2^k x)/2^k. On
//! the standard n-simplex the coordinate sum e(x) = sum_k h(x_k) plays the
//! same role among approximately convex functions vanishing at the vertices,
//! and its supremum is the growth constant
//!
//!   kappa(n) = floor(log2 n) + 1 + n / 2^(floor(log2 n)),    kappa(0) = 0.
//!
//! Everything here is exact rational arithmetic except [`kappa_real`], which
//! is an explicitly floating-point convenience. Values of h at non-dyadic
//! points are never claimed exactly: [`h_enclose`] returns certified rational
//! enclosures instead.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dyadic::{frac, DyadicError, DyadicRational, DyadicSimplexPoint};

/// Errors from extremal-function evaluation and construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtremalError {
    /// Exact evaluation was requested at a coordinate that is not dyadic.
    #[error("coordinate {value} is not dyadic; request an enclosure instead of an exact value")]
    NonDyadicCoordinate {
        /// Display form of the offending coordinate.
        value: String,
    },
    /// Coordinates of a simplex point must be nonnegative and sum to one.
    #[error("coordinates must be nonnegative and sum to exactly 1, got sum {sum}")]
    NotASimplexPoint {
        /// The exact coordinate sum that was seen.
        sum: String,
    },
    /// The argument must lie in the unit interval.
    #[error("argument {value} lies outside [0, 1]")]
    OutOfUnitInterval {
        /// Display form of the offending argument.
        value: String,
    },
    /// Digit counts whose total mass exceeds one bound nothing.
    #[error("digit counts have total mass {mass} > 1")]
    MassExceedsOne {
        /// The exact mass that was seen.
        mass: String,
    },
    /// The near-maximizer construction needs room below the target depth.
    #[error("depth {depth} is too small for n = {n}; need depth >= {min_depth}")]
    DepthTooSmall {
        /// Number of simplex parts n.
        n: u32,
        /// Requested truncation depth.
        depth: u32,
        /// Smallest admissible depth for this n.
        min_depth: u32,
    },
    /// A vertex index must be at most the simplex dimension.
    #[error("vertex index {index} exceeds simplex dimension {dim}")]
    BadVertexIndex {
        /// The offending index.
        index: usize,
        /// The simplex dimension.
        dim: usize,
    },
    /// Propagated exact-arithmetic failure.
    #[error(transparent)]
    Dyadic(#[from] DyadicError),
}

fn pow2(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(BigUint::one() << k))
}

/// The growth constant kappa(n): zero at n = 0, otherwise
/// floor(log2 n) + 1 + n / 2^(floor(log2 n)), exactly.
///
/// Equivalently kappa is the unique solution of the doubling recursions
/// kappa(2n) = kappa(n) + 1 and kappa(2n+1) = (kappa(n) + kappa(n+1))/2 + 1
/// with kappa(1) = 2, and it satisfies kappa(2^m) = m + 2.
pub fn kappa(n: u64) -> BigRational {
    if n == 0 {
        return BigRational::zero();
    }
    let m = n.ilog2();
    BigRational::from(BigInt::from(m + 1))
        + BigRational::new(BigInt::from(n), BigInt::from(BigUint::one() << m))
}

/// An exact table of kappa over an inclusive range of integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaTable {
    values: Vec<(u64, BigRational)>,
}

impl KappaTable {
    /// Tabulates kappa(n) for n in lo..=hi.
    pub fn new(lo: u64, hi: u64) -> Self {
        let values = (lo..=hi).map(|n| (n, kappa(n))).collect();
        Self { values }
    }

    /// The (n, kappa(n)) rows in ascending order of n.
    pub fn rows(&self) -> &[(u64, BigRational)] {
        &self.values
    }
}

/// Piecewise-linear extension of the growth constant to positive reals:
/// on [2^m, 2^(m+1)] the value is (m + 1) + x / 2^m, so the knots are the
/// powers of two with kappa_real(2^m) = m + 2.
///
/// Returns NaN unless x is finite and positive.
pub fn kappa_real(x: f64) -> f64 {
    if !x.is_finite() || x <= 0.0 {
        return f64::NAN;
    }
    let mut m = x.log2().floor() as i32;
    // Floating log2 can land one knot off right at powers of two; repair.
    if 2f64.powi(m) > x {
        m -= 1;
    }
    if 2f64.powi(m + 1) <= x {
        m += 1;
    }
    f64::from(m + 1) + x / 2f64.powi(m)
}

/// Exact value of the extremal sub-affine function h at a dyadic rational:
/// h(m/2^d) = sum_i i * x_i / 2^i over the finite binary digits x_i.
pub fn h_dyadic(x: &DyadicRational) -> BigRational {
    let depth = x.depth();
    if depth == 0 {
        // 0 and 1 both evaluate to zero.
        return BigRational::zero();
    }
    // sum_j j * 2^(depth - j), an exact integer against denominator 2^depth.
    let mut numerator = BigUint::zero();
    for j in x.digits() {
        numerator += BigUint::from(j) << (depth - j);
    }
    BigRational::new(
        BigInt::from(numerator),
        BigInt::from(BigUint::one() << depth),
    )
}

/// A certified rational enclosure lo <= value <= hi.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnclosedValue {
    #[serde(with = "crate::io::rational_string")]
    lo: BigRational,
    #[serde(with = "crate::io::rational_string")]
    hi: BigRational,
}

impl EnclosedValue {
    /// Builds an enclosure; panics if lo > hi, which is always a caller bug.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "enclosure bounds out of order: {lo} > {hi}");
        Self { lo, hi }
    }

    /// The degenerate enclosure of an exactly known value.
    pub fn exact(value: BigRational) -> Self {
        Self {
            lo: value.clone(),
            hi: value,
        }
    }

    /// Certified lower bound.
    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    /// Certified upper bound.
    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    /// Width hi - lo.
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// True when the enclosure contains the value.
    pub fn contains(&self, value: &BigRational) -> bool {
        &self.lo <= value && value <= &self.hi
    }

    /// Sum of two enclosures.
    pub fn add(&self, other: &Self) -> Self {
        Self {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// Translates the enclosure by an exact value.
    pub fn shift(&self, offset: &BigRational) -> Self {
        Self {
            lo: &self.lo + offset,
            hi: &self.hi + offset,
        }
    }
}

/// Certified enclosure of h at any rational x in [0, 1].
///
/// The series h(x) = sum_k frac(2^k x)/2^k is summed exactly through
/// k = precision; the unsummed tail lies in [0, 2^-precision), so
/// [partial, partial + 2^-precision] encloses h(x). At dyadic x the series
/// terminates and the lower end is exact once precision reaches the depth.
pub fn h_enclose(x: &BigRational, precision: u32) -> Result<EnclosedValue, ExtremalError> {
    if x.is_negative() || x > &BigRational::one() {
        return Err(ExtremalError::OutOfUnitInterval {
            value: x.to_string(),
        });
    }
    let two = BigRational::from(BigInt::from(2));
    let mut t = frac(x);
    let mut partial = BigRational::zero();
    for k in 0..=precision {
        if t.is_zero() {
            // The orbit has hit an integer; every later term vanishes.
            return Ok(EnclosedValue::exact(partial));
        }
        partial += &t * pow2(k);
        t = frac(&(&t * &two));
    }
    let hi = &partial + pow2(precision);
    Ok(EnclosedValue::new(partial, hi))
}

/// Exact value of the extremal function e at a dyadic simplex point:
/// the coordinate sum of h.
pub fn e_dyadic(x: &DyadicSimplexPoint) -> BigRational {
    x.coords().iter().map(h_dyadic).sum()
}

/// Evaluation mode for [`e_point`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    /// Exact rational evaluation; every coordinate must be dyadic.
    Exact,
    /// Certified enclosure summing the digit series of each coordinate
    /// through the given precision.
    Enclose {
        /// Number of series terms per coordinate.
        precision: u32,
    },
}

/// Exact value or certified enclosure of the extremal function e.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtremalValue {
    /// Exact rational value.
    Exact(BigRational),
    /// Certified enclosure.
    Enclosed(EnclosedValue),
}

impl ExtremalValue {
    /// The value as an enclosure (degenerate when exact).
    pub fn enclosure(&self) -> EnclosedValue {
        match self {
            Self::Exact(v) => EnclosedValue::exact(v.clone()),
            Self::Enclosed(e) => e.clone(),
        }
    }

    /// Certified lower bound.
    pub fn lo(&self) -> BigRational {
        match self {
            Self::Exact(v) => v.clone(),
            Self::Enclosed(e) => e.lo().clone(),
        }
    }

    /// Certified upper bound.
    pub fn hi(&self) -> BigRational {
        match self {
            Self::Exact(v) => v.clone(),
            Self::Enclosed(e) => e.hi().clone(),
        }
    }
}

/// Evaluates e at a rational simplex point, exactly or as an enclosure.
///
/// Coordinates must be nonnegative and sum to exactly one. Exact mode
/// additionally requires every coordinate to be dyadic; it never guesses a
/// value at a non-dyadic point.
pub fn e_point(coords: &[BigRational], mode: EvalMode) -> Result<ExtremalValue, ExtremalError> {
    let sum: BigRational = coords.iter().sum();
    if coords.is_empty() || !sum.is_one() || coords.iter().any(BigRational::is_negative) {
        return Err(ExtremalError::NotASimplexPoint {
            sum: sum.to_string(),
        });
    }
    match mode {
        EvalMode::Exact => {
            let dyadics = coords
                .iter()
                .map(|c| {
                    DyadicRational::from_rational(c).map_err(|_| {
                        ExtremalError::NonDyadicCoordinate {
                            value: c.to_string(),
                        }
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let point = DyadicSimplexPoint::new(dyadics)?;
            Ok(ExtremalValue::Exact(e_dyadic(&point)))
        }
        EvalMode::Enclose { precision } => {
            let mut total = EnclosedValue::exact(BigRational::zero());
            for c in coords {
                total = total.add(&h_enclose(c, precision)?);
            }
            Ok(ExtremalValue::Enclosed(total))
        }
    }
}

/// A point of the one-dimensional simplex, identified with its first
/// barycentric coordinate t (the point is (t, 1-t)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Delta1Point {
    /// A dyadic rational t in [0, 1].
    Dyadic(DyadicRational),
    /// Any non-dyadic t in (0, 1); the extremal value does not depend on
    /// which one.
    NonDyadic,
}

/// Closed form of e on the one-dimensional simplex.
///
/// Writing t for the first coordinate: the value is 0 at the endpoints,
/// 2 - 1/2^(l-1) at a dyadic t = m/2^l in lowest terms, and 2 at every
/// non-dyadic t.
pub fn e_delta1(t: &Delta1Point) -> BigRational {
    let two = BigRational::from(BigInt::from(2));
    match t {
        Delta1Point::NonDyadic => two,
        Delta1Point::Dyadic(d) => {
            if d.is_zero() || d.is_one() {
                BigRational::zero()
            } else {
                two - pow2(d.depth() - 1)
            }
        }
    }
}

/// A certified near-maximizer of e on the n-part dyadic simplex.
#[derive(Debug, Clone)]
pub struct MaxWitness {
    /// The constructed depth-D simplex point.
    pub point: DyadicSimplexPoint,
    /// Exact value e(point).
    pub value: BigRational,
    /// Number of one-digits at each binary level across all coordinates.
    pub digit_counts: BTreeMap<u32, u64>,
    /// Exact shortfall kappa(n) - value.
    pub gap: BigRational,
}

/// Builds a depth-limited near-maximizer of e on the simplex with n+1
/// coordinates, approaching the supremum kappa(n) as the depth grows.
///
/// Writing n = 2^m + r, the construction places n - 2r digits at level m+1
/// and n digits at every level from m+2 through the target depth, rotating
/// the one unused coordinate per level so no coordinate ever needs two
/// digits at one level. The mass still missing from one is exactly n/2^depth;
/// its binary expansion is placed on free coordinates at the matching levels.
/// The resulting shortfall below kappa(n) is exactly
/// sum over set bits b of n of (b + 2) * 2^b / 2^depth.
pub fn max_witness(n: u32, depth: u32) -> Result<MaxWitness, ExtremalError> {
    if n == 0 {
        return Err(ExtremalError::DepthTooSmall {
            n,
            depth,
            min_depth: 2,
        });
    }
    let m = n.ilog2();
    let min_depth = m + 2;
    if depth < min_depth {
        return Err(ExtremalError::DepthTooSmall { n, depth, min_depth });
    }
    let parts = (n + 1) as usize;
    let r = n - (1 << m);

    // digit_levels[k] = binary levels at which coordinate k has a one-digit.
    let mut digit_levels: Vec<Vec<u32>> = vec![Vec::new(); parts];
    for j in m + 1..=depth {
        let count = if j == m + 1 { n - 2 * r } else { n } as usize;
        for i in 0..count {
            let k = ((j as usize) + 1 + i) % parts;
            digit_levels[k].push(j);
        }
    }
    // Distribute the missing mass n/2^depth: bit b of n becomes one digit at
    // level depth - b, placed on the lowest-index coordinate free there.
    for b in 0..=m {
        if (n >> b) & 1 == 1 {
            let level = depth - b;
            let k = (0..parts)
                .find(|&k| !digit_levels[k].contains(&level))
                .expect("each level leaves at least one coordinate free");
            digit_levels[k].push(level);
        }
    }

    let coords = digit_levels
        .iter()
        .map(|levels| {
            let mut numerator = BigUint::zero();
            for &j in levels {
                numerator += BigUint::one() << (depth - j);
            }
            DyadicRational::new(numerator, depth)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let point = DyadicSimplexPoint::new(coords)?;
    let value = e_dyadic(&point);
    let gap = kappa(u64::from(n)) - &value;

    let mut digit_counts = BTreeMap::new();
    for levels in &digit_levels {
        for &j in levels {
            *digit_counts.entry(j).or_insert(0u64) += 1;
        }
    }
    Ok(MaxWitness {
        point,
        value,
        digit_counts,
        gap,
    })
}

/// The contraction of the simplex toward vertex k: x maps to (e_k + x)/2.
///
/// Away from the fixed vertex itself this halves the extremal value and adds
/// one: e((e_k + x)/2) = 1 + e(x)/2 whenever x is not vertex k.
pub fn self_similar_map(
    k: usize,
    x: &DyadicSimplexPoint,
) -> Result<DyadicSimplexPoint, ExtremalError> {
    if k > x.dim() {
        return Err(ExtremalError::BadVertexIndex {
            index: k,
            dim: x.dim(),
        });
    }
    let half = DyadicRational::new(BigUint::one(), 1)?;
    let coords = x
        .coords()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let halved = c.halve();
            if i == k {
                halved.checked_add(&half)
            } else {
                Ok(halved)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DyadicSimplexPoint::new(coords)?)
}

/// Upper bound for h from digit counts: if nonnegative integers l_i satisfy
/// sum_i l_i / 2^i <= 1, then h(sum_i l_i / 2^i) <= sum_i i * l_i / 2^i,
/// with equality exactly when every l_i is zero or one.
///
/// The input slice lists l_0, l_1, ... by binary level.
pub fn h_digit_bound(levels: &[u64]) -> Result<BigRational, ExtremalError> {
    let mut mass = BigRational::zero();
    let mut bound = BigRational::zero();
    for (i, &l) in levels.iter().enumerate() {
        let i = u32::try_from(i).expect("level index fits in u32");
        let count = BigRational::from(BigInt::from(l));
        mass += &count * pow2(i);
        bound += BigRational::from(BigInt::from(i)) * &count * pow2(i);
    }
    if mass > BigRational::one() {
        return Err(ExtremalError::MassExceedsOne {
            mass: mass.to_string(),
        });
    }
    Ok(bound)
}
