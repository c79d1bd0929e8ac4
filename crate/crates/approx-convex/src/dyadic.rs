//! Exact dyadic-rational arithmetic on the unit interval.
//!
//! A dyadic rational is a number of the form m/2^d. Everything in this module
//! is exact: values are stored as arbitrary-precision integers, binary digits
//! of the finite expansion are recoverable, and simplex points carry an exact
//! coordinate sum of one. No floating point enters this module.
//!
//! The centerpiece is [`split_support`]: every non-vertex point of the dyadic
//! simplex splits as the midpoint of two dyadic points whose digit supports
//! are disjoint. That constructive decomposition is what makes the extremal
//! functions in the rest of the crate computable by exact recursion.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors from dyadic construction and decomposition.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DyadicError {
    /// The numerator exceeds 2^depth, so the value would leave [0, 1].
    #[error("numerator {numerator} exceeds 2^{depth}; dyadic values must lie in [0, 1]")]
    OutOfRange {
        /// Decimal rendering of the offending numerator.
        numerator: String,
        /// The requested depth.
        depth: u32,
    },
    /// Simplex coordinates must sum to exactly one.
    #[error("coordinates must sum to exactly 1, got {sum}")]
    CoordinateSum {
        /// The exact sum that was seen.
        sum: String,
    },
    /// Vertices admit no disjoint-support midpoint decomposition.
    #[error("a vertex has no disjoint-support decomposition")]
    VertexSplit,
    /// A rational value was not a dyadic rational in [0, 1].
    #[error("value {value} is not a dyadic rational in [0, 1]")]
    NotDyadic {
        /// Display form of the offending value.
        value: String,
    },
    /// A simplex point needs at least one coordinate.
    #[error("a simplex point needs at least one coordinate")]
    Empty,
}

/// An exact value m/2^d confined to [0, 1].
///
/// Canonical form: the numerator is odd, or the value is zero with depth zero.
/// Equality, hashing and ordering all agree with value equality because the
/// canonical form is unique.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    numerator: BigUint,
    depth: u32,
}

impl DyadicRational {
    /// Builds m/2^d, reducing to canonical form.
    ///
    /// Fails if m > 2^d (the value would exceed one).
    pub fn new(mut numerator: BigUint, mut depth: u32) -> Result<Self, DyadicError> {
        if numerator.bits() > u64::from(depth) + 1
            || (numerator.bits() == u64::from(depth) + 1 && numerator != BigUint::one() << depth)
        {
            return Err(DyadicError::OutOfRange {
                numerator: numerator.to_string(),
                depth,
            });
        }
        if numerator.is_zero() {
            return Ok(Self {
                numerator,
                depth: 0,
            });
        }
        while depth > 0 && !numerator.bit(0) {
            numerator >>= 1;
            depth -= 1;
        }
        Ok(Self { numerator, depth })
    }

    /// The value zero.
    pub fn zero() -> Self {
        Self {
            numerator: BigUint::zero(),
            depth: 0,
        }
    }

    /// The value one.
    pub fn one() -> Self {
        Self {
            numerator: BigUint::one(),
            depth: 0,
        }
    }

    /// Exact value as a rational number.
    pub fn value(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.numerator.clone()),
            BigInt::from(BigUint::one() << self.depth),
        )
    }

    /// Depth d of the canonical representation m/2^d.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Canonical numerator m (odd, or zero).
    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    /// Digit i of the finite binary expansion x = sum_i digit(i)/2^i.
    ///
    /// Digit 0 is one exactly for the value one; digits beyond the depth are
    /// zero.
    pub fn digit(&self, i: u32) -> u8 {
        if i > self.depth {
            return 0;
        }
        u8::from(self.numerator.bit(u64::from(self.depth - i)))
    }

    /// Positions of the one-digits, ascending.
    pub fn digits(&self) -> Vec<u32> {
        (0..=self.depth).filter(|&i| self.digit(i) == 1).collect()
    }

    /// True exactly for the value zero.
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// True exactly for the value one.
    pub fn is_one(&self) -> bool {
        self.depth == 0 && self.numerator.is_one()
    }

    /// Converts an exact rational in [0, 1] whose denominator is a power of
    /// two.
    pub fn from_rational(value: &BigRational) -> Result<Self, DyadicError> {
        let not_dyadic = || DyadicError::NotDyadic {
            value: value.to_string(),
        };
        if value.is_negative() {
            return Err(not_dyadic());
        }
        let (num, den) = (value.numer(), value.denom());
        let den_mag = den.magnitude();
        // A reduced denominator is a power of two iff it has a single set bit.
        if den_mag.count_ones() != 1 {
            return Err(not_dyadic());
        }
        let depth = u32::try_from(den_mag.bits() - 1).map_err(|_| not_dyadic())?;
        Self::new(num.magnitude().clone(), depth).map_err(|_| not_dyadic())
    }

    /// Exact sum, which must stay within [0, 1].
    pub fn checked_add(&self, other: &Self) -> Result<Self, DyadicError> {
        let depth = self.depth.max(other.depth);
        let a = &self.numerator << (depth - self.depth);
        let b = &other.numerator << (depth - other.depth);
        Self::new(a + b, depth)
    }

    /// Exact midpoint (self + other) / 2, always within [0, 1].
    pub fn midpoint(&self, other: &Self) -> Self {
        let depth = self.depth.max(other.depth);
        let sum = self.numerator_at_depth(depth) + other.numerator_at_depth(depth);
        Self::new(sum, depth + 1).expect("midpoint of unit-interval values stays inside")
    }

    /// Halves the value exactly.
    pub fn halve(&self) -> Self {
        if self.is_zero() {
            Self::zero()
        } else {
            Self {
                numerator: self.numerator.clone(),
                depth: self.depth + 1,
            }
        }
    }

    /// Numerator rescaled to an explicit depth d >= self.depth().
    pub fn numerator_at_depth(&self, depth: u32) -> BigUint {
        assert!(depth >= self.depth, "cannot coarsen an exact dyadic");
        &self.numerator << (depth - self.depth)
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.depth == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, BigUint::one() << self.depth)
        }
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let depth = self.depth.max(other.depth);
        let a = &self.numerator << (depth - self.depth);
        let b = &other.numerator << (depth - other.depth);
        a.cmp(&b)
    }
}

/// Fractional part x - floor(x) of an exact rational.
pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Builds the dyadic rational m/2^d from machine integers.
pub fn make_dyadic(m: u128, d: u32) -> Result<DyadicRational, DyadicError> {
    DyadicRational::new(BigUint::from(m), d)
}

/// A point of the standard dyadic simplex: exact dyadic coordinates with
/// coordinate sum exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicSimplexPoint {
    coords: Vec<DyadicRational>,
}

impl DyadicSimplexPoint {
    /// Validates that the coordinates sum to exactly one.
    pub fn new(coords: Vec<DyadicRational>) -> Result<Self, DyadicError> {
        if coords.is_empty() {
            return Err(DyadicError::Empty);
        }
        let depth = coords.iter().map(DyadicRational::depth).max().unwrap_or(0);
        let sum: BigUint = coords
            .iter()
            .map(|c| c.numerator_at_depth(depth))
            .sum();
        if sum != BigUint::one() << depth {
            let total: BigRational = coords.iter().map(DyadicRational::value).sum();
            return Err(DyadicError::CoordinateSum {
                sum: total.to_string(),
            });
        }
        Ok(Self { coords })
    }

    /// Builds a point from numerators at a shared depth.
    pub fn from_numerators(numerators: &[u128], depth: u32) -> Result<Self, DyadicError> {
        let coords = numerators
            .iter()
            .map(|&m| make_dyadic(m, depth))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coords)
    }

    /// The vertex with coordinate k equal to one.
    pub fn vertex(dim: usize, k: usize) -> Self {
        let coords = (0..=dim)
            .map(|i| {
                if i == k {
                    DyadicRational::one()
                } else {
                    DyadicRational::zero()
                }
            })
            .collect();
        Self { coords }
    }

    /// Simplex dimension n (one less than the coordinate count).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Exact coordinates.
    pub fn coords(&self) -> &[DyadicRational] {
        &self.coords
    }

    /// Coordinates as exact rationals.
    pub fn rational_coords(&self) -> Vec<BigRational> {
        self.coords.iter().map(DyadicRational::value).collect()
    }

    /// Maximum coordinate depth.
    pub fn depth(&self) -> u32 {
        self.coords
            .iter()
            .map(DyadicRational::depth)
            .max()
            .unwrap_or(0)
    }

    /// Returns the vertex index when the point is a vertex.
    pub fn vertex_index(&self) -> Option<usize> {
        self.coords.iter().position(DyadicRational::is_one)
    }

    /// Exact midpoint (self + other) / 2.
    pub fn midpoint(&self, other: &Self) -> Result<Self, DyadicError> {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.midpoint(b))
            .collect();
        Self::new(coords)
    }
}

impl fmt::Display for DyadicSimplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The digit support of a simplex point: the set of pairs (j, k) such that
/// digit j of coordinate k equals one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DyadicSupport {
    pairs: BTreeSet<(u32, usize)>,
}

impl DyadicSupport {
    /// The digit pairs, ordered by (position, coordinate).
    pub fn pairs(&self) -> &BTreeSet<(u32, usize)> {
        &self.pairs
    }

    /// Number of one-digits across all coordinates.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// True when no digit is set (only possible for malformed inputs; every
    /// simplex point has at least one digit).
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// True when the two supports share no digit pair.
    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.pairs.is_disjoint(&other.pairs)
    }
}

/// Digit support of a simplex point.
pub fn support(x: &DyadicSimplexPoint) -> DyadicSupport {
    let mut pairs = BTreeSet::new();
    for (k, coord) in x.coords().iter().enumerate() {
        for j in coord.digits() {
            pairs.insert((j, k));
        }
    }
    DyadicSupport { pairs }
}

/// Splits a non-vertex dyadic simplex point x into (y, z) with
/// x = (y + z)/2 exactly and disjoint digit supports.
///
/// The digit multiset of x has total mass one; walking its digits in
/// lexicographic (position, coordinate) order and greedily keeping every
/// digit that still fits below mass one half always fills that half exactly:
/// while digits of weight 2^-j are being scanned, the remaining gap is an
/// integer multiple of 2^-j, so a digit is rejected only when the gap is
/// already zero. The kept digits, shifted one position up, form y; the rest
/// form z. The shift sends distinct digit pairs to distinct pairs of the two
/// halves, so the supports are disjoint and no carries occur.
///
/// Vertices are rejected: they have a single digit of full mass and no such
/// decomposition.
pub fn split_support(
    x: &DyadicSimplexPoint,
) -> Result<(DyadicSimplexPoint, DyadicSimplexPoint), DyadicError> {
    if x.vertex_index().is_some() {
        return Err(DyadicError::VertexSplit);
    }
    let depth = x.depth();
    // Work in integer units of 2^-depth; the target half-mass is 2^(depth-1).
    // Non-vertex points have all digits at positions >= 1, so depth >= 1.
    let target = BigUint::one() << (depth - 1);
    let mut acc = BigUint::zero();
    let digit_pairs = support(x);

    let n = x.dim();
    let half_depth = depth - 1;
    let mut y_nums = vec![BigUint::zero(); n + 1];
    let mut z_nums = vec![BigUint::zero(); n + 1];
    for &(j, k) in digit_pairs.pairs() {
        debug_assert!(j >= 1, "non-vertex points have no digit at position 0");
        let weight = BigUint::one() << (depth - j);
        // Digit at position j contributes 2^(half_depth - (j-1)) to a half.
        let half_weight = BigUint::one() << (half_depth - (j - 1));
        if &acc + &weight <= target {
            acc += weight;
            y_nums[k] += half_weight;
        } else {
            z_nums[k] += half_weight;
        }
    }
    debug_assert_eq!(acc, target, "greedy digit fill must reach exactly 1/2");

    let build = |nums: Vec<BigUint>| -> Result<DyadicSimplexPoint, DyadicError> {
        let coords = nums
            .into_iter()
            .map(|m| DyadicRational::new(m, half_depth))
            .collect::<Result<Vec<_>, _>>()?;
        DyadicSimplexPoint::new(coords)
    };
    let y = build(y_nums)?;
    let z = build(z_nums)?;
    debug_assert!(support(&y).is_disjoint(&support(&z)));
    debug_assert_eq!(&y.midpoint(&z).unwrap(), x);
    Ok((y, z))
}
