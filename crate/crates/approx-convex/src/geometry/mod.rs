//! Finite point sets, norms, hull-defect measurements, and the sharp
//! constructions that show the distance bounds are tight.
//!
//! The central quantity is the midpoint defect of a finite set A: the largest
//! distance from a midpoint of two members of A back to A. When that defect
//! is delta, every point of the convex hull of A lies within
//! kappa(n) * delta of A, and this module both certifies such bounds on
//! concrete inputs ([`hull`]) and constructs near-extremal configurations
//! showing they cannot be improved ([`witness`], [`euclidean`], [`hexagon`]).

pub mod euclidean;
pub mod hexagon;
pub mod hull;
pub mod norms;
pub mod witness;

pub use euclidean::{
    euclid_radius_bound, is_zero_an_interior_point, maxside, random_admissible_config,
    regular_simplex, regular_simplex_edge,
};
pub use hexagon::{hexagon_check, normalize_hexagon_labels, HexagonWitness};
pub use hull::{
    caratheodory_weights, certify_hull_point, dist_to_set, hull_defect_estimate,
    midpoint_defect, seven_point_demo, CaratheodoryWeights, DefectEstimate, DefectReport,
    HullCertificate, MidpointDefect, PointSet, Sampler,
};
pub use norms::{norm_eval, Norm, PolyhedralNorm};
pub use witness::{witness_set, WitnessPoints, WitnessSet};

use thiserror::Error;

/// Errors from geometric validation and computation.
#[derive(Debug, Error)]
pub enum GeometryError {
    /// A vector had the wrong dimension.
    #[error("expected dimension {expected}, got {got}")]
    Dimension {
        /// Required dimension.
        expected: usize,
        /// Dimension seen.
        got: usize,
    },
    /// Point sets must be nonempty.
    #[error("point set is empty")]
    EmptySet,
    /// Coordinates and parameters must be finite.
    #[error("non-finite coordinate or parameter encountered")]
    NonFinite,
    /// p-norms need p >= 1.
    #[error("p-norm exponent {p} is below 1")]
    BadExponent {
        /// The offending exponent.
        p: f64,
    },
    /// Polyhedral unit balls must be origin-symmetric with spanning
    /// generators.
    #[error("polyhedral norm generators are invalid: {reason}")]
    BadGenerators {
        /// What failed.
        reason: String,
    },
    /// The queried point lies outside the convex hull.
    #[error("point lies outside the convex hull of the set")]
    OutsideHull,
    /// Vectors supplied as unit vectors were not unit.
    #[error("vector {index} has norm {norm}, expected a unit vector")]
    NotUnit {
        /// Index of the offending vector.
        index: usize,
        /// Its actual norm.
        norm: f64,
    },
    /// The six signed points must be in strictly convex position.
    #[error("the six signed points are not in strictly convex position")]
    NotConvexPosition,
    /// None of the three pairwise sums lies in the hexagon.
    #[error("no pairwise sum of the labels lies in the hexagon")]
    NoSumContained,
    /// A sampler parameter was invalid.
    #[error("invalid sampler parameter: {reason}")]
    BadSampler {
        /// What failed.
        reason: String,
    },
    /// Floating-point computation lost too much accuracy to certify.
    #[error("numerical breakdown: {reason}")]
    Numeric {
        /// What failed.
        reason: String,
    },
    /// The witness construction detected that its scale or depth is too
    /// small to certify the requested slack.
    #[error(
        "witness scale insufficient: slack {slack} exceeds allowance {eps} \
         (distance {dist}, defect bound {delta}, target {target})"
    )]
    InsufficientScale {
        /// Achieved slack.
        slack: f64,
        /// Requested slack allowance.
        eps: f64,
        /// Measured distance from the distinguished point to the sample.
        dist: f64,
        /// Certified upper bound on the sample's midpoint defect.
        delta: f64,
        /// The extremal value the ratio is compared against.
        target: f64,
    },
    /// Witness parameters out of range.
    #[error("invalid witness parameter: {reason}")]
    BadWitnessParameter {
        /// What failed.
        reason: String,
    },
    /// Propagated LP failure.
    #[error(transparent)]
    Lp(#[from] crate::lp::LpError),
    /// Propagated extremal-function failure.
    #[error(transparent)]
    Extremal(#[from] crate::extremal::ExtremalError),
    /// Propagated exact-arithmetic failure.
    #[error(transparent)]
    Dyadic(#[from] crate::dyadic::DyadicError),
}

pub(crate) fn check_finite(values: &[f64]) -> Result<(), GeometryError> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(GeometryError::NonFinite)
    }
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn midpoint(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect()
}
