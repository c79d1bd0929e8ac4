//! Exact extremal approximately convex functions on simplices, with
//! certified convex-hull-defect bounds and tightness witness constructions.
//!
//! A function f on a convex set is approximately convex when every midpoint
//! satisfies f((x+y)/2) <= (f(x)+f(y))/2 + 1. This crate computes, exactly,
//! the largest such functions vanishing on simplex vertices, the growth
//! constant kappa(n) that controls them, and the geometric consequences:
//! how far a convex-hull point can sit from a set whose midpoints almost
//! stay inside it, and explicit point configurations showing those bounds
//! are sharp.
//!
//! Modules build bottom-up:
//!
//! - [`dyadic`]: exact dyadic rationals, simplex points, digit supports, and
//!   the disjoint-support midpoint splitting.
//! - [`extremal`]: the extremal one-dimensional function h, its simplex sum
//!   e, the growth constant kappa, and near-maximizer constructions.
//! - [`lp`]: a small dense simplex-method solver in f64 and exact rational
//!   arithmetic, shared by the geometry and stability modules.
//! - [`solver`]: midpoint-relaxation solvers on dyadic grids converging to
//!   the extremal functions from above and below, plus polytope enclosures.
//! - [`geometry`]: norms, midpoint defects, hull-membership certificates,
//!   witness sets, regular simplices, and the planar hexagon lemma.
//! - [`stability`]: convex minorants of sampled data and stability reports
//!   bounding the distance from an approximately convex sample to a convex
//!   function.
//! - [`io`]: shared parsing and formatting for exact rationals, CSV tables,
//!   and the JSON document types used by the command-line interface.

pub mod dyadic;
pub mod extremal;
pub mod geometry;
pub mod io;
pub mod lp;
pub mod solver;
pub mod stability;

/// Centralized numeric tolerances used by the floating-point layers.
///
/// Exact-arithmetic code paths never consult these. They exist for the
/// geometry and LP layers, where inputs are floats and every comparison must
/// state its slack explicitly.
pub mod tolerances {
    /// Feasibility and pivot tolerance for the f64 simplex method.
    pub const LP_F64: f64 = 1e-9;

    /// Geometric validation tolerance: unit-norm checks, convex-position
    /// checks, hull-membership residuals.
    pub const GEOMETRY: f64 = 1e-9;

    /// Tolerance for norm axioms checked on floating-point norms
    /// (homogeneity and the triangle inequality in property tests).
    pub const NORM_AXIOMS: f64 = 1e-9;

    /// Relative accuracy documented for p-norm evaluation.
    pub const ELL_P_RELATIVE: f64 = 1e-12;

    /// Slack added around f64 logarithms when building certified rational
    /// enclosures of entropy-like quantities.
    pub const LOG2_SLOP: f64 = 1e-12;

    /// Comparison tolerance for the sharp Euclidean-bound identities.
    pub const EUCLIDEAN_IDENTITIES: f64 = 1e-12;
}
