//! Computes the extremal function on a dyadic simplex grid by relaxing the
//! midpoint operator from above and below until both sequences reach the
//! same exact fixed point, then compares with the direct digit formula.
//!
//! Run with: cargo run --release --example solve_simplex

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use approx_convex::extremal::e_dyadic;
use approx_convex::solver::{solve_lower, solve_upper, DyadicGrid, LowerSeed};

fn main() {
    let dim = 2;
    let depth = 4;
    let grid = DyadicGrid::new(dim, depth).unwrap();
    let phi = vec![BigRational::zero(); dim + 1];
    println!(
        "grid: {}-simplex at depth {depth}, {} points\n",
        dim,
        grid.len()
    );

    // From above: start at a known upper bound and shrink.
    let upper = solve_upper(&grid, &phi, None).unwrap();
    println!(
        "upper relaxation: converged = {}, sweeps = {}",
        upper.converged, upper.iterations
    );

    // From below: start at the affine interpolation and grow.
    let lower = solve_lower(&grid, &phi, LowerSeed::Affine, None).unwrap();
    println!(
        "lower relaxation: converged = {}, sweeps = {}",
        lower.converged, lower.iterations
    );

    // Both land on the extremal function exactly.
    let gap = upper.function.max_abs_diff(&lower.function);
    println!("largest gap between the two fixed points: {gap}");
    assert!(gap.is_zero(), "the sandwich must close exactly");

    let mut mismatches = 0;
    for (i, point) in grid.points().iter().enumerate() {
        if upper.function.value(i) != &e_dyadic(point) {
            mismatches += 1;
        }
    }
    println!("disagreements with the direct digit formula: {mismatches}");
    assert_eq!(mismatches, 0);

    // A few values along the edge x2 = 0 follow the one-dimensional
    // closed form 2 - 1/2^(l-1) at depth-l dyadics.
    println!("\nvalues along one edge:");
    for point in grid.points() {
        let coords = point.rational_coords();
        if !coords[2].is_zero() {
            continue;
        }
        let value = e_dyadic(point);
        println!(
            "  e({:>5}, {:>5}, 0) = {:>5}",
            coords[0].to_f64().unwrap(),
            coords[1].to_f64().unwrap(),
            value.to_f64().unwrap()
        );
    }
}
