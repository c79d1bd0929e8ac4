//! Stability of approximate convexity: sampled functions whose midpoint
//! violations stay within epsilon sit within kappa(d) * epsilon of their
//! exact convex minorant, computed here with rational linear programs.
//!
//! Run with: cargo run --release --example stability_gap

use num_rational::BigRational;
use num_traits::ToPrimitive;

use approx_convex::dyadic::DyadicSimplexPoint;
use approx_convex::extremal::e_dyadic;
use approx_convex::stability::{stability_report, SampledFunction};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() {
    // A convex sample: f(x) = x^2 on a rational grid. Its convex minorant
    // is itself, so the gap is exactly zero.
    let fracs: [(i64, i64); 9] = [
        (0, 1),
        (1, 8),
        (1, 4),
        (3, 8),
        (1, 2),
        (5, 8),
        (3, 4),
        (7, 8),
        (1, 1),
    ];
    let points: Vec<Vec<BigRational>> = fracs.iter().map(|&(n, d)| vec![rat(n, d)]).collect();
    let values: Vec<BigRational> = fracs.iter().map(|&(n, d)| rat(n * n, d * d)).collect();
    let convex = SampledFunction::new(points, values, rat(0, 1)).unwrap();
    let report = stability_report(&convex).unwrap();
    println!("convex sample f(x) = x^2:");
    println!("  sup gap = {} (exact zero)", report.sup_gap);
    println!("  bound   = {}\n", report.bound);

    // The extremal function E scaled by epsilon is the worst case: sampled
    // on a simplex grid, its minorant vanishes (the vertices are zero and
    // span the grid), so the gap equals epsilon times the grid maximum of
    // E, approaching the certified constant kappa(2) * epsilon as grids
    // refine.
    let depth = 4u32;
    let total = 1u128 << depth;
    let mut points = Vec::new();
    let mut e_values = Vec::new();
    for i in 0..=total {
        for j in 0..=(total - i) {
            let p = DyadicSimplexPoint::from_numerators(&[i, j, total - i - j], depth).unwrap();
            points.push(p.rational_coords());
            e_values.push(e_dyadic(&p));
        }
    }
    println!(
        "extremal sample on the depth-{depth} simplex grid ({} points):",
        points.len()
    );
    for eps in [rat(1, 2), rat(1, 1), rat(2, 1)] {
        let values: Vec<BigRational> = e_values.iter().map(|v| v * &eps).collect();
        let f = SampledFunction::new(points.clone(), values, eps.clone()).unwrap();
        let report = stability_report(&f).unwrap();
        println!(
            "  eps = {:>3}: sup gap = {:.6}, bound = {:.6}, pass = {}",
            eps,
            report.sup_gap.to_f64().unwrap(),
            report.bound.to_f64().unwrap(),
            report.pass
        );
        assert!(report.pass);
    }

    // A sample that breaks its promise is rejected rather than analyzed:
    // the midpoint excess is reported exactly.
    let points = vec![vec![rat(0, 1)], vec![rat(1, 2)], vec![rat(1, 1)]];
    let values = vec![rat(0, 1), rat(1, 1), rat(0, 1)];
    let broken = SampledFunction::new(points, values, rat(1, 4)).unwrap();
    println!("\na sample violating its own epsilon:");
    match stability_report(&broken) {
        Err(err) => println!("  rejected: {err}"),
        Ok(_) => unreachable!("the violation must be caught"),
    }
}
