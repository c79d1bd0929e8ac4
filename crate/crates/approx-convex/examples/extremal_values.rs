//! Evaluates the one-dimensional extremal function h and its simplex
//! extension e: exact values at dyadic points, certified enclosures at
//! other rationals, and a near-maximizer approaching the supremum kappa(n).
//!
//! Run with: cargo run --example extremal_values

use num_traits::ToPrimitive;

use approx_convex::dyadic::{make_dyadic, DyadicSimplexPoint};
use approx_convex::extremal::{
    e_dyadic, e_point, h_dyadic, h_enclose, kappa, max_witness, EvalMode,
};
use approx_convex::io::{format_rational, parse_rational};

fn main() {
    // h at dyadic points is a finite exact sum: each binary digit at
    // position i contributes i / 2^i.
    println!("h at dyadic points (exact):");
    for (num, depth) in [(1u128, 1u32), (1, 2), (3, 2), (5, 8), (255, 8)] {
        let x = make_dyadic(num, depth).unwrap();
        let value = h_dyadic(&x);
        println!(
            "  h({:>7}) = {:>10} = {:.6}",
            format_rational(&x.value()),
            format_rational(&value),
            value.to_f64().unwrap()
        );
    }

    // At non-dyadic rationals the digit series is infinite; partial sums
    // with a tail bound give certified enclosures. h(1/3) = 8/9 exactly.
    println!("\nh at non-dyadic rationals (enclosures):");
    for (text, precision) in [("1/3", 20u32), ("1/3", 40), ("2/3", 40), ("1/5", 40)] {
        let x = parse_rational(text).unwrap();
        let enc = h_enclose(&x, precision).unwrap();
        println!(
            "  h({text}) in [{:.12}, {:.12}]  (precision {precision}, width {:.2e})",
            enc.lo().to_f64().unwrap(),
            enc.hi().to_f64().unwrap(),
            enc.width().to_f64().unwrap()
        );
    }

    // e sums h over the barycentric coordinates.
    println!("\ne on the two-dimensional simplex:");
    for nums in [[2u128, 1, 1], [1, 1, 2], [2, 2, 0]] {
        let p = DyadicSimplexPoint::from_numerators(&nums, 2).unwrap();
        let coords: Vec<String> = p.rational_coords().iter().map(|c| format_rational(c)).collect();
        let value = e_dyadic(&p);
        println!(
            "  e({}) = {} = {:.4}",
            coords.join(", "),
            format_rational(&value),
            value.to_f64().unwrap()
        );
    }
    let thirds = [
        parse_rational("1/3").unwrap(),
        parse_rational("1/3").unwrap(),
        parse_rational("1/3").unwrap(),
    ];
    let enc = e_point(&thirds, EvalMode::Enclose { precision: 40 })
        .unwrap()
        .enclosure();
    println!(
        "  e(1/3, 1/3, 1/3) in [{:.12}, {:.12}]  (exact value 8/3)",
        enc.lo().to_f64().unwrap(),
        enc.hi().to_f64().unwrap()
    );

    // The supremum of e over the simplex with n + 1 coordinates is kappa(n),
    // never attained; max_witness builds depth-limited near-maximizers with
    // an exactly known shortfall.
    println!("\nnear-maximizers approaching kappa(n):");
    for n in [2u32, 3, 5] {
        let target = kappa(n as u64);
        println!("  n = {n}: kappa = {}", format_rational(&target));
        for depth in [8u32, 16, 24] {
            let witness = max_witness(n, depth).unwrap();
            println!(
                "    depth {depth:>2}: value = {:.12}, shortfall = {:.3e}",
                witness.value.to_f64().unwrap(),
                witness.gap.to_f64().unwrap()
            );
        }
    }
}
