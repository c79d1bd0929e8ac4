//! Tabulates the extremal constant kappa, checks its defining recursion,
//! and brackets it between its logarithmic bounds.
//!
//! Run with: cargo run --example kappa_table

use num_rational::BigRational;
use num_traits::ToPrimitive;

use approx_convex::extremal::{kappa, kappa_real, KappaTable};
use approx_convex::io::format_rational;

fn main() {
    println!("kappa(n) = floor(log2 n) + 1 + n / 2^floor(log2 n)\n");
    println!("{:>4}  {:>8}  {:>10}", "n", "kappa", "decimal");
    let table = KappaTable::new(0, 16);
    for (n, value) in table.rows() {
        println!(
            "{n:>4}  {:>8}  {:>10.6}",
            format_rational(value),
            value.to_f64().unwrap()
        );
    }

    // The recursion kappa(n) = max over splits n = n1 + n2 of
    // (kappa(n1) + kappa(n2)) / 2 + 1 pins the same values down.
    println!("\nrecursion check over all splits, n = 2..32:");
    let two = BigRational::from_integer(2.into());
    let one = BigRational::from_integer(1.into());
    let mut all_match = true;
    for n in 2u64..=32 {
        let recursed = (1..n)
            .map(|n1| (kappa(n1) + kappa(n - n1)) / &two + &one)
            .max()
            .unwrap();
        if recursed != kappa(n) {
            all_match = false;
            println!("  mismatch at n = {n}");
        }
    }
    if all_match {
        println!("  every n agrees exactly");
    }

    // 1.913928 + log2 n < kappa(n) <= 2 + log2 n, with equality at powers
    // of two on the right.
    println!("\nlogarithmic bounds, n = 1..64:");
    let mut worst_slack = f64::INFINITY;
    for n in 1u64..=64 {
        let k = kappa(n).to_f64().unwrap();
        let log = (n as f64).log2();
        assert!(k > 1.913928 + log, "lower bound fails at n = {n}");
        assert!(k <= 2.0 + log + 1e-12, "upper bound fails at n = {n}");
        worst_slack = worst_slack.min(k - 1.913928 - log);
    }
    println!("  all hold; smallest slack above the lower bound: {worst_slack:.6}");

    // The piecewise-linear extension interpolates between the knots.
    println!("\npiecewise-linear extension:");
    for x in [1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0] {
        println!("  kappa_real({x:>4}) = {}", kappa_real(x));
    }
}
