//! Builds witness samples showing the hull-defect bounds are tight: a
//! ladder construction over a scaled simplex whose measured
//! dist(b, sample) / defect ratio approaches the extremal value E(alpha).
//!
//! Run with: cargo run --release --example witness_lower_bound

use approx_convex::dyadic::DyadicSimplexPoint;
use approx_convex::extremal::max_witness;
use approx_convex::geometry::{witness_set, Norm, WitnessPoints};

fn describe(label: &str, witness: &approx_convex::geometry::WitnessSet) {
    println!("{label}:");
    println!("  target E(alpha) = {}", witness.e_alpha_f64);
    println!("  measured dist   = {:.9}", witness.measured_dist);
    println!("  measured defect = {:.9}", witness.measured_delta);
    println!("  ratio           = {:.9}", witness.ratio);
    println!("  slack           = {:.3e}", witness.slack);
    match &witness.points {
        WitnessPoints::Explicit { set } => {
            println!("  points          = {} (materialized)", set.len());
        }
        WitnessPoints::Implicit { total_points, .. } => {
            println!("  points          = {total_points} (kept implicit)");
        }
    }
}

fn main() {
    let norm = Norm::Euclidean;

    // The balanced point of the one-dimensional simplex: E(1/2, 1/2) = 1.
    // The witness ratio certifies that no constant below 1 works.
    let alpha = DyadicSimplexPoint::from_numerators(&[1, 1], 1).unwrap();
    let witness = witness_set(&norm, 2, &alpha, 0.05, 64.0, 10).unwrap();
    describe("n = 2, alpha = (1/2, 1/2)", &witness);

    // A deep near-maximizer of E on the one-dimensional simplex pushes the
    // ratio toward the supremum kappa(1) = 2.
    let deep = max_witness(1, 10).unwrap();
    println!(
        "\nnear-maximizer on one coordinate pair: E = {:.6}",
        witness_value(&deep)
    );
    let alpha = deep.point;
    let witness = witness_set(&norm, 2, &alpha, 0.05, 64.0, 12).unwrap();
    describe("n = 2, alpha near the supremum", &witness);

    // Scale matters: the same alpha at a coarse scale loses too much to
    // discretization, and the construction reports it instead of passing.
    let alpha = DyadicSimplexPoint::from_numerators(&[5, 11], 4).unwrap();
    match witness_set(&norm, 2, &alpha, 0.01, 4.0, 4) {
        Err(err) => println!("\ncoarse parameters are rejected: {err}"),
        Ok(w) => println!("\nunexpected pass at coarse parameters: ratio {:.4}", w.ratio),
    }

    // The maximum norm works through the same interface; only distance
    // evaluations change.
    let alpha = DyadicSimplexPoint::from_numerators(&[1, 1], 1).unwrap();
    let witness = witness_set(&Norm::EllInf, 2, &alpha, 0.10, 64.0, 10).unwrap();
    describe("\nmax norm, alpha = (1/2, 1/2)", &witness);
}

fn witness_value(w: &approx_convex::extremal::MaxWitness) -> f64 {
    use num_traits::ToPrimitive;
    w.value.to_f64().unwrap()
}
