//! Measures the midpoint defect of a planar point set, searches its convex
//! hull for far-away points, and certifies individual hull points against
//! the extremal bound dist <= E(weights) * defect.
//!
//! Run with: cargo run --release --example defect_certificates

use approx_convex::geometry::{
    certify_hull_point, hull_defect_estimate, midpoint_defect, seven_point_demo, Norm,
    PointSet, Sampler,
};

fn main() {
    // Seven points on three horizontal lines whose midpoint defect is
    // exactly 1 while the hull defect reaches 2: the ratio of hull defect
    // to midpoint defect attains the planar Euclidean maximum here.
    let set = seven_point_demo();
    let norm = Norm::Euclidean;
    println!("the seven-point set:");
    for p in set.points() {
        println!("  ({:>10.6}, {:>4})", p[0], p[1]);
    }

    let defect = midpoint_defect(&set, &norm);
    println!(
        "\nmidpoint defect delta = {:.12} (pair {} and {}, {} midpoints checked)",
        defect.delta, defect.i, defect.j, defect.pairs
    );

    // Search the hull on a fine grid for the worst point.
    let estimate = hull_defect_estimate(
        &set,
        &norm,
        &Sampler::Grid { resolution: 1e-3 },
    )
    .unwrap();
    println!(
        "hull-defect estimate = {:.6} at ({:.4}, {:.4}) after {} candidates",
        estimate.value, estimate.argmax[0], estimate.argmax[1], estimate.samples
    );

    // Certify that worst point: its Caratheodory weights have an extremal
    // value E(weights), and dist(point, set) <= E(weights) * delta.
    let certificate = certify_hull_point(&estimate.argmax, &set, &norm, Some(defect.delta))
        .unwrap();
    println!("\ncertificate for the worst sampled hull point:");
    println!("  support points: {:?}", certificate.indices);
    println!("  measured dist:  {:.9}", certificate.dist);
    println!("  certified bound: {:.9}", certificate.bound);
    println!("  pass: {}", certificate.pass);
    assert!(certificate.pass);

    // A random sampler with a fixed seed gives a reproducible lower bound.
    let random = hull_defect_estimate(
        &set,
        &norm,
        &Sampler::Random {
            seed: 7,
            count: 20_000,
        },
    )
    .unwrap();
    println!(
        "\nrandom-sampling estimate (seed 7): {:.6} after {} samples",
        random.value, random.samples
    );

    // The same analysis under the maximum norm: distances change, the
    // certificate logic does not.
    let inf = Norm::EllInf;
    let defect_inf = midpoint_defect(&set, &inf);
    let interior = vec![0.5, 1.5];
    let cert_inf = certify_hull_point(&interior, &set, &inf, Some(defect_inf.delta)).unwrap();
    println!(
        "\nmax-norm run: delta = {:.6}, dist at (0.5, 1.5) = {:.6}, bound = {:.6}, pass = {}",
        defect_inf.delta, cert_inf.dist, cert_inf.bound, cert_inf.pass
    );
    assert!(cert_inf.pass);

    // A custom point set: the four corners of a thin rectangle.
    let thin = PointSet::new(
        2,
        vec![
            vec![0.0, 0.0],
            vec![8.0, 0.0],
            vec![0.0, 1.0],
            vec![8.0, 1.0],
        ],
    )
    .unwrap();
    let defect_thin = midpoint_defect(&thin, &norm);
    println!(
        "\nthin rectangle: delta = {:.6} (midpoints of long sides are far from corners)",
        defect_thin.delta
    );
}
