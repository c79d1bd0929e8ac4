//! The symmetric hexagon containment: for vertices +-a, +-b, +-c in convex
//! position and suitably ordered labels, one of a + b, b + c, c + a lies in
//! the hexagon. Labeling matters, and the normalizer repairs it.
//!
//! Run with: cargo run --example hexagon_lemma

use approx_convex::geometry::{hexagon_check, normalize_hexagon_labels};

fn show(outcome: &Result<approx_convex::geometry::HexagonWitness, impl std::fmt::Display>) {
    match outcome {
        Ok(witness) => println!(
            "  contained: {} = ({:.4}, {:.4}), support {:?}",
            witness.sum, witness.point[0], witness.point[1], witness.weights.indices
        ),
        Err(err) => println!("  no sum contained: {err}"),
    }
}

fn main() {
    // A skewed hexagon: a + b lands inside.
    let a = [-1.0, 1.0];
    let b = [-1.0, -1.0];
    let c = [2.0, 0.0];
    println!("skewed hexagon a = {a:?}, b = {b:?}, c = {c:?}:");
    let outcome = hexagon_check(&a, &b, &c);
    show(&outcome);
    assert!(outcome.is_ok());

    // The regular hexagon: vertex sums land exactly on the boundary.
    let root3 = 3.0f64.sqrt() / 2.0;
    let a = [1.0, 0.0];
    let b = [0.5, root3];
    let c = [-0.5, root3];
    println!("\nregular hexagon:");
    let outcome = hexagon_check(&a, &b, &c);
    show(&outcome);
    assert!(outcome.is_ok());

    // The containment is label-sensitive: these three vectors fail as
    // handed over, because every pairwise sum leaves the hexagon.
    let a = [1.0, 0.0];
    let b = [0.9, 0.5];
    let c = [0.1, 1.0];
    println!("\nadversarial labels a = {a:?}, b = {b:?}, c = {c:?}:");
    let outcome = hexagon_check(&a, &b, &c);
    show(&outcome);
    assert!(outcome.is_err());

    // Normalizing to the cyclic convention (relabel so the hexagon ring
    // reads a, -c, b, -a, c, -b counterclockwise) restores the containment.
    let (a2, b2, c2) = normalize_hexagon_labels(&a, &b, &c).unwrap();
    println!(
        "after normalization: a = ({:.2}, {:.2}), b = ({:.2}, {:.2}), c = ({:.2}, {:.2})",
        a2[0], a2[1], b2[0], b2[1], c2[0], c2[1]
    );
    let outcome = hexagon_check(&a2, &b2, &c2);
    show(&outcome);
    assert!(outcome.is_ok());
}
