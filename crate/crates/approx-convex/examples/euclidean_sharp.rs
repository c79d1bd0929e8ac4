//! Euclidean sharpness geometry: regular simplices of unit vectors, the
//! closed-form radius bound, and random admissible configurations whose
//! longest side never drops below the regular value.
//!
//! Run with: cargo run --release --example euclidean_sharp

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use approx_convex::geometry::{
    euclid_radius_bound, is_zero_an_interior_point, maxside, random_admissible_config,
    regular_simplex, regular_simplex_edge, Norm,
};
use approx_convex::geometry::norm_eval;

fn main() {
    // The regular simplex inscribed in the unit sphere of R^n: n + 1 unit
    // vectors summing to zero with all pairwise distances equal.
    println!("regular simplices of unit vectors:");
    for n in [1usize, 2, 3, 5] {
        let vertices = regular_simplex(n);
        let edge = regular_simplex_edge(n);
        let mut sum = vec![0.0; n];
        for v in &vertices {
            for (s, c) in sum.iter_mut().zip(v) {
                *s += c;
            }
        }
        let sum_norm = norm_eval(&Norm::Euclidean, &sum);
        println!(
            "  n = {n}: {} vertices, edge = {:.12}, |sum| = {:.2e}",
            vertices.len(),
            edge,
            sum_norm
        );
        assert_eq!(maxside(&vertices).unwrap(), edge);
        assert!(is_zero_an_interior_point(&vertices).unwrap());
    }

    // The sharp constant for the Euclidean norm in R^n, in closed form.
    println!("\nclosed-form radius bound:");
    for n in 1u32..=6 {
        println!("  n = {n}: {:.12}", euclid_radius_bound(n));
    }
    println!("  (n = 2 gives exactly 2; n = 3 gives sqrt(3)(sqrt(3) + 1)/2)");

    // Admissible configurations: n + 1 unit vectors with the origin
    // interior to their hull. Among those, the regular simplex minimizes
    // the longest side, so every random configuration's maxside is at
    // least the regular edge.
    println!("\nrandom admissible configurations (seed 2024):");
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in [2usize, 3] {
        let edge = regular_simplex_edge(n);
        let mut worst = f64::INFINITY;
        let runs = 200;
        for _ in 0..runs {
            let config = random_admissible_config(&mut rng, n).unwrap();
            let side = maxside(&config).unwrap();
            worst = worst.min(side);
        }
        println!(
            "  n = {n}: smallest maxside over {runs} runs = {:.9} (regular edge {:.9})",
            worst, edge
        );
        assert!(worst >= edge - 1e-9);
    }
}
