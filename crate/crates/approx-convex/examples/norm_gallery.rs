//! The pluggable norm abstraction: built-in p-norms, the maximum norm, and
//! polyhedral norms defined by the vertices of a symmetric unit ball,
//! evaluated as a gauge via linear programming.
//!
//! Run with: cargo run --example norm_gallery

use approx_convex::geometry::{midpoint_defect, norm_eval, Norm, PointSet, PolyhedralNorm};

fn main() {
    let v = vec![3.0, 4.0];
    println!("norms of the vector (3, 4):");
    for norm in [
        Norm::Euclidean,
        Norm::ell_1(),
        Norm::ell_p(3.0).unwrap(),
        Norm::EllInf,
    ] {
        println!("  {:<12} {:.6}", norm.label(), norm_eval(&norm, &v));
    }

    // A polyhedral norm from the unit ball's vertices: the cross-polytope
    // (diamond) reproduces the 1-norm exactly.
    let diamond = PolyhedralNorm::new(
        2,
        vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
        ],
    )
    .unwrap();
    let diamond = Norm::Polyhedral(diamond);
    println!("\npolyhedral cross-polytope vs l1 on (3, 4):");
    println!("  gauge = {:.9}", norm_eval(&diamond, &v));
    println!("  l1    = {:.9}", norm_eval(&Norm::ell_1(), &v));

    // A hexagonal unit ball: no p-norm matches this one.
    let hexagon = PolyhedralNorm::new(
        2,
        vec![
            vec![1.0, 0.0],
            vec![0.5, 1.0],
            vec![-0.5, 1.0],
            vec![-1.0, 0.0],
            vec![-0.5, -1.0],
            vec![0.5, -1.0],
        ],
    )
    .unwrap();
    let hexagon = Norm::Polyhedral(hexagon);
    println!("\nhexagonal-ball gauge:");
    for v in [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [0.75, 0.5]] {
        println!("  |({}, {})| = {:.6}", v[0], v[1], norm_eval(&hexagon, &v));
    }

    // The same point set has different midpoint defects under different
    // norms; downstream bounds all scale with the measured defect.
    let set = PointSet::new(
        2,
        vec![
            vec![0.0, 0.0],
            vec![2.0, 0.0],
            vec![0.0, 2.0],
            vec![2.0, 2.0],
        ],
    )
    .unwrap();
    println!("\nmidpoint defect of the square corners under each norm:");
    for norm in [Norm::Euclidean, Norm::ell_1(), Norm::EllInf, hexagon] {
        let defect = midpoint_defect(&set, &norm);
        println!("  {:<24} delta = {:.6}", norm.label(), defect.delta);
    }
}
