//! Euclidean-specific extremal geometry: regular simplices, admissible
//! configurations of unit vectors, and the sharp constant for distance
//! bounds measured in the Euclidean norm.
//!
//! An admissible configuration is a family of n + 1 unit vectors in R^n
//! whose convex hull contains the origin in its interior. Among such
//! configurations the vertices of the regular simplex minimize the longest
//! side, which is why [`regular_simplex`] and [`maxside`] appear together.

use rand::Rng;

use crate::lp::{solve_lp, LpOutcome};
use crate::tolerances;

use super::norms::{norm_eval, Norm};
use super::{check_finite, sub, GeometryError};

/// Vertices of the regular simplex inscribed in the unit sphere of R^n:
/// n + 1 unit vectors with pairwise inner products -1/n summing to zero.
///
/// Built from the Helmert orthonormal basis of the sum-zero hyperplane of
/// R^(n+1), so the identities hold to close to machine precision. For n = 1
/// the result is exactly {+1, -1}.
///
/// Panics if `n` is zero.
pub fn regular_simplex(n: usize) -> Vec<Vec<f64>> {
    assert!(n > 0, "the simplex needs a positive dimension");
    // Helmert rows h_k in R^(n+1), k = 1..n: k ones, then -k, then zeros,
    // scaled by 1/sqrt(k(k+1)). They are orthonormal and span the sum-zero
    // hyperplane, so vertex j is the scaled j-th column.
    let scale = ((n as f64 + 1.0) / n as f64).sqrt();
    let mut vertices = vec![vec![0.0f64; n]; n + 1];
    for k in 1..=n {
        let denom = (k as f64 * (k as f64 + 1.0)).sqrt();
        for (j, vertex) in vertices.iter_mut().enumerate() {
            let entry = if j < k {
                1.0 / denom
            } else if j == k {
                -(k as f64) / denom
            } else {
                0.0
            };
            vertex[k - 1] = scale * entry;
        }
    }
    vertices
}

/// Side length of the regular simplex of [`regular_simplex`]:
/// sqrt(2(n+1)/n).
pub fn regular_simplex_edge(n: usize) -> f64 {
    assert!(n > 0, "the simplex needs a positive dimension");
    (2.0 * (n as f64 + 1.0) / n as f64).sqrt()
}

/// The longest pairwise Euclidean distance among a family of unit vectors.
///
/// Validates that every vector is unit length within
/// [`tolerances::GEOMETRY`], since the quantity is only meaningful for
/// configurations on the sphere.
pub fn maxside(points: &[Vec<f64>]) -> Result<f64, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptySet);
    }
    let dim = points[0].len();
    for (index, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(GeometryError::Dimension {
                expected: dim,
                got: p.len(),
            });
        }
        check_finite(p)?;
        let norm = norm_eval(&Norm::Euclidean, p);
        if (norm - 1.0).abs() > tolerances::GEOMETRY {
            return Err(GeometryError::NotUnit { index, norm });
        }
    }
    let mut best = 0.0f64;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.max(norm_eval(&Norm::Euclidean, &sub(p, q)));
        }
    }
    Ok(best)
}

/// Whether the origin lies in the interior of the convex hull of `points`.
///
/// Decided by maximizing the smallest barycentric weight with a linear
/// program: the origin is interior exactly when some convex combination
/// equal to zero keeps every weight strictly positive.
pub fn is_zero_an_interior_point(points: &[Vec<f64>]) -> Result<bool, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptySet);
    }
    let dim = points[0].len();
    for p in points {
        if p.len() != dim {
            return Err(GeometryError::Dimension {
                expected: dim,
                got: p.len(),
            });
        }
        check_finite(p)?;
    }
    let n = points.len();
    // Variables: u_i = w_i - t >= 0 for each point, plus t >= 0.
    // Rows: sum_i (u_i + t) p_i = 0 and sum_i (u_i + t) = 1.
    // Maximizing t makes t* the largest uniform margin of the weights.
    let mut a = vec![vec![0.0f64; n + 1]; dim + 1];
    let mut b = vec![0.0f64; dim + 1];
    for (col, p) in points.iter().enumerate() {
        for (row, coord) in p.iter().enumerate() {
            a[row][col] = *coord;
        }
        a[dim][col] = 1.0;
    }
    for row in 0..dim {
        a[row][n] = points.iter().map(|p| p[row]).sum();
    }
    a[dim][n] = n as f64;
    b[dim] = 1.0;
    let mut c = vec![0.0f64; n + 1];
    c[n] = -1.0;
    match solve_lp(&a, &b, &c)? {
        LpOutcome::Optimal { x, .. } => Ok(x[n] > tolerances::GEOMETRY),
        LpOutcome::Infeasible => Ok(false),
        LpOutcome::Unbounded => Err(GeometryError::Numeric {
            reason: "interior margin program reported unbounded".to_string(),
        }),
    }
}

/// Samples a random admissible configuration: n + 1 independent uniform
/// unit vectors in R^n, resampled until the origin is interior to their
/// hull.
pub fn random_admissible_config<R: Rng>(
    rng: &mut R,
    n: usize,
) -> Result<Vec<Vec<f64>>, GeometryError> {
    assert!(n > 0, "the configuration needs a positive dimension");
    loop {
        let points: Vec<Vec<f64>> = (0..=n).map(|_| random_unit_vector(rng, n)).collect();
        if is_zero_an_interior_point(&points)? {
            return Ok(points);
        }
    }
}

/// A uniform random unit vector via normalized Gaussian coordinates.
fn random_unit_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| standard_normal(rng)).collect();
        let norm = norm_eval(&Norm::Euclidean, &v);
        if norm > 1e-6 {
            return v.iter().map(|x| x / norm).collect();
        }
    }
}

/// One standard normal draw via the Box-Muller transform.
fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// The sharp Euclidean constant in dimension n:
/// sqrt(2n) (sqrt(2n) + sqrt(n - 1)) / (n + 1).
///
/// Every point of the convex hull of a set with midpoint defect delta lies
/// within this multiple of delta in the Euclidean norm of R^n, and the
/// constant cannot be lowered. Evaluates to 2 at n = 2 and
/// sqrt(3)(sqrt(3) + 1)/2 at n = 3.
pub fn euclid_radius_bound(n: u32) -> f64 {
    assert!(n > 0, "the bound needs a positive dimension");
    let nf = n as f64;
    let root = (2.0 * nf).sqrt();
    root * (root + (nf - 1.0).sqrt()) / (nf + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_dimensional_simplex_is_plus_minus_one() {
        let v = regular_simplex(1);
        assert_eq!(v, vec![vec![1.0], vec![-1.0]]);
    }

    #[test]
    fn simplex_identities_hold_to_machine_precision() {
        for n in 1..=10 {
            let v = regular_simplex(n);
            assert_eq!(v.len(), n + 1);
            let edge = regular_simplex_edge(n);
            for (i, p) in v.iter().enumerate() {
                let norm = norm_eval(&Norm::Euclidean, p);
                assert!(
                    (norm - 1.0).abs() <= tolerances::EUCLIDEAN_IDENTITIES,
                    "n={n}: vertex {i} has norm {norm}"
                );
                for (j, q) in v.iter().enumerate().skip(i + 1) {
                    let dot: f64 = p.iter().zip(q).map(|(x, y)| x * y).sum();
                    assert!(
                        (dot + 1.0 / n as f64).abs() <= tolerances::EUCLIDEAN_IDENTITIES,
                        "n={n}: inner product of vertices {i},{j} is {dot}"
                    );
                    let side = norm_eval(&Norm::Euclidean, &sub(p, q));
                    assert!(
                        (side - edge).abs() <= tolerances::EUCLIDEAN_IDENTITIES,
                        "n={n}: side {i},{j} is {side}, expected {edge}"
                    );
                }
            }
            for k in 0..n {
                let total: f64 = v.iter().map(|p| p[k]).sum();
                assert!(
                    total.abs() <= tolerances::EUCLIDEAN_IDENTITIES * (n as f64 + 1.0),
                    "n={n}: coordinate {k} sums to {total}"
                );
            }
        }
    }

    #[test]
    fn maxside_of_the_regular_simplex_is_its_edge() {
        for n in 1..=6 {
            let v = regular_simplex(n);
            let side = maxside(&v).unwrap();
            assert!((side - regular_simplex_edge(n)).abs() <= 1e-12);
        }
    }

    #[test]
    fn maxside_rejects_non_unit_vectors() {
        let err = maxside(&[vec![1.0, 0.0], vec![0.0, 0.5]]);
        assert!(matches!(err, Err(GeometryError::NotUnit { index: 1, .. })));
    }

    #[test]
    fn radius_bound_matches_closed_forms() {
        assert!((euclid_radius_bound(2) - 2.0).abs() <= tolerances::EUCLIDEAN_IDENTITIES);
        let three = 3.0f64.sqrt();
        assert!(
            (euclid_radius_bound(3) - three * (three + 1.0) / 2.0).abs()
                <= tolerances::EUCLIDEAN_IDENTITIES
        );
        assert!(
            (euclid_radius_bound(1) - 2.0f64.sqrt() * 2.0f64.sqrt() / 2.0).abs()
                <= tolerances::EUCLIDEAN_IDENTITIES
        );
    }

    #[test]
    fn origin_is_interior_to_the_regular_simplex() {
        for n in 1..=5 {
            let v = regular_simplex(n);
            assert!(is_zero_an_interior_point(&v).unwrap(), "n={n}");
        }
    }

    #[test]
    fn origin_is_not_interior_to_a_halfspace_family() {
        // All first coordinates strictly positive: hull misses the origin.
        let inv = 0.5f64.sqrt();
        let points = vec![
            vec![1.0, 0.0],
            vec![inv, inv],
            vec![inv, -inv],
        ];
        assert!(!is_zero_an_interior_point(&points).unwrap());
    }

    #[test]
    fn boundary_origin_is_not_interior() {
        // Hull of {(1,0),(-1,0),(0,1)} touches the origin on its boundary.
        let points = vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0]];
        assert!(!is_zero_an_interior_point(&points).unwrap());
    }

    #[test]
    fn admissible_configs_respect_the_minimal_maxside() {
        let mut rng = ChaCha8Rng::seed_from_u64(20240817);
        for n in [2usize, 3] {
            let floor = regular_simplex_edge(n) - tolerances::GEOMETRY;
            for _ in 0..50 {
                let config = random_admissible_config(&mut rng, n).unwrap();
                assert!(is_zero_an_interior_point(&config).unwrap());
                let side = maxside(&config).unwrap();
                assert!(
                    side >= floor,
                    "n={n}: admissible config has maxside {side} below {floor}"
                );
            }
        }
    }
}
