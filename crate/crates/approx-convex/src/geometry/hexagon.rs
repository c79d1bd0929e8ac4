//! The planar hexagon containment lemma: for a symmetric hexagon with
//! vertices +-a, +-b, +-c labeled in the right cyclic order, at least one of
//! the sums a + b, b + c, c + a lies inside the hexagon.
//!
//! The conclusion is sensitive to how the three labels are assigned:
//! [`hexagon_check`] tests the given labels honestly, while
//! [`normalize_hexagon_labels`] reorders arbitrary labels into the cyclic
//! convention under which the lemma applies.

use serde::{Deserialize, Serialize};

use crate::tolerances;

use super::hull::{caratheodory_weights, point_in_convex_polygon, CaratheodoryWeights, PointSet};
use super::{check_finite, GeometryError};

/// A verified containment: which sum landed inside and how it decomposes as
/// a convex combination of the hexagon's vertices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HexagonWitness {
    /// Which of the sums is contained: `"a+b"`, `"b+c"`, or `"c+a"`.
    pub sum: String,
    /// The contained point.
    pub point: Vec<f64>,
    /// Convex weights over the vertices in the order `a, b, c, -a, -b, -c`.
    pub weights: CaratheodoryWeights,
}

/// Tests whether one of a + b, b + c, c + a lies in the symmetric hexagon
/// with vertices +-a, +-b, +-c, returning the first containment found
/// (testing the sums in that fixed order).
///
/// The six points must be in strictly convex position; otherwise the input
/// is rejected. The containment depends on the cyclic order of the labels:
/// see [`normalize_hexagon_labels`] for the convention under which one of
/// the sums is always inside.
pub fn hexagon_check(
    a: &[f64],
    b: &[f64],
    c: &[f64],
) -> Result<HexagonWitness, GeometryError> {
    for v in [a, b, c] {
        if v.len() != 2 {
            return Err(GeometryError::Dimension {
                expected: 2,
                got: v.len(),
            });
        }
        check_finite(v)?;
    }
    let vertices: Vec<Vec<f64>> = vec![
        a.to_vec(),
        b.to_vec(),
        c.to_vec(),
        vec![-a[0], -a[1]],
        vec![-b[0], -b[1]],
        vec![-c[0], -c[1]],
    ];
    let scale = vertices
        .iter()
        .flat_map(|v| v.iter())
        .fold(1.0f64, |acc, x| acc.max(x.abs()));
    let tol = tolerances::GEOMETRY * scale * scale;

    // Ring order by angle; strict convexity is checked on the sorted ring.
    let mut ring: Vec<&Vec<f64>> = vertices.iter().collect();
    ring.sort_by(|p, q| {
        p[1].atan2(p[0])
            .partial_cmp(&q[1].atan2(q[0]))
            .expect("finite angles")
    });
    for k in 0..ring.len() {
        let p = ring[k];
        let q = ring[(k + 1) % ring.len()];
        let r = ring[(k + 2) % ring.len()];
        let cross = (q[0] - p[0]) * (r[1] - q[1]) - (q[1] - p[1]) * (r[0] - q[0]);
        if cross <= tol {
            return Err(GeometryError::NotConvexPosition);
        }
    }

    let hull: Vec<Vec<f64>> = ring.into_iter().cloned().collect();
    let sums = [
        ("a+b", [a[0] + b[0], a[1] + b[1]]),
        ("b+c", [b[0] + c[0], b[1] + c[1]]),
        ("c+a", [c[0] + a[0], c[1] + a[1]]),
    ];
    let set = PointSet::new(2, vertices)?;
    for (label, s) in sums {
        if point_in_convex_polygon(&hull, &s, tol) {
            let weights = caratheodory_weights(&s, &set)?;
            return Ok(HexagonWitness {
                sum: label.to_string(),
                point: s.to_vec(),
                weights,
            });
        }
    }
    Err(GeometryError::NoSumContained)
}

/// Relabels three direction vectors into the cyclic convention the
/// containment lemma assumes.
///
/// Writing p1, p2, p3 for the upper-half-plane representatives of the three
/// sign pairs sorted by angle, the normalized labels are a = p1, b = p3,
/// c = -p2, so that walking the hexagon counterclockwise visits
/// a, -c, b, -a, c, -b. Under this labeling one of a + b, b + c, c + a is
/// always contained (for points in strictly convex position), which is not
/// true for arbitrary labelings.
pub fn normalize_hexagon_labels(
    a: &[f64],
    b: &[f64],
    c: &[f64],
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>), GeometryError> {
    let mut reps = Vec::with_capacity(3);
    for v in [a, b, c] {
        if v.len() != 2 {
            return Err(GeometryError::Dimension {
                expected: 2,
                got: v.len(),
            });
        }
        check_finite(v)?;
        if v[0].abs().max(v[1].abs()) <= tolerances::GEOMETRY {
            return Err(GeometryError::NotConvexPosition);
        }
        // Upper-half representative: flip if strictly below the axis, or on
        // the negative axis.
        let keep = v[1] > 0.0 || (v[1] == 0.0 && v[0] > 0.0);
        reps.push(if keep {
            v.to_vec()
        } else {
            vec![-v[0], -v[1]]
        });
    }
    reps.sort_by(|p, q| {
        p[1].atan2(p[0])
            .partial_cmp(&q[1].atan2(q[0]))
            .expect("finite angles")
    });
    let p2 = reps[1].clone();
    Ok((reps[0].clone(), reps[2].clone(), vec![-p2[0], -p2[1]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn reconstruct(witness: &HexagonWitness, a: &[f64], b: &[f64], c: &[f64]) -> [f64; 2] {
        let vertices = [
            a.to_vec(),
            b.to_vec(),
            c.to_vec(),
            vec![-a[0], -a[1]],
            vec![-b[0], -b[1]],
            vec![-c[0], -c[1]],
        ];
        let mut out = [0.0f64; 2];
        for (idx, w) in witness
            .weights
            .indices
            .iter()
            .zip(&witness.weights.weights)
        {
            out[0] += w * vertices[*idx][0];
            out[1] += w * vertices[*idx][1];
        }
        out
    }

    #[test]
    fn skewed_hexagon_contains_a_plus_b() {
        let (a, b, c) = ([-1.0, 1.0], [-1.0, -1.0], [2.0, 0.0]);
        let witness = hexagon_check(&a, &b, &c).unwrap();
        assert_eq!(witness.sum, "a+b");
        assert_eq!(witness.point, vec![-2.0, 0.0]);
        let rebuilt = reconstruct(&witness, &a, &b, &c);
        assert!((rebuilt[0] + 2.0).abs() < 1e-9);
        assert!(rebuilt[1].abs() < 1e-9);
    }

    #[test]
    fn regular_hexagon_contains_every_sum_direction() {
        let h = 3.0f64.sqrt() / 2.0;
        let v1 = [1.0, 0.0];
        let v2 = [0.5, h];
        let v3 = [-0.5, h];
        // Normalized labels for the regular hexagon: a = v1, b = v3, c = -v2.
        let (a, b, c) = (v1, v3, [-v2[0], -v2[1]]);
        let witness = hexagon_check(&a, &b, &c).unwrap();
        // a + b = v2 is itself a vertex, found first.
        assert_eq!(witness.sum, "a+b");
        assert!((witness.point[0] - 0.5).abs() < 1e-12);
        assert!((witness.point[1] - h).abs() < 1e-12);
    }

    #[test]
    fn containment_depends_on_the_labeling() {
        // Consecutive labels around the ring: every pairwise sum escapes.
        let (a, b, c) = ([1.0, 0.0], [0.9, 0.5], [0.1, 1.0]);
        assert!(matches!(
            hexagon_check(&a, &b, &c),
            Err(GeometryError::NoSumContained)
        ));
        // The normalized labeling restores the lemma.
        let (na, nb, nc) = normalize_hexagon_labels(&a, &b, &c).unwrap();
        let witness = hexagon_check(&na, &nb, &nc).unwrap();
        let rebuilt = reconstruct(&witness, &na, &nb, &nc);
        assert!((rebuilt[0] - witness.point[0]).abs() < 1e-9);
        assert!((rebuilt[1] - witness.point[1]).abs() < 1e-9);
    }

    #[test]
    fn normalization_is_the_expected_cyclic_relabeling() {
        let (a, b, c) = ([1.0, 0.0], [0.9, 0.5], [0.1, 1.0]);
        let (na, nb, nc) = normalize_hexagon_labels(&a, &b, &c).unwrap();
        assert_eq!(na, vec![1.0, 0.0]);
        assert_eq!(nb, vec![0.1, 1.0]);
        assert_eq!(nc, vec![-0.9, -0.5]);
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        // Collinear pair: not in convex position.
        assert!(matches!(
            hexagon_check(&[1.0, 0.0], &[0.5, 0.0], &[0.0, 1.0]),
            Err(GeometryError::NotConvexPosition)
        ));
        // A zero vector collapses the hexagon.
        assert!(matches!(
            hexagon_check(&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]),
            Err(GeometryError::NotConvexPosition)
        ));
        assert!(normalize_hexagon_labels(&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn normalized_labels_always_admit_a_contained_sum(
            t1 in 0.02f64..1.0,
            t2 in 0.02f64..1.0,
            t3 in 0.02f64..1.0,
            r1 in 0.5f64..2.0,
            r2 in 0.5f64..2.0,
            r3 in 0.5f64..2.0,
        ) {
            // Three separated angles in (0, pi), arbitrary radii.
            let total = t1 + t2 + t3 + 0.06;
            let th1 = std::f64::consts::PI * (0.01 + t1 / total);
            let th2 = std::f64::consts::PI * (0.02 + (t1 + t2) / total);
            let th3 = std::f64::consts::PI * (0.03 + (t1 + t2 + t3) / total);
            let p1 = [r1 * th1.cos(), r1 * th1.sin()];
            let p2 = [r2 * th2.cos(), r2 * th2.sin()];
            let p3 = [r3 * th3.cos(), r3 * th3.sin()];
            let (a, b, c) = normalize_hexagon_labels(&p1, &p2, &p3).unwrap();
            match hexagon_check(&a, &b, &c) {
                Ok(witness) => {
                    let total: f64 = witness.weights.weights.iter().sum();
                    prop_assert!((total - 1.0).abs() < 1e-7);
                }
                // Radii can leave the middle point inside the chord of its
                // neighbors; that is not a convex hexagon, so no claim.
                Err(GeometryError::NotConvexPosition) => {}
                Err(other) => return Err(TestCaseError::fail(format!(
                    "unexpected failure: {other}"
                ))),
            }
        }
    }
}
