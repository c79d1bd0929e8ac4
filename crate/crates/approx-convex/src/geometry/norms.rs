//! Norms used to measure distances: Euclidean, p-norms, the max norm, and
//! polyhedral norms given by the generators of a symmetric unit ball.
//!
//! A polyhedral norm is evaluated as a gauge: the norm of v is the least
//! total weight of a nonnegative combination of the ball's vertices equal to
//! v. That is a small linear program, solved with the dense simplex from
//! [`crate::lp`].

use serde::{Deserialize, Serialize};

use crate::lp::{solve_lp, LpOutcome};
use crate::tolerances;

use super::{check_finite, GeometryError};

/// A norm on R^d.
///
/// `Euclidean`, `EllP` and `EllInf` apply in any dimension; `Polyhedral`
/// carries its own dimension. Construct `EllP` through [`Norm::ell_p`] and
/// `Polyhedral` through [`PolyhedralNorm::new`] so the parameters are
/// validated.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(try_from = "NormDoc")]
pub enum Norm {
    /// The Euclidean norm.
    Euclidean,
    /// The p-norm for a finite exponent p >= 1.
    EllP {
        /// Exponent, at least 1.
        p: f64,
    },
    /// The maximum norm.
    EllInf,
    /// A polyhedral norm described by the vertices of its unit ball.
    Polyhedral(PolyhedralNorm),
}

impl Norm {
    /// The 1-norm, as a p-norm with exponent 1.
    pub fn ell_1() -> Self {
        Norm::EllP { p: 1.0 }
    }

    /// A validated p-norm. Requires finite `p >= 1`.
    pub fn ell_p(p: f64) -> Result<Self, GeometryError> {
        if !p.is_finite() || p < 1.0 {
            return Err(GeometryError::BadExponent { p });
        }
        Ok(Norm::EllP { p })
    }

    /// Parses a textual norm name: `euclidean`, `l1`, `linf`, or `lp:P`
    /// with a decimal exponent. Polyhedral norms are built separately from
    /// their generator file.
    pub fn parse_name(name: &str) -> Result<Self, GeometryError> {
        let lower = name.trim().to_ascii_lowercase();
        match lower.as_str() {
            "euclidean" | "l2" => Ok(Norm::Euclidean),
            "l1" => Ok(Norm::ell_1()),
            "linf" => Ok(Norm::EllInf),
            other => {
                if let Some(p_text) = other.strip_prefix("lp:") {
                    let p: f64 = p_text.parse().map_err(|_| GeometryError::BadExponent {
                        p: f64::NAN,
                    })?;
                    Norm::ell_p(p)
                } else {
                    Err(GeometryError::BadGenerators {
                        reason: format!("unknown norm name `{name}`"),
                    })
                }
            }
        }
    }

    /// Short textual tag used in reports.
    pub fn label(&self) -> String {
        match self {
            Norm::Euclidean => "euclidean".to_string(),
            Norm::EllP { p } => {
                if *p == 1.0 {
                    "l1".to_string()
                } else {
                    format!("lp:{p}")
                }
            }
            Norm::EllInf => "linf".to_string(),
            Norm::Polyhedral(ball) => format!("polyhedral({} generators)", ball.generators().len()),
        }
    }

    /// The dimension this norm is restricted to, if any.
    pub fn required_dim(&self) -> Option<usize> {
        match self {
            Norm::Polyhedral(ball) => Some(ball.dim()),
            _ => None,
        }
    }
}

/// Mirror of [`Norm`] used to validate parameters during deserialization.
#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum NormDoc {
    Euclidean,
    EllP { p: f64 },
    EllInf,
    Polyhedral(PolyhedralNorm),
}

impl TryFrom<NormDoc> for Norm {
    type Error = GeometryError;

    fn try_from(doc: NormDoc) -> Result<Self, Self::Error> {
        match doc {
            NormDoc::Euclidean => Ok(Norm::Euclidean),
            NormDoc::EllP { p } => Norm::ell_p(p),
            NormDoc::EllInf => Ok(Norm::EllInf),
            NormDoc::Polyhedral(ball) => Ok(Norm::Polyhedral(ball)),
        }
    }
}

/// A polyhedral norm, stored as the vertex generators of its unit ball.
///
/// The generators must be origin-symmetric (each has a negation in the set,
/// up to [`tolerances::GEOMETRY`]) and span R^dim, so the gauge is finite and
/// symmetric and therefore a genuine norm.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "PolyhedralNormDoc")]
pub struct PolyhedralNorm {
    dim: usize,
    generators: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct PolyhedralNormDoc {
    dim: usize,
    generators: Vec<Vec<f64>>,
}

impl TryFrom<PolyhedralNormDoc> for PolyhedralNorm {
    type Error = GeometryError;

    fn try_from(doc: PolyhedralNormDoc) -> Result<Self, Self::Error> {
        PolyhedralNorm::new(doc.dim, doc.generators)
    }
}

impl PolyhedralNorm {
    /// Validates the generators and builds the norm.
    pub fn new(dim: usize, generators: Vec<Vec<f64>>) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::BadGenerators {
                reason: "dimension must be positive".to_string(),
            });
        }
        if generators.is_empty() {
            return Err(GeometryError::BadGenerators {
                reason: "no generators supplied".to_string(),
            });
        }
        for g in &generators {
            if g.len() != dim {
                return Err(GeometryError::Dimension {
                    expected: dim,
                    got: g.len(),
                });
            }
            check_finite(g)?;
            if g.iter().map(|x| x * x).sum::<f64>().sqrt() <= tolerances::GEOMETRY {
                return Err(GeometryError::BadGenerators {
                    reason: "a generator is (numerically) the zero vector".to_string(),
                });
            }
        }
        for (i, g) in generators.iter().enumerate() {
            let has_negation = generators.iter().any(|h| {
                g.iter()
                    .zip(h)
                    .all(|(x, y)| (x + y).abs() <= tolerances::GEOMETRY)
            });
            if !has_negation {
                return Err(GeometryError::BadGenerators {
                    reason: format!("generator {i} has no origin-symmetric partner"),
                });
            }
        }
        if rank(&generators, dim) < dim {
            return Err(GeometryError::BadGenerators {
                reason: "generators do not span the space".to_string(),
            });
        }
        Ok(PolyhedralNorm { dim, generators })
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The unit-ball vertex generators.
    pub fn generators(&self) -> &[Vec<f64>] {
        &self.generators
    }

    /// Evaluates the gauge: the least t >= 0 with v inside t times the ball.
    ///
    /// Solved as min sum(lambda) subject to sum(lambda_i g_i) = v,
    /// lambda >= 0. Feasibility is guaranteed by the spanning/symmetry
    /// validation, so a non-optimal outcome indicates numeric breakdown and
    /// panics.
    pub fn gauge(&self, v: &[f64]) -> f64 {
        assert_eq!(v.len(), self.dim, "gauge argument has wrong dimension");
        let cols = self.generators.len();
        let mut a = vec![vec![0.0f64; cols]; self.dim];
        for (j, g) in self.generators.iter().enumerate() {
            for (i, coord) in g.iter().enumerate() {
                a[i][j] = *coord;
            }
        }
        let c = vec![1.0f64; cols];
        match solve_lp(&a, v, &c) {
            Ok(LpOutcome::Optimal { objective, .. }) => objective.max(0.0),
            other => panic!("polyhedral gauge LP did not reach an optimum: {other:?}"),
        }
    }
}

/// Numerical rank of a set of row vectors, with pivots compared against
/// [`tolerances::GEOMETRY`].
fn rank(rows: &[Vec<f64>], dim: usize) -> usize {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let mut r = 0;
    for col in 0..dim {
        let Some(best) = (r..m.len()).max_by(|&i, &j| {
            m[i][col]
                .abs()
                .partial_cmp(&m[j][col].abs())
                .expect("finite entries")
        }) else {
            break;
        };
        if m[best][col].abs() <= tolerances::GEOMETRY {
            continue;
        }
        m.swap(r, best);
        for i in 0..m.len() {
            if i != r {
                let factor = m[i][col] / m[r][col];
                for k in col..dim {
                    m[i][k] -= factor * m[r][k];
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Evaluates `norm` at `v`.
///
/// Panics if a polyhedral norm is applied in the wrong dimension; the
/// lightweight norms apply in any dimension.
pub fn norm_eval(norm: &Norm, v: &[f64]) -> f64 {
    match norm {
        Norm::Euclidean => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
        Norm::EllP { p } => {
            assert!(*p >= 1.0, "p-norm exponent must be at least 1");
            if *p == 1.0 {
                return v.iter().map(|x| x.abs()).sum();
            }
            if *p == 2.0 {
                return v.iter().map(|x| x * x).sum::<f64>().sqrt();
            }
            let scale = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
            if scale == 0.0 {
                return 0.0;
            }
            let sum: f64 = v.iter().map(|x| (x.abs() / scale).powf(*p)).sum();
            scale * sum.powf(1.0 / *p)
        }
        Norm::EllInf => v.iter().fold(0.0f64, |acc, x| acc.max(x.abs())),
        Norm::Polyhedral(ball) => ball.gauge(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cross_polytope(dim: usize) -> PolyhedralNorm {
        let mut gens = Vec::new();
        for i in 0..dim {
            for sign in [1.0, -1.0] {
                let mut g = vec![0.0; dim];
                g[i] = sign;
                gens.push(g);
            }
        }
        PolyhedralNorm::new(dim, gens).expect("valid cross-polytope")
    }

    fn square_ball() -> PolyhedralNorm {
        PolyhedralNorm::new(
            2,
            vec![
                vec![1.0, 1.0],
                vec![1.0, -1.0],
                vec![-1.0, 1.0],
                vec![-1.0, -1.0],
            ],
        )
        .expect("valid square ball")
    }

    #[test]
    fn euclidean_matches_hand_values() {
        assert_eq!(norm_eval(&Norm::Euclidean, &[3.0, 4.0]), 5.0);
        assert_eq!(norm_eval(&Norm::Euclidean, &[0.0, 0.0, 0.0]), 0.0);
    }

    #[test]
    fn p_norm_matches_hand_values() {
        assert_eq!(norm_eval(&Norm::ell_1(), &[3.0, -4.0]), 7.0);
        let p3 = Norm::ell_p(3.0).unwrap();
        let v = norm_eval(&p3, &[1.0, 2.0]);
        assert!((v - 9.0f64.powf(1.0 / 3.0)).abs() < 1e-12);
        assert_eq!(norm_eval(&Norm::EllInf, &[3.0, -4.0]), 4.0);
    }

    #[test]
    fn p_norm_rejects_bad_exponents() {
        assert!(Norm::ell_p(0.5).is_err());
        assert!(Norm::ell_p(f64::NAN).is_err());
        assert!(Norm::ell_p(f64::INFINITY).is_err());
    }

    #[test]
    fn parse_name_covers_the_documented_spellings() {
        assert!(matches!(Norm::parse_name("euclidean"), Ok(Norm::Euclidean)));
        assert!(matches!(
            Norm::parse_name("l1"),
            Ok(Norm::EllP { p }) if p == 1.0
        ));
        assert!(matches!(Norm::parse_name("linf"), Ok(Norm::EllInf)));
        assert!(matches!(
            Norm::parse_name("lp:2.5"),
            Ok(Norm::EllP { p }) if p == 2.5
        ));
        assert!(Norm::parse_name("lp:0.3").is_err());
        assert!(Norm::parse_name("manhattan").is_err());
    }

    #[test]
    fn cross_polytope_gauge_is_the_1_norm() {
        let ball = cross_polytope(3);
        for v in [
            vec![1.0, 0.0, 0.0],
            vec![0.25, -0.5, 1.5],
            vec![-2.0, 3.0, -4.0],
            vec![0.0, 0.0, 0.0],
        ] {
            let gauge = ball.gauge(&v);
            let l1: f64 = v.iter().map(|x| x.abs()).sum();
            assert!(
                (gauge - l1).abs() <= 1e-7 * (1.0 + l1),
                "gauge {gauge} vs l1 {l1} for {v:?}"
            );
        }
    }

    #[test]
    fn square_ball_gauge_is_the_max_norm() {
        let ball = square_ball();
        for v in [
            vec![1.0, 1.0],
            vec![0.5, -0.25],
            vec![-3.0, 2.0],
            vec![0.0, 0.0],
        ] {
            let gauge = ball.gauge(&v);
            let linf = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
            assert!(
                (gauge - linf).abs() <= 1e-7 * (1.0 + linf),
                "gauge {gauge} vs linf {linf} for {v:?}"
            );
        }
    }

    #[test]
    fn generator_validation_rejects_broken_balls() {
        // Missing the negation of (1, 0).
        assert!(PolyhedralNorm::new(2, vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]])
            .is_err());
        // Symmetric but does not span: both generators on one axis.
        assert!(PolyhedralNorm::new(2, vec![vec![1.0, 0.0], vec![-1.0, 0.0]]).is_err());
        // Zero generator.
        assert!(PolyhedralNorm::new(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![-1.0, 0.0]]
        )
        .is_err());
        // Wrong dimension.
        assert!(PolyhedralNorm::new(2, vec![vec![1.0, 0.0, 0.0]]).is_err());
    }

    #[test]
    fn norm_json_round_trip_preserves_kind() {
        let norms = vec![
            Norm::Euclidean,
            Norm::ell_p(1.5).unwrap(),
            Norm::EllInf,
            Norm::Polyhedral(cross_polytope(2)),
        ];
        for norm in norms {
            let text = serde_json::to_string(&norm).expect("serialize");
            let back: Norm = serde_json::from_str(&text).expect("deserialize");
            assert_eq!(norm.label(), back.label());
        }
    }

    #[test]
    fn norm_json_rejects_invalid_parameters() {
        assert!(serde_json::from_str::<Norm>(r#"{"kind":"ell_p","p":0.5}"#).is_err());
        let bad_ball = r#"{"kind":"polyhedral","dim":2,"generators":[[1.0,0.0]]}"#;
        assert!(serde_json::from_str::<Norm>(bad_ball).is_err());
    }

    fn arb_vector(dim: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-10.0f64..10.0, dim)
    }

    proptest! {
        #[test]
        fn norms_are_homogeneous(v in arb_vector(3), t in -4.0f64..4.0) {
            for norm in [Norm::Euclidean, Norm::ell_1(), Norm::ell_p(2.5).unwrap(), Norm::EllInf] {
                let scaled: Vec<f64> = v.iter().map(|x| t * x).collect();
                let lhs = norm_eval(&norm, &scaled);
                let rhs = t.abs() * norm_eval(&norm, &v);
                prop_assert!((lhs - rhs).abs() <= tolerances::NORM_AXIOMS * (1.0 + rhs));
            }
        }

        #[test]
        fn norms_satisfy_the_triangle_inequality(v in arb_vector(3), w in arb_vector(3)) {
            for norm in [Norm::Euclidean, Norm::ell_1(), Norm::ell_p(3.5).unwrap(), Norm::EllInf] {
                let sum: Vec<f64> = v.iter().zip(&w).map(|(x, y)| x + y).collect();
                let lhs = norm_eval(&norm, &sum);
                let rhs = norm_eval(&norm, &v) + norm_eval(&norm, &w);
                prop_assert!(lhs <= rhs + tolerances::NORM_AXIOMS * (1.0 + rhs));
            }
        }

        #[test]
        fn polyhedral_gauge_is_homogeneous_and_subadditive(
            v in arb_vector(2),
            w in arb_vector(2),
            t in -3.0f64..3.0,
        ) {
            let ball = square_ball();
            let norm = Norm::Polyhedral(ball);
            let scaled: Vec<f64> = v.iter().map(|x| t * x).collect();
            let hom_lhs = norm_eval(&norm, &scaled);
            let hom_rhs = t.abs() * norm_eval(&norm, &v);
            prop_assert!((hom_lhs - hom_rhs).abs() <= 1e-6 * (1.0 + hom_rhs));
            let sum: Vec<f64> = v.iter().zip(&w).map(|(x, y)| x + y).collect();
            let tri_lhs = norm_eval(&norm, &sum);
            let tri_rhs = norm_eval(&norm, &v) + norm_eval(&norm, &w);
            prop_assert!(tri_lhs <= tri_rhs + 1e-6 * (1.0 + tri_rhs));
        }
    }
}
