//! The meridian-twist linear system of a Heegaard embedding.
//!
//! Data: a genus-`g` system of curves `c_1, …, c_g` on the boundary of
//! an embedded handlebody, a complete system of meridians `m_1, …, m_g`,
//! the integer intersection matrix `A` with `A[j][i]` the algebraic
//! intersection number of `c_i` with `m_j`, and the initial framings
//! `f_j` of the curves induced by the embedding.
//!
//! Applying the twist along `m_i` a total of `x_i` times changes `f_j`
//! by `x_i · A[j][i]²`. Since `a² ≡ a (mod 2)`, making every framing
//! even reduces to the F2 system `(A mod 2)·x ≡ f (mod 2)`. The integer
//! twist-effect formula is the standard framing-change convention; only
//! its parity is load-bearing here.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::exactalg::{f2_solve, F2Matrix, F2Outcome, IntMatrix, MatrixError};
use crate::surgery::{FramedLinkMatrix, LinkError};
use crate::textfmt::{ParseError, Tokens};

/// Twist problem: intersections `A`, initial framings `f`, optional
/// pairwise linking numbers of the curves for framed-link export.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeegaardTwistProblem {
    genus: usize,
    intersections: IntMatrix,
    framings: Vec<BigInt>,
    linking: Option<IntMatrix>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HeegaardError {
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("intersection matrix must be {g}x{g}, got {rows}x{cols}")]
    IntersectionShape { g: usize, rows: usize, cols: usize },
    #[error("expected {g} framings, got {found}")]
    FramingCount { g: usize, found: usize },
    #[error("linking data must be a symmetric {g}x{g} matrix")]
    BadLinkingData { g: usize },
    #[error("expected {g} twist amounts, got {found}")]
    TwistCount { g: usize, found: usize },
    #[error("twist vector does not produce all-even framings (odd at curve {curve})")]
    ParityViolation { curve: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Link(#[from] LinkError),
}

/// Output of [`solve_twists`]: either a twist indicator with the kernel
/// of the parity system, or a certificate that no twist vector works.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwistOutcome {
    Solvable {
        /// Canonical 0/1 twist indicator with `(A mod 2)·x ≡ f (mod 2)`.
        indicator: Vec<bool>,
        /// Kernel basis of `A mod 2`; the full solution set is the
        /// affine span.
        kernel: Vec<Vec<bool>>,
    },
    Unsolvable {
        /// Left-kernel vector `y` of `A mod 2` with `y·f ≡ 1 (mod 2)`.
        certificate: Vec<bool>,
    },
}

impl HeegaardTwistProblem {
    pub fn new(intersections: IntMatrix, framings: Vec<BigInt>) -> Result<Self, HeegaardError> {
        let g = framings.len();
        if g == 0 {
            return Err(HeegaardError::ZeroGenus);
        }
        if intersections.rows() != g || intersections.cols() != g {
            return Err(HeegaardError::IntersectionShape {
                g,
                rows: intersections.rows(),
                cols: intersections.cols(),
            });
        }
        Ok(HeegaardTwistProblem {
            genus: g,
            intersections,
            framings,
            linking: None,
        })
    }

    pub fn from_rows(intersections: &[Vec<i64>], framings: &[i64]) -> Result<Self, HeegaardError> {
        Self::new(
            IntMatrix::from_rows(intersections),
            framings.iter().map(|&f| BigInt::from(f)).collect(),
        )
    }

    /// Attach pairwise linking numbers of the curves (symmetric g×g;
    /// the diagonal is ignored in favor of the computed framings).
    pub fn with_linking(mut self, linking: IntMatrix) -> Result<Self, HeegaardError> {
        if linking.rows() != self.genus || linking.cols() != self.genus || !linking.is_symmetric() {
            return Err(HeegaardError::BadLinkingData { g: self.genus });
        }
        self.linking = Some(linking);
        Ok(self)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn intersections(&self) -> &IntMatrix {
        &self.intersections
    }

    pub fn framings(&self) -> &[BigInt] {
        &self.framings
    }

    pub fn linking(&self) -> Option<&IntMatrix> {
        self.linking.as_ref()
    }

    /// Problem file: `heegaard g=<g>`, the intersection matrix in the
    /// matrix text format, the framings on one line, and optionally the
    /// keyword `linking` followed by a symmetric matrix.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "heegaard g={}\n{}",
            self.genus,
            self.intersections.to_text()
        );
        let f: Vec<String> = self.framings.iter().map(BigInt::to_string).collect();
        out.push_str(&f.join(" "));
        out.push('\n');
        if let Some(l) = &self.linking {
            out.push_str("linking\n");
            out.push_str(&l.to_text());
        }
        out
    }

    pub fn from_text(input: &str) -> Result<Self, ParseError> {
        let mut toks = Tokens::new(input);
        toks.expect("heegaard")?;
        let header = toks.next_token("g=<genus>")?;
        let g: usize = header
            .strip_prefix("g=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| {
                ParseError::new(
                    toks.current_line(),
                    format!("expected g=<genus>, found {header:?}"),
                )
            })?;
        let intersections = IntMatrix::parse_from(&mut toks)?;
        let mut framings = Vec::with_capacity(g);
        for _ in 0..g {
            framings.push(toks.next_parsed::<BigInt>("framing")?);
        }
        let problem = HeegaardTwistProblem::new(intersections, framings)
            .map_err(|e| ParseError::new(toks.current_line(), e.to_string()))?;
        if toks.is_empty() {
            return Ok(problem);
        }
        toks.expect("linking")?;
        let linking = IntMatrix::parse_from(&mut toks)?;
        toks.expect_end()?;
        problem
            .with_linking(linking)
            .map_err(|e| ParseError::new(1, e.to_string()))
    }
}

/// Solve the parity system `(A mod 2)·x ≡ f (mod 2)`.
pub fn solve_twists(problem: &HeegaardTwistProblem) -> TwistOutcome {
    let a2 = F2Matrix::from_int_matrix(&problem.intersections);
    let b: Vec<bool> = problem.framings.iter().map(|f| f.is_odd()).collect();
    match f2_solve(&a2, &b).expect("square system") {
        F2Outcome::Solvable(sol) => TwistOutcome::Solvable {
            indicator: sol.particular,
            kernel: sol.kernel,
        },
        F2Outcome::Unsolvable { certificate } => TwistOutcome::Unsolvable { certificate },
    }
}

/// Integer twist effect: `f_j' = f_j + Σ_i x_i · A[j][i]²`.
pub fn apply_twists(
    problem: &HeegaardTwistProblem,
    twists: &[BigInt],
) -> Result<Vec<BigInt>, HeegaardError> {
    let g = problem.genus;
    if twists.len() != g {
        return Err(HeegaardError::TwistCount {
            g,
            found: twists.len(),
        });
    }
    let a = &problem.intersections;
    Ok((0..g)
        .map(|j| {
            let mut f = problem.framings[j].clone();
            for (i, x) in twists.iter().enumerate() {
                let aji = &a[(j, i)];
                f += x * aji * aji;
            }
            f
        })
        .collect())
}

/// Export as a framed link: diagonal from [`apply_twists`] (which must
/// be all even), off-diagonal from the optional linking data (default 0).
pub fn to_framed_link(
    problem: &HeegaardTwistProblem,
    twists: &[BigInt],
) -> Result<FramedLinkMatrix, HeegaardError> {
    let framings = apply_twists(problem, twists)?;
    if let Some(j) = framings.iter().position(|f| f.is_odd()) {
        return Err(HeegaardError::ParityViolation { curve: j + 1 });
    }
    let g = problem.genus;
    let mut m = match &problem.linking {
        Some(l) => l.clone(),
        None => IntMatrix::zeros(g, g),
    };
    for (j, f) in framings.into_iter().enumerate() {
        m[(j, j)] = f;
    }
    let labels = (1..=g).map(|i| format!("c{i}")).collect();
    Ok(FramedLinkMatrix::with_labels(m, labels)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery::handle_parity;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_intersections_twist_their_own_curves() {
        let p = HeegaardTwistProblem::from_rows(
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            &[1, 0, 1],
        )
        .unwrap();
        let TwistOutcome::Solvable { indicator, kernel } = solve_twists(&p) else {
            panic!("identity system is solvable");
        };
        assert_eq!(indicator, vec![true, false, true]);
        assert!(kernel.is_empty());
    }

    #[test]
    fn all_even_framings_admit_zero_twists() {
        let p = HeegaardTwistProblem::from_rows(&[vec![2, 1], vec![1, 1]], &[4, -2]).unwrap();
        let TwistOutcome::Solvable { indicator, .. } = solve_twists(&p) else {
            panic!("solvable");
        };
        assert_eq!(indicator, vec![false, false]);
    }

    #[test]
    fn genus_two_example() {
        let p = HeegaardTwistProblem::from_rows(&[vec![1, 1], vec![0, 1]], &[0, 1]).unwrap();
        let TwistOutcome::Solvable { indicator, .. } = solve_twists(&p) else {
            panic!("solvable");
        };
        assert_eq!(indicator, vec![true, true]);
        let twists = big(&[1, 1]);
        let updated = apply_twists(&p, &twists).unwrap();
        assert_eq!(updated, big(&[2, 2]));
    }

    #[test]
    fn zero_twists_change_nothing() {
        let p = HeegaardTwistProblem::from_rows(&[vec![3, -2], vec![5, 7]], &[1, 6]).unwrap();
        assert_eq!(apply_twists(&p, &big(&[0, 0])).unwrap(), big(&[1, 6]));
    }

    #[test]
    fn identity_intersections_double_parity() {
        // A = I, x = f entrywise: f' = f + f, all even
        let f = [3i64, 0, -5];
        let p = HeegaardTwistProblem::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &f)
            .unwrap();
        let updated = apply_twists(&p, &big(&f)).unwrap();
        assert!(updated.iter().all(|v| v.is_even()));
    }

    #[test]
    fn unsolvable_certificate() {
        // meridian twists never touch curve parity: A ≡ 0 mod 2 but f odd
        let p = HeegaardTwistProblem::from_rows(&[vec![2, 4], vec![6, 2]], &[1, 0]).unwrap();
        let TwistOutcome::Unsolvable { certificate } = solve_twists(&p) else {
            panic!("must be unsolvable");
        };
        // y·(A mod 2) = 0 and y·f = 1
        let a2 = F2Matrix::from_int_matrix(p.intersections());
        let yt = a2.transpose().mul_vec(&certificate).unwrap();
        assert!(yt.iter().all(|&v| !v));
        let dot = certificate
            .iter()
            .zip(p.framings())
            .fold(false, |acc, (&y, f)| acc ^ (y && f.is_odd()));
        assert!(dot);
    }

    #[test]
    fn framed_link_export() {
        let p = HeegaardTwistProblem::from_rows(&[vec![1, 0], vec![0, 1]], &[2, 4]).unwrap();
        let link = to_framed_link(&p, &big(&[0, 0])).unwrap();
        assert_eq!(link.framing(0), &BigInt::from(2));
        assert_eq!(link.framing(1), &BigInt::from(4));
        assert!(handle_parity(&link).all_even);
    }

    #[test]
    fn framed_link_export_with_twists_and_linking() {
        let p = HeegaardTwistProblem::from_rows(&[vec![1, 1], vec![0, 1]], &[0, 1])
            .unwrap()
            .with_linking(IntMatrix::from_rows(&[vec![0, 3], vec![3, 0]]))
            .unwrap();
        let link = to_framed_link(&p, &big(&[1, 1])).unwrap();
        assert_eq!(link.framing(0), &BigInt::from(2));
        assert_eq!(link.framing(1), &BigInt::from(2));
        assert_eq!(link.linking(0, 1), &BigInt::from(3));
        assert!(handle_parity(&link).all_even);

        let err = to_framed_link(&p, &big(&[1, 0])).unwrap_err();
        assert!(matches!(err, HeegaardError::ParityViolation { .. }));
    }

    #[test]
    fn quadratic_to_linear_reduction_small_sweep() {
        // parity of x_i * a^2 equals parity of x_i * a
        for a in -3i64..=3 {
            for x in 0i64..=1 {
                assert_eq!((x * a * a).rem_euclid(2), (x * a).rem_euclid(2));
            }
        }
    }

    #[test]
    fn problem_file_round_trip() {
        let p = HeegaardTwistProblem::from_rows(&[vec![1, 1], vec![0, 1]], &[0, 1])
            .unwrap()
            .with_linking(IntMatrix::from_rows(&[vec![0, -2], vec![-2, 0]]))
            .unwrap();
        let text = p.to_text();
        assert_eq!(HeegaardTwistProblem::from_text(&text).unwrap(), p);

        let plain = HeegaardTwistProblem::from_rows(&[vec![1]], &[5]).unwrap();
        assert_eq!(
            HeegaardTwistProblem::from_text(&plain.to_text()).unwrap(),
            plain
        );
    }

    #[test]
    fn parse_errors() {
        assert!(HeegaardTwistProblem::from_text("heegaard g=x\n1 1\n0\n").is_err());
        let err = HeegaardTwistProblem::from_text("heegaard g=2\n2 2\n1 0 0 1\n0 1\ngarbage\n")
            .unwrap_err();
        assert!(err.message.contains("linking"));
    }
}
