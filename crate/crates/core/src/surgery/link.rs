//! Framed links as symmetric linking matrices.

use std::fmt;

use num_bigint::BigInt;

use crate::exactalg::IntMatrix;
use crate::textfmt::{ParseError, Tokens};

/// Linking matrix of a framed link: symmetric, framings on the
/// diagonal, pairwise linking numbers off it. Every symmetric integer
/// matrix is realizable as one, so no diagram data is carried.
#[derive(Clone, PartialEq, Eq)]
pub struct FramedLinkMatrix {
    matrix: IntMatrix,
    labels: Vec<String>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinkError {
    #[error("linking matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("linking matrix is not symmetric at ({i},{j}): {a} vs {b}")]
    NotSymmetric {
        i: usize,
        j: usize,
        a: BigInt,
        b: BigInt,
    },
    #[error("label count {labels} does not match component count {n}")]
    LabelCount { labels: usize, n: usize },
}

impl FramedLinkMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self, LinkError> {
        let labels = (1..=matrix.rows()).map(|i| format!("K{i}")).collect();
        Self::with_labels(matrix, labels)
    }

    pub fn with_labels(matrix: IntMatrix, labels: Vec<String>) -> Result<Self, LinkError> {
        if matrix.rows() != matrix.cols() {
            return Err(LinkError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        for i in 0..matrix.rows() {
            for j in 0..i {
                if matrix[(i, j)] != matrix[(j, i)] {
                    return Err(LinkError::NotSymmetric {
                        i,
                        j,
                        a: matrix[(i, j)].clone(),
                        b: matrix[(j, i)].clone(),
                    });
                }
            }
        }
        if labels.len() != matrix.rows() {
            return Err(LinkError::LabelCount {
                labels: labels.len(),
                n: matrix.rows(),
            });
        }
        Ok(FramedLinkMatrix { matrix, labels })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, LinkError> {
        Self::new(IntMatrix::from_rows(rows))
    }

    /// The empty link (surgery description of the 3-sphere).
    pub fn empty() -> Self {
        FramedLinkMatrix {
            matrix: IntMatrix::zeros(0, 0),
            labels: Vec::new(),
        }
    }

    pub fn components(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn framing(&self, i: usize) -> &BigInt {
        &self.matrix[(i, i)]
    }

    pub fn linking(&self, i: usize, j: usize) -> &BigInt {
        &self.matrix[(i, j)]
    }

    /// Fresh component label not colliding with existing ones.
    pub(crate) fn fresh_label(&self) -> String {
        let mut k = self.labels.len() + 1;
        loop {
            let candidate = format!("K{k}");
            if !self.labels.iter().any(|l| l == &candidate) {
                return candidate;
            }
            k += 1;
        }
    }

    pub(crate) fn replace_parts(matrix: IntMatrix, labels: Vec<String>) -> Self {
        debug_assert!(matrix.is_symmetric());
        debug_assert_eq!(matrix.rows(), labels.len());
        FramedLinkMatrix { matrix, labels }
    }

    /// File format: header `framedlink n=<n>`, then the matrix text
    /// format (`rows cols` and row-major entries).
    pub fn to_text(&self) -> String {
        format!(
            "framedlink n={}\n{}",
            self.components(),
            self.matrix.to_text()
        )
    }

    pub fn from_text(input: &str) -> Result<Self, ParseError> {
        let mut toks = Tokens::new(input);
        toks.expect("framedlink")?;
        let header = toks.next_token("n=<count>")?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| {
                ParseError::new(
                    toks.current_line(),
                    format!("expected n=<count>, found {header:?}"),
                )
            })?;
        let matrix = IntMatrix::parse_from(&mut toks)?;
        toks.expect_end()?;
        if matrix.rows() != n || matrix.cols() != n {
            return Err(ParseError::new(
                1,
                format!(
                    "header says n={n} but matrix is {}x{}",
                    matrix.rows(),
                    matrix.cols()
                ),
            ));
        }
        FramedLinkMatrix::new(matrix).map_err(|e| ParseError::new(1, e.to_string()))
    }
}

impl fmt::Debug for FramedLinkMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FramedLinkMatrix({:?})", self.matrix)
    }
}

impl fmt::Display for FramedLinkMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
