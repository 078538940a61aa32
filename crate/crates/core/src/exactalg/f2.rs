//! Matrices and linear systems over the two-element field.

use std::fmt;
use std::ops::Index;

use num_traits::Zero;

use super::matrix::{IntMatrix, MatrixError};
use crate::textfmt::{ParseError, Tokens};

/// Dense matrix over F2, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<bool>,
}

/// Result of solving `A·x = b` over F2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum F2Outcome {
    Solvable(F2Solution),
    /// `certificate` is a left-kernel vector `y` with `y·A = 0` and
    /// `y·b = 1`, proving `b` lies outside the column space.
    Unsolvable {
        certificate: Vec<bool>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Solution {
    /// Particular solution with all free variables set to 0.
    pub particular: Vec<bool>,
    /// Basis of the kernel; the affine solution set is
    /// `particular + span(kernel)` and has cardinality `2^kernel.len()`.
    pub kernel: Vec<Vec<bool>>,
}

impl F2Outcome {
    pub fn solution(&self) -> Option<&F2Solution> {
        match self {
            F2Outcome::Solvable(s) => Some(s),
            F2Outcome::Unsolvable { .. } => None,
        }
    }
}

impl F2Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<bool>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::EntryCount {
                rows,
                cols,
                found: entries.len(),
            });
        }
        Ok(F2Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix {
            rows,
            cols,
            entries: vec![false; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = F2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| v % 2 == 1))
            .collect();
        F2Matrix {
            rows: nrows,
            cols: ncols,
            entries,
        }
    }

    /// Entrywise reduction of an integer matrix mod 2.
    pub fn from_int_matrix(m: &IntMatrix) -> Self {
        let entries = m.entries().iter().map(|e| !(e % 2u8).is_zero()).collect();
        F2Matrix {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self[(r, c)]);
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[bool]) -> Result<Vec<bool>, MatrixError> {
        if x.len() != self.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "matrix {}x{} times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| (0..self.cols).fold(false, |acc, c| acc ^ (self[(r, c)] && x[c])))
            .collect())
    }

    pub fn rank(&self) -> usize {
        Elimination::run(self, &vec![false; self.rows]).rank
    }

    /// Basis of `{x : A·x = 0}`, deterministic (free columns in index order).
    pub fn kernel_basis(&self) -> Vec<Vec<bool>> {
        match f2_solve(self, &vec![false; self.rows]).expect("dimensions match") {
            F2Outcome::Solvable(sol) => sol.kernel,
            F2Outcome::Unsolvable { .. } => unreachable!("homogeneous system is solvable"),
        }
    }

    /// Text format: "rows cols" then row-major entries, each 0 or 1.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let row: Vec<&str> = (0..self.cols)
                .map(|c| if self[(r, c)] { "1" } else { "0" })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(input: &str) -> Result<Self, ParseError> {
        let mut toks = Tokens::new(input);
        let rows: usize = toks.next_parsed("row count")?;
        let cols: usize = toks.next_parsed("column count")?;
        let mut entries = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let tok = toks.next_token("0 or 1")?;
            match tok {
                "0" => entries.push(false),
                "1" => entries.push(true),
                other => {
                    return Err(ParseError::new(
                        toks.current_line(),
                        format!("F2 entry must be 0 or 1, found {other:?}"),
                    ))
                }
            }
        }
        toks.expect_end()?;
        Ok(F2Matrix {
            rows,
            cols,
            entries,
        })
    }
}

impl Index<(usize, usize)> for F2Matrix {
    type Output = bool;

    fn index(&self, (r, c): (usize, usize)) -> &bool {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self[(r, c)]))?;
            }
        }
        write!(f, "]")
    }
}

/// Gauss-Jordan state: reduced rows, the pivot column of each pivot row,
/// and the accumulated left transform (for certificates).
struct Elimination {
    work: Vec<Vec<bool>>,
    rhs: Vec<bool>,
    record: Vec<Vec<bool>>,
    pivots: Vec<usize>,
    rank: usize,
}

impl Elimination {
    fn run(a: &F2Matrix, b: &[bool]) -> Self {
        let rows = a.rows;
        let cols = a.cols;
        let mut work: Vec<Vec<bool>> = (0..rows)
            .map(|r| (0..cols).map(|c| a[(r, c)]).collect())
            .collect();
        let mut rhs = b.to_vec();
        let mut record: Vec<Vec<bool>> = (0..rows)
            .map(|r| (0..rows).map(|c| r == c).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot_row) = (rank..rows).find(|&r| work[r][col]) else {
                continue;
            };
            work.swap(rank, pivot_row);
            rhs.swap(rank, pivot_row);
            record.swap(rank, pivot_row);
            for r in 0..rows {
                if r != rank && work[r][col] {
                    let (src, dst) = if r < rank {
                        let (lo, hi) = work.split_at_mut(rank);
                        (&hi[0], &mut lo[r])
                    } else {
                        let (lo, hi) = work.split_at_mut(r);
                        (&lo[rank], &mut hi[0])
                    };
                    for c in 0..cols {
                        dst[c] ^= src[c];
                    }
                    rhs[r] ^= rhs[rank];
                    let (src, dst) = if r < rank {
                        let (lo, hi) = record.split_at_mut(rank);
                        (&hi[0], &mut lo[r])
                    } else {
                        let (lo, hi) = record.split_at_mut(r);
                        (&lo[rank], &mut hi[0])
                    };
                    for c in 0..rows {
                        dst[c] ^= src[c];
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Elimination {
            work,
            rhs,
            record,
            pivots,
            rank,
        }
    }
}

/// Solve `a·x = b` over F2 with deterministic lowest-index pivoting.
///
/// Returns the canonical particular solution (free variables 0) and a
/// kernel basis spanning the full affine solution set, or an explicit
/// unsolvability certificate.
pub fn f2_solve(a: &F2Matrix, b: &[bool]) -> Result<F2Outcome, MatrixError> {
    if b.len() != a.rows {
        return Err(MatrixError::DimensionMismatch(format!(
            "matrix {}x{} with rhs of length {}",
            a.rows,
            a.cols,
            b.len()
        )));
    }
    let elim = Elimination::run(a, b);
    for r in elim.rank..a.rows {
        if elim.rhs[r] {
            return Ok(F2Outcome::Unsolvable {
                certificate: elim.record[r].clone(),
            });
        }
    }
    let mut particular = vec![false; a.cols];
    for (row, &col) in elim.pivots.iter().enumerate() {
        particular[col] = elim.rhs[row];
    }
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; a.cols];
        for &c in &elim.pivots {
            s[c] = true;
        }
        s
    };
    let mut kernel = Vec::new();
    for free in 0..a.cols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![false; a.cols];
        v[free] = true;
        for (row, &col) in elim.pivots.iter().enumerate() {
            v[col] = elim.work[row][free];
        }
        kernel.push(v);
    }
    Ok(F2Outcome::Solvable(F2Solution { particular, kernel }))
}
