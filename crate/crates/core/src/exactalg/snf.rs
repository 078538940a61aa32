//! Smith normal form over the integers.
//!
//! `U·M·V = D` with `U`, `V` unimodular and `D` diagonal, entries
//! non-negative and forming a divisibility chain `d1 | d2 | …`. Pivot
//! selection takes the nonzero entry of minimal absolute value, ties
//! broken by lowest `(row, col)`, which makes the output deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::group::FGAbelianGroup;
use super::matrix::IntMatrix;

#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Nonzero diagonal entries (the invariant factors, 1s included).
    pub fn nonzero_diagonal(&self) -> Vec<BigInt> {
        self.d
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect()
    }

    /// Re-check every postcondition against the original matrix.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let product = match self.u.mul(m).and_then(|um| um.mul(&self.v)) {
            Ok(p) => p,
            Err(_) => return false,
        };
        if product != self.d {
            return false;
        }
        if !self.u.is_unimodular() || !self.v.is_unimodular() {
            return false;
        }
        // diagonal, non-negative, divisibility chain
        for r in 0..self.d.rows() {
            for c in 0..self.d.cols() {
                if r != c && !self.d[(r, c)].is_zero() {
                    return false;
                }
            }
        }
        let diag = self.d.diagonal();
        for (i, d) in diag.iter().enumerate() {
            if d.is_negative() {
                return false;
            }
            if i + 1 < diag.len() {
                let next = &diag[i + 1];
                if d.is_zero() {
                    if !next.is_zero() {
                        return false;
                    }
                } else if !(next % d).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

struct Worker {
    u: IntMatrix,
    d: IntMatrix,
    v: IntMatrix,
}

impl Worker {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.d.cols() {
            let tmp = self.d[(a, c)].clone();
            self.d[(a, c)] = self.d[(b, c)].clone();
            self.d[(b, c)] = tmp;
        }
        for c in 0..self.u.cols() {
            let tmp = self.u[(a, c)].clone();
            self.u[(a, c)] = self.u[(b, c)].clone();
            self.u[(b, c)] = tmp;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.d.rows() {
            let tmp = self.d[(r, a)].clone();
            self.d[(r, a)] = self.d[(r, b)].clone();
            self.d[(r, b)] = tmp;
        }
        for r in 0..self.v.rows() {
            let tmp = self.v[(r, a)].clone();
            self.v[(r, a)] = self.v[(r, b)].clone();
            self.v[(r, b)] = tmp;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.d.cols() {
            let neg = -self.d[(r, c)].clone();
            self.d[(r, c)] = neg;
        }
        for c in 0..self.u.cols() {
            let neg = -self.u[(r, c)].clone();
            self.u[(r, c)] = neg;
        }
    }

    /// row_dst += q * row_src
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.d.cols() {
            let add = q * &self.d[(src, c)];
            self.d[(dst, c)] += add;
        }
        for c in 0..self.u.cols() {
            let add = q * &self.u[(src, c)];
            self.u[(dst, c)] += add;
        }
    }

    /// col_dst += q * col_src
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.d.rows() {
            let add = q * &self.d[(r, src)];
            self.d[(r, dst)] += add;
        }
        for r in 0..self.v.rows() {
            let add = q * &self.v[(r, src)];
            self.v[(r, dst)] += add;
        }
    }

    /// Minimal-|entry| nonzero pivot in the trailing submatrix, ties by
    /// lowest (row, col).
    fn select_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for r in k..self.d.rows() {
            for c in k..self.d.cols() {
                let entry = &self.d[(r, c)];
                if entry.is_zero() {
                    continue;
                }
                let mag = entry.abs();
                match &best {
                    Some((_, m)) if *m <= mag => {}
                    _ => best = Some(((r, c), mag)),
                }
            }
        }
        best.map(|(pos, _)| pos)
    }
}

/// Smith normal form of `m`: returns `(U, D, V)` with `U·M·V = D`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = Worker {
        u: IntMatrix::identity(rows),
        d: m.clone(),
        v: IntMatrix::identity(cols),
    };
    let steps = rows.min(cols);
    'outer: for k in 0..steps {
        loop {
            let Some((pr, pc)) = w.select_pivot(k) else {
                break 'outer; // trailing submatrix is zero
            };
            w.swap_rows(k, pr);
            w.swap_cols(k, pc);
            if w.d[(k, k)].is_negative() {
                w.negate_row(k);
            }
            let pivot = w.d[(k, k)].clone();
            let mut clean = true;
            for i in k + 1..rows {
                if !w.d[(i, k)].is_zero() {
                    let q = w.d[(i, k)].div_floor(&pivot);
                    w.add_row_multiple(i, k, &-q);
                    if !w.d[(i, k)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in k + 1..cols {
                if !w.d[(k, j)].is_zero() {
                    let q = w.d[(k, j)].div_floor(&pivot);
                    w.add_col_multiple(j, k, &-q);
                    if !w.d[(k, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue; // remainders are smaller; re-select pivot
            }
            // pivot row/col cleared; enforce d_k | trailing entries
            let mut fixed = true;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&w.d[(i, j)] % &pivot).is_zero() {
                        let one = BigInt::from(1);
                        w.add_row_multiple(k, i, &one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    SmithNormalForm {
        u: w.u,
        d: w.d,
        v: w.v,
    }
}

/// Cokernel of `m` acting on column vectors: `Z^rows / im(m)`, read off
/// the Smith normal form diagonal (zeros contribute free rank, entries
/// ≥ 2 invariant factors, 1s vanish).
pub fn cokernel(m: &IntMatrix) -> FGAbelianGroup {
    let snf = smith_normal_form(m);
    let diag = snf.d.diagonal();
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let free_rank = m.rows() - nonzero;
    let torsion: Vec<BigInt> = diag
        .into_iter()
        .filter(|d| !d.is_zero() && *d != BigInt::from(1))
        .collect();
    FGAbelianGroup::new(free_rank, torsion).expect("SNF diagonal satisfies the divisor chain")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn diag_of(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m)
            .d
            .diagonal()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn zero_matrix_is_fixed_point() {
        let m = IntMatrix::from_rows(&[vec![0]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d, m);
        assert!(snf.verify(&m));
    }

    #[test]
    fn identity_is_fixed_point() {
        let m = IntMatrix::identity(2);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d, m);
        assert!(snf.verify(&m));
    }

    #[test]
    fn two_by_two_with_odd_determinant() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(diag_of(&m), vec![1, 3]);
        assert!(smith_normal_form(&m).verify(&m));
        // |det| preserved up to sign through unimodular transforms
        assert_eq!(m.determinant().unwrap(), BigInt::from(3));
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let snf = smith_normal_form(&m);
        assert!(snf.verify(&m));
        assert_eq!(diag_of(&m), vec![2, 2, 156]);

        let wide = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6]]);
        assert!(smith_normal_form(&wide).verify(&wide));

        let tall = wide.transpose();
        assert!(smith_normal_form(&tall).verify(&tall));
    }

    #[test]
    fn empty_matrix() {
        let m = IntMatrix::zeros(0, 0);
        let snf = smith_normal_form(&m);
        assert!(snf.verify(&m));
        assert!(snf.d.is_empty());
    }

    #[test]
    fn cokernel_examples() {
        let z = cokernel(&IntMatrix::from_rows(&[vec![0]]));
        assert_eq!(z.free_rank(), 1);
        assert!(z.torsion().is_empty());

        let z3 = cokernel(&IntMatrix::from_rows(&[vec![3]]));
        assert_eq!(z3.free_rank(), 0);
        assert_eq!(z3.torsion(), &[BigInt::from(3)]);

        let via_snf = cokernel(&IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]));
        assert_eq!(via_snf.free_rank(), 0);
        assert_eq!(via_snf.torsion(), &[BigInt::from(3)]);

        let trivial = cokernel(&IntMatrix::identity(4));
        assert!(trivial.is_trivial());
    }

    #[test]
    fn unimodularity_of_transforms() {
        let m = IntMatrix::from_rows(&[vec![6, 4], vec![8, 10], vec![2, 0]]);
        let snf = smith_normal_form(&m);
        assert!(snf.u.determinant().unwrap().abs().is_one());
        assert!(snf.v.determinant().unwrap().abs().is_one());
        assert!(snf.verify(&m));
    }
}
