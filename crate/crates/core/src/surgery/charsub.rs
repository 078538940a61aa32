//! Characteristic sublinks and spin-structure counting.
//!
//! Over F2 the diagonal of a symmetric matrix always lies in its column
//! space: for `y` in the kernel of `Q`, `y·diag(Q) = yᵀQy = 0`. The
//! characteristic system `Q·x ≡ diag(Q) (mod 2)` is therefore solvable
//! for every linking matrix — the matrix shadow of the fact that every
//! closed oriented 3-manifold is spin.

use num_bigint::BigInt;
use num_traits::One;

use super::link::FramedLinkMatrix;
use crate::exactalg::{cokernel, f2_solve, F2Matrix, F2Outcome, FGAbelianGroup};

/// An F2 solution of the characteristic system together with the
/// dimension of the full solution space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSublink {
    /// Indicator vector of the sublink: `Q·x ≡ diag(Q) (mod 2)`.
    pub indicator: Vec<bool>,
    /// Dimension of the affine solution space.
    pub solution_dim: usize,
}

/// Full solution set of the characteristic system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicSolutions {
    /// Deterministic canonical solution (free variables zero).
    pub canonical: CharSublink,
    /// Kernel basis of `Q mod 2`; solutions are `canonical + span`.
    pub kernel: Vec<Vec<bool>>,
}

impl CharacteristicSolutions {
    /// `2^solution_dim`
    pub fn count(&self) -> BigInt {
        BigInt::one() << self.kernel.len()
    }
}

fn diag_mod2(f: &FramedLinkMatrix) -> Vec<bool> {
    use num_integer::Integer;
    (0..f.components()).map(|i| f.framing(i).is_odd()).collect()
}

/// Solve `Q·x ≡ diag(Q) (mod 2)`. Total for every symmetric matrix.
pub fn characteristic_solutions(f: &FramedLinkMatrix) -> CharacteristicSolutions {
    let q2 = F2Matrix::from_int_matrix(f.matrix());
    let b = diag_mod2(f);
    match f2_solve(&q2, &b).expect("square system") {
        F2Outcome::Solvable(sol) => CharacteristicSolutions {
            canonical: CharSublink {
                indicator: sol.particular,
                solution_dim: sol.kernel.len(),
            },
            kernel: sol.kernel,
        },
        F2Outcome::Unsolvable { .. } => {
            unreachable!("diagonal of a symmetric F2 matrix lies in its column space")
        }
    }
}

/// Number of spin structures of the surgered manifold: the size
/// `2^(n − rank_F2 Q)` of the affine solution space of the
/// characteristic system.
pub fn spin_structure_count(f: &FramedLinkMatrix) -> BigInt {
    let q2 = F2Matrix::from_int_matrix(f.matrix());
    BigInt::one() << (f.components() - q2.rank())
}

/// First homology of the surgered manifold, `coker(Q)`.
pub fn first_homology(f: &FramedLinkMatrix) -> FGAbelianGroup {
    cokernel(f.matrix())
}

/// Framing parities and the all-even flag — the executable criterion
/// for parallelizability of the attached 4-manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HandleParity {
    /// `i`-th entry is `f_i mod 2`.
    pub parities: Vec<bool>,
    pub all_even: bool,
}

pub fn handle_parity(f: &FramedLinkMatrix) -> HandleParity {
    let parities = diag_mod2(f);
    let all_even = parities.iter().all(|&p| !p);
    HandleParity { parities, all_even }
}

/// The E8 linking matrix: even diagonal, determinant 1.
pub fn e8_matrix() -> FramedLinkMatrix {
    let mut rows = vec![vec![0i64; 8]; 8];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 2;
    }
    // A7 chain plus the exceptional node attached at position 4
    for i in 0..6 {
        rows[i][i + 1] = -1;
        rows[i + 1][i] = -1;
    }
    rows[4][7] = -1;
    rows[7][4] = -1;
    FramedLinkMatrix::from_rows(&rows).expect("E8 is symmetric")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verify_characteristic(f: &FramedLinkMatrix, x: &[bool]) -> bool {
        let q2 = F2Matrix::from_int_matrix(f.matrix());
        q2.mul_vec(x).unwrap() == diag_mod2(f)
    }

    #[test]
    fn single_components() {
        let odd = FramedLinkMatrix::from_rows(&[vec![1]]).unwrap();
        let sols = characteristic_solutions(&odd);
        assert_eq!(sols.canonical.indicator, vec![true]);
        assert_eq!(sols.canonical.solution_dim, 0);
        assert_eq!(sols.count(), BigInt::from(1));

        let zero = FramedLinkMatrix::from_rows(&[vec![0]]).unwrap();
        let sols = characteristic_solutions(&zero);
        assert_eq!(sols.canonical.indicator, vec![false]);
        assert_eq!(sols.count(), BigInt::from(2));
    }

    #[test]
    fn e8_has_empty_characteristic_sublink() {
        let e8 = e8_matrix();
        assert_eq!(e8.matrix().determinant().unwrap(), BigInt::one());
        let sols = characteristic_solutions(&e8);
        assert!(sols.canonical.indicator.iter().all(|&b| !b));
        assert!(verify_characteristic(&e8, &sols.canonical.indicator));
        assert!(handle_parity(&e8).all_even);
    }

    #[test]
    fn spin_counts_of_small_manifolds() {
        // S^1 x S^2
        let f = FramedLinkMatrix::from_rows(&[vec![0]]).unwrap();
        assert_eq!(spin_structure_count(&f), BigInt::from(2));
        // RP^3
        let f = FramedLinkMatrix::from_rows(&[vec![2]]).unwrap();
        assert_eq!(spin_structure_count(&f), BigInt::from(2));
        // S^3
        let f = FramedLinkMatrix::from_rows(&[vec![1]]).unwrap();
        assert_eq!(spin_structure_count(&f), BigInt::from(1));
    }

    #[test]
    fn spin_count_matches_hom_count() {
        let cases = [
            vec![vec![0i64]],
            vec![vec![2]],
            vec![vec![3]],
            vec![vec![2, 1], vec![1, 2]],
            vec![vec![0, 2], vec![2, 0]],
            vec![vec![4, 0, 1], vec![0, 6, 2], vec![1, 2, 0]],
        ];
        for rows in cases {
            let f = FramedLinkMatrix::from_rows(&rows).unwrap();
            assert_eq!(
                spin_structure_count(&f),
                first_homology(&f).hom_count_to_z2(),
                "{rows:?}"
            );
        }
    }

    #[test]
    fn homology_examples() {
        let f = FramedLinkMatrix::from_rows(&[vec![3]]).unwrap();
        assert_eq!(first_homology(&f), FGAbelianGroup::cyclic(3));
        let f = FramedLinkMatrix::from_rows(&[vec![0]]).unwrap();
        assert_eq!(first_homology(&f), FGAbelianGroup::free(1));
        let f = FramedLinkMatrix::from_rows(&[vec![1]]).unwrap();
        assert!(first_homology(&f).is_trivial());
    }

    #[test]
    fn parity_vector() {
        let f = FramedLinkMatrix::from_rows(&[vec![2, 1], vec![1, 4]]).unwrap();
        let p = handle_parity(&f);
        assert_eq!(p.parities, vec![false, false]);
        assert!(p.all_even);

        let f = FramedLinkMatrix::from_rows(&[vec![3]]).unwrap();
        let p = handle_parity(&f);
        assert_eq!(p.parities, vec![true]);
        assert!(!p.all_even);

        // empty link is vacuously even
        assert!(handle_parity(&FramedLinkMatrix::empty()).all_even);
    }

    #[test]
    fn characteristic_always_solvable_on_dense_sample() {
        // all symmetric 3x3 matrices over a small entry range, reduced mod 2:
        // 6 independent entries over {0,1} is the full F2 case analysis
        for mask in 0..64u32 {
            let bit = |k: u32| i64::from((mask >> k) & 1);
            let rows = vec![
                vec![bit(0), bit(3), bit(4)],
                vec![bit(3), bit(1), bit(5)],
                vec![bit(4), bit(5), bit(2)],
            ];
            let f = FramedLinkMatrix::from_rows(&rows).unwrap();
            let sols = characteristic_solutions(&f);
            assert!(
                verify_characteristic(&f, &sols.canonical.indicator),
                "{rows:?}"
            );
            let q2 = F2Matrix::from_int_matrix(f.matrix());
            assert_eq!(sols.canonical.solution_dim, 3 - q2.rank());
        }
        let empty = FramedLinkMatrix::empty();
        let sols = characteristic_solutions(&empty);
        assert!(sols.canonical.indicator.is_empty());
        assert!(spin_structure_count(&empty).is_one());
    }
}
