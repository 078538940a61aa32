//! Exact linear algebra over the integers and over F2, plus finitely
//! generated abelian-group arithmetic.

mod f2;
mod group;
mod matrix;
mod snf;

pub use f2::{f2_solve, F2Matrix, F2Outcome, F2Solution};
pub use group::{FGAbelianGroup, GroupElement, GroupError, Mod2Class};
pub use matrix::{IntMatrix, MatrixError};
pub use snf::{cokernel, smith_normal_form, SmithNormalForm};
