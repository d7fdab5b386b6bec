//! Dense complex matrices and the eigensolvers used by every spectrum computation.

mod eigen;
mod matrix;

pub use eigen::{
    cmp_by_arg, eig_hermitian, eig_unitary, expm_i_hermitian, principal_arg, EigenDecomposition,
};
pub use matrix::{ComplexMatrix, ComplexScalar, HermitianMatrix, Tolerances, UnitaryMatrix};
