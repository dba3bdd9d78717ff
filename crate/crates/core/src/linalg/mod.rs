//! Exact dense linear algebra over rationals and rational functions, and
//! exact spectral analysis of integer symmetric matrices.

mod field;
mod interval;
mod intpoly;
mod matrix;
mod spectral;
mod sturm;

pub use field::Field;
pub use interval::{to_f64, Certified, Interval};
pub use intpoly::{char_poly, IntPolynomial};
pub use matrix::{echelon_span, rank_of, ExactMatrix, Matrix, RationalMatrix};
pub use spectral::{
    eigenvector_exact, enclosure_tolerance, primitive_integer, spectral_classify, validate_e,
    LambdaClass, SpectralClass,
};
pub use sturm::{sturm_root_count, SturmSequence};

/// Right null-space basis of `m`; see [`Matrix::kernel_basis`].
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    m.kernel_basis()
}

/// Some solution of `a x = b`; see [`Matrix::solve`].
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> crate::Result<Option<Vec<F>>> {
    a.solve(b)
}
