//! Sparse and dense kernels: CSR storage, direct factorizations, the dense
//! generalized eigensolver, preconditioned MinRes and condition numbers.

mod cond;
mod eigen;
mod factor;
mod minres;
mod random;
mod sparse;

pub use cond::{condition_number, lanczos_condition_number, LanczosOptions, COND_DENSE_LIMIT};
pub use eigen::{dense_sym_eigenvalues, dense_sym_gevp, DenseEigenDecomp, DENSE_EIGEN_LIMIT};
pub use factor::{factorize, FactorKind, Factorization};
pub use minres::{minres, symmetry_defect, MinresOptions, SolveReport};
pub use random::random_initial_guess;
pub use sparse::{CsrMatrix, TripletList};

/// A square linear map `y = Op x`.
pub trait LinearOperator {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]);

    fn apply_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim()];
        self.apply(x, &mut y);
        y
    }
}

impl<T: LinearOperator + ?Sized> LinearOperator for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        (**self).apply(x, y)
    }
}

/// The identity map of a given size.
#[derive(Debug, Clone, Copy)]
pub struct Identity(pub usize);

impl LinearOperator for Identity {
    fn dim(&self) -> usize {
        self.0
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.copy_from_slice(x);
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `y += a x`
pub fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}
