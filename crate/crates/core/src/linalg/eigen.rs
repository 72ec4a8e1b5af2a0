//! Dense symmetric generalized eigenproblem `A u = λ M u` with diagonal `M > 0`.

use faer::{Mat, Side};

use crate::error::{Error, Result};

/// Largest problem accepted by the dense routines.
pub const DENSE_EIGEN_LIMIT: usize = 4096;

/// Eigenpairs of `A U = M U diag(E)` with `Uᵀ M U = I` and `E` ascending.
#[derive(Debug, Clone)]
pub struct DenseEigenDecomp {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Mat<f64>,
    pub mass: Vec<f64>,
}

impl DenseEigenDecomp {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Column `i` of `U`.
    pub fn eigenvector(&self, i: usize) -> Vec<f64> {
        (0..self.len()).map(|r| self.eigenvectors[(r, i)]).collect()
    }

    /// `max |(UᵀMU − I)_ij|`
    pub fn orthonormality_defect(&self) -> f64 {
        let n = self.len();
        let u = &self.eigenvectors;
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let mut s = 0.0;
                for r in 0..n {
                    s += u[(r, a)] * self.mass[r] * u[(r, b)];
                }
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }

    /// `max |A U − M U diag(E)|` relative to `max |A|`.
    pub fn relative_residual(&self, a: &Mat<f64>) -> f64 {
        let n = self.len();
        let au = a * &self.eigenvectors;
        let scale = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].abs())
            .fold(0.0f64, f64::max)
            .max(f64::MIN_POSITIVE);
        let mut worst = 0.0f64;
        for j in 0..n {
            for i in 0..n {
                let r = au[(i, j)] - self.mass[i] * self.eigenvectors[(i, j)] * self.eigenvalues[j];
                worst = worst.max(r.abs());
            }
        }
        worst / scale
    }
}

/// Solves `A u = λ M u` by symmetric scaling `M^{-1/2} A M^{-1/2}` and a dense
/// self-adjoint eigensolver.
pub fn dense_sym_gevp(a: &Mat<f64>, mass: &[f64]) -> Result<DenseEigenDecomp> {
    let n = mass.len();
    if a.nrows() != n || a.ncols() != n {
        return Err(Error::Contract(format!(
            "matrix is {}x{} but mass has {n} entries",
            a.nrows(),
            a.ncols()
        )));
    }
    if n > DENSE_EIGEN_LIMIT {
        return Err(Error::Capability(format!(
            "dense eigensolver limited to {DENSE_EIGEN_LIMIT} unknowns, got {n}"
        )));
    }
    if let Some((i, m)) = mass.iter().enumerate().find(|(_, &m)| !(m > 0.0 && m.is_finite())) {
        return Err(Error::Parameter(format!("mass entry {i} is not positive ({m})")));
    }
    let inv_sqrt: Vec<f64> = mass.iter().map(|m| 1.0 / m.sqrt()).collect();
    // symmetrize explicitly so round-off in the input cannot leak into the solver
    let c = Mat::<f64>::from_fn(n, n, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]) * inv_sqrt[i] * inv_sqrt[j]);
    let evd = c
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Factorization(format!("eigensolver failed: {e:?}")))?;
    let s = evd.S();
    let v = evd.U();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| s[p].partial_cmp(&s[q]).expect("finite eigenvalues"));
    let eigenvalues = order.iter().map(|&p| s[p]).collect();
    let eigenvectors = Mat::<f64>::from_fn(n, n, |i, j| inv_sqrt[i] * v[(i, order[j])]);
    Ok(DenseEigenDecomp {
        eigenvalues,
        eigenvectors,
        mass: mass.to_vec(),
    })
}

/// Eigenvalues only of a dense symmetric matrix, ascending.
pub fn dense_sym_eigenvalues(a: &Mat<f64>) -> Result<Vec<f64>> {
    let mut ev = a
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Factorization(format!("eigensolver failed: {e:?}")))?;
    ev.sort_by(|p, q| p.partial_cmp(q).expect("finite eigenvalues"));
    Ok(ev)
}
