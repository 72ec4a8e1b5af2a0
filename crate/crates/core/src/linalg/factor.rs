//! Direct factorizations used as exact block inverses.
//!
//! Backed by faer's supernodal sparse Cholesky (SPD) and partially pivoted
//! sparse LU (symmetric indefinite saddle-point blocks).

use faer::linalg::solvers::Solve;
use faer::sparse::linalg::solvers::{Llt, Lu};
use faer::{Mat, Side};

use super::{CsrMatrix, LinearOperator};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    Spd,
    SymmetricIndefinite,
}

#[derive(Debug, Clone)]
enum Inner {
    Llt(Llt<usize, f64>),
    Lu(Lu<usize, f64>),
}

/// Reusable solver handle for `A x = b`.
#[derive(Debug, Clone)]
pub struct Factorization {
    n: usize,
    kind: FactorKind,
    inner: Inner,
}

/// Factorizes a square matrix. With [`FactorKind::Spd`] a failed Cholesky
/// pivot is reported as [`Error::Definiteness`].
pub fn factorize(a: &CsrMatrix, kind: FactorKind) -> Result<Factorization> {
    if a.nrows() != a.ncols() {
        return Err(Error::Contract(format!("cannot factorize a {}x{} matrix", a.nrows(), a.ncols())));
    }
    let n = a.nrows();
    let m = a.to_faer();
    let inner = match kind {
        FactorKind::Spd => {
            let llt = m
                .sp_cholesky(Side::Lower)
                .map_err(|e| Error::Definiteness(format!("Cholesky of {n}x{n} matrix failed: {e:?}")))?;
            Inner::Llt(llt)
        }
        FactorKind::SymmetricIndefinite => {
            let lu = m
                .sp_lu()
                .map_err(|e| Error::Factorization(format!("LU of {n}x{n} matrix failed: {e:?}")))?;
            Inner::Lu(lu)
        }
    };
    Ok(Factorization { n, kind, inner })
}

impl Factorization {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> FactorKind {
        self.kind
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }

    pub fn solve_in_place(&self, x: &mut [f64]) {
        assert_eq!(x.len(), self.n);
        let mut rhs = Mat::<f64>::from_fn(self.n, 1, |i, _| x[i]);
        match &self.inner {
            Inner::Llt(f) => f.solve_in_place(rhs.as_mut()),
            Inner::Lu(f) => f.solve_in_place(rhs.as_mut()),
        }
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = rhs[(i, 0)];
        }
    }

    /// Solves for many right-hand sides at once (columns of `b`).
    pub fn solve_mat(&self, b: &Mat<f64>) -> Mat<f64> {
        assert_eq!(b.nrows(), self.n);
        match &self.inner {
            Inner::Llt(f) => f.solve(b),
            Inner::Lu(f) => f.solve(b),
        }
    }
}

/// The factorized inverse viewed as an operator.
impl LinearOperator for Factorization {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.copy_from_slice(x);
        self.solve_in_place(y);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::norm2;
    use rand::{Rng, SeedableRng};

    #[test]
    fn diagonal_solve() {
        let a = CsrMatrix::from_diagonal(&[2.0, 3.0]);
        let f = factorize(&a, FactorKind::Spd).unwrap();
        let x = f.solve(&[2.0, 3.0]);
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 1.0).abs() < 1e-15);
    }

    fn neumann_tpfa_1d(n: usize) -> CsrMatrix {
        let h = 1.0 / n as f64;
        let t = 1.0 / h;
        let mut trip = vec![];
        for i in 0..n - 1 {
            trip.push((i, i, t));
            trip.push((i + 1, i + 1, t));
            trip.push((i, i + 1, -t));
            trip.push((i + 1, i, -t));
        }
        CsrMatrix::from_triplets(n, n, trip)
    }

    #[test]
    fn neumann_laplacian_plus_mass_is_spd() {
        let k = neumann_tpfa_1d(4);
        let a = k.add_scaled(&CsrMatrix::identity(4), 1.0);
        let f = factorize(&a, FactorKind::Spd).unwrap();
        let b = vec![1.0, -2.0, 0.5, 3.0];
        let x = f.solve(&b);
        let r: Vec<f64> = a.mul_vec(&x).iter().zip(&b).map(|(ax, bi)| ax - bi).collect();
        assert!(norm2(&r) <= 1e-12 * norm2(&b));
    }

    #[test]
    fn singular_neumann_laplacian_is_rejected() {
        // constant null space: the last pivot vanishes
        let k = neumann_tpfa_1d(4).add_scaled(&CsrMatrix::from_diagonal(&[0.0, 0.0, 0.0, -1.0]), 1.0);
        assert!(matches!(factorize(&k, FactorKind::Spd), Err(Error::Definiteness(_))));
    }

    #[test]
    fn indefinite_saddle_point() {
        // [[2, 1], [1, 0]] is symmetric indefinite
        let a = CsrMatrix::from_triplets(2, 2, vec![(0, 0, 2.0), (0, 1, 1.0), (1, 0, 1.0)]);
        let f = factorize(&a, FactorKind::SymmetricIndefinite).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let b = vec![rng.random::<f64>(), rng.random::<f64>()];
            let x = f.solve(&b);
            let r: Vec<f64> = a.mul_vec(&x).iter().zip(&b).map(|(ax, bi)| ax - bi).collect();
            assert!(norm2(&r) <= 1e-12 * norm2(&b));
        }
    }
}
