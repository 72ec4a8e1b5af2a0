//! Condition numbers `max|θ| / min|θ|` of `A x = θ B⁻¹ x`.

use faer::{Mat, Side};
use rand::{Rng, SeedableRng};

use super::{dense_sym_eigenvalues, dense_sym_gevp, dot, CsrMatrix, LinearOperator};
use crate::error::{Error, Result};

/// Largest system handled by [`condition_number`]. Three dense copies of the
/// operator must fit in memory.
pub const COND_DENSE_LIMIT: usize = 8000;

/// Exact condition number through a dense eigensolve of `Lᵀ A L`, `B = L Lᵀ`.
///
/// `B` is materialized column by column, so this costs `n` preconditioner
/// applications plus `O(n³)` dense work.
pub fn condition_number(a: &CsrMatrix, b: &dyn LinearOperator) -> Result<f64> {
    let n = a.nrows();
    if a.ncols() != n || b.dim() != n {
        return Err(Error::Contract(format!("shape mismatch: A {}x{}, B {}", a.nrows(), a.ncols(), b.dim())));
    }
    if n > COND_DENSE_LIMIT {
        return Err(Error::Capability(format!(
            "dense condition number limited to {COND_DENSE_LIMIT} unknowns, got {n}; use the Lanczos estimator"
        )));
    }
    let mut bd = Mat::<f64>::zeros(n, n);
    let mut e = vec![0.0; n];
    let mut col = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        b.apply(&e, &mut col);
        e[j] = 0.0;
        for i in 0..n {
            bd[(i, j)] = col[i];
        }
    }
    let bd = Mat::<f64>::from_fn(n, n, |i, j| 0.5 * (bd[(i, j)] + bd[(j, i)]));
    let llt = bd
        .llt(Side::Lower)
        .map_err(|e| Error::Preconditioner(format!("preconditioner is not positive definite: {e:?}")))?;
    let l = llt.L().to_owned();
    drop(bd);
    let ad = a.to_dense();
    let c = l.transpose() * (&ad * &l);
    drop(ad);
    let ev = dense_sym_eigenvalues(&c)?;
    ratio(ev.iter().map(|v| v.abs()))
}

fn ratio(abs: impl Iterator<Item = f64>) -> Result<f64> {
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for v in abs {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !(lo > 0.0) {
        return Err(Error::Definiteness("preconditioned operator is singular".into()));
    }
    Ok(hi / lo)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LanczosOptions {
    pub max_steps: usize,
    /// Relative Ritz residual of both extreme values below which iteration stops.
    pub tol: f64,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self { max_steps: 400, tol: 1e-9, seed: 17 }
    }
}

/// Estimates the condition number of `BA` with a fully reorthogonalized
/// Lanczos process on `(BA)²`, which maps the smallest `|θ|` to the bottom of
/// a positive spectrum.
///
/// The iteration is the preconditioned Lanczos recurrence for the pencil
/// `(A B A, B⁻¹)`: dual vectors `p` with `ABA` applied, primal vectors `q = B p`.
/// Ritz values approach the extremes from inside, so the estimate is a lower
/// bound that converges to the exact value.
pub fn lanczos_condition_number(a: &dyn LinearOperator, b: &dyn LinearOperator, opts: &LanczosOptions) -> Result<f64> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::Contract(format!("shape mismatch: A {n}, B {}", b.dim())));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
    let mut p: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    let mut q = b.apply_vec(&p);
    let nrm = dot(&p, &q);
    if !(nrm > 0.0) {
        return Err(Error::Preconditioner("preconditioner is not positive definite".into()));
    }
    let s = 1.0 / nrm.sqrt();
    p.iter_mut().for_each(|v| *v *= s);
    q.iter_mut().for_each(|v| *v *= s);

    let mut ps: Vec<Vec<f64>> = vec![p];
    let mut qs: Vec<Vec<f64>> = vec![q];
    let mut alphas: Vec<f64> = vec![];
    let mut betas: Vec<f64> = vec![];
    let mut t1 = vec![0.0; n];
    let mut t2 = vec![0.0; n];
    let steps = opts.max_steps.min(n);
    for j in 0..steps {
        // p̃ = A B A q_j
        a.apply(&qs[j], &mut t1);
        b.apply(&t1, &mut t2);
        let mut pt = a.apply_vec(&t2);
        let alpha = dot(&qs[j], &pt);
        alphas.push(alpha);
        for (pi, v) in pt.iter_mut().zip(&ps[j]) {
            *pi -= alpha * v;
        }
        if j > 0 {
            let bj = betas[j - 1];
            for (pi, v) in pt.iter_mut().zip(&ps[j - 1]) {
                *pi -= bj * v;
            }
        }
        for _ in 0..2 {
            for (pk, qk) in ps.iter().zip(&qs) {
                let c = dot(qk, &pt);
                for (pi, v) in pt.iter_mut().zip(pk) {
                    *pi -= c * v;
                }
            }
        }
        let qt = b.apply_vec(&pt);
        let beta_sq = dot(&pt, &qt).max(0.0);
        let beta = beta_sq.sqrt();

        let (lo, hi, res_lo, res_hi) = extreme_ritz(&alphas, &betas, beta)?;
        let scale = alphas.iter().map(|a| a.abs()).fold(0.0, f64::max);
        let exhausted = !(beta > 1e-14 * scale);
        let done = res_lo <= opts.tol * lo.abs() && res_hi <= opts.tol * hi.abs();
        if done || exhausted || j + 1 == steps {
            return finish(lo, hi);
        }
        betas.push(beta);
        ps.push(pt.iter().map(|v| v / beta).collect());
        qs.push(qt.iter().map(|v| v / beta).collect());
    }
    unreachable!("loop returns on its final step")
}

fn finish(lo: f64, hi: f64) -> Result<f64> {
    if !(lo > 0.0) {
        return Err(Error::Definiteness("preconditioned operator is singular".into()));
    }
    Ok((hi / lo).sqrt())
}

/// Extreme Ritz values with their residual bounds `β |s_last|`.
fn extreme_ritz(alpha: &[f64], beta: &[f64], beta_next: f64) -> Result<(f64, f64, f64, f64)> {
    let m = alpha.len();
    let t = Mat::<f64>::from_fn(m, m, |i, j| {
        if i == j {
            alpha[i]
        } else if i == j + 1 {
            beta[j]
        } else if j == i + 1 {
            beta[i]
        } else {
            0.0
        }
    });
    let d = dense_sym_gevp(&t, &vec![1.0; m])?;
    let res = |k: usize| beta_next * d.eigenvectors[(m - 1, k)].abs();
    Ok((d.eigenvalues[0], d.eigenvalues[m - 1], res(0), res(m - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{factorize, FactorKind, Identity};

    #[test]
    fn diagonal_example() {
        let a = CsrMatrix::from_diagonal(&[1.0, 4.0]);
        assert!((condition_number(&a, &Identity(2)).unwrap() - 4.0).abs() < 1e-12);
        let est = lanczos_condition_number(&a, &Identity(2), &LanczosOptions::default()).unwrap();
        assert!((est - 4.0).abs() < 1e-10);
    }

    #[test]
    fn exact_inverse_gives_one() {
        let a = CsrMatrix::from_triplets(3, 3, vec![(0, 0, 4.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 3.0), (2, 2, 2.0)]);
        let f = factorize(&a, FactorKind::Spd).unwrap();
        assert!((condition_number(&a, &f).unwrap() - 1.0).abs() < 1e-8);
        assert!((lanczos_condition_number(&a, &f, &LanczosOptions::default()).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn indefinite_uses_absolute_values() {
        let a = CsrMatrix::from_diagonal(&[-3.0, 0.5, 2.0]);
        assert!((condition_number(&a, &Identity(3)).unwrap() - 6.0).abs() < 1e-12);
        let est = lanczos_condition_number(&a, &Identity(3), &LanczosOptions::default()).unwrap();
        assert!((est - 6.0).abs() < 1e-9);
    }

    #[test]
    fn lanczos_agrees_with_dense_on_preconditioned_saddle_point() {
        // [[K, Bᵀ], [B, 0]] with a diagonal preconditioner
        let n = 30;
        let m = 10;
        let mut t = vec![];
        for i in 0..n {
            t.push((i, i, 2.0 + (i % 5) as f64));
            if i + 1 < n {
                t.push((i, i + 1, -1.0));
                t.push((i + 1, i, -1.0));
            }
        }
        for r in 0..m {
            for c in [3 * r, 3 * r + 1] {
                t.push((n + r, c, 1.0));
                t.push((c, n + r, 1.0));
            }
        }
        let a = CsrMatrix::from_triplets(n + m, n + m, t);
        let d: Vec<f64> = (0..n + m).map(|i| if i < n { 0.25 } else { 1.5 }).collect();
        let b = CsrMatrix::from_diagonal(&d);
        let dense = condition_number(&a, &b).unwrap();
        let est = lanczos_condition_number(&a, &b, &LanczosOptions::default()).unwrap();
        assert!((est - dense).abs() <= 1e-6 * dense, "{est} vs {dense}");
    }

    #[test]
    fn size_limit_is_a_capability_error() {
        let a = CsrMatrix::identity(COND_DENSE_LIMIT + 1);
        assert!(matches!(condition_number(&a, &Identity(COND_DENSE_LIMIT + 1)), Err(Error::Capability(_))));
    }
}
