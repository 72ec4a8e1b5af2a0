//! Preconditioned minimal residual method (Paige–Saunders recurrences).

use std::time::Instant;

use rand::{Rng, SeedableRng};

use super::{dot, norm2, LinearOperator};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinresOptions {
    /// Required reduction of the preconditioned residual norm.
    pub reduction: f64,
    pub max_iter: usize,
    /// Probe `⟨Av, w⟩ = ⟨v, Aw⟩` with random vectors before iterating.
    pub check_symmetry: bool,
}

impl Default for MinresOptions {
    fn default() -> Self {
        Self { reduction: 1e-8, max_iter: 10_000, check_symmetry: false }
    }
}

/// Outcome of one Krylov solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub iterations: usize,
    /// `‖r_k‖_B` for `k = 0, 1, …, iterations`.
    pub residual_history: Vec<f64>,
    pub converged: bool,
    pub wall_time: f64,
}

impl SolveReport {
    pub fn relative_residual(&self) -> f64 {
        match (self.residual_history.first(), self.residual_history.last()) {
            (Some(&r0), Some(&rk)) if r0 > 0.0 => rk / r0,
            _ => 0.0,
        }
    }

    /// Whether the residual history never increases.
    pub fn is_monotone(&self) -> bool {
        self.residual_history.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Relative symmetry defect `|⟨Av,w⟩ − ⟨v,Aw⟩| / (‖A‖-ish scale)` over a few random probes.
pub fn symmetry_defect(a: &dyn LinearOperator, probes: usize, seed: u64) -> f64 {
    let n = a.dim();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..probes {
        let v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        let w: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
        let av = a.apply_vec(&v);
        let aw = a.apply_vec(&w);
        let scale = (norm2(&av) * norm2(&w)).max(norm2(&aw) * norm2(&v)).max(f64::MIN_POSITIVE);
        worst = worst.max((dot(&av, &w) - dot(&v, &aw)).abs() / scale);
    }
    worst
}

/// Solves `A x = b` with symmetric `A` and symmetric positive definite
/// preconditioner `B`, starting from `x0`.
///
/// Convergence is declared when `‖r_k‖_B ≤ reduction · ‖r_0‖_B` with
/// `‖r‖_B = (rᵀ B r)^{1/2}`, the norm MinRes minimizes.
pub fn minres(
    a: &dyn LinearOperator,
    b_pre: &dyn LinearOperator,
    rhs: &[f64],
    x0: &[f64],
    opts: &MinresOptions,
) -> Result<(Vec<f64>, SolveReport)> {
    let start = Instant::now();
    let n = a.dim();
    if b_pre.dim() != n || rhs.len() != n || x0.len() != n {
        return Err(Error::Contract(format!(
            "shape mismatch: A {n}, B {}, b {}, x0 {}",
            b_pre.dim(),
            rhs.len(),
            x0.len()
        )));
    }
    if opts.check_symmetry {
        let d = symmetry_defect(a, 3, 0x5eed);
        if d > 1e-10 {
            return Err(Error::Contract(format!("operator is not symmetric (relative defect {d:.3e})")));
        }
    }

    let mut x = x0.to_vec();
    let mut r1 = a.apply_vec(&x);
    for (ri, bi) in r1.iter_mut().zip(rhs) {
        *ri = bi - *ri;
    }
    let mut y = b_pre.apply_vec(&r1);
    let beta1_sq = dot(&r1, &y);
    check_preconditioned(&y, beta1_sq)?;
    let beta1 = beta1_sq.sqrt();
    let mut history = vec![beta1];
    if beta1 == 0.0 {
        return Ok((x, report(0, history, true, start)));
    }

    let mut r2 = r1.clone();
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut w1 = vec![0.0; n];
    let mut w2 = vec![0.0; n];
    let (mut oldb, mut beta) = (0.0, beta1);
    let (mut dbar, mut epsln, mut phibar) = (0.0, 0.0, beta1);
    let (mut cs, mut sn) = (-1.0f64, 0.0f64);
    let tol = opts.reduction * beta1;

    for itn in 1..=opts.max_iter {
        let s = 1.0 / beta;
        for (vi, yi) in v.iter_mut().zip(&y) {
            *vi = s * yi;
        }
        a.apply(&v, &mut y);
        if itn >= 2 {
            let c = beta / oldb;
            for (yi, ri) in y.iter_mut().zip(&r1) {
                *yi -= c * ri;
            }
        }
        let alfa = dot(&v, &y);
        let c = alfa / beta;
        for (yi, ri) in y.iter_mut().zip(&r2) {
            *yi -= c * ri;
        }
        std::mem::swap(&mut r1, &mut r2);
        r2.copy_from_slice(&y);
        b_pre.apply(&r2, &mut y);
        oldb = beta;
        let beta_sq = dot(&r2, &y);
        check_preconditioned(&y, beta_sq)?;
        beta = beta_sq.sqrt();

        let oldeps = epsln;
        let delta = cs * dbar + sn * alfa;
        let gbar = sn * dbar - cs * alfa;
        epsln = sn * beta;
        dbar = -cs * beta;
        let gamma = gbar.hypot(beta).max(f64::EPSILON);
        cs = gbar / gamma;
        sn = beta / gamma;
        let phi = cs * phibar;
        phibar *= sn;

        let denom = 1.0 / gamma;
        std::mem::swap(&mut w1, &mut w2);
        std::mem::swap(&mut w2, &mut w);
        for i in 0..n {
            w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) * denom;
            x[i] += phi * w[i];
        }
        history.push(phibar);
        if phibar <= tol {
            return Ok((x, report(itn, history, true, start)));
        }
        if beta == 0.0 {
            // invariant subspace found: the iterate is exact in exact arithmetic
            return Ok((x, report(itn, history, true, start)));
        }
    }
    Ok((x, report(opts.max_iter, history, false, start)))
}

fn check_preconditioned(y: &[f64], inner: f64) -> Result<()> {
    if y.iter().any(|v| !v.is_finite()) || !inner.is_finite() {
        return Err(Error::Preconditioner("preconditioner produced a non-finite value".into()));
    }
    if inner < 0.0 {
        return Err(Error::Preconditioner(format!("preconditioner is not positive definite (rᵀBr = {inner:.3e})")));
    }
    Ok(())
}

fn report(iterations: usize, residual_history: Vec<f64>, converged: bool, start: Instant) -> SolveReport {
    SolveReport { iterations, residual_history, converged, wall_time: start.elapsed().as_secs_f64() }
}
