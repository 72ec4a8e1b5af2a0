//! MINRES on a matrix-free operator: the 1D Laplacian with a shifted diagonal
//! preconditioner.

use sdlab::linalg::{minres, symmetry_defect, LinearOperator, MinresOptions};

struct Laplacian1d(usize);

impl LinearOperator for Laplacian1d {
    fn dim(&self) -> usize {
        self.0
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let n = self.0;
        for i in 0..n {
            let left = if i > 0 { x[i - 1] } else { 0.0 };
            let right = if i + 1 < n { x[i + 1] } else { 0.0 };
            y[i] = 2.0 * x[i] - left - right;
        }
    }
}

struct Jacobi(usize);

impl LinearOperator for Jacobi {
    fn dim(&self) -> usize {
        self.0
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = 0.5 * xi;
        }
    }
}

pub fn run_example() -> sdlab::Result<()> {
    let n = 200;
    let a = Laplacian1d(n);
    println!("symmetry defect {:e}", symmetry_defect(&a, 4, 1));
    let b = vec![1.0; n];
    let (x, report) = minres(&a, &Jacobi(n), &b, &vec![0.0; n], &MinresOptions { reduction: 1e-10, ..Default::default() })?;
    let h = 1.0 / (n + 1) as f64;
    // -u'' = 1 scaled by h², u = x(1-x)/2 at the nodes
    let err = (0..n)
        .map(|i| {
            let t = (i + 1) as f64 * h;
            (x[i] * h * h - 0.5 * t * (1.0 - t)).abs()
        })
        .fold(0.0, f64::max);
    println!("{} iterations, max nodal error {err:.2e}", report.iterations);
    Ok(())
}

fn main() -> sdlab::Result<()> {
    run_example()
}
