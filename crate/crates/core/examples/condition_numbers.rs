//! Condition numbers of the preconditioned multiplier system: the dense
//! generalized eigenvalue route and the Lanczos estimate side by side.

use sdlab::experiment::{run_cond, CondMethod, RunConfig};
use sdlab::PhysicalParams;

pub fn run_example() -> sdlab::Result<()> {
    for (mu, k, alpha) in [(1.0, 1.0, 1.0), (1e-5, 1e-14, 100.0), (10.0, 1e-4, 0.0)] {
        let params = PhysicalParams::new(mu, k, alpha)?;
        for nx in [8, 16] {
            let cfg = RunConfig { params, nx, ..Default::default() };
            let dense = run_cond(&cfg, CondMethod::Dense)?;
            let lanczos = run_cond(&cfg, CondMethod::Lanczos)?;
            println!(
                "mu={mu:e} k={k:e} alpha={alpha} nx={nx:>2} dim={:>5}: dense {:.4} lanczos {:.4}",
                dense.dim, dense.condition, lanczos.condition
            );
        }
    }
    Ok(())
}

fn main() -> sdlab::Result<()> {
    run_example()
}
