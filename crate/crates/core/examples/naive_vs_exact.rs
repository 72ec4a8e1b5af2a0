//! Dropping the fractional interface term: iterations of the naive baseline
//! grow as the permeability decreases, the full preconditioner stays flat.

use sdlab::experiment::{run_solve, RunConfig};
use sdlab::{PhysicalParams, PrecondKind};

pub fn run_example() -> sdlab::Result<()> {
    println!("{:>8} {:>6} {:>6}", "k", "naive", "exact");
    for k in [1.0, 1e-2, 1e-4, 1e-6] {
        let params = PhysicalParams::new(1.0, k, 1.0)?;
        let mut its = vec![];
        for precond in [PrecondKind::Naive, PrecondKind::Exact] {
            let cfg = RunConfig { precond, params, nx: 32, max_iter: 2000, ..Default::default() };
            its.push(run_solve(&cfg)?.iterations);
        }
        println!("{k:>8.0e} {:>6} {:>6}", its[0], its[1]);
    }
    Ok(())
}

fn main() -> sdlab::Result<()> {
    run_example()
}
