//! A reduced robustness sweep over `(S, Da, α, nx)`.
//! Set `SDLAB_MAX_WORKERS` to cap the thread count.

use sdlab::experiment::{run_sweep, workers_from_env, RunConfig};
use sdlab::io::solve_csv;
use sdlab::params::SweepRanges;

pub fn run_example() -> sdlab::Result<()> {
    let ranges = SweepRanges { s: vec![1e1, 1e-5], da: vec![1.0, 1e-8, 1e-14], alpha: vec![0.0, 100.0], nx: vec![8, 16] };
    let rows = run_sweep(&RunConfig::default(), &ranges, workers_from_env()?)?;
    print!("{}", solve_csv(&rows)?);
    let max = rows.iter().map(|r| r.iterations).max().unwrap_or(0);
    println!("# {} runs, all converged: {}, max iterations {max}", rows.len(), rows.iter().all(|r| r.converged));
    Ok(())
}

fn main() -> sdlab::Result<()> {
    run_example()
}
