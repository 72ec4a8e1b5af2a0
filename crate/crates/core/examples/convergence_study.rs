//! Grid refinement against the manufactured solution; prints the error table
//! as CSV with observed orders.

use sdlab::experiment::{run_convergence, RunConfig};
use sdlab::io::convergence_csv;
use sdlab::Formulation;

pub fn run_example() -> sdlab::Result<()> {
    for formulation in [Formulation::Multiplier, Formulation::Robin] {
        let cfg = RunConfig { formulation, ..Default::default() };
        let rows = run_convergence(&cfg, &[8, 16, 32])?;
        println!("{formulation:?}");
        print!("{}", convergence_csv(&rows)?);
    }
    Ok(())
}

fn main() -> sdlab::Result<()> {
    run_example()
}
