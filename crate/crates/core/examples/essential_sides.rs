//! Swapped boundary layout where the interface ends on essential conditions.
//! With the matching interface operator the condition number stays bounded as
//! `k` drops; keeping the natural-end operator lets it grow.

use sdlab::experiment::{run_cond, BoundaryChoice, CondMethod, RunConfig};
use sdlab::{FractionalVariant, PhysicalParams};

pub fn run_example() -> sdlab::Result<()> {
    for variant in [FractionalVariant::Dirichlet, FractionalVariant::Neumann] {
        print!("{variant:?}:");
        for k in [1.0, 1e-2, 1e-4, 1e-8] {
            let cfg = RunConfig {
                boundary: BoundaryChoice::AppendixC,
                variant: Some(variant),
                params: PhysicalParams::new(1.0, k, 1.0)?,
                nx: 16,
                ..Default::default()
            };
            print!("  k={k:.0e}: {:.2}", run_cond(&cfg, CondMethod::Lanczos)?.condition);
        }
        println!();
    }
    Ok(())
}

fn main() -> sdlab::Result<()> {
    run_example()
}
