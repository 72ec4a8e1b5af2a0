//! Mapping `(S, Da, α)` to `(μ, k, α)` and the derived interface coefficients.

use sdlab::params::{from_dimensionless, Scales};
use sdlab::DimensionlessParams;

pub fn run_example() -> sdlab::Result<()> {
    for (s, da, alpha) in [(1.0, 1.0, 1.0), (10.0, 1e-10, 1.0), (1.0, 4e-4, 2.26)] {
        let p = from_dimensionless(&DimensionlessParams::new(s, da, alpha))?;
        println!("S={s:e} Da={da:e} alpha={alpha}: mu={:e} k={:e} kappa={:e} beta_tau={:.4}", p.mu, p.k, p.kappa, p.beta_tau);
    }
    let d = DimensionlessParams {
        scales: Scales { u0: 1e-3, delta_p0: 10.0, l0: 1e-2, rho0: 1e3 },
        ..DimensionlessParams::new(1e-1, 1e-6, 1.0)
    };
    let p = from_dimensionless(&d)?;
    println!("with physical scales: mu={:e} k={:e}", p.mu, p.k);
    Ok(())
}

fn main() -> sdlab::Result<()> {
    run_example()
}
