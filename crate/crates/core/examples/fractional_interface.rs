//! The spectral interface operator `S = (2μ)⁻¹ M U Λ^{-1/2} Uᵀ M` on the
//! facets of `Γ`, for natural and essential end conditions.

use sdlab::fractional::{build_fractional, fractional_for_mesh, interface_laplacian_1d};
use sdlab::{FractionalVariant, StaggeredMesh};

pub fn run_example() -> sdlab::Result<()> {
    // Two facets of length 1/2: the generalized eigenvalues are 1 and 9.
    let (a, m) = interface_laplacian_1d(&[0.5, 0.5], FractionalVariant::Neumann)?;
    let s = build_fractional(&a, &m, 0.5, -0.5, FractionalVariant::Neumann)?;
    println!("eigenvalues {:?}", s.decomp.eigenvalues);
    println!("S = [[{:.6}, {:.6}], [{:.6}, {:.6}]]", s.get(0, 0), s.get(0, 1), s.get(1, 0), s.get(1, 1));
    println!("M-orthonormality defect {:e}", s.decomp.orthonormality_defect());

    let mesh = StaggeredMesh::uniform(16)?;
    for variant in [FractionalVariant::Neumann, FractionalVariant::Dirichlet] {
        let s = fractional_for_mesh(&mesh, 1.0, variant)?;
        let ev = &s.decomp.eigenvalues;
        println!("{variant:?}: {} facets, eigenvalues in [{:.4}, {:.1}]", s.dim(), ev[0], ev[ev.len() - 1]);
    }
    Ok(())
}

fn main() -> sdlab::Result<()> {
    run_example()
}
