//! Builds the two-subdomain staggered grid and reports unknown counts for both
//! boundary layouts.

use sdlab::assembly::VelocityDofs;
use sdlab::{BoundaryLayout, StaggeredMesh};

pub fn run_example() -> sdlab::Result<()> {
    for (name, layout) in [
        ("interface meets natural sides", BoundaryLayout::interface_meets_neumann()),
        ("interface meets essential sides", BoundaryLayout::interface_meets_dirichlet()),
    ] {
        let mesh = StaggeredMesh::uniform(8)?.with_boundary(layout);
        let dofs = VelocityDofs::new(&mesh);
        println!("{name}");
        println!("  x-faces {} y-faces {} free velocities {}", mesh.n_ux(), mesh.n_uy(), dofs.n_free());
        println!("  Stokes cells {} Darcy cells {}", mesh.n_stokes_cells(), mesh.n_darcy_cells());
        println!("  interface facets {} (h_K = {})", mesh.n_interface_facets(), mesh.h_k());
    }
    let mesh = StaggeredMesh::uniform(4)?;
    for f in mesh.interface_facets() {
        println!("facet {} at x = {:.3}: Darcy cell {}, Stokes cell {}", f.id, f.center[0], f.darcy_cell, f.stokes_cell);
    }
    Ok(())
}

fn main() -> sdlab::Result<()> {
    run_example()
}
