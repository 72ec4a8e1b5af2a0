//! One preconditioned MINRES solve of the manufactured problem per
//! formulation, starting from a seeded random guess.

use sdlab::precond::build_preconditioner;
use sdlab::{
    assemble_system, minres, BlockVector, Formulation, FractionalVariant, MinresOptions, MmsData, PhysicalParams,
    PrecondKind, StaggeredMesh,
};

pub fn run_example() -> sdlab::Result<()> {
    let params = PhysicalParams::unit();
    let mesh = StaggeredMesh::uniform(16)?;
    let mms = MmsData::new(params);
    for formulation in [Formulation::Multiplier, Formulation::Robin] {
        let (op, rhs) = assemble_system(&mesh, &params, formulation, &mms)?;
        let b = build_preconditioner(&op, &mesh, &params, PrecondKind::Exact, FractionalVariant::Neumann)?;
        let x0 = BlockVector::random(&op.layout, 1).flatten();
        let (x, report) = minres(&op, &b, &rhs.flatten(), &x0, &MinresOptions::default())?;
        let x = BlockVector::unflatten(&op.layout, &x)?;
        let e = sdlab::mms::error_norm_fv(&x, &op, &mesh, &mms);
        println!(
            "{formulation:?}: {} iterations, reduction {:.1e}, errors u_x {:.2e} u_y {:.2e} p_S {:.2e} p_D {:.2e}",
            report.iterations,
            report.relative_residual(),
            e.ux,
            e.uy,
            e.p_s,
            e.p_d
        );
    }
    Ok(())
}

fn main() -> sdlab::Result<()> {
    run_example()
}
