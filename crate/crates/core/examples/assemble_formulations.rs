//! Assembles the multiplier and Robin systems for the manufactured problem and
//! checks that eliminating the interface pressure turns one into the other.

use sdlab::{assemble_system, Formulation, MmsData, PhysicalParams, StaggeredMesh};

pub fn run_example() -> sdlab::Result<()> {
    let params = PhysicalParams::new(0.1, 1e-3, 1.0)?;
    let mesh = StaggeredMesh::uniform(8)?;
    let mms = MmsData::new(params);
    let (la, rhs_la) = assemble_system(&mesh, &params, Formulation::Multiplier, &mms)?;
    let (ro, rhs_ro) = assemble_system(&mesh, &params, Formulation::Robin, &mms)?;
    for (name, op) in [("multiplier", &la), ("Robin", &ro)] {
        let l = op.layout;
        println!(
            "{name:>10}: u {} p_S {} p_D {} p_Γ {} nnz {} asymmetry {:e}",
            l.n_u,
            l.n_ps,
            l.n_pd,
            l.n_pgamma,
            op.matrix.nnz(),
            op.matrix.max_asymmetry()
        );
    }

    // The multiplier rows read T_n u + T Πᵀ p_D - T p_Γ = g|F|, so p_Γ can be
    // eliminated facet by facet.
    let n = ro.dim();
    let g = la.layout.p_gamma();
    let m11 = la.matrix.submatrix(0..n, 0..n).to_dense();
    let m12 = la.matrix.submatrix(0..n, g.clone()).to_dense();
    let m21 = la.matrix.submatrix(g.clone(), 0..n).to_dense();
    let d = la.matrix.submatrix(g.clone(), g.clone()).diagonal();
    let dinv = faer::Mat::<f64>::from_fn(d.len(), d.len(), |i, j| if i == j { 1.0 / d[i] } else { 0.0 });
    let schur = &m11 - &m12 * &dinv * &m21;
    let diff = (&schur - ro.matrix.to_dense()).norm_max() / ro.matrix.to_dense().norm_max();
    println!("relative difference after elimination: {diff:e}");

    let f_la = rhs_la.flatten();
    let corr = &m12 * &dinv * faer::Mat::<f64>::from_fn(g.len(), 1, |i, _| f_la[g.start + i]);
    let f_ro = rhs_ro.flatten();
    let rhs_diff = (0..n).map(|i| (f_la[i] - corr[(i, 0)] - f_ro[i]).abs()).fold(0.0, f64::max);
    println!("largest right-hand side difference: {rhs_diff:e}");
    Ok(())
}

fn main() -> sdlab::Result<()> {
    run_example()
}
