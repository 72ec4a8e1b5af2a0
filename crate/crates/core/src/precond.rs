//! Block-diagonal preconditioners built from exact block inverses.

use std::ops::Range;

use rand::{Rng, SeedableRng};

use crate::assembly::{BlockOperator, Formulation};
use crate::error::{Error, Result};
use crate::fractional::{fractional_for_mesh, FractionalVariant, SpectralFractionalOp};
use crate::linalg::{dot, factorize, CsrMatrix, FactorKind, Factorization, LinearOperator, TripletList};
use crate::mesh::StaggeredMesh;
use crate::params::PhysicalParams;

/// Full preconditioner or the baseline without the fractional interface term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PrecondKind {
    #[default]
    Exact,
    Naive,
}

impl PrecondKind {
    pub fn short_name(&self) -> &'static str {
        match self {
            PrecondKind::Exact => "exact",
            PrecondKind::Naive => "naive",
        }
    }
}

impl std::str::FromStr for PrecondKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(PrecondKind::Exact),
            "naive" => Ok(PrecondKind::Naive),
            _ => Err(Error::Config(format!("unknown preconditioner '{s}' (expected exact or naive)"))),
        }
    }
}

/// How one diagonal block is applied.
#[derive(Debug, Clone)]
pub enum BlockApplier {
    Solve(Factorization),
    Diagonal(Vec<f64>),
    /// `P₁⁻¹ r + P₂⁻¹ r`
    SumOfSolves(Factorization, Factorization),
}

impl BlockApplier {
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        match self {
            BlockApplier::Solve(f) => {
                y.copy_from_slice(x);
                f.solve_in_place(y);
            }
            BlockApplier::Diagonal(d) => {
                for ((yi, xi), di) in y.iter_mut().zip(x).zip(d) {
                    *yi = di * xi;
                }
            }
            BlockApplier::SumOfSolves(p1, p2) => {
                y.copy_from_slice(x);
                p1.solve_in_place(y);
                let mut z = x.to_vec();
                p2.solve_in_place(&mut z);
                for (yi, zi) in y.iter_mut().zip(&z) {
                    *yi += zi;
                }
            }
        }
    }
}

/// `B = diag(B_1, …, B_m)` acting on contiguous index ranges.
#[derive(Debug, Clone)]
pub struct BlockPreconditioner {
    pub formulation: Formulation,
    pub kind: PrecondKind,
    n: usize,
    blocks: Vec<(Range<usize>, BlockApplier)>,
}

impl BlockPreconditioner {
    pub fn blocks(&self) -> &[(Range<usize>, BlockApplier)] {
        &self.blocks
    }

    /// Largest relative `|⟨Bx,y⟩ − ⟨x,By⟩|` over random pairs.
    pub fn symmetry_probe(&self, probes: usize, seed: u64) -> f64 {
        crate::linalg::symmetry_defect(self, probes, seed)
    }

    /// Smallest `⟨Bx,x⟩/⟨x,x⟩` over random vectors restricted to each block.
    pub fn positivity_probe(&self, probes: usize, seed: u64) -> f64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut worst = f64::INFINITY;
        for (range, applier) in &self.blocks {
            let m = range.len();
            let mut y = vec![0.0; m];
            for _ in 0..probes {
                let x: Vec<f64> = (0..m).map(|_| rng.random::<f64>() - 0.5).collect();
                applier.apply(&x, &mut y);
                worst = worst.min(dot(&x, &y) / dot(&x, &x));
            }
        }
        worst
    }
}

impl LinearOperator for BlockPreconditioner {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (range, applier) in &self.blocks {
            applier.apply(&x[range.clone()], &mut y[range.clone()]);
        }
    }
}

fn spd(a: &CsrMatrix, what: &str) -> Result<Factorization> {
    factorize(a, FactorKind::Spd).map_err(|e| match e {
        Error::Definiteness(m) => Error::Preconditioner(format!("{what} block is not positive definite ({m})")),
        other => other,
    })
}

fn pressure_scaling(mesh: &StaggeredMesh, params: &PhysicalParams) -> Vec<f64> {
    vec![2.0 * params.mu / mesh.stokes_cell_volume(); mesh.n_stokes_cells()]
}

/// `[[K_D + R + ΠTΠᵀ, −ΠT], [−TΠᵀ, T + S]]` on the `(p_D, p_Γ)` unknowns.
fn coupled_interface_block(op: &BlockOperator, regularization: &CsrMatrix, s: Option<&SpectralFractionalOp>) -> CsrMatrix {
    let l = op.layout;
    let n_pd = l.n_pd;
    let mut t = TripletList::new(n_pd + l.n_pgamma, n_pd + l.n_pgamma);
    t.push_block(0, 0, &op.darcy);
    t.push_block(0, 0, regularization);
    for (f, (&c, &tg)) in op.interface_cells.iter().zip(&op.interface_transmissibility).enumerate() {
        t.push(c, c, tg);
        t.push(c, n_pd + f, -tg);
        t.push(n_pd + f, c, -tg);
        t.push(n_pd + f, n_pd + f, tg);
    }
    if let Some(s) = s {
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                t.push(n_pd + i, n_pd + j, s.get(i, j));
            }
        }
    }
    t.into_csr()
}

/// Preconditioner for the multiplier formulation: velocity solve, scaled
/// pressure mass, and one coupled solve for `(p_D, p_Γ)` with
/// `[[K_D + ΠTΠᵀ, −ΠT], [−TΠᵀ, T + S]]`.
pub fn build_precond_la(
    op: &BlockOperator,
    mesh: &StaggeredMesh,
    params: &PhysicalParams,
    s: &SpectralFractionalOp,
) -> Result<BlockPreconditioner> {
    if op.formulation != Formulation::Multiplier {
        return Err(Error::Config("multiplier preconditioner needs the multiplier system".into()));
    }
    let l = op.layout;
    if s.dim() != l.n_pgamma {
        return Err(Error::Config(format!("fractional operator of size {} for {} facets", s.dim(), l.n_pgamma)));
    }
    let vel = spd(&op.velocity, "velocity")?;
    let coupled = spd(&coupled_interface_block(op, &CsrMatrix::zeros(l.n_pd, l.n_pd), Some(s)), "coupled Darcy/interface")?;
    Ok(BlockPreconditioner {
        formulation: Formulation::Multiplier,
        kind: PrecondKind::Exact,
        n: l.total(),
        blocks: vec![
            (l.u(), BlockApplier::Solve(vel)),
            (l.p_s(), BlockApplier::Diagonal(pressure_scaling(mesh, params))),
            (l.p_d().start..l.p_gamma().end, BlockApplier::Solve(coupled)),
        ],
    })
}

/// Preconditioner for the Robin formulation; the Darcy block is the sum of
/// `(K_D + ΠTΠᵀ)⁻¹` and `(K_D + ΠᵀSΠ)⁻¹`.
pub fn build_precond_ro(
    op: &BlockOperator,
    mesh: &StaggeredMesh,
    params: &PhysicalParams,
    s_lifted: &CsrMatrix,
) -> Result<BlockPreconditioner> {
    if op.formulation != Formulation::Robin {
        return Err(Error::Config("Robin preconditioner needs the Robin system".into()));
    }
    let l = op.layout;
    if s_lifted.nrows() != l.n_pd || s_lifted.ncols() != l.n_pd {
        return Err(Error::Config("lifted fractional operator does not match the Darcy block".into()));
    }
    let vel = spd(&op.velocity, "velocity")?;
    let p1 = spd(&op.darcy_with_interface(&op.interface_transmissibility), "Darcy (interface mass)")?;
    let p2 = spd(&op.darcy.add_scaled(s_lifted, 1.0), "Darcy (fractional)")?;
    Ok(BlockPreconditioner {
        formulation: Formulation::Robin,
        kind: PrecondKind::Exact,
        n: l.total(),
        blocks: vec![
            (l.u(), BlockApplier::Solve(vel)),
            (l.p_s(), BlockApplier::Diagonal(pressure_scaling(mesh, params))),
            (l.p_d(), BlockApplier::SumOfSolves(p1, p2)),
        ],
    })
}

/// Baseline: the multiplier preconditioner with the fractional term removed
/// and the Darcy diagonal regularized by the cell mass `κ M`. For the Robin
/// formulation the Darcy block is `K_D + κ M` alone.
pub fn build_precond_naive(op: &BlockOperator, mesh: &StaggeredMesh, params: &PhysicalParams) -> Result<BlockPreconditioner> {
    let l = op.layout;
    let vel = spd(&op.velocity, "velocity")?;
    let mass = CsrMatrix::from_diagonal(&vec![params.kappa * mesh.darcy_cell_volume(); l.n_pd]);
    let mut blocks = vec![
        (l.u(), BlockApplier::Solve(vel)),
        (l.p_s(), BlockApplier::Diagonal(pressure_scaling(mesh, params))),
    ];
    if l.has_multiplier() {
        let coupled = coupled_interface_block(op, &mass, None);
        blocks.push((l.p_d().start..l.p_gamma().end, BlockApplier::Solve(spd(&coupled, "coupled Darcy/interface")?)));
    } else {
        blocks.push((l.p_d(), BlockApplier::Solve(spd(&op.darcy.add_scaled(&mass, 1.0), "Darcy")?)));
    }
    Ok(BlockPreconditioner { formulation: op.formulation, kind: PrecondKind::Naive, n: l.total(), blocks })
}

/// Builds the requested preconditioner for an assembled system.
pub fn build_preconditioner(
    op: &BlockOperator,
    mesh: &StaggeredMesh,
    params: &PhysicalParams,
    kind: PrecondKind,
    variant: FractionalVariant,
) -> Result<BlockPreconditioner> {
    match kind {
        PrecondKind::Naive => build_precond_naive(op, mesh, params),
        PrecondKind::Exact => {
            let s = fractional_for_mesh(mesh, params.mu, variant)?;
            match op.formulation {
                Formulation::Multiplier => build_precond_la(op, mesh, params, &s),
                Formulation::Robin => {
                    let lifted = s.lift(&op.interface_cells, op.layout.n_pd);
                    build_precond_ro(op, mesh, params, &lifted)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests;
