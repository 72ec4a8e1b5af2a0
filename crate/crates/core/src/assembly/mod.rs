//! Monolithic block systems for the two interface formulations.
//!
//! Unknowns are ordered `(u, p_S, p_D[, p_Γ])`. With the multiplier the matrix is
//!
//! ```text
//! [ A    Bᵀ   0            T_nᵀ ]
//! [ B    0    0            0    ]
//! [ 0    0   -(K_D + ΠTΠᵀ)  ΠT   ]
//! [ T_n  0    TΠᵀ          -T   ]
//! ```
//!
//! where `T = diag(|F|/β_n)` and `Π` selects the Darcy cell below each facet.
//! Eliminating `p_Γ` with the last row gives the Robin system
//!
//! ```text
//! [ A + T_nᵀT⁻¹T_n   Bᵀ   T_nᵀΠᵀ ]
//! [ B                0    0      ]
//! [ ΠT_n             0   -K_D    ]
//! ```

mod darcy;
mod data;
mod stokes;

pub use darcy::harmonic_transmissibility;
pub use data::{InterfaceData, ProblemData, ZeroData};
pub use stokes::{BjsClosure, VelocityDofs};

pub use crate::mesh::BoundaryLayout;

use std::ops::Range;

use crate::error::{Error, Result};
use crate::linalg::{CsrMatrix, LinearOperator, TripletList};
use crate::mesh::StaggeredMesh;
use crate::params::PhysicalParams;

/// Which interface formulation is assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formulation {
    /// Interface pressure kept as a Lagrange multiplier.
    Multiplier,
    /// Multiplier eliminated into a Robin condition for the normal velocity.
    Robin,
}

impl Formulation {
    pub fn short_name(&self) -> &'static str {
        match self {
            Formulation::Multiplier => "la",
            Formulation::Robin => "ro",
        }
    }
}

impl std::str::FromStr for Formulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "la" | "multiplier" => Ok(Formulation::Multiplier),
            "ro" | "robin" => Ok(Formulation::Robin),
            _ => Err(Error::Config(format!("unknown formulation '{s}' (expected la or ro)"))),
        }
    }
}

/// Sizes of the unknown blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockLayout {
    pub n_u: usize,
    pub n_ps: usize,
    pub n_pd: usize,
    /// Zero for the Robin formulation.
    pub n_pgamma: usize,
}

impl BlockLayout {
    pub fn total(&self) -> usize {
        self.n_u + self.n_ps + self.n_pd + self.n_pgamma
    }

    pub fn u(&self) -> Range<usize> {
        0..self.n_u
    }

    pub fn p_s(&self) -> Range<usize> {
        self.n_u..self.n_u + self.n_ps
    }

    pub fn p_d(&self) -> Range<usize> {
        let s = self.n_u + self.n_ps;
        s..s + self.n_pd
    }

    pub fn p_gamma(&self) -> Range<usize> {
        let s = self.n_u + self.n_ps + self.n_pd;
        s..s + self.n_pgamma
    }

    pub fn has_multiplier(&self) -> bool {
        self.n_pgamma > 0
    }
}

/// Partitioned unknowns (or right-hand side).
#[derive(Debug, Clone, PartialEq)]
pub struct BlockVector {
    pub u: Vec<f64>,
    pub p_s: Vec<f64>,
    pub p_d: Vec<f64>,
    pub p_gamma: Option<Vec<f64>>,
}

impl BlockVector {
    pub fn zeros(layout: &BlockLayout) -> Self {
        Self {
            u: vec![0.0; layout.n_u],
            p_s: vec![0.0; layout.n_ps],
            p_d: vec![0.0; layout.n_pd],
            p_gamma: layout.has_multiplier().then(|| vec![0.0; layout.n_pgamma]),
        }
    }

    pub fn layout(&self) -> BlockLayout {
        BlockLayout {
            n_u: self.u.len(),
            n_ps: self.p_s.len(),
            n_pd: self.p_d.len(),
            n_pgamma: self.p_gamma.as_ref().map_or(0, Vec::len),
        }
    }

    pub fn flatten(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.layout().total());
        v.extend_from_slice(&self.u);
        v.extend_from_slice(&self.p_s);
        v.extend_from_slice(&self.p_d);
        if let Some(g) = &self.p_gamma {
            v.extend_from_slice(g);
        }
        v
    }

    pub fn unflatten(layout: &BlockLayout, v: &[f64]) -> Result<Self> {
        if v.len() != layout.total() {
            return Err(Error::Contract(format!("vector of length {} for layout of size {}", v.len(), layout.total())));
        }
        Ok(Self {
            u: v[layout.u()].to_vec(),
            p_s: v[layout.p_s()].to_vec(),
            p_d: v[layout.p_d()].to_vec(),
            p_gamma: layout.has_multiplier().then(|| v[layout.p_gamma()].to_vec()),
        })
    }

    /// Seeded uniform `[0,1)` entries; prescribed unknowns are eliminated, so none are masked.
    pub fn random(layout: &BlockLayout, seed: u64) -> Self {
        let flat = crate::linalg::random_initial_guess(seed, &vec![false; layout.total()]);
        Self::unflatten(layout, &flat).expect("matching length")
    }
}

/// Discretization choices that are not physical parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AssemblyOptions {
    pub bjs: BjsClosure,
}

/// The assembled symmetric system with its named sub-blocks.
#[derive(Debug, Clone)]
pub struct BlockOperator {
    pub formulation: Formulation,
    pub layout: BlockLayout,
    /// Velocity block; for the Robin formulation it includes `T_nᵀ T⁻¹ T_n`.
    pub velocity: CsrMatrix,
    /// `B`: Stokes cells × free velocities.
    pub divergence: CsrMatrix,
    /// `K_D`: TPFA stiffness with outer Dirichlet faces, without interface facets.
    pub darcy: CsrMatrix,
    /// `T_n`: facets × free velocities, entries `-|F|`.
    pub normal_trace: CsrMatrix,
    /// `|F| / β_n(F)` per facet.
    pub interface_transmissibility: Vec<f64>,
    /// Darcy cell below each facet (the selection `Π`).
    pub interface_cells: Vec<usize>,
    pub dofs: VelocityDofs,
    /// The full matrix in the unknown ordering above.
    pub matrix: CsrMatrix,
}

impl BlockOperator {
    pub fn dim(&self) -> usize {
        self.layout.total()
    }

    pub fn apply_block(&self, x: &BlockVector) -> BlockVector {
        let y = self.matrix.mul_vec(&x.flatten());
        BlockVector::unflatten(&self.layout, &y).expect("layout of own matrix")
    }

    /// `K_D + Π diag(t) Πᵀ`.
    pub fn darcy_with_interface(&self, t: &[f64]) -> CsrMatrix {
        let n = self.layout.n_pd;
        let extra = CsrMatrix::from_triplets(
            n,
            n,
            self.interface_cells.iter().zip(t).map(|(&c, &v)| (c, c, v)).collect(),
        );
        self.darcy.add_scaled(&extra, 1.0)
    }
}

impl LinearOperator for BlockOperator {
    fn dim(&self) -> usize {
        self.layout.total()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.matrix.mul_vec_into(x, y)
    }
}

/// Assembles the monolithic system and its right-hand side.
pub fn assemble_system(
    mesh: &StaggeredMesh,
    params: &PhysicalParams,
    formulation: Formulation,
    data: &dyn ProblemData,
) -> Result<(BlockOperator, BlockVector)> {
    assemble_system_with(mesh, params, formulation, data, &AssemblyOptions::default())
}

pub fn assemble_system_with(
    mesh: &StaggeredMesh,
    params: &PhysicalParams,
    formulation: Formulation,
    data: &dyn ProblemData,
    opts: &AssemblyOptions,
) -> Result<(BlockOperator, BlockVector)> {
    if let Some(p) = data.params() {
        if p.mu != params.mu || p.k != params.k || p.alpha != params.alpha {
            return Err(Error::Config(format!(
                "problem data built for (mu={}, k={}, alpha={}) but assembling with (mu={}, k={}, alpha={})",
                p.mu, p.k, p.alpha, params.mu, params.k, params.alpha
            )));
        }
    }
    let dofs = VelocityDofs::new(mesh);
    let (mut a, mut f_u) = stokes::assemble_velocity(mesh, params, &dofs, data, opts.bjs);
    let (div, f_ps) = stokes::assemble_divergence(mesh, &dofs, data);
    let (k_d, r_d) = darcy::assemble_darcy(mesh, params, data);

    let facets = mesh.interface_facets();
    let nf = facets.len();
    let t_gamma: Vec<f64> = facets.iter().map(|f| f.length / params.beta_n_at(mesh.h_k())).collect();
    let cells: Vec<usize> = facets.iter().map(|f| f.darcy_cell).collect();
    let uy_free: Vec<usize> = (0..nf)
        .map(|i| dofs.uy(mesh, i, 0).expect("interface normal velocities are free"))
        .collect();
    let g: Vec<f64> = facets.iter().map(|f| data.interface(f.center[0]).g).collect();
    let t_n = CsrMatrix::from_triplets(
        nf,
        dofs.n_free(),
        facets.iter().zip(&uy_free).map(|(f, &u)| (f.id, u, -f.length)).collect(),
    );

    let n_u = dofs.n_free();
    let n_ps = mesh.n_stokes_cells();
    let n_pd = mesh.n_darcy_cells();
    let layout = BlockLayout {
        n_u,
        n_ps,
        n_pd,
        n_pgamma: if formulation == Formulation::Multiplier { nf } else { 0 },
    };
    let (o_ps, o_pd, o_pg) = (layout.p_s().start, layout.p_d().start, layout.p_gamma().start);

    let mut rhs_d: Vec<f64> = r_d.iter().map(|v| -v).collect();
    let mut rhs_g = vec![0.0; layout.n_pgamma];

    if formulation == Formulation::Robin {
        let extra = CsrMatrix::from_triplets(
            n_u,
            n_u,
            facets.iter().zip(&uy_free).map(|(f, &u)| (u, u, f.length * f.length / t_gamma[f.id])).collect(),
        );
        a = a.add_scaled(&extra, 1.0);
    }

    let mut t = TripletList::new(layout.total(), layout.total());
    t.push_block(0, 0, &a);
    t.push_block(o_ps, 0, &div);
    t.push_block_transposed(0, o_ps, &div);
    t.push_block(o_pd, o_pd, &k_d.scaled(-1.0));
    match formulation {
        Formulation::Multiplier => {
            t.push_block(o_pg, 0, &t_n);
            t.push_block_transposed(0, o_pg, &t_n);
            for f in &facets {
                let (c, tg) = (cells[f.id], t_gamma[f.id]);
                t.push(o_pd + c, o_pd + c, -tg);
                t.push(o_pd + c, o_pg + f.id, tg);
                t.push(o_pg + f.id, o_pd + c, tg);
                t.push(o_pg + f.id, o_pg + f.id, -tg);
                rhs_g[f.id] = g[f.id] * f.length;
            }
        }
        Formulation::Robin => {
            for f in &facets {
                let (c, u) = (cells[f.id], uy_free[f.id]);
                t.push(u, o_pd + c, -f.length);
                t.push(o_pd + c, u, -f.length);
                f_u[u] -= f.length * f.length / t_gamma[f.id] * g[f.id];
                rhs_d[c] += f.length * g[f.id];
            }
        }
    }
    let matrix = t.into_csr();

    let op = BlockOperator {
        formulation,
        layout,
        velocity: a,
        divergence: div,
        darcy: k_d,
        normal_trace: t_n,
        interface_transmissibility: t_gamma,
        interface_cells: cells,
        dofs,
        matrix,
    };
    let rhs = BlockVector {
        u: f_u,
        p_s: f_ps,
        p_d: rhs_d,
        p_gamma: (formulation == Formulation::Multiplier).then_some(rhs_g),
    };
    Ok((op, rhs))
}
