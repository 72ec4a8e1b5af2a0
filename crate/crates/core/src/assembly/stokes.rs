//! Staggered (MAC) discretization of the free-flow block.
//!
//! The velocity operator is the Hessian of a discrete strain energy
//! `Σ_K μ|K|((∂_x u_x)² + (∂_y u_y)²) + Σ_v (μ/2)|v| γ_v²` with normal strains
//! at cell centres and shear rates `γ = ∂_y u_x + ∂_x u_y` at grid vertices.
//! Prescribed velocities enter as known values, so eliminating them keeps the
//! matrix exactly symmetric.

use super::data::ProblemData;
use crate::linalg::{CsrMatrix, TripletList};
use crate::mesh::{StaggeredMesh, StokesBc};
use crate::params::PhysicalParams;

/// How the slip condition closes the shear rate at interface vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BjsClosure {
    /// A ghost value below `Γ` is eliminated against the slip law; second order.
    #[default]
    Ghost,
    /// Tangential trace taken from the first x-velocity row and the interface
    /// shear replaced by the slip law itself; first order.
    OneSided,
}

/// Free/prescribed classification of the face velocities.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityDofs {
    ux: Vec<Option<usize>>,
    uy: Vec<Option<usize>>,
    n_free_ux: usize,
    n_free: usize,
}

impl VelocityDofs {
    pub fn new(mesh: &StaggeredMesh) -> Self {
        let b = mesh.boundary;
        let mut next = 0;
        let mut ux = vec![None; mesh.n_ux()];
        for j in 0..mesh.ny_s {
            for i in 0..=mesh.nx {
                let fixed = (i == 0 && b.stokes_left == StokesBc::Velocity)
                    || (i == mesh.nx && b.stokes_right == StokesBc::Velocity);
                if !fixed {
                    ux[mesh.ux_index(i, j)] = Some(next);
                    next += 1;
                }
            }
        }
        let n_free_ux = next;
        let mut uy = vec![None; mesh.n_uy()];
        for j in 0..=mesh.ny_s {
            for i in 0..mesh.nx {
                let fixed = j == mesh.ny_s && b.stokes_top == StokesBc::Velocity;
                if !fixed {
                    uy[mesh.uy_index(i, j)] = Some(next);
                    next += 1;
                }
            }
        }
        Self { ux, uy, n_free_ux, n_free: next }
    }

    pub fn n_free(&self) -> usize {
        self.n_free
    }

    pub fn n_free_ux(&self) -> usize {
        self.n_free_ux
    }

    /// Free index of x-velocity `(i, j)`, or `None` if prescribed.
    pub fn ux(&self, mesh: &StaggeredMesh, i: usize, j: usize) -> Option<usize> {
        self.ux[mesh.ux_index(i, j)]
    }

    pub fn uy(&self, mesh: &StaggeredMesh, i: usize, j: usize) -> Option<usize> {
        self.uy[mesh.uy_index(i, j)]
    }

    /// Full face fields `(u_x, u_y)` in mesh ordering; prescribed faces take the data values.
    pub fn expand(&self, mesh: &StaggeredMesh, free: &[f64], data: &dyn ProblemData) -> (Vec<f64>, Vec<f64>) {
        assert_eq!(free.len(), self.n_free);
        let mut ux = vec![0.0; mesh.n_ux()];
        for j in 0..mesh.ny_s {
            for i in 0..=mesh.nx {
                let k = mesh.ux_index(i, j);
                ux[k] = match self.ux[k] {
                    Some(f) => free[f],
                    None => {
                        let [x, y] = mesh.ux_position(i, j);
                        data.stokes_velocity(x, y)[0]
                    }
                };
            }
        }
        let mut uy = vec![0.0; mesh.n_uy()];
        for j in 0..=mesh.ny_s {
            for i in 0..mesh.nx {
                let k = mesh.uy_index(i, j);
                uy[k] = match self.uy[k] {
                    Some(f) => free[f],
                    None => {
                        let [x, y] = mesh.uy_position(i, j);
                        data.stokes_velocity(x, y)[1]
                    }
                };
            }
        }
        (ux, uy)
    }

    /// Per face in mesh ordering (all x-faces, then all y-faces): `true` if prescribed.
    pub fn dirichlet_mask(&self) -> Vec<bool> {
        self.ux.iter().chain(&self.uy).map(|d| d.is_none()).collect()
    }
}

/// A velocity value in a discrete stencil: free unknown or prescribed number.
#[derive(Debug, Clone, Copy)]
enum Var {
    Free(usize),
    Known(f64),
}

/// Accumulates `E(u) = ½ uᵀKu − Fᵀu` from squared and linear forms.
struct EnergyBuilder {
    trip: TripletList,
    rhs: Vec<f64>,
}

impl EnergyBuilder {
    fn new(n: usize) -> Self {
        Self { trip: TripletList::new(n, n), rhs: vec![0.0; n] }
    }

    /// `E += (w/2) (Σ c_k v_k)²`
    fn add_square(&mut self, w: f64, terms: &[(f64, Var)]) {
        let known: f64 = terms
            .iter()
            .map(|&(c, v)| match v {
                Var::Known(g) => c * g,
                Var::Free(_) => 0.0,
            })
            .sum();
        for &(ci, vi) in terms {
            let Var::Free(i) = vi else { continue };
            for &(cj, vj) in terms {
                if let Var::Free(j) = vj {
                    self.trip.push(i, j, w * ci * cj);
                }
            }
            self.rhs[i] -= w * ci * known;
        }
    }

    /// `E -= g (Σ c_k v_k)`
    fn add_linear(&mut self, g: f64, terms: &[(f64, Var)]) {
        for &(c, v) in terms {
            if let Var::Free(i) = v {
                self.rhs[i] += g * c;
            }
        }
    }

    fn add_rhs(&mut self, v: Var, value: f64) {
        if let Var::Free(i) = v {
            self.rhs[i] += value;
        }
    }
}

struct Ctx<'a> {
    mesh: &'a StaggeredMesh,
    dofs: &'a VelocityDofs,
    data: &'a dyn ProblemData,
}

impl Ctx<'_> {
    fn ux(&self, i: usize, j: usize) -> Var {
        match self.dofs.ux(self.mesh, i, j) {
            Some(f) => Var::Free(f),
            None => {
                let [x, y] = self.mesh.ux_position(i, j);
                Var::Known(self.data.stokes_velocity(x, y)[0])
            }
        }
    }

    fn uy(&self, i: usize, j: usize) -> Var {
        match self.dofs.uy(self.mesh, i, j) {
            Some(f) => Var::Free(f),
            None => {
                let [x, y] = self.mesh.uy_position(i, j);
                Var::Known(self.data.stokes_velocity(x, y)[1])
            }
        }
    }

    fn vertex(&self, i: usize, j: usize) -> [f64; 2] {
        let d = &self.mesh.domain;
        [d.x_min + i as f64 * self.mesh.hx, d.y_interface + j as f64 * self.mesh.hy_s]
    }
}

/// Velocity block and its right-hand side, without interface-normal terms.
pub(crate) fn assemble_velocity(
    mesh: &StaggeredMesh,
    params: &PhysicalParams,
    dofs: &VelocityDofs,
    data: &dyn ProblemData,
    closure: BjsClosure,
) -> (CsrMatrix, Vec<f64>) {
    let (nx, ny) = (mesh.nx, mesh.ny_s);
    let (hx, hy) = (mesh.hx, mesh.hy_s);
    let mu = params.mu;
    let bt = params.beta_tau;
    let b = mesh.boundary;
    let c = Ctx { mesh, dofs, data };
    let mut e = EnergyBuilder::new(dofs.n_free());

    // normal strains
    for j in 0..ny {
        for i in 0..nx {
            let w = 2.0 * mu * hx * hy;
            e.add_square(w, &[(-1.0 / hx, c.ux(i, j)), (1.0 / hx, c.ux(i + 1, j))]);
            e.add_square(w, &[(-1.0 / hy, c.uy(i, j)), (1.0 / hy, c.uy(i, j + 1))]);
        }
    }

    let left_d = b.stokes_left == StokesBc::Velocity;
    let right_d = b.stokes_right == StokesBc::Velocity;
    let top_d = b.stokes_top == StokesBc::Velocity;

    // shear rates at vertices
    for j in 0..=ny {
        for i in 0..=nx {
            let on_left = i == 0;
            let on_right = i == nx;
            let on_side = on_left || on_right;
            let side_d = (on_left && left_d) || (on_right && right_d);
            let [xv, yv] = c.vertex(i, j);
            if j > 0 && j < ny && !on_side {
                e.add_square(
                    mu * hx * hy,
                    &[
                        (-1.0 / hy, c.ux(i, j - 1)),
                        (1.0 / hy, c.ux(i, j)),
                        (-1.0 / hx, c.uy(i - 1, j)),
                        (1.0 / hx, c.uy(i, j)),
                    ],
                );
            } else if j > 0 && j < ny {
                // lateral edge
                let area = 0.5 * hx * hy;
                let along = [(-1.0 / hy, c.ux(i, j - 1)), (1.0 / hy, c.ux(i, j))];
                if side_d {
                    let g = data.stokes_velocity(xv, yv)[1];
                    let cross = if on_left {
                        [(2.0 / hx, c.uy(0, j)), (-2.0 / hx, Var::Known(g))]
                    } else {
                        [(2.0 / hx, Var::Known(g)), (-2.0 / hx, c.uy(nx - 1, j))]
                    };
                    e.add_square(mu * area, &[along[0], along[1], cross[0], cross[1]]);
                } else {
                    let shear = data.stokes_stress(xv, yv)[0][1];
                    e.add_linear(-area * shear, &along);
                }
            } else if j == ny && !on_side {
                let area = 0.5 * hx * hy;
                let along = [(-1.0 / hx, c.uy(i - 1, ny)), (1.0 / hx, c.uy(i, ny))];
                if top_d {
                    let g = data.stokes_velocity(xv, yv)[0];
                    e.add_square(
                        mu * area,
                        &[(2.0 / hy, Var::Known(g)), (-2.0 / hy, c.ux(i, ny - 1)), along[0], along[1]],
                    );
                } else {
                    let shear = data.stokes_stress(xv, yv)[0][1];
                    e.add_linear(-area * shear, &along);
                }
            } else if j == ny {
                // top corners
                if top_d || side_d {
                    corner(&mut e, &c, mu, i, j);
                }
            } else if !on_side {
                interface_vertex(&mut e, &c, mu, bt, i, closure, hx);
            } else if side_d {
                corner(&mut e, &c, mu, i, j);
            } else {
                interface_vertex(&mut e, &c, mu, bt, i, closure, 0.5 * hx);
            }
        }
    }

    // traction on natural edges
    let d = mesh.domain;
    if !left_d || !right_d {
        for (side, on) in [(0usize, !left_d), (nx, !right_d)] {
            if !on {
                continue;
            }
            let (xb, nrm) = if side == 0 { (d.x_min, -1.0) } else { (d.x_max, 1.0) };
            for j in 0..ny {
                let y = mesh.ux_position(side, j)[1];
                let s = data.stokes_stress(xb, y);
                e.add_rhs(c.ux(side, j), s[0][0] * nrm * hy);
            }
            let col = if side == 0 { 0 } else { nx - 1 };
            for j in 0..=ny {
                let (y0, y1) = face_span(d.y_interface, hy, j, ny);
                let s = data.stokes_stress(xb, 0.5 * (y0 + y1));
                e.add_rhs(c.uy(col, j), s[1][0] * nrm * (y1 - y0));
            }
        }
    }
    if !top_d {
        for i in 0..nx {
            let x = mesh.uy_position(i, ny)[0];
            let s = data.stokes_stress(x, d.y_max);
            e.add_rhs(c.uy(i, ny), s[1][1] * hx);
        }
        for i in 0..=nx {
            let (x0, x1) = face_span(d.x_min, hx, i, nx);
            let s = data.stokes_stress(0.5 * (x0 + x1), d.y_max);
            e.add_rhs(c.ux(i, ny - 1), s[0][1] * (x1 - x0));
        }
    }

    // body force, midpoint rule on the (possibly halved) control volumes
    for j in 0..ny {
        for i in 0..=nx {
            let [x, y] = mesh.ux_position(i, j);
            let w = if i == 0 || i == nx { 0.5 } else { 1.0 };
            e.add_rhs(c.ux(i, j), data.stokes_source(x, y)[0] * w * hx * hy);
        }
    }
    for j in 0..=ny {
        for i in 0..nx {
            let [x, y] = mesh.uy_position(i, j);
            let w = if j == 0 || j == ny { 0.5 } else { 1.0 };
            e.add_rhs(c.uy(i, j), data.stokes_source(x, y)[1] * w * hx * hy);
        }
    }

    // normal stress balance on Γ
    for i in 0..nx {
        let x = mesh.uy_position(i, 0)[0];
        e.add_rhs(c.uy(i, 0), -data.interface(x).h_n * hx);
    }

    let EnergyBuilder { trip, rhs } = e;
    let a = trip.into_csr();
    (a, rhs)
}

/// Extent of the boundary face belonging to node `k` of `n` cells along an edge.
fn face_span(origin: f64, h: f64, k: usize, n: usize) -> (f64, f64) {
    let lo = if k == 0 { 0.0 } else { k as f64 - 0.5 };
    let hi = if k == n { n as f64 } else { k as f64 + 0.5 };
    (origin + lo * h, origin + hi * h)
}

/// Corner vertex next to a no-slip wall: one-sided differences over half
/// spacings to the corner data on a quarter cell.
fn corner(e: &mut EnergyBuilder, c: &Ctx, mu: f64, i: usize, j: usize) {
    let m = c.mesh;
    let (hx, hy) = (m.hx, m.hy_s);
    let [xv, yv] = c.vertex(i, j);
    let g = c.data.stokes_velocity(xv, yv);
    let jr = if j == 0 { 0 } else { m.ny_s - 1 };
    let dy = if j == 0 {
        [(2.0 / hy, c.ux(i, jr)), (-2.0 / hy, Var::Known(g[0]))]
    } else {
        [(2.0 / hy, Var::Known(g[0])), (-2.0 / hy, c.ux(i, jr))]
    };
    let dx = if i == 0 {
        [(2.0 / hx, c.uy(0, j)), (-2.0 / hx, Var::Known(g[1]))]
    } else {
        [(2.0 / hx, Var::Known(g[1])), (-2.0 / hx, c.uy(m.nx - 1, j))]
    };
    e.add_square(mu * 0.25 * hx * hy, &[dy[0], dy[1], dx[0], dx[1]]);
}

/// Slip condition at an interface vertex carrying tangential length `len`.
fn interface_vertex(e: &mut EnergyBuilder, c: &Ctx, mu: f64, bt: f64, i: usize, closure: BjsClosure, len: f64) {
    let m = c.mesh;
    let (hx, hy) = (m.hx, m.hy_s);
    let [xv, _] = c.vertex(i, 0);
    let h_tau = c.data.interface(xv).h_tau;
    let p = c.ux(i, 0);
    match closure {
        BjsClosure::OneSided => {
            e.add_square(len * bt, &[(1.0, p)]);
            e.add_linear(-len * h_tau, &[(1.0, p)]);
        }
        BjsClosure::Ghost => {
            // per unit length: A (q - z)² + B (p + z)² - C (p + z), q = p + hy ∂_x u_y,
            // minimized over the ghost z
            let a = mu / (4.0 * hy);
            let bb = bt / 8.0;
            let cc = -0.5 * h_tau;
            let w = a * bb / (a + bb);
            let g = cc * a / (a + bb);
            let lform: Vec<(f64, Var)> = if i == 0 || i == m.nx {
                vec![(2.0, p)]
            } else {
                vec![(2.0, p), (hy / hx, c.uy(i, 0)), (-hy / hx, c.uy(i - 1, 0))]
            };
            e.add_square(2.0 * len * w, &lform);
            e.add_linear(len * g, &lform);
        }
    }
}

/// Discrete divergence `B` (rows: Stokes cells, columns: free velocities) and
/// the contribution of prescribed velocities, already moved to the right-hand side.
pub(crate) fn assemble_divergence(
    mesh: &StaggeredMesh,
    dofs: &VelocityDofs,
    data: &dyn ProblemData,
) -> (CsrMatrix, Vec<f64>) {
    let (nx, ny) = (mesh.nx, mesh.ny_s);
    let (hx, hy) = (mesh.hx, mesh.hy_s);
    let c = Ctx { mesh, dofs, data };
    let mut t = TripletList::new(mesh.n_stokes_cells(), dofs.n_free());
    let mut rhs = vec![0.0; mesh.n_stokes_cells()];
    for j in 0..ny {
        for i in 0..nx {
            let row = mesh.stokes_cell(i, j);
            let stencil = [
                (hy, c.ux(i, j)),
                (-hy, c.ux(i + 1, j)),
                (hx, c.uy(i, j)),
                (-hx, c.uy(i, j + 1)),
            ];
            for (coef, v) in stencil {
                match v {
                    Var::Free(k) => t.push(row, k, coef),
                    Var::Known(g) => rhs[row] -= coef * g,
                }
            }
        }
    }
    (t.into_csr(), rhs)
}
