//! Cell-centred two-point flux approximation of the porous-medium block.

use super::data::ProblemData;
use crate::linalg::{CsrMatrix, TripletList};
use crate::mesh::{DarcyBc, StaggeredMesh};
use crate::params::PhysicalParams;

/// Two-point transmissibility of a face between centroids at distances
/// `d_k` and `d_l`: the harmonic combination of the half transmissibilities
/// `κ|F|/d`.
pub fn harmonic_transmissibility(kappa_k: f64, d_k: f64, kappa_l: f64, d_l: f64, area: f64) -> f64 {
    let tk = kappa_k * area / d_k;
    let tl = kappa_l * area / d_l;
    tk * tl / (tk + tl)
}

/// `K_D` over all Darcy cells: interior faces plus pressure-Dirichlet faces.
/// Interface facets are left out; the coupling adds them.
///
/// The returned vector is the matching right-hand side of `K_D p = r`, i.e.
/// `f|K| + Σ_Dir T_b p_b − Σ_Neu q_N|F|` with `q_N` the outward Darcy flux.
pub(crate) fn assemble_darcy(
    mesh: &StaggeredMesh,
    params: &PhysicalParams,
    data: &dyn ProblemData,
) -> (CsrMatrix, Vec<f64>) {
    let (nx, ny) = (mesh.nx, mesh.ny_d);
    let (hx, hy) = (mesh.hx, mesh.hy_d);
    let kappa = params.kappa;
    let d = mesh.domain;
    let n = mesh.n_darcy_cells();
    let mut t = TripletList::new(n, n);
    let mut rhs = vec![0.0; n];
    let tx = harmonic_transmissibility(kappa, 0.5 * hx, kappa, 0.5 * hx, hy);
    let ty = harmonic_transmissibility(kappa, 0.5 * hy, kappa, 0.5 * hy, hx);
    let mut connect = |a: usize, b: usize, tr: f64| {
        t.push(a, a, tr);
        t.push(b, b, tr);
        t.push(a, b, -tr);
        t.push(b, a, -tr);
    };
    for j in 0..ny {
        for i in 0..nx {
            let k = mesh.darcy_cell(i, j);
            if i + 1 < nx {
                connect(k, mesh.darcy_cell(i + 1, j), tx);
            }
            if j + 1 < ny {
                connect(k, mesh.darcy_cell(i, j + 1), ty);
            }
        }
    }
    let mut boundary = |k: usize, bc: DarcyBc, x: f64, y: f64, normal: [f64; 2], area: f64, dist: f64| match bc {
        DarcyBc::Pressure => {
            let tb = kappa * area / dist;
            t.push(k, k, tb);
            rhs[k] += tb * data.darcy_pressure(x, y);
        }
        DarcyBc::Flux => {
            let v = data.darcy_velocity(x, y);
            rhs[k] -= (v[0] * normal[0] + v[1] * normal[1]) * area;
        }
    };
    let b = mesh.boundary;
    for j in 0..ny {
        let y = mesh.darcy_cell_center(0, j)[1];
        boundary(mesh.darcy_cell(0, j), b.darcy_left, d.x_min, y, [-1.0, 0.0], hy, 0.5 * hx);
        boundary(mesh.darcy_cell(nx - 1, j), b.darcy_right, d.x_max, y, [1.0, 0.0], hy, 0.5 * hx);
    }
    for i in 0..nx {
        let x = mesh.darcy_cell_center(i, 0)[0];
        boundary(mesh.darcy_cell(i, 0), b.darcy_bottom, x, d.y_min, [0.0, -1.0], hx, 0.5 * hy);
    }
    for j in 0..ny {
        for i in 0..nx {
            let [x, y] = mesh.darcy_cell_center(i, j);
            rhs[mesh.darcy_cell(i, j)] += data.darcy_source(x, y) * hx * hy;
        }
    }
    (t.into_csr(), rhs)
}
