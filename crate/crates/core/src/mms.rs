//! Manufactured solution, its data, discrete error norms and observed orders.
//!
//! ```text
//! u_S = (-(1/π) eʸ sin(πx), (eʸ - e) cos(πx))      in Ω_S
//! p_S = 2 eʸ cos(πx)                               in Ω_S
//! p_D = (eʸ - y e) cos(πx)                         in Ω_D
//! λ   = p_D(x, 1) = 0                              on Γ
//! ```
//!
//! Sources and interface data are chosen so that this solves the coupled
//! problem for every `μ, k, α`.

use std::f64::consts::{E, PI};

use crate::assembly::{BlockOperator, BlockVector, InterfaceData, ProblemData};
use crate::error::{Error, Result};
use crate::mesh::{Domain, StaggeredMesh};
use crate::params::PhysicalParams;

/// Exact fields and data of the manufactured problem for fixed parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MmsData {
    pub params: PhysicalParams,
    pub domain: Domain,
}

/// Which exact field to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    StokesVelocity,
    StokesPressure,
    DarcyPressure,
    InterfacePressure,
}

const TOL: f64 = 1e-12;

impl MmsData {
    pub fn new(params: PhysicalParams) -> Self {
        Self { params, domain: Domain::default() }
    }

    fn check_stokes(&self, x: f64, y: f64) -> Result<()> {
        let d = &self.domain;
        if x < d.x_min - TOL || x > d.x_max + TOL || y < d.y_interface - TOL || y > d.y_max + TOL {
            return Err(Error::Domain { x, y, domain: "Stokes" });
        }
        Ok(())
    }

    fn check_darcy(&self, x: f64, y: f64) -> Result<()> {
        let d = &self.domain;
        if x < d.x_min - TOL || x > d.x_max + TOL || y < d.y_min - TOL || y > d.y_interface + TOL {
            return Err(Error::Domain { x, y, domain: "Darcy" });
        }
        Ok(())
    }

    /// Exact value of `field` at `(x, y)`; scalar fields fill the first slot.
    pub fn exact(&self, field: Field, x: f64, y: f64) -> Result<[f64; 2]> {
        match field {
            Field::StokesVelocity => {
                self.check_stokes(x, y)?;
                Ok(self.u(x, y))
            }
            Field::StokesPressure => {
                self.check_stokes(x, y)?;
                Ok([self.p_s(x, y), 0.0])
            }
            Field::DarcyPressure => {
                self.check_darcy(x, y)?;
                Ok([self.p_d(x, y), 0.0])
            }
            Field::InterfacePressure => {
                let d = &self.domain;
                if (y - d.y_interface).abs() > TOL || x < d.x_min - TOL || x > d.x_max + TOL {
                    return Err(Error::Domain { x, y, domain: "interface" });
                }
                Ok([self.lambda(x), 0.0])
            }
        }
    }

    pub fn u(&self, x: f64, y: f64) -> [f64; 2] {
        let (s, c) = (PI * x).sin_cos();
        [-y.exp() * s / PI, (y.exp() - E) * c]
    }

    /// Velocity gradient `[[∂x ux, ∂y ux], [∂x uy, ∂y uy]]`.
    pub fn grad_u(&self, x: f64, y: f64) -> [[f64; 2]; 2] {
        let (s, c) = (PI * x).sin_cos();
        let ey = y.exp();
        [[-ey * c, -ey * s / PI], [-PI * (ey - E) * s, ey * c]]
    }

    pub fn p_s(&self, x: f64, y: f64) -> f64 {
        2.0 * y.exp() * (PI * x).cos()
    }

    pub fn p_d(&self, x: f64, y: f64) -> f64 {
        (y.exp() - y * E) * (PI * x).cos()
    }

    pub fn grad_p_d(&self, x: f64, y: f64) -> [f64; 2] {
        let (s, c) = (PI * x).sin_cos();
        [-PI * (y.exp() - y * E) * s, (y.exp() - E) * c]
    }

    pub fn lambda(&self, x: f64) -> f64 {
        self.p_d(x, self.domain.y_interface)
    }

    pub fn stress(&self, x: f64, y: f64) -> [[f64; 2]; 2] {
        let mu = self.params.mu;
        let g = self.grad_u(x, y);
        let p = self.p_s(x, y);
        let shear = mu * (g[0][1] + g[1][0]);
        [[2.0 * mu * g[0][0] - p, shear], [shear, 2.0 * mu * g[1][1] - p]]
    }

    pub fn f_s(&self, x: f64, y: f64) -> [f64; 2] {
        let mu = self.params.mu;
        let (s, c) = (PI * x).sin_cos();
        let ey = y.exp();
        let pi2 = PI * PI;
        [
            ey * s * (mu - mu * pi2 - 2.0 * pi2) / PI,
            c * (mu * ((pi2 + 1.0) * ey - pi2 * E) + 2.0 * (1.0 - mu) * ey),
        ]
    }

    /// `-κΔp_D`.
    pub fn f_d(&self, x: f64, y: f64) -> f64 {
        let pi2 = PI * PI;
        self.params.kappa * (PI * x).cos() * ((pi2 - 1.0) * y.exp() - pi2 * y * E)
    }

    pub fn interface_data(&self, x: f64) -> InterfaceData {
        let mu = self.params.mu;
        let bt = self.params.beta_tau;
        let y = self.domain.y_interface;
        InterfaceData {
            h_tau: (bt - mu) * y.exp() * (PI * x).sin() / PI,
            h_n: 2.0 * (mu - 1.0) * E * (PI * x).cos(),
            g: 0.0,
        }
    }
}

impl ProblemData for MmsData {
    fn params(&self) -> Option<PhysicalParams> {
        Some(self.params)
    }
    fn stokes_velocity(&self, x: f64, y: f64) -> [f64; 2] {
        self.u(x, y)
    }
    fn stokes_stress(&self, x: f64, y: f64) -> [[f64; 2]; 2] {
        self.stress(x, y)
    }
    fn stokes_source(&self, x: f64, y: f64) -> [f64; 2] {
        self.f_s(x, y)
    }
    fn darcy_pressure(&self, x: f64, y: f64) -> f64 {
        self.p_d(x, y)
    }
    fn darcy_velocity(&self, x: f64, y: f64) -> [f64; 2] {
        let g = self.grad_p_d(x, y);
        [-self.params.kappa * g[0], -self.params.kappa * g[1]]
    }
    fn darcy_source(&self, x: f64, y: f64) -> f64 {
        self.f_d(x, y)
    }
    fn interface(&self, x: f64) -> InterfaceData {
        self.interface_data(x)
    }
}

/// Discrete `L²` errors `(Σ |V| e²)^{1/2}` per field.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldErrors {
    pub ux: f64,
    pub uy: f64,
    pub p_s: f64,
    pub p_d: f64,
    /// `None` for the Robin formulation.
    pub p_gamma: Option<f64>,
}

impl FieldErrors {
    pub fn as_array(&self) -> [Option<f64>; 5] {
        [Some(self.ux), Some(self.uy), Some(self.p_s), Some(self.p_d), self.p_gamma]
    }
}

/// Errors of a discrete solution against the exact fields sampled at the
/// unknown locations (face centres for velocities, cell centres for pressures).
/// Prescribed velocities are exact by construction and contribute nothing.
pub fn error_norm_fv(x: &BlockVector, op: &BlockOperator, mesh: &StaggeredMesh, mms: &MmsData) -> FieldErrors {
    let (hx, hys, hyd) = (mesh.hx, mesh.hy_s, mesh.hy_d);
    let (ux, uy) = op.dofs.expand(mesh, &x.u, mms);
    let mut e_ux = 0.0;
    for j in 0..mesh.ny_s {
        for i in 0..=mesh.nx {
            let [px, py] = mesh.ux_position(i, j);
            let w = if i == 0 || i == mesh.nx { 0.5 } else { 1.0 };
            e_ux += w * hx * hys * (ux[mesh.ux_index(i, j)] - mms.u(px, py)[0]).powi(2);
        }
    }
    let mut e_uy = 0.0;
    for j in 0..=mesh.ny_s {
        for i in 0..mesh.nx {
            let [px, py] = mesh.uy_position(i, j);
            let w = if j == 0 || j == mesh.ny_s { 0.5 } else { 1.0 };
            e_uy += w * hx * hys * (uy[mesh.uy_index(i, j)] - mms.u(px, py)[1]).powi(2);
        }
    }
    let mut e_ps = 0.0;
    for j in 0..mesh.ny_s {
        for i in 0..mesh.nx {
            let [px, py] = mesh.stokes_cell_center(i, j);
            e_ps += hx * hys * (x.p_s[mesh.stokes_cell(i, j)] - mms.p_s(px, py)).powi(2);
        }
    }
    let mut e_pd = 0.0;
    for j in 0..mesh.ny_d {
        for i in 0..mesh.nx {
            let [px, py] = mesh.darcy_cell_center(i, j);
            e_pd += hx * hyd * (x.p_d[mesh.darcy_cell(i, j)] - mms.p_d(px, py)).powi(2);
        }
    }
    let p_gamma = x.p_gamma.as_ref().map(|pg| {
        mesh.interface_facets()
            .iter()
            .map(|f| f.length * (pg[f.id] - mms.lambda(f.center[0])).powi(2))
            .sum::<f64>()
            .sqrt()
    });
    FieldErrors { ux: e_ux.sqrt(), uy: e_uy.sqrt(), p_s: e_ps.sqrt(), p_d: e_pd.sqrt(), p_gamma }
}

/// Observed order between two levels; `None` when either error vanishes.
pub fn observed_order(e_coarse: f64, e_fine: f64, h_coarse: f64, h_fine: f64) -> Option<f64> {
    if e_coarse > 0.0 && e_fine > 0.0 && h_coarse != h_fine {
        Some((e_coarse / e_fine).ln() / (h_coarse / h_fine).ln())
    } else {
        None
    }
}

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub nx: usize,
    pub h: f64,
    pub errors: FieldErrors,
    /// Orders against the previous (coarser) row, per field as in [`FieldErrors::as_array`].
    pub orders: [Option<f64>; 5],
}

/// Fills in observed orders for a sequence of `(nx, h, errors)` levels.
pub fn convergence_table(levels: &[(usize, f64, FieldErrors)]) -> Vec<ConvergenceRow> {
    let mut rows = Vec::with_capacity(levels.len());
    for (k, &(nx, h, errors)) in levels.iter().enumerate() {
        let mut orders = [None; 5];
        if k > 0 {
            let (_, hc, ec) = levels[k - 1];
            for (f, o) in orders.iter_mut().enumerate() {
                if let (Some(a), Some(b)) = (ec.as_array()[f], errors.as_array()[f]) {
                    *o = observed_order(a, b, hc, h);
                }
            }
        }
        rows.push(ConvergenceRow { nx, h, errors, orders });
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn unit() -> MmsData {
        MmsData::new(PhysicalParams::unit())
    }

    #[test]
    fn spot_values() {
        let m = unit();
        assert!((m.exact(Field::DarcyPressure, 0.0, 0.0).unwrap()[0] - 1.0).abs() < 1e-15);
        assert!((m.exact(Field::StokesPressure, 0.0, 1.0).unwrap()[0] - 2.0 * E).abs() < 1e-14);
        assert!((m.exact(Field::StokesPressure, 0.0, 1.0).unwrap()[0] - 5.43656).abs() < 1e-5);
        for x in [0.0, 0.3, 1.0] {
            assert!(m.exact(Field::InterfacePressure, x, 1.0).unwrap()[0].abs() < 1e-15);
        }
    }

    #[test]
    fn outside_points_are_rejected() {
        let m = unit();
        assert!(matches!(m.exact(Field::DarcyPressure, 0.5, 1.5), Err(Error::Domain { .. })));
        assert!(matches!(m.exact(Field::StokesVelocity, 0.5, 0.5), Err(Error::Domain { .. })));
        assert!(matches!(m.exact(Field::StokesPressure, -0.1, 1.5), Err(Error::Domain { .. })));
    }

    #[test]
    fn source_values() {
        let m = unit();
        let fx = m.f_s(0.5, 1.0)[0];
        assert!((fx - E / PI * (1.0 - 3.0 * PI * PI)).abs() < 1e-12);
        for p in [PhysicalParams::unit(), PhysicalParams::new(3.0, 1e-3, 2.0).unwrap()] {
            let mm = MmsData::new(p);
            assert!(mm.f_d(0.5, 0.37).abs() < 1e-15);
        }
        let tiny = MmsData::new(PhysicalParams::new(1.0, 1e-300, 1.0).unwrap());
        assert!(tiny.f_d(0.1, 0.2).abs() < 1e-290);
    }

    #[test]
    fn interface_data_values() {
        let d = unit().interface_data(0.3);
        assert!(d.h_tau.abs() < 1e-15 && d.h_n.abs() < 1e-15 && d.g == 0.0);
        let two = MmsData::new(PhysicalParams::new(2.0, 1.0, 1.0).unwrap());
        assert!((two.interface_data(0.0).h_n - 2.0 * E).abs() < 1e-14);
    }

    /// Central-difference oracle for derivatives of the closed forms.
    fn fd<F: Fn(f64, f64) -> f64>(f: F, x: f64, y: f64, dir: usize) -> f64 {
        let h = 1e-5;
        if dir == 0 {
            (f(x + h, y) - f(x - h, y)) / (2.0 * h)
        } else {
            (f(x, y + h) - f(x, y - h)) / (2.0 * h)
        }
    }

    #[test]
    fn divergence_free() {
        let m = unit();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let x = rng.random::<f64>();
            let y = 1.0 + rng.random::<f64>();
            let h = 1e-6;
            let div = (m.u(x + h, y)[0] - m.u(x - h, y)[0]) / (2.0 * h) + (m.u(x, y + h)[1] - m.u(x, y - h)[1]) / (2.0 * h);
            assert!(div.abs() <= 1e-8, "div {div}");
        }
    }

    /// The sources equal `-div σ` and `-κΔp_D` of the exact fields, checked by
    /// nested central differences for several parameter sets.
    #[test]
    fn sources_match_the_equations() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for p in [PhysicalParams::unit(), PhysicalParams::new(0.1, 1e-2, 3.0).unwrap(), PhysicalParams::new(7.0, 4.0, 0.0).unwrap()] {
            let m = MmsData::new(p);
            for _ in 0..20 {
                let x = 0.1 + 0.8 * rng.random::<f64>();
                let y = 1.1 + 0.8 * rng.random::<f64>();
                for r in 0..2 {
                    let div = fd(|a, b| m.stress(a, b)[r][0], x, y, 0) + fd(|a, b| m.stress(a, b)[r][1], x, y, 1);
                    let f = m.f_s(x, y)[r];
                    assert!((f + div).abs() <= 1e-5 * (1.0 + f.abs()), "row {r}: {f} vs {}", -div);
                }
                let yd = y - 1.0;
                let lap = fd(|a, b| m.grad_p_d(a, b)[0], x, yd, 0) + fd(|a, b| m.grad_p_d(a, b)[1], x, yd, 1);
                let f = m.f_d(x, yd);
                assert!((f + p.kappa * lap).abs() <= 1e-5 * (1.0 + f.abs()));
            }
        }
    }

    /// The data balance the coupling conditions with the tangent `(-1,0)`
    /// orientation of `h_tau`.
    #[test]
    fn coupling_conditions_balance() {
        for p in [PhysicalParams::unit(), PhysicalParams::new(2.0, 1e-4, 1.5).unwrap()] {
            let m = MmsData::new(p);
            for k in 0..=50 {
                let x = k as f64 / 50.0;
                let s = m.stress(x, 1.0);
                let d = m.interface_data(x);
                let u = m.u(x, 1.0);
                assert!((s[0][1] - p.beta_tau * u[0] - d.h_tau).abs() < 1e-12);
                assert!((s[1][1] + m.p_d(x, 1.0) - d.h_n).abs() < 1e-12);
                let flux = -u[1] - p.kappa * m.grad_p_d(x, 1.0)[1];
                assert!((flux - d.g).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn interface_identities_at_many_points() {
        let m = unit();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let x = rng.random::<f64>();
            assert!(m.lambda(x).abs() < 1e-14);
            assert!(m.u(x, 1.0)[1].abs() < 1e-14);
            assert_eq!(m.interface_data(x).g, 0.0);
        }
    }

    #[test]
    fn orders() {
        assert!((observed_order(4.0, 1.0, 0.2, 0.1).unwrap() - 2.0).abs() < 1e-14);
        assert!((observed_order(9.0, 1.0, 0.3, 0.1).unwrap() - 2.0).abs() < 1e-14);
        assert!(observed_order(0.0, 0.0, 0.2, 0.1).is_none());
    }
}
