//! Sources, boundary and interface data consumed by the assembly.

use crate::params::PhysicalParams;

/// Interface data at a point of `Γ`.
///
/// `h_tau` is oriented with the tangent `(-1, 0)`, so on the flat interface the
/// slip condition reads `μ(∂_y u_x + ∂_x u_y) - β_τ u_x = h_tau`. `h_n` balances
/// `n·σ·n + p_D` and `g` balances `u·n + κ∇p_D·n`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InterfaceData {
    pub h_tau: f64,
    pub h_n: f64,
    pub g: f64,
}

/// Everything the right-hand side needs. Exact fields double as Dirichlet
/// and Neumann data on the outer boundary.
pub trait ProblemData: Sync {
    /// Parameters baked into the data, if any; checked against the assembly parameters.
    fn params(&self) -> Option<PhysicalParams> {
        None
    }
    fn stokes_velocity(&self, x: f64, y: f64) -> [f64; 2];
    /// Cauchy stress `σ = 2με(u) - pI` (row-major).
    fn stokes_stress(&self, x: f64, y: f64) -> [[f64; 2]; 2];
    fn stokes_source(&self, x: f64, y: f64) -> [f64; 2];
    fn darcy_pressure(&self, x: f64, y: f64) -> f64;
    /// Darcy velocity `-κ∇p_D`.
    fn darcy_velocity(&self, x: f64, y: f64) -> [f64; 2];
    fn darcy_source(&self, x: f64, y: f64) -> f64;
    fn interface(&self, x: f64) -> InterfaceData;
}

/// Homogeneous data: every source and boundary value is zero.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroData;

impl ProblemData for ZeroData {
    fn stokes_velocity(&self, _x: f64, _y: f64) -> [f64; 2] {
        [0.0; 2]
    }
    fn stokes_stress(&self, _x: f64, _y: f64) -> [[f64; 2]; 2] {
        [[0.0; 2]; 2]
    }
    fn stokes_source(&self, _x: f64, _y: f64) -> [f64; 2] {
        [0.0; 2]
    }
    fn darcy_pressure(&self, _x: f64, _y: f64) -> f64 {
        0.0
    }
    fn darcy_velocity(&self, _x: f64, _y: f64) -> [f64; 2] {
        [0.0; 2]
    }
    fn darcy_source(&self, _x: f64, _y: f64) -> f64 {
        0.0
    }
    fn interface(&self, _x: f64) -> InterfaceData {
        InterfaceData::default()
    }
}
