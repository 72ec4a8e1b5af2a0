//! Structured two-subdomain staggered grid.
//!
//! The Stokes block sits on top of the Darcy block and both share the same
//! column count `nx`, so every interface facet is the common edge of exactly one
//! Stokes cell and one Darcy cell. Velocities live on cell faces (MAC layout),
//! pressures at cell centers.

use crate::error::{Error, Result};

/// Rectangle pair `Ω_D = [x_min, x_max] × [y_min, y_interface]`,
/// `Ω_S = [x_min, x_max] × [y_interface, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_interface: f64,
    pub y_max: f64,
}

impl Default for Domain {
    fn default() -> Self {
        Self {
            x_min: 0.0,
            x_max: 1.0,
            y_min: 0.0,
            y_interface: 1.0,
            y_max: 2.0,
        }
    }
}

impl Domain {
    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn stokes_height(&self) -> f64 {
        self.y_max - self.y_interface
    }

    pub fn darcy_height(&self) -> f64 {
        self.y_interface - self.y_min
    }

    pub fn in_stokes(&self, x: f64, y: f64) -> bool {
        let eps = 1e-12;
        x >= self.x_min - eps
            && x <= self.x_max + eps
            && y >= self.y_interface - eps
            && y <= self.y_max + eps
    }

    pub fn in_darcy(&self, x: f64, y: f64) -> bool {
        let eps = 1e-12;
        x >= self.x_min - eps
            && x <= self.x_max + eps
            && y >= self.y_min - eps
            && y <= self.y_interface + eps
    }
}

/// Boundary condition type on a Stokes edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StokesBc {
    /// `u_S` prescribed.
    Velocity,
    /// `σ(u_S, p_S)·n` prescribed.
    Traction,
}

/// Boundary condition type on a Darcy edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DarcyBc {
    /// `p_D` prescribed.
    Pressure,
    /// Normal flux `-κ∇p_D·n` prescribed.
    Flux,
}

/// Per-edge boundary tags for both subdomains (the interface is not an edge here).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryLayout {
    pub stokes_top: StokesBc,
    pub stokes_left: StokesBc,
    pub stokes_right: StokesBc,
    pub darcy_bottom: DarcyBc,
    pub darcy_left: DarcyBc,
    pub darcy_right: DarcyBc,
}

impl BoundaryLayout {
    /// No-slip lid on top, fixed pressure at the bottom, natural conditions on
    /// the lateral edges. The interface endpoints touch Neumann edges.
    pub fn interface_meets_neumann() -> Self {
        Self {
            stokes_top: StokesBc::Velocity,
            stokes_left: StokesBc::Traction,
            stokes_right: StokesBc::Traction,
            darcy_bottom: DarcyBc::Pressure,
            darcy_left: DarcyBc::Flux,
            darcy_right: DarcyBc::Flux,
        }
    }

    /// Dirichlet data on the lateral edges, natural conditions on top and
    /// bottom. The interface endpoints touch Dirichlet edges.
    pub fn interface_meets_dirichlet() -> Self {
        Self {
            stokes_top: StokesBc::Traction,
            stokes_left: StokesBc::Velocity,
            stokes_right: StokesBc::Velocity,
            darcy_bottom: DarcyBc::Flux,
            darcy_left: DarcyBc::Pressure,
            darcy_right: DarcyBc::Pressure,
        }
    }

    pub fn has_darcy_dirichlet(&self) -> bool {
        [self.darcy_bottom, self.darcy_left, self.darcy_right].contains(&DarcyBc::Pressure)
    }

    /// True when both endpoints of the interface touch velocity-Dirichlet Stokes edges.
    pub fn interface_touches_dirichlet(&self) -> bool {
        self.stokes_left == StokesBc::Velocity && self.stokes_right == StokesBc::Velocity
    }
}

impl Default for BoundaryLayout {
    fn default() -> Self {
        Self::interface_meets_neumann()
    }
}

/// One record per interface facet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceFacet {
    pub id: usize,
    pub length: f64,
    /// Facet midpoint.
    pub center: [f64; 2],
    /// Darcy cell below the facet.
    pub darcy_cell: usize,
    /// Stokes cell above the facet.
    pub stokes_cell: usize,
    /// Unknown-agnostic index of the y-velocity face lying on the facet.
    pub stokes_uy: usize,
}

/// Immutable staggered grid over the coupled domain.
#[derive(Debug, Clone, PartialEq)]
pub struct StaggeredMesh {
    pub nx: usize,
    pub ny_s: usize,
    pub ny_d: usize,
    pub hx: f64,
    pub hy_s: f64,
    pub hy_d: f64,
    pub domain: Domain,
    pub boundary: BoundaryLayout,
}

/// Builds the default mesh on `[0,1]×[0,2]` with the interface at `y = 1`.
pub fn build_mesh(nx: usize, ny_s: usize, ny_d: usize) -> Result<StaggeredMesh> {
    StaggeredMesh::new(nx, ny_s, ny_d, Domain::default(), BoundaryLayout::default())
}

impl StaggeredMesh {
    pub fn new(
        nx: usize,
        ny_s: usize,
        ny_d: usize,
        domain: Domain,
        boundary: BoundaryLayout,
    ) -> Result<Self> {
        if nx < 2 || ny_s < 2 || ny_d < 2 {
            return Err(Error::Config(format!(
                "staggered stencils need at least two cells per direction (got nx={nx}, ny_s={ny_s}, ny_d={ny_d})"
            )));
        }
        let (w, hs, hd) = (domain.width(), domain.stokes_height(), domain.darcy_height());
        if !(w > 0.0 && hs > 0.0 && hd > 0.0) {
            return Err(Error::Config(format!("degenerate domain {domain:?}")));
        }
        Ok(Self {
            nx,
            ny_s,
            ny_d,
            hx: w / nx as f64,
            hy_s: hs / ny_s as f64,
            hy_d: hd / ny_d as f64,
            domain,
            boundary,
        })
    }

    /// Square-cell mesh with `n` columns and `n` rows per subdomain.
    pub fn uniform(n: usize) -> Result<Self> {
        build_mesh(n, n, n)
    }

    pub fn with_boundary(mut self, boundary: BoundaryLayout) -> Self {
        self.boundary = boundary;
        self
    }

    // --- x-velocity faces: (nx+1) × ny_s, vertical faces of Stokes cells

    pub fn n_ux(&self) -> usize {
        (self.nx + 1) * self.ny_s
    }

    pub fn ux_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i <= self.nx && j < self.ny_s);
        j * (self.nx + 1) + i
    }

    pub fn ux_position(&self, i: usize, j: usize) -> [f64; 2] {
        [
            self.domain.x_min + i as f64 * self.hx,
            self.domain.y_interface + (j as f64 + 0.5) * self.hy_s,
        ]
    }

    // --- y-velocity faces: nx × (ny_s+1), row j = 0 lies on the interface

    pub fn n_uy(&self) -> usize {
        self.nx * (self.ny_s + 1)
    }

    pub fn uy_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.nx && j <= self.ny_s);
        j * self.nx + i
    }

    pub fn uy_position(&self, i: usize, j: usize) -> [f64; 2] {
        [
            self.domain.x_min + (i as f64 + 0.5) * self.hx,
            self.domain.y_interface + j as f64 * self.hy_s,
        ]
    }

    // --- cells

    pub fn n_stokes_cells(&self) -> usize {
        self.nx * self.ny_s
    }

    pub fn stokes_cell(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn stokes_cell_center(&self, i: usize, j: usize) -> [f64; 2] {
        [
            self.domain.x_min + (i as f64 + 0.5) * self.hx,
            self.domain.y_interface + (j as f64 + 0.5) * self.hy_s,
        ]
    }

    pub fn stokes_cell_volume(&self) -> f64 {
        self.hx * self.hy_s
    }

    pub fn n_darcy_cells(&self) -> usize {
        self.nx * self.ny_d
    }

    pub fn darcy_cell(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn darcy_cell_center(&self, i: usize, j: usize) -> [f64; 2] {
        [
            self.domain.x_min + (i as f64 + 0.5) * self.hx,
            self.domain.y_min + (j as f64 + 0.5) * self.hy_d,
        ]
    }

    pub fn darcy_cell_volume(&self) -> f64 {
        self.hx * self.hy_d
    }

    // --- interface

    pub fn n_interface_facets(&self) -> usize {
        self.nx
    }

    /// Outward unit normal of the Stokes domain on the interface.
    pub fn interface_normal(&self) -> [f64; 2] {
        [0.0, -1.0]
    }

    pub fn interface_tangent(&self) -> [f64; 2] {
        [1.0, 0.0]
    }

    /// Distance between a Darcy cell centroid and its interface facet centroid.
    pub fn h_k(&self) -> f64 {
        0.5 * self.hy_d
    }

    pub fn interface_length(&self) -> f64 {
        self.domain.width()
    }

    pub fn interface_facets(&self) -> Vec<InterfaceFacet> {
        (0..self.nx)
            .map(|i| InterfaceFacet {
                id: i,
                length: self.hx,
                center: [
                    self.domain.x_min + (i as f64 + 0.5) * self.hx,
                    self.domain.y_interface,
                ],
                darcy_cell: self.darcy_cell(i, self.ny_d - 1),
                stokes_cell: self.stokes_cell(i, 0),
                stokes_uy: self.uy_index(i, 0),
            })
            .collect()
    }
}
