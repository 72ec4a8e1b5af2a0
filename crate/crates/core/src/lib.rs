//! Monolithic solvers for the coupled Stokes-Darcy problem on two-dimensional
//! staggered grids.
//!
//! The free flow sits on top of a porous block; the two are joined along a flat
//! interface with Beavers-Joseph-Saffman slip, normal stress balance and mass
//! conservation. Two symmetric formulations are assembled:
//!
//! * [`Formulation::Multiplier`]: interface pressure kept as a Lagrange multiplier,
//! * [`Formulation::Robin`]: multiplier eliminated into a Robin condition,
//!
//! together with the block-diagonal preconditioners whose interface pressure
//! block contains the spectral fractional operator `(-Δ_Γ)^{-1/2}`, and a
//! naive baseline without it. Everything needed to reproduce grid-convergence,
//! robustness and condition-number studies lives here; see the `examples/`
//! directory of this crate for one runnable program per capability.

pub mod assembly;
pub mod error;
pub mod experiment;
pub mod fractional;
pub mod io;
pub mod linalg;
pub mod mesh;
pub mod mms;
pub mod params;
pub mod precond;

pub use assembly::{
    assemble_system, BlockLayout, BlockOperator, BlockVector, BoundaryLayout, Formulation,
};
pub use error::{Error, Result};
pub use fractional::{FractionalVariant, SpectralFractionalOp};
pub use linalg::{minres, MinresOptions, SolveReport};
pub use mesh::{build_mesh, StaggeredMesh};
pub use mms::MmsData;
pub use params::{BetaNormal, DimensionlessParams, PhysicalParams};
pub use precond::{BlockPreconditioner, PrecondKind};
