//! Single solves, parameter sweeps, convergence studies and condition numbers
//! driven by one [`RunConfig`].

use std::time::Instant;

use rayon::prelude::*;

use crate::assembly::{assemble_system, BlockOperator, BlockVector, Formulation};
use crate::error::{Error, Result};
use crate::fractional::FractionalVariant;
use crate::linalg::{condition_number, lanczos_condition_number, minres, LanczosOptions, MinresOptions};
use crate::mesh::{BoundaryLayout, StaggeredMesh};
use crate::mms::{convergence_table, error_norm_fv, ConvergenceRow, FieldErrors, MmsData};
use crate::params::{sweep_grid, PhysicalParams, SweepRanges};
use crate::precond::{build_preconditioner, PrecondKind};

/// Environment variable capping the number of sweep workers.
pub const WORKERS_ENV: &str = "SDLAB_MAX_WORKERS";

/// Named boundary layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryChoice {
    /// Velocity on top, pressure at the bottom, natural conditions on the sides.
    #[default]
    Example21,
    /// Essential conditions on the sides, so the interface ends meet them.
    AppendixC,
}

impl BoundaryChoice {
    pub fn layout(&self) -> BoundaryLayout {
        match self {
            BoundaryChoice::Example21 => BoundaryLayout::interface_meets_neumann(),
            BoundaryChoice::AppendixC => BoundaryLayout::interface_meets_dirichlet(),
        }
    }

    /// Interface operator variant matching the layout.
    pub fn default_variant(&self) -> FractionalVariant {
        match self {
            BoundaryChoice::Example21 => FractionalVariant::Neumann,
            BoundaryChoice::AppendixC => FractionalVariant::Dirichlet,
        }
    }

    pub fn short_name(&self) -> &'static str {
        match self {
            BoundaryChoice::Example21 => "example21",
            BoundaryChoice::AppendixC => "appendixC",
        }
    }
}

impl std::str::FromStr for BoundaryChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "example21" => Ok(BoundaryChoice::Example21),
            "appendixc" => Ok(BoundaryChoice::AppendixC),
            _ => Err(Error::Config(format!("unknown boundary layout '{s}' (expected example21 or appendixC)"))),
        }
    }
}

/// Everything a run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub formulation: Formulation,
    pub precond: PrecondKind,
    pub boundary: BoundaryChoice,
    /// Defaults to the variant matching `boundary`.
    pub variant: Option<FractionalVariant>,
    pub nx: usize,
    /// Cells across each subdomain; default `nx`.
    pub ny_s: Option<usize>,
    pub ny_d: Option<usize>,
    pub params: PhysicalParams,
    pub seed: u64,
    pub reduction: f64,
    pub max_iter: usize,
    /// Fill the wall-time column; off by default so output is reproducible byte for byte.
    pub record_timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            formulation: Formulation::Multiplier,
            precond: PrecondKind::Exact,
            boundary: BoundaryChoice::Example21,
            variant: None,
            nx: 16,
            ny_s: None,
            ny_d: None,
            params: PhysicalParams::unit(),
            seed: 1,
            reduction: 1e-8,
            max_iter: 10_000,
            record_timing: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nx < 2 {
            return Err(Error::Config(format!("nx must be at least 2, got {}", self.nx)));
        }
        if matches!(self.ny_s, Some(0..=1)) || matches!(self.ny_d, Some(0..=1)) {
            return Err(Error::Config("ny_s and ny_d must be at least 2".into()));
        }
        if !(self.reduction > 0.0 && self.reduction < 1.0) {
            return Err(Error::Config(format!("reduction must lie in (0, 1), got {}", self.reduction)));
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be positive".into()));
        }
        Ok(())
    }

    pub fn variant(&self) -> FractionalVariant {
        self.variant.unwrap_or_else(|| self.boundary.default_variant())
    }

    pub fn mesh(&self) -> Result<StaggeredMesh> {
        self.validate()?;
        let mesh = crate::mesh::build_mesh(self.nx, self.ny_s.unwrap_or(self.nx), self.ny_d.unwrap_or(self.nx))?;
        Ok(mesh.with_boundary(self.boundary.layout()))
    }

    /// The same run at other parameters and resolution.
    pub fn at(&self, params: PhysicalParams, nx: usize) -> Self {
        let mut c = self.clone();
        c.params = params;
        c.nx = nx;
        c
    }
}

/// Mesh, operator and right-hand side of the manufactured problem.
pub fn build_system(cfg: &RunConfig) -> Result<(StaggeredMesh, BlockOperator, BlockVector)> {
    let mesh = cfg.mesh()?;
    let (op, rhs) = assemble_system(&mesh, &cfg.params, cfg.formulation, &MmsData::new(cfg.params))?;
    Ok((mesh, op, rhs))
}

/// Outcome of one preconditioned solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveRecord {
    pub formulation: Formulation,
    pub precond: PrecondKind,
    pub params: PhysicalParams,
    pub nx: usize,
    pub iterations: usize,
    pub converged: bool,
    pub monotone: bool,
    pub errors: FieldErrors,
    pub wall_time: Option<f64>,
}

/// Solves the manufactured problem from the seeded random initial guess.
pub fn run_solve(cfg: &RunConfig) -> Result<SolveRecord> {
    let start = Instant::now();
    let (mesh, op, rhs) = build_system(cfg)?;
    let b = build_preconditioner(&op, &mesh, &cfg.params, cfg.precond, cfg.variant())?;
    let x0 = BlockVector::random(&op.layout, cfg.seed).flatten();
    let opts = MinresOptions { reduction: cfg.reduction, max_iter: cfg.max_iter, ..Default::default() };
    let (x, report) = minres(&op, &b, &rhs.flatten(), &x0, &opts)?;
    let x = BlockVector::unflatten(&op.layout, &x)?;
    let errors = error_norm_fv(&x, &op, &mesh, &MmsData::new(cfg.params));
    Ok(SolveRecord {
        formulation: cfg.formulation,
        precond: cfg.precond,
        params: cfg.params,
        nx: cfg.nx,
        iterations: report.iterations,
        converged: report.converged,
        monotone: report.is_monotone(),
        errors,
        wall_time: cfg.record_timing.then(|| start.elapsed().as_secs_f64()),
    })
}

/// Worker cap from [`WORKERS_ENV`], if set to a positive integer.
pub fn workers_from_env() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Config(format!("{WORKERS_ENV} must be a positive integer, got '{v}'"))),
        },
    }
}

/// Runs `f` on every item with at most `workers` threads, keeping input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], workers: Option<usize>, f: impl Fn(&T) -> R + Sync + Send) -> Result<Vec<R>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| items.par_iter().map(&f).collect()))
}

/// One solve per grid point in grid order (`nx` fastest). The `β_n` mode of
/// `base.params` carries over to every case.
pub fn run_sweep(base: &RunConfig, ranges: &SweepRanges, workers: Option<usize>) -> Result<Vec<SolveRecord>> {
    let cases = sweep_grid(ranges)?;
    let configs = cases
        .iter()
        .map(|c| Ok(base.at(c.params.with_beta_n(base.params.beta_n)?, c.nx)))
        .collect::<Result<Vec<_>>>()?;
    par_map(&configs, workers, run_solve)?.into_iter().collect()
}

/// Error table over refinement levels. Each level is solved from a zero
/// initial guess to a reduction of at most `1e-12`, so algebraic error does
/// not pollute the observed orders.
pub fn run_convergence(cfg: &RunConfig, levels: &[usize]) -> Result<Vec<ConvergenceRow>> {
    if levels.is_empty() {
        return Err(Error::Config("convergence study needs at least one level".into()));
    }
    let mut out = Vec::with_capacity(levels.len());
    for &nx in levels {
        let c = cfg.at(cfg.params, nx);
        let (mesh, op, rhs) = build_system(&c)?;
        let b = build_preconditioner(&op, &mesh, &c.params, c.precond, c.variant())?;
        let opts = MinresOptions { reduction: c.reduction.min(1e-12), max_iter: c.max_iter, ..Default::default() };
        let (x, report) = minres(&op, &b, &rhs.flatten(), &vec![0.0; op.dim()], &opts)?;
        if !report.converged {
            return Err(Error::Contract(format!("solve at nx={nx} did not converge in {} iterations", report.iterations)));
        }
        let x = BlockVector::unflatten(&op.layout, &x)?;
        out.push((nx, mesh.hx, error_norm_fv(&x, &op, &mesh, &MmsData::new(c.params))));
    }
    Ok(convergence_table(&out))
}

/// How condition numbers are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CondMethod {
    /// Full generalized eigenvalue problem; bounded by the dense size limit.
    #[default]
    Dense,
    /// Lanczos estimate from matrix-vector products.
    Lanczos,
}

impl CondMethod {
    pub fn short_name(&self) -> &'static str {
        match self {
            CondMethod::Dense => "dense",
            CondMethod::Lanczos => "lanczos",
        }
    }
}

impl std::str::FromStr for CondMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dense" => Ok(CondMethod::Dense),
            "lanczos" => Ok(CondMethod::Lanczos),
            _ => Err(Error::Config(format!("unknown condition method '{s}' (expected dense or lanczos)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CondRecord {
    pub formulation: Formulation,
    pub precond: PrecondKind,
    pub params: PhysicalParams,
    pub nx: usize,
    pub dim: usize,
    pub method: CondMethod,
    pub condition: f64,
}

/// Condition number of the preconditioned operator.
pub fn run_cond(cfg: &RunConfig, method: CondMethod) -> Result<CondRecord> {
    let (mesh, op, _) = build_system(cfg)?;
    let b = build_preconditioner(&op, &mesh, &cfg.params, cfg.precond, cfg.variant())?;
    let condition = match method {
        CondMethod::Dense => condition_number(&op.matrix, &b)?,
        CondMethod::Lanczos => lanczos_condition_number(&op, &b, &LanczosOptions { seed: cfg.seed, ..Default::default() })?,
    };
    Ok(CondRecord {
        formulation: cfg.formulation,
        precond: cfg.precond,
        params: cfg.params,
        nx: cfg.nx,
        dim: op.dim(),
        method,
        condition,
    })
}

/// [`run_cond`] over a grid, in grid order.
pub fn run_cond_sweep(base: &RunConfig, ranges: &SweepRanges, method: CondMethod, workers: Option<usize>) -> Result<Vec<CondRecord>> {
    let cases = sweep_grid(ranges)?;
    let configs = cases
        .iter()
        .map(|c| Ok(base.at(c.params.with_beta_n(base.params.beta_n)?, c.nx)))
        .collect::<Result<Vec<_>>>()?;
    par_map(&configs, workers, |c| run_cond(c, method))?.into_iter().collect()
}
