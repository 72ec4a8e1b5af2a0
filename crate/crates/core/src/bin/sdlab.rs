use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sdlab::experiment::{
    build_system, run_cond, run_cond_sweep, run_convergence, run_solve, run_sweep, workers_from_env, BoundaryChoice,
    CondMethod, RunConfig,
};
use sdlab::io::{cond_csv, convergence_csv, dump_system, parse_key_values, solve_csv};
use sdlab::params::{from_dimensionless, DimensionlessParams, SweepRanges};
use sdlab::{BetaNormal, Error, FractionalVariant, PhysicalParams};

const EXIT_RUNTIME: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_NOT_CONVERGED: u8 = 3;
const EXIT_CAPABILITY: u8 = 4;

/// Stokes-Darcy solver and preconditioner lab.
///
/// Exit codes: 0 success, 1 runtime failure, 2 configuration error,
/// 3 a solve did not converge, 4 capability limit exceeded.
#[derive(Parser, Debug)]
#[command(name = "sdlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the manufactured problem once.
    Solve(Common),
    /// Solve over a parameter grid (one CSV row per case).
    Sweep {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: Grid,
    },
    /// Discrete error norms and observed orders under refinement.
    Convergence {
        #[command(flatten)]
        common: Common,
        /// Mesh sizes, coarse to fine.
        #[arg(long, value_delimiter = ',', default_value = "16,32,64,128")]
        levels: Vec<usize>,
    },
    /// Condition number of the preconditioned operator.
    Cond {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "dense")]
        method: String,
        /// Evaluate over the grid given by the list flags instead of one point.
        #[arg(long)]
        grid: bool,
        #[command(flatten)]
        lists: Grid,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Run file with `key = value` lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// la | ro
    #[arg(long)]
    formulation: Option<String>,
    /// exact | naive
    #[arg(long)]
    precond: Option<String>,
    /// example21 | appendixC
    #[arg(long, default_value = "example21")]
    boundary: String,
    /// neumann | dirichlet; defaults to the variant matching the boundary layout.
    #[arg(long)]
    fractional: Option<String>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny_s: Option<usize>,
    #[arg(long)]
    ny_d: Option<usize>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long = "S")]
    s: Option<f64>,
    #[arg(long = "Da")]
    da: Option<f64>,
    /// consistent | <positive value>
    #[arg(long)]
    beta_n: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1e-8)]
    reduction: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    /// Output CSV path; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the base system as MatrixMarket files into this directory.
    #[arg(long)]
    dump_matrix: Option<PathBuf>,
    /// Fill the wall_time_s column (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug, Clone)]
struct Grid {
    #[arg(long = "S-values", value_delimiter = ',')]
    s_values: Option<Vec<f64>>,
    #[arg(long = "Da-values", value_delimiter = ',')]
    da_values: Option<Vec<f64>>,
    #[arg(long = "alpha-values", value_delimiter = ',')]
    alpha_values: Option<Vec<f64>>,
    #[arg(long = "nx-values", value_delimiter = ',')]
    nx_values: Option<Vec<usize>>,
}

impl Grid {
    fn ranges(&self) -> SweepRanges {
        let d = SweepRanges::default();
        SweepRanges {
            s: self.s_values.clone().unwrap_or(d.s),
            da: self.da_values.clone().unwrap_or(d.da),
            alpha: self.alpha_values.clone().unwrap_or(d.alpha),
            nx: self.nx_values.clone().unwrap_or(d.nx),
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> sdlab::Result<T> {
    v.parse().map_err(|_| Error::Config(format!("invalid value '{v}' for {key}")))
}

fn config(c: &Common) -> sdlab::Result<RunConfig> {
    let mut kv: BTreeMap<String, String> = match &c.config {
        Some(p) => parse_key_values(&std::fs::read_to_string(p)?)?,
        None => BTreeMap::new(),
    };
    let flags: [(&str, Option<String>); 10] = [
        ("mu", c.mu.map(|v| v.to_string())),
        ("k", c.k.map(|v| v.to_string())),
        ("alpha", c.alpha.map(|v| v.to_string())),
        ("S", c.s.map(|v| v.to_string())),
        ("Da", c.da.map(|v| v.to_string())),
        ("beta_n", c.beta_n.clone()),
        ("nx", c.nx.map(|v| v.to_string())),
        ("formulation", c.formulation.clone()),
        ("precond", c.precond.clone()),
        ("seed", c.seed.map(|v| v.to_string())),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            kv.insert(key.to_string(), v);
        }
    }
    let get = |key: &str| kv.get(key).map(String::as_str);
    let physical = get("mu").is_some() || get("k").is_some();
    let dimensionless = get("S").is_some() || get("Da").is_some();
    if physical && dimensionless {
        return Err(Error::Config("give either mu/k or S/Da, not both".into()));
    }
    let alpha = get("alpha").map(|v| parse("alpha", v)).transpose()?.unwrap_or(1.0);
    let params = if dimensionless {
        let s = get("S").map(|v| parse("S", v)).transpose()?.unwrap_or(1.0);
        let da = get("Da").map(|v| parse("Da", v)).transpose()?.unwrap_or(1.0);
        from_dimensionless(&DimensionlessParams::new(s, da, alpha))?
    } else {
        let mu = get("mu").map(|v| parse("mu", v)).transpose()?.unwrap_or(1.0);
        let k = get("k").map(|v| parse("k", v)).transpose()?.unwrap_or(1.0);
        PhysicalParams::new(mu, k, alpha)?
    };
    let beta_n: BetaNormal = get("beta_n").map(str::parse).transpose()?.unwrap_or_default();
    let defaults = RunConfig::default();
    let cfg = RunConfig {
        formulation: get("formulation").map(str::parse).transpose()?.unwrap_or(defaults.formulation),
        precond: get("precond").map(str::parse).transpose()?.unwrap_or(defaults.precond),
        boundary: c.boundary.parse::<BoundaryChoice>()?,
        variant: c.fractional.as_deref().map(str::parse::<FractionalVariant>).transpose()?,
        nx: get("nx").map(|v| parse("nx", v)).transpose()?.unwrap_or(defaults.nx),
        ny_s: c.ny_s,
        ny_d: c.ny_d,
        params: params.with_beta_n(beta_n)?,
        seed: get("seed").map(|v| parse("seed", v)).transpose()?.unwrap_or(defaults.seed),
        reduction: c.reduction,
        max_iter: c.max_iter,
        record_timing: c.timing,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn emit(c: &Common, text: &str) -> sdlab::Result<()> {
    match &c.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn dump(c: &Common, cfg: &RunConfig) -> sdlab::Result<()> {
    if let Some(dir) = &c.dump_matrix {
        let (_, op, rhs) = build_system(cfg)?;
        dump_system(dir, &op, &rhs)?;
    }
    Ok(())
}

/// Returns whether every solve converged.
fn run(cli: Cli) -> sdlab::Result<bool> {
    match cli.command {
        Command::Solve(c) => {
            let cfg = config(&c)?;
            dump(&c, &cfg)?;
            let r = run_solve(&cfg)?;
            emit(&c, &solve_csv(std::slice::from_ref(&r))?)?;
            Ok(r.converged)
        }
        Command::Sweep { common: c, grid } => {
            let cfg = config(&c)?;
            dump(&c, &cfg)?;
            let rows = run_sweep(&cfg, &grid.ranges(), workers_from_env()?)?;
            emit(&c, &solve_csv(&rows)?)?;
            Ok(rows.iter().all(|r| r.converged))
        }
        Command::Convergence { common: c, levels } => {
            let cfg = config(&c)?;
            dump(&c, &cfg)?;
            emit(&c, &convergence_csv(&run_convergence(&cfg, &levels)?)?)?;
            Ok(true)
        }
        Command::Cond { common: c, method, grid, lists } => {
            let cfg = config(&c)?;
            dump(&c, &cfg)?;
            let method: CondMethod = method.parse()?;
            let rows = if grid {
                run_cond_sweep(&cfg, &lists.ranges(), method, workers_from_env()?)?
            } else {
                vec![run_cond(&cfg, method)?]
            };
            emit(&c, &cond_csv(&rows)?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("sdlab: at least one solve did not reach the requested reduction");
            ExitCode::from(EXIT_NOT_CONVERGED)
        }
        Err(e) => {
            eprintln!("sdlab: {e}");
            ExitCode::from(match e {
                Error::Config(_) | Error::Parameter(_) => EXIT_CONFIG,
                Error::Capability(_) => EXIT_CAPABILITY,
                _ => EXIT_RUNTIME,
            })
        }
    }
}
