//! Physical and dimensionless parameters and the coefficients derived from them.

use crate::error::{Error, Result};

/// How the interface coefficient `β_n` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum BetaNormal {
    /// `β_n = h_K / κ` per facet; the only choice consistent with the TPFA flux.
    #[default]
    Consistent,
    /// A fixed model parameter.
    Fixed(f64),
}

impl std::str::FromStr for BetaNormal {
    type Err = Error;

    /// `consistent` or a positive number.
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("consistent") {
            return Ok(BetaNormal::Consistent);
        }
        match s.parse::<f64>() {
            Ok(b) if b > 0.0 && b.is_finite() => Ok(BetaNormal::Fixed(b)),
            _ => Err(Error::Config(format!("beta_n must be 'consistent' or a positive number, got '{s}'"))),
        }
    }
}

/// Viscosity, permeability and slip coefficient plus derived quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub mu: f64,
    pub k: f64,
    pub alpha: f64,
    /// `k / μ`
    pub kappa: f64,
    /// `μ α / √k`
    pub beta_tau: f64,
    pub beta_n: BetaNormal,
}

impl PhysicalParams {
    pub fn new(mu: f64, k: f64, alpha: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::Parameter(format!("viscosity must be positive, got {mu}")));
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::Parameter(format!("permeability must be positive, got {k}")));
        }
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::Parameter(format!("slip coefficient must be nonnegative, got {alpha}")));
        }
        Ok(Self {
            mu,
            k,
            alpha,
            kappa: k / mu,
            beta_tau: mu * alpha / k.sqrt(),
            beta_n: BetaNormal::Consistent,
        })
    }

    pub fn unit() -> Self {
        Self::new(1.0, 1.0, 1.0).expect("unit parameters are valid")
    }

    pub fn with_beta_n(mut self, beta_n: BetaNormal) -> Result<Self> {
        if let BetaNormal::Fixed(b) = beta_n {
            if !(b > 0.0 && b.is_finite()) {
                return Err(Error::Parameter(format!("beta_n must be positive, got {b}")));
            }
        }
        self.beta_n = beta_n;
        Ok(self)
    }

    /// `β_n` on a facet whose Darcy neighbour centroid is `h_k` away.
    pub fn beta_n_at(&self, h_k: f64) -> f64 {
        match self.beta_n {
            BetaNormal::Consistent => h_k / self.kappa,
            BetaNormal::Fixed(b) => b,
        }
    }
}

/// Characteristic scales of the free-flow problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scales {
    pub u0: f64,
    pub delta_p0: f64,
    pub l0: f64,
    pub rho0: f64,
}

impl Default for Scales {
    fn default() -> Self {
        Self {
            u0: 1.0,
            delta_p0: 1.0,
            l0: 1.0,
            rho0: 1.0,
        }
    }
}

/// Free-flow number `S = Re⁻¹Eu⁻¹`, Darcy number and slip coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    pub s: f64,
    pub da: f64,
    pub alpha: f64,
    pub scales: Scales,
}

impl DimensionlessParams {
    pub fn new(s: f64, da: f64, alpha: f64) -> Self {
        Self {
            s,
            da,
            alpha,
            scales: Scales::default(),
        }
    }
}

/// Maps `(S, Da, α)` back to `(μ, k, α)`.
///
/// `S = U₀ μ / (L₀ ΔP₀)` and `Da = k / L₀²`, so with unit scales `μ = S` and `k = Da`.
pub fn from_dimensionless(d: &DimensionlessParams) -> Result<PhysicalParams> {
    let sc = d.scales;
    if !(d.s > 0.0 && d.da > 0.0) {
        return Err(Error::Parameter(format!("S and Da must be positive (S={}, Da={})", d.s, d.da)));
    }
    if !(sc.u0 > 0.0 && sc.delta_p0 > 0.0 && sc.l0 > 0.0 && sc.rho0 > 0.0) {
        return Err(Error::Parameter(format!("scales must be positive: {sc:?}")));
    }
    let mu = d.s * sc.l0 * sc.delta_p0 / sc.u0;
    let k = d.da * sc.l0 * sc.l0;
    PhysicalParams::new(mu, k, d.alpha)
}

/// Axes of a parameter sweep; the case list is their Cartesian product.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRanges {
    pub s: Vec<f64>,
    pub da: Vec<f64>,
    pub alpha: Vec<f64>,
    pub nx: Vec<usize>,
}

impl Default for SweepRanges {
    fn default() -> Self {
        Self {
            s: vec![1e1, 1e-1, 1e-3, 1e-5],
            da: vec![1.0, 1e-2, 1e-4, 1e-8, 1e-11, 1e-14],
            alpha: vec![0.0, 1.0, 10.0, 100.0],
            nx: vec![16, 32, 64, 128],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCase {
    pub params: PhysicalParams,
    pub nx: usize,
}

/// Cartesian product in `S`, `Da`, `α`, `nx` order (`nx` varies fastest).
pub fn sweep_grid(ranges: &SweepRanges) -> Result<Vec<SweepCase>> {
    let mut cases = Vec::with_capacity(ranges.s.len() * ranges.da.len() * ranges.alpha.len() * ranges.nx.len());
    for &s in &ranges.s {
        for &da in &ranges.da {
            for &alpha in &ranges.alpha {
                let params = from_dimensionless(&DimensionlessParams::new(s, da, alpha))?;
                for &nx in &ranges.nx {
                    cases.push(SweepCase { params, nx });
                }
            }
        }
    }
    Ok(cases)
}
