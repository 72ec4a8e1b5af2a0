//! CSV tables, MatrixMarket dumps and `key = value` run files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::assembly::{BlockOperator, BlockVector};
use crate::error::{Error, Result};
use crate::experiment::{CondRecord, SolveRecord};
use crate::linalg::CsrMatrix;
use crate::mms::ConvergenceRow;

/// Shortest round-trip representation, so tables are reproducible.
fn num(v: f64) -> String {
    format!("{v:e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(&r).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("CSV of ASCII fields"))
}

pub const SOLVE_HEADER: [&str; 14] = [
    "formulation",
    "precond",
    "mu",
    "k",
    "alpha",
    "nx",
    "iterations",
    "converged",
    "err_pD",
    "err_pS",
    "err_ux",
    "err_uy",
    "err_pGamma",
    "wall_time_s",
];

pub fn solve_csv(records: &[SolveRecord]) -> Result<String> {
    table(
        &SOLVE_HEADER,
        records.iter().map(|r| {
            vec![
                r.formulation.short_name().to_string(),
                r.precond.short_name().to_string(),
                num(r.params.mu),
                num(r.params.k),
                num(r.params.alpha),
                r.nx.to_string(),
                r.iterations.to_string(),
                r.converged.to_string(),
                num(r.errors.p_d),
                num(r.errors.p_s),
                num(r.errors.ux),
                num(r.errors.uy),
                opt(r.errors.p_gamma),
                opt(r.wall_time),
            ]
        }),
    )
}

pub const CONVERGENCE_HEADER: [&str; 12] = [
    "nx",
    "h",
    "err_ux",
    "err_uy",
    "err_pS",
    "err_pD",
    "err_pGamma",
    "order_ux",
    "order_uy",
    "order_pS",
    "order_pD",
    "order_pGamma",
];

pub fn convergence_csv(rows: &[ConvergenceRow]) -> Result<String> {
    table(
        &CONVERGENCE_HEADER,
        rows.iter().map(|r| {
            let mut v = vec![r.nx.to_string(), num(r.h)];
            v.extend(r.errors.as_array().iter().map(|e| opt(*e)));
            v.extend(r.orders.iter().map(|o| opt(*o)));
            v
        }),
    )
}

pub const COND_HEADER: [&str; 9] = ["formulation", "precond", "mu", "k", "alpha", "nx", "dim", "method", "condition"];

pub fn cond_csv(records: &[CondRecord]) -> Result<String> {
    table(
        &COND_HEADER,
        records.iter().map(|r| {
            vec![
                r.formulation.short_name().to_string(),
                r.precond.short_name().to_string(),
                num(r.params.mu),
                num(r.params.k),
                num(r.params.alpha),
                r.nx.to_string(),
                r.dim.to_string(),
                r.method.short_name().to_string(),
                num(r.condition),
            ]
        }),
    )
}

/// Coordinate MatrixMarket text of a sparse matrix (1-based indices).
pub fn matrix_market(a: &CsrMatrix) -> String {
    let entries: Vec<_> = a.iter().filter(|e| e.2 != 0.0).collect();
    let mut s = String::with_capacity(32 * entries.len() + 64);
    s.push_str("%%MatrixMarket matrix coordinate real general\n");
    let _ = writeln!(s, "{} {} {}", a.nrows(), a.ncols(), entries.len());
    for (i, j, v) in entries {
        let _ = writeln!(s, "{} {} {v:e}", i + 1, j + 1);
    }
    s
}

/// Dense MatrixMarket array text of a vector.
pub fn vector_market(v: &[f64]) -> String {
    let mut s = String::with_capacity(24 * v.len() + 64);
    s.push_str("%%MatrixMarket matrix array real general\n");
    let _ = writeln!(s, "{} 1", v.len());
    for x in v {
        let _ = writeln!(s, "{x:e}");
    }
    s
}

/// Writes `matrix.mtx` and `rhs.mtx` into `dir`, creating it if needed.
pub fn dump_system(dir: &Path, op: &BlockOperator, rhs: &BlockVector) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("matrix.mtx"), matrix_market(&op.matrix))?;
    std::fs::write(dir.join("rhs.mtx"), vector_market(&rhs.flatten()))?;
    Ok(())
}

/// Reads a MatrixMarket coordinate file written by [`matrix_market`].
pub fn read_matrix_market(text: &str) -> Result<CsrMatrix> {
    let bad = |m: &str| Error::Config(format!("malformed MatrixMarket input: {m}"));
    let mut lines = text.lines().filter(|l| !l.starts_with('%') && !l.trim().is_empty());
    let size: Vec<usize> = lines
        .next()
        .ok_or_else(|| bad("missing size line"))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad("size line")))
        .collect::<Result<_>>()?;
    let [nrows, ncols, nnz] = size[..] else {
        return Err(bad("size line needs three integers"));
    };
    let mut entries = Vec::with_capacity(nnz);
    for line in lines {
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.len() != 3 {
            return Err(bad(line));
        }
        let i: usize = t[0].parse().map_err(|_| bad(line))?;
        let j: usize = t[1].parse().map_err(|_| bad(line))?;
        let v: f64 = t[2].parse().map_err(|_| bad(line))?;
        if i == 0 || j == 0 || i > nrows || j > ncols {
            return Err(bad(line));
        }
        entries.push((i - 1, j - 1, v));
    }
    if entries.len() != nnz {
        return Err(bad("entry count"));
    }
    Ok(CsrMatrix::from_triplets(nrows, ncols, entries))
}

/// Keys accepted in run files.
pub const CONFIG_KEYS: [&str; 10] = ["mu", "k", "alpha", "S", "Da", "beta_n", "nx", "formulation", "precond", "seed"];

/// Parses `key = value` lines; `#` starts a comment. Unknown or repeated keys
/// are configuration errors.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value, got '{raw}'", n + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if !CONFIG_KEYS.contains(&k) {
            return Err(Error::Config(format!("line {}: unknown key '{k}'", n + 1)));
        }
        if v.is_empty() {
            return Err(Error::Config(format!("line {}: empty value for '{k}'", n + 1)));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::Config(format!("line {}: '{k}' given twice", n + 1)));
        }
    }
    Ok(out)
}
