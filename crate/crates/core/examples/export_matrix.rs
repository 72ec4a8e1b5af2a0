//! Writes the monolithic matrix and right-hand side as MatrixMarket files and
//! reads the matrix back.

use sdlab::experiment::{build_system, RunConfig};
use sdlab::io::{dump_system, read_matrix_market};

pub fn run_example() -> sdlab::Result<()> {
    let dir = std::env::temp_dir().join(format!("sdlab-export-{}", std::process::id()));
    let (_, op, rhs) = build_system(&RunConfig { nx: 4, ..Default::default() })?;
    dump_system(&dir, &op, &rhs)?;
    let back = read_matrix_market(&std::fs::read_to_string(dir.join("matrix.mtx"))?)?;
    println!("wrote {} ({} x {}, {} entries)", dir.display(), back.nrows(), back.ncols(), back.nnz());
    println!("round trip exact: {}", back.to_dense() == op.matrix.to_dense());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() -> sdlab::Result<()> {
    run_example()
}
