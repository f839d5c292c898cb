//! Write (z, Z*(z)) on a dyadic grid as CSV.
//!
//!     cargo run --release --example graph_csv -- 4096 graph.csv

use std::fs::File;
use std::io::{self, BufWriter};

use zetastar::zstar::{graph_samples, write_graph_csv};
use zetastar::TruncationParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(64);
    let rows = graph_samples(n, &TruncationParams::default())?;
    match args.next() {
        Some(path) => write_graph_csv(BufWriter::new(File::create(&path)?), &rows)?,
        None => write_graph_csv(io::stdout().lock(), &rows)?,
    }
    Ok(())
}
