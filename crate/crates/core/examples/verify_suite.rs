//! Run the identity suite and print it as TSV.

use zetastar::verify::{run_suite, write_tsv};
use zetastar::TruncationParams;

fn main() -> std::io::Result<()> {
    let rows = run_suite(&TruncationParams::default());
    write_tsv(std::io::stdout().lock(), &rows)?;
    let failed = rows.iter().filter(|r| !r.pass).count();
    eprintln!("{} checks, {failed} failed", rows.len());
    Ok(())
}
