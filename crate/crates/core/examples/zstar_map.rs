//! The map Z*: each point z in (0, 1] read through its binary digits.
//!
//!     cargo run --example zstar_map -- 1/3 0.7 5/2^4

use zetastar::zstar::{zstar, zstar_via_index};
use zetastar::{TruncationParams, ZPoint};

fn main() -> zetastar::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if args.is_empty() {
        ["1/2^2", "1/2", "3/2^2", "1/3", "2/3", "0.9", "1"]
            .map(String::from)
            .to_vec()
    } else {
        args
    };
    let p = TruncationParams::default().with_tol(1e-12);
    for s in &inputs {
        let z: ZPoint = s.parse()?;
        let a = zstar(&z, &p)?;
        let (b, method, idx) = zstar_via_index(&z, &p)?;
        println!(
            "z={:<10} {:<14} digits {:>18.14}  index {:<10} {:>18.14} ({method})",
            z.to_string(),
            z.digits().to_string(),
            a.value,
            idx.to_string(),
            b.value
        );
    }
    Ok(())
}
