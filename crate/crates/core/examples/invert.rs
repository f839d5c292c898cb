//! Solve Z*(z) = v by bisection on binary digits.

use zetastar::series::zeta;
use zetastar::zstar::{invert_zstar, zstar};
use zetastar::TruncationParams;

fn main() -> zetastar::Result<()> {
    let p = TruncationParams::default().with_tol(1e-12);
    for v in [1.01, 1.2, 1.5, zeta(2), 2.0, 3.0, 10.0] {
        let z = invert_zstar(v, 52, &p)?;
        let back = zstar(&z, &p)?.value;
        println!(
            "v={v:<8.5} z={:.15}  Z*(z)-v = {:+.1e}",
            z.approx(),
            back - v
        );
    }
    Ok(())
}
