//! One-sided derivatives at dyadic points, checked against difference quotients.

use zetastar::verify::difference_quotient;
use zetastar::zstar::{derivative_nondyadic, left_derivative, right_derivative};
use zetastar::{Dyadic, TruncationParams, ZPoint};

fn main() -> zetastar::Result<()> {
    let p = TruncationParams::default().with_tol(1e-13);
    for s in ["1/2^2", "3/2^3", "5/2^3", "1/2", "3/2^2", "7/2^3"] {
        let z: Dyadic = s.parse()?;
        let r = right_derivative(&z, &p)?;
        let l = left_derivative(&z, &p)?;
        let qr = difference_quotient(&z, 18, true, &p)?;
        let ql = difference_quotient(&z, 18, false, &p)?;
        let left = if l.diverges() {
            "diverges".to_string()
        } else {
            format!("{:.8}", l.value)
        };
        println!(
            "{s:<6} right {:.8} (h=2^-18: {qr:.8})  left {left} (h=2^-18: {ql:.4})",
            r.value
        );
    }
    // away from dyadics the two sides agree
    for s in ["1/3", "2/5"] {
        let z: ZPoint = s.parse()?;
        let d = derivative_nondyadic(&z, &p)?;
        println!(
            "{s:<6} {} {:.10} (depth {})",
            d.side, d.value, d.truncation_depth
        );
    }
    Ok(())
}
