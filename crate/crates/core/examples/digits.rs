//! Binary digits, dyadic points and indices are three views of one object:
//! the digit 1 at positions k1, k1+k2, ... of a non-terminating expansion.

use zetastar::{DigitStream, Dyadic, Index};

fn main() -> zetastar::Result<()> {
    for s in ["1/2^1", "3/2^2", "5/2^3", "1/2^4", "1/2^0"] {
        let d: Dyadic = s.parse()?;
        let digits = DigitStream::from_dyadic(&d)?;
        let idx = Index::from_digits(&digits)?;
        println!(
            "{:<8} {:<12} index {:<10} Z* index {}",
            d.to_string(),
            digits.to_string(),
            idx.to_string(),
            idx.bump_first()
        );
    }

    // 1/3 = 0.(01): periodic digits, periodic index
    let third = DigitStream::from_ratio(1, 3)?;
    println!(
        "1/3      {:<12} index {}",
        third.to_string(),
        Index::from_digits(&third)?
    );

    // a finite index terminates, and the same point has a second, non-terminating name
    let finite: Index = "2,1!".parse()?;
    println!(
        "{finite} -> {} = {}",
        finite.to_digits(),
        finite.point().to_f64()
    );
    Ok(())
}
