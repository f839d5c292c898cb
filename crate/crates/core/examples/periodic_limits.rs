//! Periodic indices: limits over block repetitions, with and without Aitken.

use zetastar::series::eval_periodic;
use zetastar::TruncationParams;

fn main() -> zetastar::Result<()> {
    let base = TruncationParams::default();
    let raw = TruncationParams {
        extrapolate: false,
        ..base
    };

    for block in [
        vec![2, 1],
        vec![2, 1, 1],
        vec![2, 1, 1, 1],
        vec![3, 1],
        vec![2, 2, 1],
        vec![3, 2],
    ] {
        let a = eval_periodic(&[], &block, &base)?;
        let b = eval_periodic(&[], &block, &raw)?;
        println!(
            "{block:?}^inf  aitken {:.12} ({} reps)  plain {:.12} ({} reps)",
            a.value, a.terms_used, b.value, b.terms_used
        );
    }
    // a prefix before the block
    let v = eval_periodic(&[4], &[2, 1], &base)?.value;
    println!("4,(2,1)  {v:.12}");
    Ok(())
}
