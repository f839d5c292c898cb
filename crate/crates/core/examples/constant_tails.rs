//! Indices ending in a constant tail {l}^inf, against their closed forms.

use zetastar::closed_form::{const_index_closed, tail2_reduction};
use zetastar::series::{eval_tail_l, zeta};
use zetastar::TruncationParams;

fn main() -> zetastar::Result<()> {
    let p = TruncationParams::default().with_tol(1e-12);

    println!("{{k}}^inf: series, Gamma product, direct m-product");
    for k in 2..=8 {
        let s = eval_tail_l(&[], k, &p)?;
        let c = const_index_closed(k)?;
        println!(
            "  k={k}  {:.15}  {:.15}  {:.15}",
            s.value, c.value, c.product
        );
    }

    println!("prefix then {{2}}^inf: series vs the reduction to finite values");
    for prefix in [vec![3], vec![4], vec![3, 3], vec![2, 3]] {
        let s = eval_tail_l(&prefix, 2, &p)?.value;
        let r = tail2_reduction(&prefix, &p)?;
        println!("  {prefix:?}  {s:.15}  {r:.15}");
    }
    println!("  2 zeta(2) - 2 = {:.15}", 2.0 * zeta(2) - 2.0);

    // a ones tail undoes the +1 on the last entry
    let a = eval_tail_l(&[2, 2], 1, &p)?.value;
    println!(
        "(2,2,{{1}}^inf) = {a:.15} = 2 zeta(3) = {:.15}",
        2.0 * zeta(3)
    );
    Ok(())
}
