//! Gamma-product closed forms and the complex Gamma function behind them.

use num_complex::Complex64;
use zetastar::closed_form::{
    complex_gamma, hoffman_like_closed, hoffman_like_unsigned, staircase_closed, two_n_one_closed,
};
use zetastar::series::eval_periodic;
use zetastar::TruncationParams;

fn main() -> zetastar::Result<()> {
    let g = complex_gamma(Complex64::new(0.5, 0.0))?;
    println!(
        "Gamma(1/2) = {g}  (sqrt(pi) = {})",
        std::f64::consts::PI.sqrt()
    );
    println!("Gamma(1+i) = {}", complex_gamma(Complex64::new(1.0, 1.0))?);

    let p = TruncationParams::default();
    for n in 1..=3 {
        let cf = two_n_one_closed(n)?;
        let mut block = vec![2; n as usize];
        block.push(1);
        let s = eval_periodic(&[], &block, &p)?.value;
        println!(
            "({{2}}^{n},1)^inf  gamma {:.12}  product {:.12}  series {s:.12}",
            cf.value, cf.product
        );
    }
    for n in 0..=2 {
        let cf = hoffman_like_closed(n)?;
        let mut block = vec![2; n as usize];
        block.push(3);
        block.extend(vec![2; n as usize]);
        block.push(1);
        let s = eval_periodic(&[], &block, &p)?.value;
        // the unsigned product is the reciprocal form without the sign from m = 1
        let u = hoffman_like_unsigned(n)?.value;
        println!(
            "{block:?}^inf  gamma {:.12}  series {s:.12}  unsigned {u:.12}",
            cf.value
        );
    }
    for n in 2..=5 {
        println!("({{2,{{1}}^{}}})^inf = {}", n - 2, staircase_closed(n)?);
    }
    Ok(())
}
