//! Chain sums sum_{m_1 >= ... >= m_s >= n} 1/(m_1^{r+1} m_2 ... m_s) next to
//! their explicit upper bounds.

use zetastar::series::{bound_chain_sum, lead_chain_sum};
use zetastar::TruncationParams;

fn main() -> zetastar::Result<()> {
    let p = TruncationParams::default().with_tol(1e-13);
    println!("r s n        sum          bound     sum/bound");
    for r in 1..=3u32 {
        for s in 1..=4u32 {
            for n in r..=6u32 {
                let v = lead_chain_sum(r, s, n as usize, &p)?.value;
                let b = bound_chain_sum(r, s, n)?.upper;
                let flag = if v > b { "  exceeds" } else { "" };
                println!("{r} {s} {n}  {v:12.9}  {b:12.9}  {:8.4}{flag}", v / b);
            }
        }
    }
    Ok(())
}
