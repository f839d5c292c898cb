//! Left difference quotients at z = 1 - 2^-p grow linearly in q for h = 2^-q.

use zetastar::zstar::divergence_ratio;
use zetastar::TruncationParams;

fn main() -> zetastar::Result<()> {
    let params = TruncationParams::default();
    for p in 1..=3u32 {
        println!("p = {p}");
        for q in (p + 5)..=(p + 20) {
            let r = divergence_ratio(p, q, &params)?;
            println!(
                "  q={q:<3} ratio {r:>10.5}  ratio/(q-p-1) {:.5}",
                r / (q - p - 1) as f64
            );
        }
    }
    Ok(())
}
