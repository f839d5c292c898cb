//! Evaluate indices of finite and infinite length.
//!
//!     cargo run --example eval_index -- "3,(2)" "(2,1,1)" "2,2!"

use zetastar::{series, Index, TruncationParams};

fn main() -> zetastar::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if args.is_empty() {
        [
            "2!", "3,1!", "(2)", "3,(2)", "(4)", "(2,1)", "(3,1)", "2,2,(1)", "2,(1)",
        ]
        .map(String::from)
        .to_vec()
    } else {
        args
    };
    let p = TruncationParams::default();
    for s in &inputs {
        let idx: Index = s.parse()?;
        let (ev, method) = series::evaluate(&idx, &p)?;
        println!(
            "{:<12} {:>20.15}  err {:.1e}  {method}",
            idx.to_string(),
            ev.value,
            ev.err_estimate
        );
    }
    Ok(())
}
