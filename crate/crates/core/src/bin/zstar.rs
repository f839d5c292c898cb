use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use zetastar::format::fmt15;
use zetastar::verify::{run_selected, write_tsv};
use zetastar::zstar::{
    derivative_nondyadic, graph_samples, invert_zstar, left_derivative, right_derivative,
    write_graph_csv, zstar, zstar_via_index,
};
use zetastar::{series, DerivativeReport, Error, Index, TruncationParams, ZPoint};

#[derive(Parser)]
#[command(
    name = "zstar",
    version,
    about = "Multiple zeta-star values of infinite indices and the map Z*"
)]
struct Cli {
    /// Target absolute error.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Largest cutoff on the summation variables.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    mcap: usize,
    /// Binary digits produced by `invert`.
    #[arg(long, global = true, default_value_t = 48)]
    depth: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an index such as "3,(2)", "(2,1)" or "4!".
    EvalIndex { index: String },
    /// Evaluate Z*(z) for z given as a/2^n, a/b, a decimal or 0.0111...
    EvalZstar { z: String },
    /// One-sided derivatives of Z* at a dyadic point (two-sided elsewhere).
    Derivative {
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
        #[arg(long)]
        at: String,
    },
    /// Find z with Z*(z) = v.
    Invert { v: f64 },
    /// Write the table (z, Z*(z)) on a dyadic grid as CSV.
    Graph {
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run the identity suite; exit status 1 if any check fails.
    Verify {
        /// Only these criteria (comma separated).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

enum Failure {
    Usage(String),
    Numeric(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotConverged { .. } => Failure::Numeric(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

const DIVERGENT: &str = "+inf (divergent index (2,{1}^inf))";

fn value_text(v: f64) -> String {
    if v == f64::INFINITY {
        DIVERGENT.into()
    } else {
        fmt15(v)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let params = TruncationParams {
        m_cap: cli.mcap,
        tol: cli.tol,
        ..TruncationParams::default()
    };
    if let Err(e) = params.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &params, &mut out);
    let _ = out.flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// `Ok(false)` means the command ran but reported a failure.
fn run(cli: &Cli, p: &TruncationParams, out: &mut impl Write) -> Result<bool, Failure> {
    match &cli.command {
        Command::EvalIndex { index } => {
            let idx: Index = index.parse()?;
            let (ev, method) = series::evaluate(&idx, p)?;
            match cli.format {
                Format::Plain => {
                    writeln!(out, "index\t{idx}")?;
                    writeln!(out, "value\t{}", value_text(ev.value))?;
                    writeln!(out, "err_estimate\t{:.3e}", ev.err_estimate)?;
                    writeln!(out, "method\t{method}")?;
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({"index": idx.to_string(), "value": fmt15(ev.value),
                           "err_estimate": ev.err_estimate, "terms_used": ev.terms_used,
                           "converged": ev.converged, "method": method})
                )?,
                Format::Csv => {
                    writeln!(out, "index,value,err_estimate,method")?;
                    writeln!(
                        out,
                        "\"{idx}\",{},{:.3e},{method}",
                        fmt15(ev.value),
                        ev.err_estimate
                    )?;
                }
            }
            Ok(ev.converged)
        }
        Command::EvalZstar { z } => {
            let z: ZPoint = z.parse()?;
            let series = zstar(&z, p)?;
            let (via, method, idx) = zstar_via_index(&z, p)?;
            let delta = if series.is_divergent() && via.is_divergent() {
                0.0
            } else {
                (series.value - via.value).abs()
            };
            match cli.format {
                Format::Plain => {
                    if series.is_divergent() {
                        writeln!(out, "{DIVERGENT}")?;
                    } else {
                        writeln!(out, "z\t{z}")?;
                        writeln!(out, "digits\t{}", z.digits())?;
                        writeln!(
                            out,
                            "digit_series\t{}\t(err {:.3e})",
                            fmt15(series.value),
                            series.err_estimate
                        )?;
                        writeln!(
                            out,
                            "index\t{idx}\t{}\t(err {:.3e}, {method})",
                            fmt15(via.value),
                            via.err_estimate
                        )?;
                        writeln!(out, "delta\t{delta:.3e}")?;
                    }
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({"z": z.to_string(), "digits": z.digits().to_string(),
                           "digit_series": fmt15(series.value), "digit_series_err": series.err_estimate,
                           "index": idx.to_string(), "index_value": fmt15(via.value),
                           "index_err": via.err_estimate, "method": method, "delta": delta})
                )?,
                Format::Csv => {
                    writeln!(out, "z,digit_series,index_value,delta")?;
                    writeln!(
                        out,
                        "{z},{},{},{delta:.3e}",
                        fmt15(series.value),
                        fmt15(via.value)
                    )?;
                }
            }
            Ok(true)
        }
        Command::Derivative { side, at } => {
            let z: ZPoint = at.parse()?;
            let reports: Vec<DerivativeReport> = match z.exact() {
                Some(d) => {
                    let mut r = Vec::new();
                    if *side != SideArg::Right {
                        r.push(left_derivative(&d, p)?);
                    }
                    if *side != SideArg::Left {
                        r.push(right_derivative(&d, p)?);
                    }
                    r
                }
                None => vec![derivative_nondyadic(&z, p)?],
            };
            print_reports(cli.format, &z, &reports, out)?;
            Ok(true)
        }
        Command::Invert { v } => {
            let z = invert_zstar(*v, cli.depth, p)?;
            let check = zstar(&z, p)?;
            match cli.format {
                Format::Plain => {
                    writeln!(out, "z\t{z}")?;
                    writeln!(out, "approx\t{}", fmt15(z.approx()))?;
                    writeln!(out, "digits\t{}", z.digits())?;
                    writeln!(out, "zstar\t{}", fmt15(check.value))?;
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({"v": v, "z": z.to_string(), "approx": z.approx(),
                           "digits": z.digits().to_string(), "zstar": check.value})
                )?,
                Format::Csv => {
                    writeln!(out, "v,z,approx,zstar")?;
                    writeln!(
                        out,
                        "{},{z},{},{}",
                        fmt15(*v),
                        fmt15(z.approx()),
                        fmt15(check.value)
                    )?;
                }
            }
            Ok(true)
        }
        Command::Graph { n, out: path } => {
            let rows = graph_samples(*n, p)?;
            match path {
                Some(path) => {
                    write_graph_csv(BufWriter::new(File::create(path)?), &rows)?;
                    writeln!(out, "wrote {} rows to {path}", rows.len())?;
                }
                None if cli.format == Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&rows).expect("rows serialize")
                )?,
                None => write_graph_csv(&mut *out, &rows)?,
            }
            Ok(true)
        }
        Command::Verify { only } => {
            let rows = run_selected(p, |id| only.is_empty() || only.contains(&id));
            if cli.format == Format::Json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&rows).expect("rows serialize")
                )?;
            } else {
                write_tsv(&mut *out, &rows)?;
            }
            let failed = rows.iter().filter(|r| !r.pass).count();
            writeln!(out, "# {} checks, {failed} failed", rows.len())?;
            Ok(failed == 0)
        }
    }
}

fn print_reports(
    format: Format,
    z: &ZPoint,
    reports: &[DerivativeReport],
    out: &mut impl Write,
) -> io::Result<()> {
    let shown = |r: &DerivativeReport| {
        if r.diverges() {
            "DIVERGES".to_string()
        } else {
            fmt15(r.value)
        }
    };
    match format {
        Format::Plain => {
            for r in reports {
                writeln!(
                    out,
                    "{}\t{}\tdepth {}\terr {:.3e}",
                    r.side,
                    shown(r),
                    r.truncation_depth,
                    r.error_model
                )?;
            }
        }
        Format::Json => {
            let items: Vec<_> = reports
                .iter()
                .map(|r| {
                    json!({"at": z.to_string(), "side": r.side, "value": shown(r),
                           "truncation_depth": r.truncation_depth, "error_model": r.error_model})
                })
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(items))?;
        }
        Format::Csv => {
            writeln!(out, "at,side,value,truncation_depth,error_model")?;
            for r in reports {
                writeln!(
                    out,
                    "{z},{},{},{},{:.3e}",
                    r.side,
                    shown(r),
                    r.truncation_depth,
                    r.error_model
                )?;
            }
        }
    }
    Ok(())
}
