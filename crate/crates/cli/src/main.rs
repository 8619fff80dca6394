use std::process::ExitCode;
use std::sync::Arc;

use affine_hecke::error::{Error, Result};
use affine_hecke::expr::{eval_kclass, eval_str};
use affine_hecke::involutions::{apply, InvolutionKind};
use affine_hecke::koszul::check_diagonal;
use affine_hecke::ktheory::{expand, kappa_im_on_classes};
use affine_hecke::report::Report;
use affine_hecke::root_data::RootDatum;
use affine_hecke::suite::{run_suite, Suite, SuiteOptions};
use clap::{Parser, Subcommand};

/// Affine Hecke algebras, the Iwahori-Matsumoto involution and linear
/// Koszul duality over a point.
#[derive(Parser, Debug)]
#[command(name = "hecke", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression to normal form `sum th[x]*T[w]*(coeff)`.
    Eval {
        #[arg(long = "type")]
        ty: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Apply an involution: `im`, `iota` or `kim`.
    Apply {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        inv: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long = "type")]
        ty: Option<String>,
        #[arg(long)]
        suite: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        cutoff: i32,
        #[arg(long)]
        json: bool,
    },
    /// K-theory classes of the Steinberg-type varieties.
    Kclass {
        #[command(subcommand)]
        op: KclassOp,
    },
    /// Linear Koszul duality over a point.
    Koszul {
        #[command(subcommand)]
        op: KoszulOp,
    },
}

#[derive(Subcommand, Debug)]
enum KclassOp {
    /// Expand a class into the Hecke algebra.
    Expand {
        #[arg(long = "type")]
        ty: String,
        #[arg(allow_hyphen_values = true)]
        class: String,
        #[arg(long)]
        json: bool,
    },
    /// Push a `Z`-side class through `kappa_IM`.
    Kim {
        #[arg(long = "type")]
        ty: String,
        #[arg(allow_hyphen_values = true)]
        class: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum KoszulOp {
    /// Check `kappa(O_{Delta F}) = O_{Delta F^perp}`.
    CheckDiagonal {
        #[arg(long = "dimV")]
        dim_v: usize,
        #[arg(long = "dimF")]
        dim_f: usize,
        #[arg(long, default_value_t = 6)]
        cutoff: i32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i32,
        #[arg(long)]
        json: bool,
    },
}

fn datum(ty: &str) -> Result<Arc<RootDatum>> {
    Ok(Arc::new(RootDatum::from_type(ty)?))
}

fn print_report(r: &Report, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(&r.to_json()).expect("report serializes"));
        return;
    }
    for c in &r.checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        match &c.witness {
            Some(w) => println!("{status} {} ({}): {w}", c.name, c.count),
            None => println!("{status} {} ({})", c.name, c.count),
        }
    }
    let failed = r.checks.iter().filter(|c| !c.pass).count();
    println!("{}: {} checks, {failed} failed", r.suite, r.checks.len());
}

fn print_value(text: String, j: serde_json::Value, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(&j).expect("value serializes"));
    } else {
        println!("{text}");
    }
}

/// `Ok(true)` when every check passed.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Eval { ty, expr, json } => {
            let e = eval_str(&datum(&ty)?, &expr)?;
            print_value(e.to_text(), e.to_json(), json);
        }
        Command::Apply { ty, inv, expr, json } => {
            let kind: InvolutionKind = inv.parse()?;
            let e = apply(kind, &eval_str(&datum(&ty)?, &expr)?);
            print_value(e.to_text(), e.to_json(), json);
        }
        Command::Verify { ty, suite, samples, seed, cutoff, json } => {
            let suite: Suite = suite.parse()?;
            let d = match (&ty, suite.needs_type()) {
                (Some(t), _) => Some(datum(t)?),
                (None, false) => None,
                (None, true) => return Err(Error::InvalidOption(format!("suite `{suite}` needs --type"))),
            };
            let opts = SuiteOptions { samples, seed, cutoff, ..Default::default() };
            let r = run_suite(suite, d.as_ref(), &opts)?;
            print_report(&r, json);
            return Ok(r.all_pass());
        }
        Command::Kclass { op: KclassOp::Expand { ty, class, json } } => {
            let d = datum(&ty)?;
            let e = expand(&d, &eval_kclass(&d, &class)?)?;
            print_value(e.to_text(), e.to_json(), json);
        }
        Command::Kclass { op: KclassOp::Kim { ty, class, json } } => {
            let d = datum(&ty)?;
            let c = kappa_im_on_classes(&eval_kclass(&d, &class)?)?;
            print_value(c.to_string(), c.to_json(), json);
        }
        Command::Koszul { op: KoszulOp::CheckDiagonal { dim_v, dim_f, cutoff, twist, json } } => {
            let out = check_diagonal(dim_v, dim_f, cutoff, twist)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&out.to_json()).expect("report serializes"));
            } else {
                print_report(&out.report, false);
                for key in ["kappa", "cohomology", "model"] {
                    let cells: Vec<String> = out.tables[key]
                        .as_array()
                        .map(|a| a.iter().map(|c| format!("({},{}):{}", c["p"], c["q"], c["dim"])).collect())
                        .unwrap_or_default();
                    println!("{key}: {}", cells.join(" "));
                }
            }
            return Ok(out.report.all_pass());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
