use std::path::Path;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};

use torus_tqft::cobcat::{arrows_equal, normalize};
use torus_tqft::parse::parse_expr;
use torus_tqft::reproduce::{reproduce, Grid, TABLES};
use torus_tqft::sl2z::{
    conjugacy_class, decompose, evaluate_word, is_conjugate, lens_inseparable, lens_params, named,
    torus_bundle_homeomorphic, MatSL2,
};
use torus_tqft::tqft::{builtin, validate, Tqft, TqftDatum};
use torus_tqft::Error;

#[derive(Parser)]
#[command(
    name = "torus-tqft",
    version,
    about = "Exact invariants of torus bundles and lens spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a matrix as a word in the Dehn twists D_a, D_b
    Decompose { matrix: String },
    /// Decide conjugacy in SL(2,Z) and print both class representatives
    Conjugate { a: String, b: String },
    /// Decide whether two torus bundles are homeomorphic
    BundleEq { a: String, b: String },
    /// Compare the lens spaces glued by two matrices
    Lens { a: String, b: String },
    /// Check a JSON TQFT datum against the axioms
    Validate { file: String },
    /// Evaluate a bundle, lens space or arrow expression
    Invariant(InvariantArgs),
    /// Print the normal form of an arrow expression
    Normalize { expr: String },
    /// Decide equality of two arrow expressions
    Equal { a: String, b: String },
    /// Recompute one of the comparison tables
    Reproduce {
        /// One of funar-f1, funar-f3, stebe-f3, xy-f3, lens-f2, lens-f3
        table: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("target").required(true).args(["bundle", "lens", "expr"])))]
struct InvariantArgs {
    /// Built-in name (F1, F2, F3) or path to a JSON datum
    #[arg(long)]
    tqft: String,
    #[arg(long)]
    bundle: Option<String>,
    #[arg(long)]
    lens: Option<String>,
    #[arg(long)]
    expr: Option<String>,
}

/// A literal such as `[[2,1],[1,1]]` or a catalog name such as `StebeG`.
fn matrix(text: &str) -> Result<MatSL2, Error> {
    match named(text.trim()) {
        Some(m) => Ok(m),
        None => text.parse(),
    }
}

fn load_tqft(spec: &str) -> Result<Tqft, Error> {
    let datum = if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec)
            .map_err(|e| Error::Io(format!("cannot read {spec}: {e}")))?;
        TqftDatum::from_json(&text)?
    } else {
        builtin(spec)?
    };
    Tqft::new(datum)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Validation(_) => 2,
        Error::FunarPrecondition(_) | Error::MissingUnit(_) | Error::Dimension(_) => 3,
        _ => 1,
    }
}

fn run(cmd: Command) -> Result<u8, Error> {
    match cmd {
        Command::Decompose { matrix: m } => {
            let a = matrix(&m)?;
            let d = decompose(&a);
            debug_assert_eq!(evaluate_word(&d.word), a);
            println!("{}", d.word);
        }
        Command::Conjugate { a, b } => {
            let (a, b) = (matrix(&a)?, matrix(&b)?);
            println!("class(A) = {}", conjugacy_class(&a));
            println!("class(B) = {}", conjugacy_class(&b));
            println!("conjugate: {}", is_conjugate(&a, &b));
        }
        Command::BundleEq { a, b } => {
            let (a, b) = (matrix(&a)?, matrix(&b)?);
            println!("homeomorphic: {}", torus_bundle_homeomorphic(&a, &b));
        }
        Command::Lens { a, b } => {
            let (a, b) = (matrix(&a)?, matrix(&b)?);
            let (la, lb) = (lens_params(&a), lens_params(&b));
            println!("A: L({},{})", la.p, la.q);
            println!("B: L({},{})", lb.p, lb.q);
            println!("homeomorphic: {}", lens_inseparable(&a, &b));
        }
        Command::Validate { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::Io(format!("cannot read {file}: {e}")))?;
            let report = validate(&TqftDatum::from_json(&text)?);
            print!("{report}");
            if !report.passed() {
                return Ok(2);
            }
        }
        Command::Invariant(args) => {
            let t = load_tqft(&args.tqft)?;
            let value = if let Some(m) = args.bundle {
                t.bundle_invariant(&matrix(&m)?)
            } else if let Some(m) = args.lens {
                t.lens_invariant(&matrix(&m)?)?
            } else {
                let e = parse_expr(args.expr.as_deref().unwrap_or_default())?;
                let v = t.eval_expr(&e)?;
                match v.as_scalar() {
                    Some(x) => x.clone(),
                    None => {
                        println!("{v}");
                        return Ok(0);
                    }
                }
            };
            println!("{value}");
        }
        Command::Normalize { expr } => {
            let nf = normalize(&parse_expr(&expr)?).canonical();
            println!("{nf}");
            println!("{}", nf.to_expr());
        }
        Command::Equal { a, b } => {
            let (a, b) = (parse_expr(&a)?, parse_expr(&b)?);
            println!("{}", arrows_equal(&normalize(&a), &normalize(&b))?);
        }
        Command::Reproduce { table, json } => {
            if !TABLES.contains(&table.as_str()) {
                return Err(Error::UnknownTable(table));
            }
            let rows = reproduce(&table, &Grid::from_env()?)?;
            if json {
                let out = serde_json::to_string_pretty(&rows)?;
                println!("{out}");
            } else {
                for r in &rows {
                    println!(
                        "{}\t{}\t{}\t{}\thomeomorphic={}",
                        r.label,
                        r.values[0],
                        r.values[1],
                        if r.distinguished {
                            "distinguished"
                        } else {
                            "equal"
                        },
                        r.homeomorphic
                    );
                }
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
