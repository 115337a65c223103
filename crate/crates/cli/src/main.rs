use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use euler_measure::gizmos::GizmoSpec;
use euler_measure::prelude::*;
use euler_measure::verify::Scope;
use euler_measure_cli::{exit_code, run, Command, ErrorReport, MapTarget, Verb, CAP_ENV};

/// Exact and regularized Euler measures of polyhedral subsets of the line.
///
/// Sets are written as unions of intervals and point sets, for example
/// "(0,1) u [2,3) u {5, 7/2}". Operators: u or | (union), & (intersection),
/// \ (difference), ! (complement).
#[derive(Parser, Debug)]
#[command(name = "euler", version)]
struct Cli {
    /// Print the report as a single JSON object.
    #[arg(long, global = true)]
    json: bool,

    /// Number of series coefficients to compute.
    #[arg(long, global = true, default_value_t = 24)]
    terms: usize,

    /// Largest recurrence order accepted when continuing a series.
    #[arg(long = "max-order", global = true, default_value_t = 8)]
    max_order: usize,

    /// Cap on the number of objects a brute-force enumeration may build.
    #[arg(long = "enum-cap", global = true, env = CAP_ENV)]
    enum_cap: Option<u64>,

    #[command(subcommand)]
    verb: VerbArgs,
}

#[derive(Subcommand, Debug)]
enum VerbArgs {
    /// Euler measure of a set.
    Measure { set: String },
    /// Euler measure of the space of k-element subsets.
    Choose {
        set: String,
        #[arg(long)]
        k: usize,
        /// List every cell with its dimension.
        #[arg(long)]
        cells: bool,
    },
    /// Regularized measure of the space of finite subsets.
    Powerset { set: String },
    /// Regularized measure of an iterated selection from the finite subsets.
    Gizmo {
        set: String,
        /// Comma-separated selection sizes, e.g. 2,3.
        #[arg(long, value_delimiter = ',', required = true)]
        ks: Vec<usize>,
    },
    /// Regularized measure of a space of maps out of a union of open intervals.
    Mapspace(MapspaceArgs),
    /// Regularized measure of the parity-constrained subsets.
    Fib { set: String },
    /// Run the library's invariants and report each one.
    Verify {
        /// Module to check, or "all".
        #[arg(long, default_value = "all")]
        scope: String,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "codomain")]
struct CodomainArgs {
    /// Maps into a finite set with this many points.
    #[arg(long)]
    finite: Option<usize>,
    /// Maps into a compact set, e.g. "[0,1] u [2,3]".
    #[arg(long)]
    b: Option<String>,
    /// Maps into a codomain given only by its Euler measure.
    #[arg(long, allow_hyphen_values = true)]
    chib: Option<i64>,
}

#[derive(Args, Debug)]
struct MapspaceArgs {
    /// Domain: a union of open intervals.
    #[arg(default_value = "(0,1)")]
    domain: String,
    #[command(flatten)]
    codomain: CodomainArgs,
    /// Count unordered pairs of distinct maps (finite codomain only).
    #[arg(long, requires = "finite")]
    pairs: bool,
}

fn parse(text: &str) -> Result<PolyhedralSet> {
    parse_set_expression(text)
}

fn build(cli: &Cli) -> Result<Command> {
    let verb = match &cli.verb {
        VerbArgs::Measure { set } => Verb::Measure { set: parse(set)? },
        VerbArgs::Choose { set, k, cells } => Verb::Choose {
            set: parse(set)?,
            k: *k,
            cells: *cells,
        },
        VerbArgs::Powerset { set } => Verb::Powerset { set: parse(set)? },
        VerbArgs::Gizmo { set, ks } => Verb::Gizmo {
            set: parse(set)?,
            spec: GizmoSpec::new(ks.clone())?,
        },
        VerbArgs::Mapspace(args) => {
            let c = &args.codomain;
            let target = match (c.finite, &c.b, c.chib) {
                (Some(n), _, _) => MapTarget::Finite(n),
                (_, Some(b), _) => MapTarget::Concrete(parse(b)?),
                (_, _, Some(chi)) => MapTarget::Symbolic(chi),
                _ => unreachable!("clap enforces exactly one codomain"),
            };
            Verb::MapSpace {
                domain: parse(&args.domain)?,
                target,
                pairs: args.pairs,
            }
        }
        VerbArgs::Fib { set } => Verb::Fib { set: parse(set)? },
        VerbArgs::Verify { scope } => Verb::Verify {
            scopes: if scope == "all" {
                Scope::ALL.to_vec()
            } else {
                vec![scope.parse()?]
            },
        },
    };
    let mut limits = Limits::default();
    if let Some(cap) = cli.enum_cap {
        limits.brute = cap;
    }
    Ok(Command {
        verb,
        policy: SeriesPolicy {
            terms: cli.terms,
            max_order: cli.max_order,
        },
        limits,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match build(&cli).and_then(|cmd| run(&cmd)) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string(&report).expect("reports serialize")
                );
            } else {
                print!("{}", report.render_text());
            }
            if report.all_checks_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            if cli.json {
                let body = ErrorReport::new(&err);
                println!(
                    "{}",
                    serde_json::to_string(&body).expect("reports serialize")
                );
            }
            eprintln!("error ({}): {err}", err.class());
            ExitCode::from(exit_code(err.class()) as u8)
        }
    }
}
