use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use polyquot::quotients::DEFAULT_BUDGET;
use polyquot::report::{run, Outcome, Request};
use polyquot::search::{run_search, Mode, SearchConfig};
use polyquot::text::{parse_ideal, parse_monomials, ParsedIdeal};
use polyquot::Error;

const EXIT_PREDICATE_FALSE: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

/// Monomial ideals: exchange properties and linear quotients.
///
/// Exit status: 0 success, 1 the property asked about is false, 2 error,
/// 3 inconclusive (search budget exhausted).
#[derive(Parser)]
#[command(name = "polyquot", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Output {
    /// Print the JSON report instead of a text summary.
    #[arg(long)]
    json: bool,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Single {
    /// Ideal in text format.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exchange properties, plus the tight class in two variables.
    Classify(Single),
    /// Search for an admissible order.
    Order {
        #[command(flatten)]
        single: Single,
        /// Node budget; defaults to POLYQUOT_BUDGET or 1000000.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check a given order of the minimal generators.
    VerifyOrder {
        #[command(flatten)]
        single: Single,
        /// Generators in order, same text format.
        #[arg(long)]
        order: PathBuf,
    },
    /// Product of two ideals and its classification.
    Product {
        /// Give exactly two.
        #[arg(long = "input", required = true)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Minimal generators of a graded component.
    Component {
        #[command(flatten)]
        single: Single,
        #[arg(long)]
        degree: u32,
    },
    /// Explicit admissible order for a componentwise polymatroidal ideal
    /// with the strong exchange property.
    SepOrder(Single),
    /// Look for ideals with componentwise linear quotients but no
    /// admissible order. Writes line-delimited JSON to --out.
    Search(SearchArgs),
}

#[derive(Args)]
struct SearchArgs {
    /// Enumerate every antichain in the box instead of sampling.
    #[arg(long, conflicts_with_all = ["seed", "samples"])]
    exhaustive: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    /// Number of variables, `n` or `lo-hi`.
    #[arg(long, default_value = "2", value_parser = parse_range)]
    nvars: (usize, usize),
    #[arg(long, default_value_t = 5)]
    max_exp: u32,
    #[arg(long, default_value_t = 4)]
    max_gens: usize,
    #[arg(long)]
    budget: Option<u64>,
    /// Random samples per shard.
    #[arg(long, default_value_t = 64)]
    shard_size: u64,
    /// Continue an interrupted run from its last checkpoint.
    #[arg(long)]
    resume: bool,
    /// Skip antichains equivalent under permuting variables.
    #[arg(long, requires = "exhaustive")]
    symmetry: bool,
    #[arg(long)]
    out: PathBuf,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once('-') {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi)?)),
        None => parse(s).map(|n| (n, n)),
    }
}

fn budget(flag: Option<u64>) -> Result<u64, Error> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("POLYQUOT_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("POLYQUOT_BUDGET is not a number: `{v}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ParsedIdeal, Error> {
    parse_ideal(&read(path)?).map_err(|e| match e {
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column,
            message: format!("{message} (in {})", path.display()),
        },
        other => other,
    })
}

fn emit(output: &Output, text: String) -> Result<(), Error> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cmd: Cmd) -> Result<u8, Error> {
    let (request, output) = match cmd {
        Cmd::Search(args) => return search(args),
        Cmd::Classify(s) => (Request::Classify(load(&s.input)?), s.output),
        Cmd::Order { single, budget: b } => (
            Request::Order {
                input: load(&single.input)?,
                budget: budget(b)?,
            },
            single.output,
        ),
        Cmd::VerifyOrder { single, order } => {
            let input = load(&single.input)?;
            let (nvars, rows) = parse_monomials(&read(&order)?)?;
            if nvars != input.ideal.nvars() {
                return Err(Error::ArityMismatch {
                    expected: input.ideal.nvars(),
                    found: nvars,
                });
            }
            (Request::VerifyOrder { input, order: rows }, single.output)
        }
        Cmd::Product { inputs, output } => {
            if inputs.len() != 2 {
                return Err(Error::Precondition(format!(
                    "product takes two --input files, got {}",
                    inputs.len()
                )));
            }
            (Request::Product(load(&inputs[0])?, load(&inputs[1])?), output)
        }
        Cmd::Component { single, degree } => (
            Request::Component {
                input: load(&single.input)?,
                degree,
            },
            single.output,
        ),
        Cmd::SepOrder(s) => (Request::SepOrder(load(&s.input)?), s.output),
    };
    let report = run(&request)?;
    let text = if output.json {
        let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        report.render_text()
    };
    emit(&output, text)?;
    Ok(match report.outcome {
        Outcome::Success => 0,
        Outcome::PredicateFalse => EXIT_PREDICATE_FALSE,
        Outcome::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn search(args: SearchArgs) -> Result<u8, Error> {
    let cfg = SearchConfig {
        min_nvars: args.nvars.0,
        max_nvars: args.nvars.1,
        max_gens: args.max_gens,
        max_exp: args.max_exp,
        mode: if args.exhaustive {
            Mode::Exhaustive
        } else {
            Mode::Random {
                seed: args.seed,
                samples: args.samples,
            }
        },
        budget: budget(args.budget)?,
        shard_size: args.shard_size,
        symmetry: args.symmetry,
    };
    let summary = run_search(&cfg, &args.out, args.resume)?;
    let c = summary.counts;
    println!(
        "{} cases in {} shards: {} without componentwise linear quotients, {} found, \
         {} candidates, {} inconclusive, {} skipped by symmetry",
        c.cases,
        summary.shards,
        c.not_clq,
        c.found,
        c.candidates,
        c.budget_exceeded + c.clq_unknown,
        c.skipped_symmetric
    );
    if c.oracle_disagreements > 0 {
        return Err(Error::Verification(format!(
            "{} exhausted searches contradicted by the permutation oracle",
            c.oracle_disagreements
        )));
    }
    Ok(if c.candidates > 0 { EXIT_PREDICATE_FALSE } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
