use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use qrgap::complexity::C2_DEFAULT_CAP;
use qrgap::theorems::{run_check, TheoremId, TheoremReport};
use qrgap::{SequenceKind, ValidatedPrime};
use qrgap_cli::record::CSV_HEADER;
use qrgap_cli::{
    analyze, emit, survey, Analysis, EmitFormat, MeasureSet, OutputFormat, PrimeSelection, SurveyConfig,
    SurveyError,
};

const EXIT_USAGE: u8 = 1;
const EXIT_REFUSED: u8 = 2;
const EXIT_VIOLATED: u8 = 3;

#[derive(Parser)]
#[command(name = "qrgap", version, about = "Quadratic-residue gap sequences: analysis, surveys and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the selected measures and checks for one prime.
    Analyze {
        p: u64,
        #[command(flatten)]
        opts: MeasureOpts,
        /// Print the analysis as JSON.
        #[arg(long)]
        json: bool,
        /// Exit with status 3 if any check is VIOLATED.
        #[arg(long)]
        strict: bool,
    },
    /// Analyze a selection of primes and write one record per prime.
    Survey(SurveyArgs),
    /// Print one period of a sequence.
    Emit {
        p: u64,
        /// `d` (gap parity) or `t` (consecutive residues).
        #[arg(long, default_value = "d")]
        kind: SequenceKind,
        #[arg(long, value_enum, default_value_t = EmitArg::Text)]
        format: EmitArg,
    },
    /// Run one theorem check with its default tolerances.
    Check {
        theorem: TheoremId,
        p: u64,
        #[arg(long, default_value_t = C2_DEFAULT_CAP)]
        c2_cap: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Args)]
struct MeasureOpts {
    /// Comma-separated subset of lc_d,lc_t,moc,c2,stats.
    #[arg(long, default_value = "lc_d,lc_t,moc,stats")]
    measures: MeasureSet,
    /// Largest sequence length for the correlation measure.
    #[arg(long, default_value_t = C2_DEFAULT_CAP)]
    c2_cap: usize,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("selection").required(true).args(["first_k", "range", "primes"])))]
struct SurveyArgs {
    /// The first K primes p >= 5.
    #[arg(long, value_name = "K")]
    first_k: Option<usize>,
    /// All primes p >= 5 in [LO, HI].
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    range: Option<Vec<u64>>,
    /// An explicit comma-separated list.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    #[command(flatten)]
    opts: MeasureOpts,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output file; records go to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Directory for the result cache.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Fill elapsed_ms (makes output run-dependent).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    Text,
    Json,
}

enum Outcome {
    Ok,
    Violated,
}

fn print_report(r: &TheoremReport) {
    let predicted = r.predicted.map_or_else(|| "-".to_string(), |q| q.to_string());
    println!(
        "{} {}: predicted {}, computed {} ({})",
        r.theorem_id, r.verdict, predicted, r.computed, r.detail
    );
}

fn print_analysis(a: &Analysis) -> anyhow::Result<()> {
    let value = serde_json::to_value(&a.record)?;
    for k in CSV_HEADER {
        let v = &value[k];
        if !v.is_null() {
            println!("{k}: {}", v.as_str().map_or_else(|| v.to_string(), str::to_string));
        }
    }
    for r in &a.reports {
        print_report(r);
    }
    Ok(())
}

fn run_survey(args: SurveyArgs) -> anyhow::Result<Outcome> {
    let selection = match (args.first_k, args.range, args.primes) {
        (Some(k), _, _) => PrimeSelection::FirstK(k),
        (_, Some(r), _) => PrimeSelection::Range(r[0], r[1]),
        (_, _, Some(ps)) => PrimeSelection::List(ps),
        _ => unreachable!("clap requires one selection flag"),
    };
    let config = SurveyConfig {
        measures: args.opts.measures,
        c2_cap: args.opts.c2_cap,
        jobs: args.jobs,
        output: args.out,
        format: match args.format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Jsonl => OutputFormat::Jsonl,
        },
        cache_dir: args.cache,
        timing: args.timing,
        ..SurveyConfig::new(selection)
    };
    let outcome = survey(&config)?;
    let lines = outcome.summary.lines();
    if config.output.is_some() {
        lines.iter().for_each(|l| println!("{l}"));
    } else {
        lines.iter().for_each(|l| eprintln!("{l}"));
    }
    Ok(if args.strict && outcome.summary.violations > 0 {
        Outcome::Violated
    } else {
        Outcome::Ok
    })
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Analyze { p, opts, json, strict } => {
            let config = SurveyConfig {
                measures: opts.measures,
                c2_cap: opts.c2_cap,
                ..SurveyConfig::new(PrimeSelection::List(vec![p]))
            };
            config.validate()?;
            let a = analyze(p, &config)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&a)?);
            } else {
                print_analysis(&a)?;
            }
            let violated = strict && a.violations().next().is_some();
            Ok(if violated { Outcome::Violated } else { Outcome::Ok })
        }
        Command::Survey(args) => run_survey(args),
        Command::Emit { p, kind, format } => {
            let format = match format {
                EmitArg::Text => EmitFormat::Text,
                EmitArg::Json => EmitFormat::Json,
            };
            println!("{}", emit(p, kind, format)?);
            Ok(Outcome::Ok)
        }
        Command::Check {
            theorem,
            p,
            c2_cap,
            json,
            strict,
        } => {
            let vp = ValidatedPrime::new(p).map_err(SurveyError::from)?;
            let r = run_check(theorem, &vp, c2_cap)
                .map_err(SurveyError::from)
                .with_context(|| format!("check {theorem} at p = {p}"))?;
            if json {
                println!("{}", serde_json::to_string_pretty(&r)?);
            } else {
                print_report(&r);
            }
            Ok(if strict && r.is_violation() {
                Outcome::Violated
            } else {
                Outcome::Ok
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violated) => ExitCode::from(EXIT_VIOLATED),
        Err(e) => {
            eprintln!("error: {e:#}");
            let refused = e.downcast_ref::<SurveyError>().is_some_and(SurveyError::is_refusal);
            ExitCode::from(if refused { EXIT_REFUSED } else { EXIT_USAGE })
        }
    }
}
