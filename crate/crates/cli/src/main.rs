use std::process::ExitCode;

use chains_cli::{
    analyze, compare, enumerate, error_report, parse_facets, parse_lengths, realize_target, selftest,
    text, to_json, Analysis,
};
use chains_core::{
    ChamberCode, Error, RealizationProblem, DEFAULT_ENUMERATION_MAX_N, DEFAULT_MAX_N,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "chains", version, about = "Invariants of chain spaces from their length vectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Worker threads for the parallel enumerators (output does not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Largest accepted n: input length for analyze/compare (default 24),
    /// chamber size for enumerate (default 7).
    #[arg(long, env = "CHAINS_MAX_N", global = true)]
    max_n: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Dims {
    /// Ambient dimension; repeat for several.
    #[arg(long = "d", default_values_t = [3])]
    d: Vec<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Chamber, short complex, Morse data, Betti numbers and ring of one length vector.
    Analyze {
        /// Lengths as `1,1,1,2,3,3` (fractions and decimals allowed) or a JSON array of strings.
        lengths: String,
        #[command(flatten)]
        dims: Dims,
    },
    /// Diffeomorphism verdict for two length vectors.
    Compare {
        left: String,
        right: String,
        #[command(flatten)]
        dims: Dims,
    },
    /// All chambers for n, up to relabeling, with exact witnesses.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dominated_only: bool,
    },
    /// Find a length vector whose short complex is the given one.
    Realize {
        #[arg(long)]
        n: usize,
        /// Facets as JSON (`[[1,2],[1,3]]`) or `1,2;1,3`; `[]` targets the code ⟨n⟩.
        #[arg(long, conflicts_with_all = ["facets_file", "code"])]
        facets: Option<String>,
        /// File holding the facets in either format.
        #[arg(long, conflicts_with = "code")]
        facets_file: Option<std::path::PathBuf>,
        /// Chamber code such as `⟨641⟩` or `641`; `⟨⟩` is the empty space.
        #[arg(long)]
        code: Option<String>,
        #[arg(long)]
        dominated_only: bool,
    },
    /// Cross-checks between independent computations.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

const EXIT_INFEASIBLE: u8 = 1;
const EXIT_INPUT: u8 = 2;

/// Writes to stdout; a closed pipe ends the process quietly.
fn out(s: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(s.as_bytes()).and_then(|()| stdout.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(i32::from(EXIT_INPUT));
    }
}

fn emit<T: serde::Serialize>(format: Format, value: &T, render: impl Fn(&T) -> String) {
    match format {
        Format::Json => out(&format!("{}\n", to_json(value))),
        Format::Text => out(&render(value)),
    }
}

fn fail(format: Format, e: &Error) -> ExitCode {
    match format {
        Format::Json => out(&format!("{}\n", to_json(&error_report(e)))),
        Format::Text => eprintln!("error: {e}"),
    }
    ExitCode::from(EXIT_INPUT)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let format = cli.format;
    let input_cap = cli.max_n.unwrap_or(DEFAULT_MAX_N);
    match cli.command {
        Command::Analyze { lengths, dims } => {
            let l = parse_lengths(&lengths, input_cap)?;
            match analyze(&l, &dims.d)? {
                Analysis::Report(r) => emit(format, r.as_ref(), text::analysis),
                Analysis::Degenerate(r) => {
                    match format {
                        Format::Json => out(&format!("{}\n", to_json(&r))),
                        Format::Text => eprintln!("error: {}", r.error),
                    }
                    return Ok(ExitCode::from(EXIT_INPUT));
                }
            }
        }
        Command::Compare { left, right, dims } => {
            let l1 = parse_lengths(&left, input_cap)?;
            let l2 = parse_lengths(&right, input_cap)?;
            emit(format, &compare(&l1, &l2, &dims.d)?, text::comparison);
        }
        Command::Enumerate { n, dominated_only } => {
            let cap = cli.max_n.unwrap_or(DEFAULT_ENUMERATION_MAX_N);
            emit(format, &enumerate(n, dominated_only, cap)?, text::enumeration);
        }
        Command::Realize { n, facets, facets_file, code, dominated_only } => {
            let problem = match (facets, facets_file, code) {
                (Some(f), None, None) => RealizationProblem::from_complex(n, &parse_facets(&f)?, dominated_only)?,
                (None, Some(path), None) => {
                    let s = std::fs::read_to_string(&path)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    RealizationProblem::from_complex(n, &parse_facets(&s)?, dominated_only)?
                }
                (None, None, Some(c)) => {
                    RealizationProblem::from_code(&ChamberCode::parse(n, &c)?, dominated_only)
                }
                _ => return Err(Error::MalformedTarget("give exactly one of --facets, --facets-file, --code".into())),
            };
            let report = realize_target(&problem)?;
            emit(format, &report, text::realization);
            if !report.feasible {
                return Ok(ExitCode::from(EXIT_INFEASIBLE));
            }
        }
        Command::Selftest { seed } => {
            let report = selftest::run(seed);
            emit(format, &report, selftest::render_text);
            if !report.passed {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot start {jobs} worker threads: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    run(cli).unwrap_or_else(|e| fail(format, &e))
}
