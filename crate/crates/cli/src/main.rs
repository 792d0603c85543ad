use std::io::Write;
use std::process::ExitCode;

use ccwg_core::algebra::FieldMode;
use ccwg_core::suites::SuiteId;
use ccwg_core::tables::TableId;
use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod input;

use commands::{Ctx, Report};

#[derive(Parser)]
#[command(name = "ccwg", version, about = "Exact checks for charge-conserving-with-glue braid representations")]
struct Cli {
    /// Field: Q, Fp (2^61-1) or Fp2 (both default primes, cross-checked).
    #[arg(long, global = true)]
    field: Option<FieldMode>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Strand count (or strand bound for table and comb).
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Family parameters, `k=1,p=2/3`.
    #[arg(long, global = true)]
    params: Option<String>,
    /// Report wall-clock seconds (otherwise null, keeping output reproducible).
    #[arg(long, global = true)]
    timing: bool,
    /// Bound on N^(2n), the ambient matrix-space dimension for tower commands.
    #[arg(long, global = true, env = "CCWG_GUARD", default_value_t = ccwg_core::words::DEFAULT_GUARD)]
    guard: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the entry positions of a matrix (exit 2 unless CCwg).
    Check { matrix: String },
    /// Yang-Baxter check of a matrix, or of a family at sampled points.
    Ybe {
        matrix: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// The braid anomaly R1 R2 R1 - R2 R1 R2.
    Anomaly { matrix: String },
    /// Image of a braid word such as `1,2,-1` on --n strands.
    Rho {
        matrix: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Restriction to a subalphabet such as `1,3`.
    Restrict {
        matrix: String,
        #[arg(long)]
        letters: String,
    },
    /// Gauge transform (A x A) R (A x A)^-1; A given as rows `a,b;c,d` or a JSON file.
    Gauge {
        matrix: String,
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    /// Conjugation by d x d for a diagonal d, or a diagonal witness search towards --target
    /// (exit 2 if no diagonal conjugation, local or level-2, reaches it).
    Xsym {
        matrix: String,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "target")]
        diag: Option<String>,
        #[arg(long, required_unless_present = "diag")]
        target: Option<String>,
    },
    /// DS transform (T x 1) R (T x 1)^-1, requiring T x T to commute with R.
    Ds {
        matrix: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Minimal polynomial.
    Minpoly { matrix: String },
    /// Jordan profile; eigenvalues default to the roots of the minimal polynomial.
    Jordan {
        matrix: String,
        #[arg(long, allow_hyphen_values = true)]
        eigenvalues: Option<String>,
    },
    /// Dimension of the image algebra of the level-n tower.
    Closure { matrix: String },
    /// Radical of the image algebra and the dimensions of its powers.
    Radical {
        matrix: String,
        #[arg(long, default_value_t = 3)]
        powers: usize,
    },
    /// Commutant of the level-n tower.
    Commutant { matrix: String },
    /// Indecomposable summands of the level-n tower representation.
    Summands { matrix: String },
    /// k-equivalence of two towers.
    Equiv {
        r: String,
        s: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Exit 2 unless the verdict is this one.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Check the combed diagonal intertwiners between two towers up to --n strands.
    Comb {
        #[arg(long, default_value = "R_fI")]
        r: String,
        #[arg(long, default_value = "R_diamond")]
        s: String,
    },
    /// Reproduce a dimension table (exit 2 on any mismatch).
    Table {
        #[arg(value_parser = parse_table)]
        table: TableId,
    },
    /// Run a randomized property suite (exit 2 on any failure).
    Suite {
        #[arg(value_parser = parse_suite)]
        suite: SuiteId,
        #[arg(long)]
        cases: Option<usize>,
    },
    /// Inspect the catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
    /// Print the embedded manifest.
    Dump,
}

fn parse_table(s: &str) -> Result<TableId, String> {
    s.parse().map_err(|_| format!("expected one of fI, spade, heart, unipotent2, unipotent3; got {s:?}"))
}

fn parse_suite(s: &str) -> Result<SuiteId, String> {
    s.parse().map_err(|_| format!("expected one of closure, parity, hog, orders, skew; got {s:?}"))
}

fn run(cli: &Cli) -> ccwg_core::Result<Report> {
    let ctx = Ctx {
        field: cli.field,
        seed: cli.seed,
        n: cli.n,
        params: cli.params.clone(),
        timing: cli.timing,
        guard: cli.guard,
    };
    use commands as c;
    match &cli.command {
        Command::Check { matrix } => c::check(&ctx, matrix),
        Command::Ybe { matrix, trials } => c::ybe(&ctx, matrix, *trials),
        Command::Anomaly { matrix } => c::anomaly(&ctx, matrix),
        Command::Rho { matrix, word } => c::rho(&ctx, matrix, word),
        Command::Restrict { matrix, letters } => c::restrict(&ctx, matrix, letters),
        Command::Gauge { matrix, by } => c::gauge(&ctx, matrix, by),
        Command::Xsym { matrix, diag, target } => c::xsym(&ctx, matrix, diag.as_deref(), target.as_deref()),
        Command::Ds { matrix, t } => c::ds(&ctx, matrix, t),
        Command::Minpoly { matrix } => c::minpoly(&ctx, matrix),
        Command::Jordan { matrix, eigenvalues } => c::jordan(&ctx, matrix, eigenvalues.as_deref()),
        Command::Closure { matrix } => c::closure(&ctx, matrix),
        Command::Radical { matrix, powers } => c::radical(&ctx, matrix, *powers),
        Command::Commutant { matrix } => c::commutant(&ctx, matrix),
        Command::Summands { matrix } => c::summands(&ctx, matrix),
        Command::Equiv { r, s, k, expect } => c::equiv(&ctx, r, s, *k, expect.as_deref()),
        Command::Comb { r, s } => c::comb(&ctx, r, s),
        Command::Table { table } => c::table(&ctx, *table),
        Command::Suite { suite, cases } => c::suite(&ctx, *suite, *cases),
        Command::Catalog { action } => match action {
            CatalogAction::List => c::catalog_list(),
            CatalogAction::Show { name } => c::catalog_show(name),
            CatalogAction::Dump => c::catalog_dump(),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    // Write errors (a closed pipe) are ignored; the exit code still reports the result.
    let mut out = std::io::stdout().lock();
    match run(&cli) {
        Ok(report) => {
            let _ = match cli.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report.json).expect("serializable")),
                Format::Text => write!(out, "{}", report.text),
            };
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            let _ = match cli.format {
                Format::Json => writeln!(out, "{}", serde_json::json!({ "error": e.to_string() })),
                Format::Text => writeln!(std::io::stderr(), "error: {e}"),
            };
            ExitCode::from(1)
        }
    }
}
