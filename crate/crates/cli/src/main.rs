use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dgtor_cli::runner::{run, RunError};
use dgtor_cli::spec::{parse_ring, parse_spec, Output, SpanSpec};
use dgtor_cli::{fixtures, selftest};
use dgtor_core::guard::{CellBudget, DEFAULT_MAX_CELLS};

/// Exact Tor computations for spans of free graded-commutative algebras.
#[derive(Parser)]
#[command(name = "dgtor", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a computation described by a span-spec file.
    Compute {
        /// Path to the span-spec document.
        spec_file: PathBuf,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Run one of the named fixtures.
    Fixture {
        /// Fixture name, e.g. `su4_u1` or `cyclic_group(6)`.
        name: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// List the available fixtures.
    ListFixtures,
    /// Run the structural invariant suites.
    Selftest,
}

#[derive(clap::Args)]
struct RunOpts {
    /// Override the spec's maximal degree.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Override the coefficient ring (Z, Q, or F\<p\>).
    #[arg(long)]
    ring: Option<String>,
    /// Cross-check the bar route against the Koszul oracle.
    #[arg(long)]
    oracle: bool,
    /// Write the structured report to this path as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Include wall-clock data in the report (off by default so reports are
    /// byte-identical across runs).
    #[arg(long)]
    timings: bool,
}

fn apply_overrides(spec: &mut SpanSpec, opts: &RunOpts) -> Result<(), String> {
    if let Some(d) = opts.max_degree {
        spec.max_degree = d;
    }
    if let Some(r) = &opts.ring {
        spec.ring =
            parse_ring(r).ok_or_else(|| format!("unknown ring `{r}` (use Z, Q, or F<p>)"))?;
        // polynomial odd generators only exist in characteristic 2
        if spec.ring.characteristic() != 2 {
            for g in spec
                .base
                .iter()
                .chain(spec.left.iter())
                .chain(spec.right.iter())
            {
                if g.polynomial_square && g.degree % 2 == 1 {
                    return Err(format!(
                        "fixture needs characteristic 2: generator {} is polynomial of odd degree",
                        g.name
                    ));
                }
            }
        }
    }
    if opts.oracle {
        spec.outputs.insert(Output::OracleCheck);
    }
    Ok(())
}

fn budget_from_env() -> CellBudget {
    match std::env::var("DGTOR_MAX_CELLS") {
        Ok(v) => match v.parse::<usize>() {
            Ok(n) => CellBudget::new(n),
            Err(_) => {
                eprintln!("warning: ignoring unparsable DGTOR_MAX_CELLS=`{v}`");
                CellBudget::new(DEFAULT_MAX_CELLS)
            }
        },
        Err(_) => CellBudget::new(DEFAULT_MAX_CELLS),
    }
}

fn execute(spec: &SpanSpec, opts: &RunOpts) -> ExitCode {
    let budget = budget_from_env();
    match run(spec, &budget, opts.timings) {
        Ok(report) => {
            print!("{}", report.to_text());
            if let Some(path) = &opts.json {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error: could not write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Err(RunError::Validation(m)) => {
            eprintln!("validation error: {m}");
            ExitCode::from(2)
        }
        Err(RunError::Resource(m)) => {
            eprintln!("resource guard: {m} (raise DGTOR_MAX_CELLS to override)");
            ExitCode::from(3)
        }
        Err(RunError::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute { spec_file, opts } => {
            let text = match std::fs::read_to_string(&spec_file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: could not read {}: {e}", spec_file.display());
                    return ExitCode::from(2);
                }
            };
            let mut spec = match parse_spec(&text) {
                Ok(s) => s,
                Err(diags) => {
                    for d in diags {
                        eprintln!("{}: {d}", spec_file.display());
                    }
                    return ExitCode::from(2);
                }
            };
            if let Err(m) = apply_overrides(&mut spec, &opts) {
                eprintln!("validation error: {m}");
                return ExitCode::from(2);
            }
            execute(&spec, &opts)
        }
        Command::Fixture { name, opts } => {
            let Some(mut spec) = fixtures::fixture(&name) else {
                eprintln!("validation error: unknown fixture `{name}`");
                eprintln!("available fixtures:");
                for f in fixtures::list_fixtures() {
                    eprintln!("  {:<24} {}", f.name, f.description);
                }
                return ExitCode::from(2);
            };
            if let Err(m) = apply_overrides(&mut spec, &opts) {
                eprintln!("validation error: {m}");
                return ExitCode::from(2);
            }
            execute(&spec, &opts)
        }
        Command::ListFixtures => {
            for f in fixtures::list_fixtures() {
                println!("{:<24} {}", f.name, f.description);
            }
            ExitCode::SUCCESS
        }
        Command::Selftest => {
            let mut failed = false;
            for result in selftest::run_all() {
                match result.outcome {
                    Ok(()) => println!("PASS  {}", result.name),
                    Err(m) => {
                        failed = true;
                        println!("FAIL  {}: {m}", result.name);
                    }
                }
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
