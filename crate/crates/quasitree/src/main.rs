use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use quasitree::cli::{
    self, parse_table, run_counterexample, run_verify, OutputFormat, EXIT_INPUT_ERROR,
    EXIT_VERIFY_FAILED,
};

#[derive(Parser)]
#[command(
    name = "quasitree",
    about = "Quasi-tree polynomials of state ribbon graphs built from knot diagrams"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// State circles, Turaev genus, state-graph statistics and q(t) of a
    /// PD file.
    Q {
        file: PathBuf,
        /// Use the all-B state instead of the all-A one.
        #[arg(long)]
        all_b: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Apply a Reidemeister III move at a triangular face and print the
    /// rewritten PD code.
    R3 {
        file: PathBuf,
        /// Face id; defaults to the `# r3-face:` metadata in the file.
        #[arg(long)]
        face: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Reproduce the bundled two-diagram counterexample end to end.
    Counterexample {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check |q(-1)| against the Goeritz determinant for every row of a
    /// knot table (CSV with header name,pd[,det]).
    Verify {
        table: PathBuf,
        /// Worker threads.
        #[arg(long, default_value = "1")]
        jobs: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Subset-expansion polynomial C(X,Y,Z) of a map file.
    Brt {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(EXIT_INPUT_ERROR as u8)
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(code) => code,
        Err(code) => code,
    }
}

fn run(args: Args) -> Result<ExitCode, ExitCode> {
    let input_error = |e: cli::CliError| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_INPUT_ERROR as u8)
    };
    match args.command {
        Command::Q {
            file,
            all_b,
            format,
        } => {
            let text = read(&file)?;
            let name = file
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "diagram".into());
            let out = cli::cmd_q(&text, &name, all_b, format.into()).map_err(input_error)?;
            print!("{out}");
            if matches!(format, Format::Json) {
                println!();
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::R3 { file, face, format } => {
            let text = read(&file)?;
            let out = cli::cmd_r3(&text, face, format.into()).map_err(input_error)?;
            println!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Counterexample { format } => {
            let report = run_counterexample(cli::FIXTURE_KNOTATLAS, cli::FIXTURE_KNOTSCAPE)
                .map_err(input_error)?;
            print!("{}", report.render(format.into()));
            if matches!(format, Format::Json) {
                println!();
            }
            if report.verdict {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_VERIFY_FAILED as u8))
            }
        }
        Command::Verify {
            table,
            jobs,
            format,
        } => {
            let text = read(&table)?;
            let rows = parse_table(&text).map_err(input_error)?;
            if rows.is_empty() {
                println!("0 rows: 0 passed, 0 failed");
                return Ok(ExitCode::from(EXIT_INPUT_ERROR as u8));
            }
            let report = run_verify(&rows, jobs);
            print!("{}", report.render(format.into()));
            if matches!(format, Format::Json) {
                println!();
            }
            if report.failed == 0 {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_VERIFY_FAILED as u8))
            }
        }
        Command::Brt { file, format } => {
            let text = read(&file)?;
            let out = cli::cmd_brt(&text, format.into()).map_err(input_error)?;
            print!("{out}");
            if matches!(format, Format::Json) {
                println!();
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
