use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use taper_cli::commands::{self, GenerateArgs};
use taper_cli::CliError;

#[derive(Parser)]
#[command(
    name = "taper",
    version,
    about = "Clifford reduction of Pauli-sum Hamiltonians"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a model Hamiltonian file (z2, hubbard, kitaev, j1j2).
    Generate {
        kind: String,
        /// Lattice size, `R` for R x R or `RxC`.
        #[arg(long)]
        size: Option<String>,
        /// Chain length for j1j2.
        #[arg(long)]
        n: Option<usize>,
        /// Add the single-site Z field (kitaev).
        #[arg(long)]
        field: bool,
        /// Periodic boundaries where the model allows them (hubbard).
        #[arg(long)]
        periodic: bool,
        /// Couplings as k=v, e.g. `u=8 t=1`.
        #[arg(long, num_args = 1..)]
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a Hamiltonian file and write the JSON report and circuit.
    Reduce {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Circuit output path; defaults to the report path with extension `.circuit`.
        #[arg(long)]
        circuit: Option<PathBuf>,
    },
    /// Write the sector Hamiltonian for charge values `z` from a report.
    Sector {
        report: PathBuf,
        #[arg(long)]
        z: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce and check the result against dense matrices.
    Verify {
        input: PathBuf,
        /// Check this report instead of reducing afresh.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        cap_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the published qubit-count table.
    Table {
        /// Chemistry Pauli list (4, 12 or 14 qubits); may be repeated.
        #[arg(long)]
        chem: Vec<PathBuf>,
        #[arg(long)]
        csv: bool,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Generate {
            kind,
            size,
            n,
            field,
            periodic,
            params,
            out,
        } => commands::generate(&GenerateArgs {
            kind: &kind,
            size: size.as_deref(),
            n,
            field,
            periodic,
            params: &params,
            out: out.as_deref(),
        }),
        Command::Reduce {
            input,
            out,
            circuit,
        } => commands::reduce(&input, &out, circuit.as_deref()),
        Command::Sector { report, z, out } => commands::sector(&report, &z, out.as_deref()),
        Command::Verify {
            input,
            report,
            cap_n,
            out,
        } => commands::verify(&input, report.as_deref(), cap_n, out.as_deref()),
        Command::Table { chem, csv } => commands::table(&chem, csv),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            eprintln!("taper: verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("taper: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
