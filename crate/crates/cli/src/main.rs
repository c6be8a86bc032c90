use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hlcert_cli::{run, to_json, CliError, InstanceFile, Method, Task, EXIT_ERROR};
use hlcert_core::{generate_psd, GeneratorSpec};

#[derive(Parser)]
#[command(name = "hlcert", version, about = "Exact HL/HR certificates for products of Hermitian (1,1)-forms")]
struct Cli {
    /// Instance file, or `-` for stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Report destination, or `-` for stdout.
    #[arg(long, global = true, default_value = "-")]
    output: PathBuf,
    /// Seed for `generate`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Criterion,
    Direct,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task in the instance file (the default).
    Run,
    /// Mixed discriminant of named matrices from the instance file.
    MixedDisc {
        #[arg(long, value_delimiter = ',', required = true)]
        matrices: Vec<String>,
    },
    /// Hard Lefschetz certificate for the product of the named forms.
    HlCertify {
        #[arg(long, value_delimiter = ',')]
        forms: Vec<String>,
        #[arg(short)]
        p: usize,
        #[arg(short)]
        q: usize,
        #[arg(long, value_enum, default_value = "criterion")]
        method: MethodArg,
    },
    /// Hodge-Riemann certificate with respect to `eta`.
    HrCertify {
        #[arg(long, value_delimiter = ',')]
        forms: Vec<String>,
        #[arg(short)]
        p: usize,
        #[arg(short)]
        q: usize,
        #[arg(long)]
        eta: String,
        /// Include the primitive basis and Gram matrix.
        #[arg(long)]
        gram: bool,
    },
    /// Signature of the intersection form on real (1,1)-classes.
    Signature {
        #[arg(long, value_delimiter = ',')]
        forms: Vec<String>,
    },
    /// Emit an instance file with seeded PSD matrices A1, A2, ... and no tasks.
    Generate {
        #[arg(long)]
        n: usize,
        /// Target ranks, one per matrix.
        #[arg(long, value_delimiter = ',', required = true)]
        ranks: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        entry_bound: u32,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    let path = path.as_ref().ok_or_else(|| CliError::Invalid("--input is required".into()))?;
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn write_output(path: &PathBuf, text: &str) -> Result<(), CliError> {
    if path.as_os_str() == "-" {
        std::io::stdout().write_all(text.as_bytes())?;
    } else {
        std::fs::write(path, text)?;
    }
    Ok(())
}

/// Replace the file's task list with a single task.
fn single(cli: &Cli, task: Task) -> Result<(String, i32), CliError> {
    let mut file = InstanceFile::parse(&read_input(&cli.input)?)?;
    file.tasks = vec![task];
    file.check_references()?;
    let report = run(&file);
    Ok((report.to_json(cli.pretty), report.exit_code()))
}

fn dispatch(cli: &Cli) -> Result<(String, i32), CliError> {
    match cli.command.as_ref().unwrap_or(&Command::Run) {
        Command::Run => {
            let file = InstanceFile::parse(&read_input(&cli.input)?)?;
            let report = run(&file);
            Ok((report.to_json(cli.pretty), report.exit_code()))
        }
        Command::MixedDisc { matrices } => single(cli, Task::MixedDisc { matrices: matrices.clone() }),
        Command::HlCertify { forms, p, q, method } => {
            let method = match method {
                MethodArg::Criterion => Method::Criterion,
                MethodArg::Direct => Method::Direct,
                MethodArg::Both => Method::Both,
            };
            single(cli, Task::HlCertify { forms: forms.clone(), p: *p, q: *q, method })
        }
        Command::HrCertify { forms, p, q, eta, gram } => {
            single(cli, Task::HrCertify { forms: forms.clone(), p: *p, q: *q, eta: eta.clone(), gram: *gram })
        }
        Command::Signature { forms } => single(cli, Task::Signature { forms: forms.clone() }),
        Command::Generate { n, ranks, entry_bound } => {
            let spec = GeneratorSpec { seed: cli.seed, n: *n, rank_profile: ranks.clone(), entry_bound: *entry_bound };
            let mats = generate_psd(&spec).map_err(|e| CliError::Invalid(e.to_string()))?;
            let matrices: BTreeMap<String, _> =
                mats.into_iter().enumerate().map(|(i, m)| (format!("A{}", i + 1), m)).collect();
            let file = InstanceFile { n: *n, matrices, tasks: Vec::new() };
            Ok((to_json(&file, cli.pretty), 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli).and_then(|(text, code)| write_output(&cli.output, &text).map(|_| code)) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("hlcert: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
