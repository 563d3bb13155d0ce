use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use qpf::cli::{cmd_compile, cmd_protocol_verify, cmd_run, cmd_validate, OutputMode};
use qpf::service::{serve_stdio, serve_tcp, ServerConfig, DEFAULT_CAPACITY};
use qpu_core::protocol::Convention;

#[derive(Parser)]
#[command(name = "qpf", version, about = "Quantum processing unit emulator and programming framework")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = OutputMode::Human)]
    output: OutputMode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Ideal,
    Physical,
}

#[derive(Clone, Copy, ValueEnum)]
enum Transport {
    Stdio,
    Socket,
}

#[derive(Subcommand)]
enum Command {
    /// Check a physical (`QPU s=`) or logical (`LQ n=`) program
    Validate { path: PathBuf },
    /// Execute a program for a number of shots
    Run {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,
    },
    /// Compile a logical program to physical program text
    Compile {
        path: PathBuf,
        /// Write to a file instead of stdout
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Run the transistor pulse sequence against the tabulated states and CQET
    ProtocolVerify {
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, value_enum, default_value_t = ConventionArg::Ideal)]
        convention: ConventionArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Serve the framework protocol
    Serve {
        #[arg(long, default_value_t = DEFAULT_CAPACITY as u64, value_parser = clap::value_parser!(u64).range(1..))]
        capacity: u64,
        #[arg(long, value_enum, default_value_t = Transport::Stdio)]
        transport: Transport,
        /// Address for the socket transport
        #[arg(long, default_value = "127.0.0.1:7878")]
        listen: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn run(cli: Cli) -> Result<i32> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Validate { path } => cmd_validate(&read(&path)?, cli.output, &mut out),
        Command::Run { path, seed, shots } => cmd_run(&read(&path)?, seed, shots as usize, cli.output, &mut out),
        Command::Compile { path, out: target } => {
            let src = read(&path)?;
            let mut buf = Vec::new();
            let code = cmd_compile(&src, &mut buf, &mut io::stderr())?;
            match target {
                Some(p) if code == 0 => std::fs::write(&p, buf).with_context(|| format!("cannot write {}", p.display()))?,
                _ => out.write_all(&buf)?,
            }
            Ok(code)
        }
        Command::ProtocolVerify { samples, convention, seed } => {
            let convention = match convention {
                ConventionArg::Ideal => Convention::Ideal,
                ConventionArg::Physical => Convention::Physical,
            };
            cmd_protocol_verify(samples as usize, convention, seed, cli.output, &mut out)
        }
        Command::Serve { capacity, transport, listen, seed } => {
            drop(out);
            let config = ServerConfig { capacity: capacity as usize, seed };
            match transport {
                Transport::Stdio => serve_stdio(config)?,
                Transport::Socket => serve_tcp(&listen, config)?,
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default = if matches!(cli.command, Command::Serve { .. }) { "info" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(default)).init();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
