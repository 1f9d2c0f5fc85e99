//! Command-line interface: key generation and validation, stream
//! encryption/decryption in text or bytes mode, the checked demo walkthrough,
//! an orthogonality census, and Cayley-table dumps.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qgc::clikit::{self, Codec, KeyFile};
use qgc::{Error, KeySchedule, Modulus, SymbolStream, TQuasigroup, Trace};

#[derive(Parser)]
#[command(name = "qgc", version, about = "T-quasigroup stream cipher toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key file (deterministic for a given --seed)
    Keygen {
        /// Prime modulus for the symbol alphabet
        #[arg(long, default_value_t = 313)]
        modulus: u64,
        /// Number of step keys in the schedule
        #[arg(long, default_value_t = 3)]
        steps: usize,
        /// Chaining discipline: generalized or markovski
        #[arg(long, default_value = "generalized")]
        mode: String,
        /// RNG seed; omitted means a fresh random seed (printed to stderr)
        #[arg(long)]
        seed: Option<u64>,
        /// "demo" emits the built-in walkthrough key instead of sampling
        #[arg(long)]
        preset: Option<String>,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a key file invariant by invariant
    Validate {
        #[arg(long)]
        key: PathBuf,
    },
    /// Encrypt a stream or file
    Encrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// text: "%d; %d; ..." symbol lists; bytes: raw file in, 2-byte words out
        #[arg(long, value_enum, default_value_t = StreamFormat::Text)]
        mode: StreamFormat,
        /// Print every intermediate chain to stderr
        #[arg(long)]
        trace: bool,
    },
    /// Decrypt a stream or file
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = StreamFormat::Text)]
        mode: StreamFormat,
        #[arg(long)]
        trace: bool,
    },
    /// Run the built-in walkthrough and verify every intermediate value
    Demo,
    /// CSV census of unit pairs: orthogonality per parastrophe, criteria pass
    OrthoCensus {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV Cayley table of one quasigroup
    Cayley {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        phi: u64,
        #[arg(long)]
        psi: u64,
        #[arg(long, default_value_t = 0)]
        c: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StreamFormat {
    Text,
    Bytes,
}

/// Exit codes: 2 validation, 3 I/O, 4 codec.
struct Failure {
    code: u8,
    message: String,
}

type CliResult<T> = Result<T, Failure>;

fn domain(e: Error) -> Failure {
    let code = match e {
        Error::Codec(_) | Error::SymbolOutOfRange { .. } => 4,
        _ => 2,
    };
    Failure { code, message: e.to_string() }
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> Failure + '_ {
    move |e| Failure { code: 3, message: format!("{}: {e}", path.display()) }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Keygen { modulus, steps, mode, seed, preset, out } => {
            keygen_cmd(modulus, steps, &mode, seed, preset.as_deref(), out.as_deref())
        }
        Command::Validate { key } => validate_cmd(&key),
        Command::Encrypt { key, input, out, mode, trace } => {
            crypt_cmd(&key, &input, out.as_deref(), mode, trace, false)
        }
        Command::Decrypt { key, input, out, mode, trace } => {
            crypt_cmd(&key, &input, out.as_deref(), mode, trace, true)
        }
        Command::Demo => {
            let report = clikit::run_demo();
            print!("{}", report.transcript);
            Ok(if report.ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::OrthoCensus { modulus, out } => {
            let m = Modulus::new(modulus).map_err(domain)?;
            let census = qgc::verify::census(m).map_err(domain)?;
            emit(census.to_csv(), out.as_deref())
        }
        Command::Cayley { modulus, phi, psi, c, out } => {
            let m = Modulus::new(modulus).map_err(domain)?;
            let q = TQuasigroup::from_values(m, phi, psi, c).map_err(domain)?;
            emit(q.cayley_csv().map_err(domain)?, out.as_deref())
        }
    }
}

fn emit(text: String, out: Option<&Path>) -> CliResult<ExitCode> {
    match out {
        Some(path) => fs::write(path, text).map_err(io(path))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn keygen_cmd(
    modulus: u64,
    steps: usize,
    mode: &str,
    seed: Option<u64>,
    preset: Option<&str>,
    out: Option<&Path>,
) -> CliResult<ExitCode> {
    let file = match preset {
        Some("demo") => clikit::demo_keyfile(),
        Some(other) => {
            return Err(Failure { code: 2, message: format!("unknown preset {other:?}") })
        }
        None => {
            let mode = clikit::parse_mode(mode).ok_or_else(|| Failure {
                code: 2,
                message: format!("unknown mode {mode:?} (generalized or markovski)"),
            })?;
            let seed = seed.unwrap_or_else(|| {
                let s = rand::random::<u64>();
                eprintln!("seed: {s}");
                s
            });
            clikit::keygen(seed, modulus, steps, mode).map_err(domain)?
        }
    };
    emit(file.to_json(), out)
}

fn validate_cmd(key: &Path) -> CliResult<ExitCode> {
    let text = fs::read_to_string(key).map_err(io(key))?;
    let file = KeyFile::from_json(&text).map_err(domain)?;
    let report = file.validate();
    print!("{report}");
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn load_schedule(key: &Path) -> CliResult<KeySchedule> {
    let text = fs::read_to_string(key).map_err(io(key))?;
    let file = KeyFile::from_json(&text).map_err(domain)?;
    file.to_schedule().map_err(domain)
}

fn print_trace(trace: &Trace) {
    for (i, s) in trace.steps.iter().enumerate() {
        eprintln!(
            "step {}: odd {:?} | even {:?} | mix {:?}",
            i + 1,
            s.odd_chain,
            s.even_chain,
            s.f_chain
        );
    }
}

fn crypt_cmd(
    key: &Path,
    input: &Path,
    out: Option<&Path>,
    format: StreamFormat,
    trace: bool,
    decrypting: bool,
) -> CliResult<ExitCode> {
    let schedule = load_schedule(key)?;
    let m = schedule.modulus();

    let in_stream: SymbolStream = match format {
        StreamFormat::Text => {
            let text = fs::read_to_string(input).map_err(io(input))?;
            clikit::parse_text(m, &text).map_err(domain)?
        }
        StreamFormat::Bytes => {
            let bytes = fs::read(input).map_err(io(input))?;
            if decrypting {
                clikit::from_binary(m, &bytes).map_err(domain)?
            } else {
                Codec::new(m).map_err(domain)?.encode(&bytes)
            }
        }
    };

    let out_stream = if trace {
        let (stream, t) = if decrypting {
            schedule.decrypt_traced(&in_stream).map_err(domain)?
        } else {
            schedule.encrypt_traced(&in_stream).map_err(domain)?
        };
        print_trace(&t);
        stream
    } else if decrypting {
        schedule.decrypt(&in_stream).map_err(domain)?
    } else {
        schedule.encrypt(&in_stream).map_err(domain)?
    };

    match format {
        StreamFormat::Text => emit(clikit::format_text(&out_stream), out),
        StreamFormat::Bytes => {
            let bytes = if decrypting {
                Codec::new(m).map_err(domain)?.decode(&out_stream).map_err(domain)?
            } else {
                clikit::to_binary(&out_stream).map_err(domain)?
            };
            match out {
                Some(path) => {
                    fs::write(path, bytes).map_err(io(path))?;
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    std::io::stdout()
                        .write_all(&bytes)
                        .map_err(|e| Failure { code: 3, message: format!("stdout: {e}") })?;
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
    }
}
