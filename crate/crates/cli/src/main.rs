use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use padic_schur::bench::{bench_run, BenchConfig, Instances, Method, Verdict};
use padic_schur::decomp::{hessenberg, qr_factor, smith_svd};
use padic_schur::eigen::{block_schur, gze, gze_tracked, rounds_csv, verify_similarity};
use padic_schur::matrix::io::{read_matrix, write_factors};
use padic_schur::matrix::PadicMatrix;
use padic_schur::PadicError;

#[derive(Parser)]
#[command(name = "padic-schur", version, about = "Block Schur forms and decompositions of p-adic matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Matrix file (`p N n m` header, one row per line).
    #[arg(long)]
    input: PathBuf,
    /// Where to write the factors; stdout if omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Weak block Schur form `M U = U T`.
    Schur {
        #[command(flatten)]
        io: Io,
        /// Write the per-round log as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Hessenberg form `H U = U M`.
    Hessenberg {
        #[command(flatten)]
        io: Io,
    },
    /// Pivoted QR factorization `M = Q R`.
    Qr {
        #[command(flatten)]
        io: Io,
        /// Skip columns without a pivot so that `R` is in echelon form.
        #[arg(long)]
        strict: bool,
    },
    /// Smith form `M = U Sigma V`.
    Svd {
        #[command(flatten)]
        io: Io,
    },
    /// Basis of the generalized left 0-eigenspace.
    Gze {
        #[command(flatten)]
        io: Io,
        /// Lower the precision at each deflation by the smallest nonzero
        /// singular value instead of keeping the input precision.
        #[arg(long)]
        track_precision: bool,
    },
    /// Time the fast iteration against the plain iteration and the classical method.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum InstanceArg {
    Uniform,
    Split,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 7)]
    p: u32,
    #[arg(long = "N", default_value_t = 10)]
    prec: i64,
    /// Matrix sizes, comma separated.
    #[arg(long = "n", value_delimiter = ',', default_value = "10,20")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "fast,simple,classical")]
    methods: Vec<String>,
    #[arg(long, value_enum, default_value = "uniform")]
    instances: InstanceArg,
    /// CSV destination; the table always goes to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Precision(String),
    Verification(String),
}

impl From<PadicError> for Failure {
    fn from(e: PadicError) -> Self {
        match e {
            PadicError::InsufficientPrecision(_) => Failure::Precision(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn load(path: &Path) -> CliResult<PadicMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(read_matrix(&text)?)
}

fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(io: &Io, mut text: String, check: &str, ok: bool) -> CliResult<()> {
    text.push_str(&format!("# verification: {}\n", if ok { "OK" } else { "FAILED" }));
    emit(io.output.as_deref(), &text)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification(check.to_string()))
    }
}

fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Schur { io, trace } => {
            let m = load(&io.input)?;
            let r = block_schur(&m)?;
            let prec = m.flat_precision();
            let ok = verify_similarity(&m, &r.u, &r.t, prec)?;
            if let Some(t) = trace {
                emit(Some(&t), &rounds_csv(&r.rounds_log))?;
            }
            let sizes: Vec<String> = r.blocks.iter().map(ToString::to_string).collect();
            let mut text = format!("# status: {:?}\n# blocks: {}\n# rounds: {}\n", r.status, sizes.join(" "), r.rounds);
            text.push_str(&write_factors(&[("T", &r.t), ("U", &r.u)]));
            finish(&io, text, &format!("M U != U T mod p^{prec}"), ok)
        }
        Command::Hessenberg { io } => {
            let m = load(&io.input)?;
            let f = hessenberg(&m)?;
            let prec = m.flat_precision();
            let ok = f.h.mul(&f.u)?.eq_mod(&f.u.mul(&m)?, prec)?;
            let text = write_factors(&[("H", &f.h), ("U", &f.u)]);
            finish(&io, text, &format!("H U != U M mod p^{prec}"), ok)
        }
        Command::Qr { io, strict } => {
            let m = load(&io.input)?;
            let f = qr_factor(&m, strict)?;
            let prec = m.flat_precision();
            let ok = f.reconstruct()?.eq_mod(&m, prec)?;
            let text = write_factors(&[("Q", &f.q), ("R", &f.r)]);
            finish(&io, text, &format!("Q R != M mod p^{prec}"), ok)
        }
        Command::Svd { io } => {
            let m = load(&io.input)?;
            let s = smith_svd(&m)?;
            let prec = m.flat_precision();
            let ok = s.reconstruct()?.eq_mod(&m, prec)?;
            let norms: Vec<String> = s
                .singular_values
                .iter()
                .map(|x| match x.valuation() {
                    Some(v) => format!("p^{}", -v),
                    None => format!("O(p^{})", x.prec()),
                })
                .collect();
            let mut text = format!("# singular norms: {}\n", norms.join(" "));
            text.push_str(&write_factors(&[("U", &s.u), ("Sigma", &s.sigma), ("V", &s.v)]));
            finish(&io, text, &format!("U Sigma V != M mod p^{prec}"), ok)
        }
        Command::Gze { io, track_precision } => {
            let m = load(&io.input)?;
            let svd = smith_svd(&m)?;
            let g = if track_precision { gze_tracked(&m, &svd)? } else { gze(&m, &svd)? };
            let prec = g.precision.min(m.flat_precision());
            let ok = g.dim() == 0
                || g.rows
                    .mul(&m.pow(g.dim() as u32)?)?
                    .eq_mod(&PadicMatrix::zeros(m.ctx(), g.dim(), m.cols()), prec)?;
            let mut text = format!("# dimension: {}\n# precision: {}\n", g.dim(), g.precision);
            text.push_str(&write_factors(&[("V", &g.rows)]));
            finish(&io, text, &format!("V M^d != 0 mod p^{prec}"), ok)
        }
        Command::Bench(args) => {
            let methods = args
                .methods
                .iter()
                .map(|s| s.parse::<Method>())
                .collect::<Result<Vec<_>, _>>()?;
            let cfg = BenchConfig {
                p: args.p,
                prec: args.prec,
                sizes: args.sizes,
                trials: args.trials,
                seed: args.seed,
                methods,
                instances: match args.instances {
                    InstanceArg::Uniform => Instances::Uniform,
                    InstanceArg::Split => Instances::Split,
                },
            };
            let report = bench_run(&cfg)?;
            print!("{}", report.to_table());
            if let Some(out) = &args.output {
                emit(Some(out), &report.to_csv())?;
            }
            let failed = report.rows.iter().filter(|r| r.verdict == Verdict::Failed).count();
            if failed > 0 {
                return Err(Failure::Verification(format!("{failed} benchmark runs failed verification")));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Precision(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
    }
}
