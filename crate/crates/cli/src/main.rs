use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pendant_spectra::commands::{
    cmd_analyze, cmd_export, cmd_gen, cmd_survey, cmd_verify, CliConfig, ExactMode, MatrixKind, EXIT_USAGE,
};
use pendant_spectra::report::OutputFormat;

#[derive(Parser)]
#[command(name = "pendant-spectra", version, about = "Pendant-path eigenvalue multiplicity checks for graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pendant paths and Laplacian / signless Laplacian spectra of each graph.
    Analyze(RunArgs),
    /// Check the multiplicity bounds for each graph; exit 1 on any failure.
    Verify(RunArgs),
    /// Tightness statistics aggregated over the whole input.
    Survey(RunArgs),
    /// Generate graphs as graph6 lines.
    Gen {
        /// path, star, spider, broom, caterpillar or random-tree.
        kind: String,
        params: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a matrix of each input graph.
    Export {
        #[arg(long, value_enum, default_value = "laplacian")]
        matrix: MatrixKind,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        input: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Input file (graph6 lines or edge-list blocks); stdin when absent.
    input: Option<PathBuf>,
    /// Absolute eigenvalue tolerance. Defaults to 1e-8 scaled by the matrix norm.
    #[arg(long, value_parser = positive_f64)]
    tol: Option<f64>,
    #[arg(long)]
    kmax: Option<usize>,
    /// Force exact certificates on (default: only when n + m <= 256).
    #[arg(long, overrides_with = "no_exact")]
    exact: bool,
    #[arg(long, overrides_with = "exact")]
    no_exact: bool,
    /// Also run the subdivision-matrix lemma checks.
    #[arg(long)]
    lemmas: bool,
    /// Orientation/deletion trials per graph for the bipartite lemma.
    #[arg(long, default_value_t = 32)]
    trials: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    #[arg(long, env = "PENDANT_SPECTRA_JOBS", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Process graphs above the dense size cap instead of skipping them.
    #[arg(long)]
    force: bool,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("tolerance must be a positive finite number".into()),
        Err(e) => Err(e.to_string()),
    }
}

impl RunArgs {
    fn config(&self) -> CliConfig {
        CliConfig {
            tolerance: self.tol,
            kmax: self.kmax,
            exact: match (self.exact, self.no_exact) {
                (true, _) => ExactMode::On,
                (_, true) => ExactMode::Off,
                _ => ExactMode::Auto,
            },
            lemmas: self.lemmas,
            format: self.format,
            jobs: self.jobs as usize,
            seed: self.seed,
            force: self.force,
            trials: self.trials,
        }
    }
}

fn read_input(path: Option<&PathBuf>) -> io::Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn with_input(
    args: &RunArgs,
    err: &mut dyn Write,
    cmd: impl FnOnce(&str, &CliConfig, &mut dyn Write) -> io::Result<u8>,
) -> io::Result<u8> {
    match read_input(args.input.as_ref()) {
        Ok(text) => cmd(&text, &args.config(), err),
        Err(e) => {
            writeln!(err, "error: cannot read input: {e}")?;
            Ok(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> io::Result<u8> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let code = match cli.command {
        Command::Analyze(args) => with_input(&args, &mut err, |text, cfg, err| cmd_analyze(text, cfg, &mut out, err))?,
        Command::Verify(args) => with_input(&args, &mut err, |text, cfg, err| cmd_verify(text, cfg, &mut out, err))?,
        Command::Survey(args) => with_input(&args, &mut err, |text, cfg, err| cmd_survey(text, cfg, &mut out, err))?,
        Command::Gen {
            kind,
            params,
            count,
            seed,
        } => cmd_gen(&kind, &params, count, seed, &mut out, &mut err)?,
        Command::Export { matrix, format, input } => match read_input(input.as_ref()) {
            Ok(text) => cmd_export(&text, matrix, format, &mut out, &mut err)?,
            Err(e) => {
                writeln!(err, "error: cannot read input: {e}")?;
                EXIT_USAGE
            }
        },
    };
    out.flush()?;
    Ok(code)
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
        Ok(code) => ExitCode::from(code),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
