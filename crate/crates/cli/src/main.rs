use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use trimat::commands::{self, exit, ApplyArgs, Caps, CheckArgs, CliError, Level, Method, Outcome, WitnessKind};
use trimat_core::recollement::FunctorTag;

#[derive(Parser)]
#[command(name = "trimat", version, about = "Modules over triangular matrix algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Abelian,
    Stable,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Abelian => Level::Abelian,
            LevelArg::Stable => Level::Stable,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Perp,
    Triple,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessArg {
    /// Ker i^* versus Im j_!, i^!j_! and the counit j_!j^* → Id
    #[value(name = "remark-2.6")]
    UpperSymmetry,
}

#[derive(Subcommand)]
enum Command {
    /// Run every structural validator
    Validate { file: PathBuf },
    /// Rewrite a workspace in canonical form
    Fmt {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Register the triangular algebra of (A, B, M)
    BuildLambda {
        file: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        m: String,
        #[arg(long, default_value = "lambda")]
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Left and right injective dimension of an algebra or context
    Injdim {
        file: PathBuf,
        #[arg(long)]
        algebra: String,
    },
    /// Gorenstein-projectivity of workspace triples
    Gproj {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long)]
        injdim: Option<usize>,
        #[arg(long)]
        context: Option<String>,
        /// Triples to test (default: all in the context)
        #[arg(long)]
        input: Vec<String>,
    },
    /// Apply one of the recollement functors
    Apply {
        file: PathBuf,
        #[arg(long)]
        functor: FunctorTag,
        #[arg(long, value_enum, default_value = "abelian")]
        level: LevelArg,
        #[arg(long)]
        input: String,
        #[arg(long)]
        context: Option<String>,
        /// Name of the result (default: `<functor>.<input>`)
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        injdim: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dimensions of Hom, the maps through projectives, and stable Hom
    StableHom { file: PathBuf, x: String, y: String },
    /// Check the recollement axioms on seeded samples
    CheckRecollement {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "abelian")]
        level: LevelArg,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        context: Option<String>,
        #[arg(long)]
        injdim: Option<usize>,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Omit timing so that reports are reproducible byte for byte
        #[arg(long)]
        stable_output: bool,
    },
    /// Counterexamples to statements that need not hold for triangular algebras
    Witness {
        #[arg(value_enum)]
        kind: WitnessArg,
        file: PathBuf,
        #[arg(long)]
        context: Option<String>,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let caps = Caps::from_env()?;
    match cli.command {
        Command::Validate { file } => commands::validate(&file),
        Command::Fmt { file, output } => commands::fmt_file(&file, output.as_deref()),
        Command::BuildLambda { file, a, b, m, name, output } => {
            commands::build_lambda(&file, &a, &b, &m, &name, output.as_deref())
        }
        Command::Injdim { file, algebra } => commands::injdim(&file, &algebra, caps),
        Command::Gproj { file, method, injdim, context, input } => {
            let method = match method {
                MethodArg::Perp => Method::Perp,
                MethodArg::Triple => Method::Triple,
                MethodArg::Both => Method::Both,
            };
            commands::gproj(&file, method, injdim, context.as_deref(), &input, caps)
        }
        Command::Apply { file, functor, level, input, context, name, injdim, output } => commands::apply(
            &file,
            ApplyArgs {
                functor,
                level: level.into(),
                input: &input,
                context: context.as_deref(),
                name: name.as_deref(),
                injdim,
                out: output.as_deref(),
                caps,
            },
        ),
        Command::StableHom { file, x, y } => commands::stable_hom(&file, &x, &y),
        Command::CheckRecollement { file, level, samples, seed, context, injdim, report, stable_output } => {
            commands::check_recollement(
                &file,
                CheckArgs {
                    level: level.into(),
                    samples,
                    seed,
                    context: context.as_deref(),
                    injdim,
                    report: report.as_deref(),
                    stable_output,
                    caps,
                },
            )
        }
        Command::Witness { kind, file, context } => {
            let kind = match kind {
                WitnessArg::UpperSymmetry => WitnessKind::UpperSymmetry,
            };
            commands::witness(&file, kind, context.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::PARSE } else { exit::OK });
        }
    };
    match run(cli) {
        Ok(o) => {
            let _ = std::io::stdout().write_all(o.stdout.as_bytes());
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("trimat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
