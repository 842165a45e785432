use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ncres::commands::{self, Outcome, ResolveArgs, Settings};
use ncres::spec::{AlgebraSpec, Preset};
use ncres::CliError;

/// Truncated noncommutative Groebner bases, syzygies and minimal
/// resolutions over graded quotients of free algebras.
#[derive(Parser, Debug)]
#[command(name = "ncres", version)]
struct Cli {
    #[command(flatten)]
    algebra: AlgebraArgs,

    /// Worker threads for verification (degrees are independent).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Also write trace.json (reduction steps for `nf`, critical pairs for
    /// `groebner`).
    #[arg(long, global = true)]
    emit_trace: bool,

    /// Directory for output files.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    /// Algebra description (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    algebra: Option<PathBuf>,

    #[arg(long, global = true)]
    preset: Option<Preset>,

    /// Prime characteristic.
    #[arg(long, global = true)]
    field: Option<u32>,

    /// left-length-lex or right-length-lex.
    #[arg(long, global = true)]
    order: Option<String>,

    /// Internal degree bound k.
    #[arg(short = 'k', long = "max-degree", global = true)]
    max_degree: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of a polynomial.
    Nf { polynomial: String },
    /// Complete the relations through degree k; prints the basis as JSON.
    Groebner,
    /// Adem relations of degree at most k, one per line.
    Adem,
    /// Reduced monomials of one degree, one per line.
    Basis {
        #[arg(long)]
        degree: u32,
    },
    /// Minimal resolution; writes resolution.json and chart.tsv.
    Resolve {
        /// Job description (JSON); flags override it.
        #[arg(long, value_name = "FILE")]
        job: Option<PathBuf>,
        #[arg(long)]
        s_max: Option<usize>,
        /// Check the result with the linear-algebra oracle; exit 1 on failure.
        #[arg(long)]
        verify: bool,
        /// Also write chart.svg.
        #[arg(long)]
        svg: bool,
    },
    /// Verify a stored resolution; prints a JSON report.
    Verify { resolution: PathBuf },
    /// Render chart.tsv or resolution.json as TSV or SVG.
    Chart {
        input: PathBuf,
        #[arg(long)]
        svg: bool,
    },
    /// Generators of the syzygies of a row file (JSON: degrees, rows).
    Syzygy { rows: PathBuf },
}

fn settings(cli: &Cli) -> Result<Settings, CliError> {
    let a = &cli.algebra;
    let mut spec = match &a.algebra {
        Some(p) => AlgebraSpec::load(p)?,
        None => AlgebraSpec::default(),
    };
    let preset = a.preset.or(spec.preset).or(match cli.command {
        // Adem relations only make sense for the Steenrod presentation
        Command::Adem => Some(Preset::Steenrod2),
        _ => None,
    });
    if preset == Some(Preset::Steenrod2) {
        spec = AlgebraSpec {
            field: spec.field,
            ..AlgebraSpec::steenrod2()
        };
    }
    if let Some(p) = a.field {
        spec.field = p;
    }
    if let Some(o) = &a.order {
        if spec.preset.is_some() && o != &spec.order {
            return Err(CliError::Input(format!("the preset fixes the order to {}", spec.order)));
        }
        spec.order = o.clone();
    }
    Ok(Settings {
        algebra: spec,
        k: a.max_degree,
        threads: cli.threads,
        emit_trace: cli.emit_trace,
        out_dir: cli.out.clone(),
    })
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let s = settings(cli)?;
    match &cli.command {
        Command::Nf { polynomial } => commands::nf(&s, polynomial, out),
        Command::Groebner => commands::groebner(&s, out),
        Command::Adem => commands::adem(&s, out),
        Command::Basis { degree } => commands::basis(&s, *degree, out),
        Command::Resolve { job, s_max, verify, svg } => {
            let args = ResolveArgs {
                job: job.clone(),
                s_max: *s_max,
                verify: *verify,
                svg: *svg,
            };
            commands::resolve_cmd(&s, &args, out)
        }
        Command::Verify { resolution } => commands::verify(&s, resolution, out),
        Command::Chart { input, svg } => commands::chart(input, *svg, out),
        Command::Syzygy { rows } => commands::syzygy(&s, rows, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help, --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", CliError::Input(e.to_string().trim_end().to_string()).report());
            return ExitCode::from(2);
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let code = match run(&cli, &mut lock) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", e.report());
            ExitCode::from(e.exit_code())
        }
    };
    let _ = lock.flush();
    code
}
