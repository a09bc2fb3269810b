use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use pj4::report::{self, emit_report, Format, GroupChoice, IsoChoice, RunReport};
use pj4::rewrite::RewriteBudget;
use pj4::verify::VerifyConfig;

const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "pj4", version, about = "Cactus group words, the {4,5} complex of J4' and the pure cactus group PJ4")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Extra length allowed above the longer word when searching for equalities.
    #[arg(long, global = true, default_value_t = 2)]
    budget_slack: usize,

    #[arg(long, global = true, default_value_t = 1e-6)]
    tolerance: f64,

    /// SVG output path for `render`.
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    J4,
    J4p,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Bcl,
    Surface,
}

#[derive(Subcommand)]
enum Command {
    /// Elements of the sphere of a given length.
    Sphere {
        #[arg(long, value_enum, default_value_t = Group::J4p)]
        group: Group,
        #[arg(long)]
        length: usize,
    },
    /// The twenty pure elements at distance four.
    Pure,
    /// Ball of the Cayley complex and its tiling check.
    Complex {
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Fundamental polygon, side pairings and vertex cycles.
    Dirichlet,
    /// Presentation read off the vertex cycles.
    Presentation,
    /// Reduction to one relator.
    Tietze,
    /// Certify one of the explicit isomorphisms.
    Isocheck {
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Draw the tiling and the fundamental polygon.
    Render {
        #[arg(long, default_value_t = 4)]
        radius: usize,
    },
    /// Run every acceptance check.
    VerifyAll,
}

fn run(cli: &Cli) -> Result<RunReport, pj4::Error> {
    let cfg = VerifyConfig {
        budget: RewriteBudget::new(cli.budget_slack, RewriteBudget::default().max_states)?,
        tolerance: cli.tolerance,
    };
    match &cli.command {
        Command::Sphere { group, length } => {
            let g = match group {
                Group::J4 => GroupChoice::J4,
                Group::J4p => GroupChoice::J4Prime,
            };
            report::sphere(g, *length, &cfg)
        }
        Command::Pure => report::pure(&cfg),
        Command::Complex { radius } => report::complex(*radius, &cfg),
        Command::Dirichlet => report::dirichlet(&cfg),
        Command::Presentation => report::presentation(&cfg),
        Command::Tietze => report::tietze(),
        Command::Isocheck { which } => {
            let w = match which {
                Which::Bcl => IsoChoice::Bcl,
                Which::Surface => IsoChoice::Surface,
            };
            report::isocheck(w, &cfg)
        }
        Command::Render { radius } => {
            let path = cli.svg.as_ref().ok_or_else(|| pj4::Error::InvalidArgument("render needs --svg PATH".into()))?;
            let (mut r, svg) = report::render(*radius, &cfg)?;
            fs::write(path, svg).map_err(|e| pj4::Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            r.results["svg"] = path.display().to_string().into();
            Ok(r)
        }
        Command::VerifyAll => Ok(report::verify_all(&cfg)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let mut report = match run(&cli) {
        Ok(r) => r,
        Err(pj4::Error::BudgetExhausted { states }) => {
            eprintln!("error: search budget exhausted after {states} states");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    report.wall_time = start.elapsed();
    let format = match cli.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
    };
    let bytes = emit_report(&report, format);
    let written = match &cli.out {
        Some(path) => fs::write(path, &bytes),
        None => std::io::stdout().write_all(&bytes),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    eprintln!("{} finished in {:.2?}", report.command, report.wall_time);
    ExitCode::from(report.status.exit_code() as u8)
}
