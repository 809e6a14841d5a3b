use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ends_core::graph_build::{build_ball, to_adjacency, to_dot, GraphError, DEFAULT_VERTEX_BUDGET};
use ends_lab::report::RunError;
use ends_lab::{build, parse_analyses, parse_spec, run, AnalysisRequest, BuildError, GroupSpecAst};

const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_OVERFLOW: u8 = 3;

#[derive(Parser)]
#[command(name = "ends-lab", version, about = "Finite-radius ends of groups and coset graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the ends profile and the selected analyses.
    Analyze {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        rmax: u32,
        /// Defaults to 2 * rmax + 4.
        #[arg(long = "Rmax")]
        big_rmax: Option<u32>,
        /// Comma separated: profile, action, stabilizer, multiplicative,
        /// vz_witness, almost_invariance, relative, or all.
        #[arg(long, default_value = "profile")]
        analyses: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Write the ball of the given radius as Graphviz DOT.
    ExportDot {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        radius: u32,
    },
    /// Write the ball of the given radius as adjacency JSON.
    ExportBall {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        radius: u32,
    },
    /// Parse a spec and print its canonical form.
    ParseCheck {
        spec: String,
    },
}

#[derive(Args)]
struct Common {
    /// Group spec, e.g. "product(free(2), Z)". Table paths are relative to
    /// the working directory.
    spec: String,
    #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
    budget: usize,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Dot,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn other(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_OTHER,
            message: e.to_string(),
        }
    }
}

fn parse(text: &str) -> Result<GroupSpecAst, Failure> {
    parse_spec(text).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("parse error at {e}"),
    })
}

fn graph_failure(e: GraphError) -> Failure {
    let code = if matches!(e, GraphError::Overflow { .. }) {
        EXIT_OVERFLOW
    } else {
        EXIT_OTHER
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::other(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(Failure::other),
    }
}

fn build_target(ast: &GroupSpecAst) -> Result<ends_lab::Target, Failure> {
    build(ast, Path::new(".")).map_err(|e: BuildError| Failure::other(e))
}

fn export(common: &Common, radius: u32, dot: bool) -> Result<(), Failure> {
    let ast = parse(&common.spec)?;
    let target = build_target(&ast)?;
    let ball = build_ball(target.graph().as_ref(), radius, common.budget).map_err(graph_failure)?;
    let text = if dot {
        to_dot(&ball)
    } else {
        let mut s = serde_json::to_string_pretty(&to_adjacency(&ball)).map_err(Failure::other)?;
        s.push('\n');
        s
    };
    emit(common.output.as_deref(), &text)
}

fn execute(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::ParseCheck { spec } => {
            let ast = parse(&spec)?;
            println!("{ast}");
            Ok(())
        }
        Command::ExportDot { common, radius } => export(&common, radius, true),
        Command::ExportBall { common, radius } => export(&common, radius, false),
        Command::Analyze {
            common,
            rmax,
            big_rmax,
            analyses,
            format,
        } => {
            if format == Format::Dot {
                return Err(Failure::other("analyze writes json or table; use export-dot for DOT"));
            }
            let ast = parse(&common.spec)?;
            let selected = parse_analyses(&analyses).map_err(Failure::other)?;
            let mut request = AnalysisRequest {
                spec: ast,
                r_max: rmax,
                big_r_max: big_rmax.unwrap_or(2 * rmax + 4),
                budget: common.budget,
                analyses: selected,
            };
            if analyses.split(',').any(|a| a.trim() == "all") {
                request = request.applicable();
            }
            request.validate().map_err(Failure::other)?;
            let target = build_target(&request.spec)?;
            let report = run(&request, &target).map_err(|e| match e {
                RunError::Graph(g) => graph_failure(g),
                RunError::Analysis(a) if a.is_overflow() => Failure {
                    code: EXIT_OVERFLOW,
                    message: a.to_string(),
                },
                other => Failure::other(other),
            })?;
            let text = match format {
                Format::Table => report.to_table(),
                _ => report.to_json(),
            };
            emit(common.output.as_deref(), &text)?;
            if report.is_complete() {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_OVERFLOW,
                    message: format!(
                        "vertex budget {} exhausted at radius {}; partial report written",
                        report.budget.vertex_budget, report.budget.radius_reached
                    ),
                })
            }
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("ENDS_LAB_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::other(format!("ENDS_LAB_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(Failure::other)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| execute(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ends-lab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
