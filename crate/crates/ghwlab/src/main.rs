use clap::{Args, Parser, Subcommand};
use ghwlab::analysis::{
    analyze, field_report, omega_report, periods_report, render_format, AnalysisConfig,
    OutputFormat,
};
use ghwlab::codes::DMode;
use ghwlab::ghw::{Method, DEFAULT_WORK_CEILING};
use ghwlab::verify::{render_results, run_suite, suite_passes, Suite};
use ghwlab::Error;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_DISAGREEMENT: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "ghwlab", about = "Exact weight hierarchies of trace-defined linear codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one code instance end to end
    Analyze {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = parse_d_mode)]
        d_mode: DMode,
        /// comma-separated subset of closed,hyperplane,charsum,subcode
        #[arg(long, default_value = "closed,hyperplane,charsum,subcode", value_parser = parse_methods)]
        methods: std::vec::Vec<Method>,
        #[arg(long)]
        r_max: Option<u32>,
        #[arg(long, default_value = "table")]
        format: OutputFormat,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Print field construction data
    Field {
        #[command(flatten)]
        field: FieldArgs,
        /// include the trace-fiber histogram
        #[arg(long)]
        fibers: bool,
    },
    /// Print Gaussian periods of order N
    Periods {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "N")]
        n: u64,
    },
    /// Print a character sum in brute-force and closed form
    Omega {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "M")]
        m_order: u64,
        #[arg(long)]
        a_log: u64,
        /// omit for b = 0
        #[arg(long)]
        b_log: Option<u64>,
    },
    /// Run the self-verification suite
    Verify {
        #[arg(long, default_value = "core")]
        suite: Suite,
    },
}

fn parse_d_mode(s: &str) -> Result<DMode, String> {
    match s {
        "one" => Ok(DMode::One),
        "special" => Ok(DMode::Special),
        other => Err(format!("unknown d-mode '{other}' (expected one|special)")),
    }
}

fn parse_methods(s: &str) -> Result<Vec<Method>, String> {
    let methods: Vec<Method> = s
        .split(',')
        .filter(|part| !part.is_empty())
        .map(|part| part.trim().parse())
        .collect::<Result<_, _>>()?;
    if methods.is_empty() {
        return Err("at least one method is required".into());
    }
    Ok(methods)
}

fn ceiling_from_env() -> Result<u64, String> {
    match std::env::var("GHWLAB_CEILING") {
        Ok(raw) => raw
            .parse()
            .map_err(|_| format!("GHWLAB_CEILING must be an integer, got '{raw}'")),
        Err(_) => Ok(DEFAULT_WORK_CEILING),
    }
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::TooLarge { .. } | Error::FieldTooLarge { .. } => EXIT_INFEASIBLE,
        _ => EXIT_USAGE,
    }
}

fn run() -> Result<u8, (u8, String)> {
    let cli = Cli::try_parse().map_err(|e| {
        // clap renders --help and --version through the same error path
        if e.use_stderr() {
            (EXIT_USAGE, e.to_string())
        } else {
            print!("{e}");
            (EXIT_OK, String::new())
        }
    })?;
    let ceiling = ceiling_from_env().map_err(|msg| (EXIT_USAGE, msg))?;
    match cli.command {
        Command::Analyze {
            field,
            d_mode,
            methods,
            r_max,
            format,
            threads,
        } => {
            let cfg = AnalysisConfig {
                p: field.p,
                m: field.m,
                d_mode,
                methods,
                r_max,
                format,
                threads,
                ceiling,
            };
            let analysis = analyze(&cfg).map_err(|e| (exit_for(&e), e.to_string()))?;
            print!("{}", render_format(&analysis, format));
            if analysis.methods_agree() {
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_DISAGREEMENT)
            }
        }
        Command::Field { field, fibers } => {
            let report =
                field_report(field.p, field.m, fibers).map_err(|e| (exit_for(&e), e.to_string()))?;
            print!("{report}");
            Ok(EXIT_OK)
        }
        Command::Periods { field, n } => {
            let report =
                periods_report(field.p, field.m, n).map_err(|e| (exit_for(&e), e.to_string()))?;
            print!("{report}");
            Ok(EXIT_OK)
        }
        Command::Omega {
            field,
            m_order,
            a_log,
            b_log,
        } => {
            let report = omega_report(field.p, field.m, m_order, a_log, b_log)
                .map_err(|e| (exit_for(&e), e.to_string()))?;
            print!("{report}");
            Ok(EXIT_OK)
        }
        Command::Verify { suite } => {
            let results = run_suite(suite);
            print!("{}", render_results(&results));
            if suite_passes(&results) {
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_DISAGREEMENT)
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(code)
        }
    }
}
