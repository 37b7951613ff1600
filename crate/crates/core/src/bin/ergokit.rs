use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ergokit::cli::{self, ScenarioInvocation};
use ergokit::scenario::{self, ScenarioConfig};
use ergokit::series::Format;
use ergokit::{selftest, Error, Result};

const SCENARIO_HELP: &str = "Scenarios (each takes --key value parameters, -o PATH, --format csv|json, --jobs N):
  tls-family         ergotropy split along a TLS isoergotropic family
  tls-channel        Kraus channel, SWAP realization and measurements on a family
  tls-dynamics       battery-auxiliary TLS exchange dynamics
  x-state            two-qubit X-state ergotropy, concurrence and local charges
  gaussian-family    displacement/squeezing split along a Gaussian family
  gaussian-dynamics  two-mode beam-splitter dynamics on an isoergotropic surface
  decay              thermal decay and half-lives (--type tls|gaussian)
  charging           optimal-power direct charging";

#[derive(Parser)]
#[command(name = "ergokit", version, about = "Isoergotropic states and operations for quantum batteries", after_help = SCENARIO_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario described by a JSON config file
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long, env = "ERGOKIT_JOBS")]
        jobs: Option<String>,
    },
    /// Run the oracle-equivalence checks
    Selftest {
        /// Shift the reference value of the named check
        #[arg(long)]
        perturb: Option<String>,
        /// List check names and exit
        #[arg(long)]
        list: bool,
    },
    #[command(external_subcommand)]
    Scenario(Vec<String>),
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn init_pool(jobs: Option<usize>) -> Result<()> {
    let jobs = match jobs {
        Some(n) => Some(n),
        None => std::env::var("ERGOKIT_JOBS").ok().map(|v| cli::parse_jobs(&v)).transpose()?,
    };
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Error::Config(e.to_string()))?;
    }
    Ok(())
}

fn emit(cfg: &ScenarioConfig) -> Result<()> {
    let text = scenario::execute(cfg)?;
    if cfg.output.is_none() {
        std::io::stdout().write_all(text.as_bytes())?;
    }
    Ok(())
}

fn selftest_cmd(perturb: Option<String>, list: bool) -> Result<()> {
    if list {
        for name in selftest::check_names() {
            println!("{name}");
        }
        return Ok(());
    }
    if let Some(p) = &perturb {
        if !selftest::check_names().contains(&p.as_str()) {
            return Err(Error::Config(format!("unknown check '{p}'")));
        }
    }
    for name in selftest::check_names() {
        let o = selftest::run_check(name, perturb.as_deref() == Some(name))?;
        println!("{} {:<32} deviation {:.3e} tolerance {:.1e} ({:.2}s)", if o.passed() { "pass" } else { "FAIL" }, o.name, o.deviation, o.tolerance, o.seconds);
        if !o.passed() {
            return Err(Error::CheckFailed(o.name.to_string()));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, output, format, jobs } => (|| {
            let jobs = jobs.map(|j| cli::parse_jobs(&j)).transpose()?;
            init_pool(jobs)?;
            let mut cfg = ScenarioConfig::load(&config)?;
            if output.is_some() {
                cfg.output = output;
            }
            if let Some(f) = format {
                cfg.format = Some(match f {
                    FormatArg::Csv => Format::Csv,
                    FormatArg::Json => Format::Json,
                });
            }
            emit(&cfg)
        })(),
        Command::Selftest { perturb, list } => selftest_cmd(perturb, list),
        Command::Scenario(args) => cli::parse_scenario_args(&args).and_then(|ScenarioInvocation { config, jobs }| {
            init_pool(jobs)?;
            emit(&config)
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
