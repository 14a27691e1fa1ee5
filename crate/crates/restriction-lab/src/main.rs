//! Experiment harness for the circle extension laboratory.
//!
//! Every subcommand runs one reproducible experiment, prints a PASS/FAIL
//! line per named check, and writes `results.json` plus CSV plot data to
//! the output directory. Exit status: 0 when every check passes, 1 on a
//! failed check or a computation error, 2 on a usage error.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::{LabConfig, UsageError};
use crate::output::OutDir;

#[derive(Parser)]
#[command(
    name = "restriction-lab",
    version,
    about = "Numerical laboratory for extension estimates on the unit circle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Configuration file of `key = value` lines (`#` comments allowed).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Output directory; overrides RESTRICTION_LAB_OUT and the `out.dir` key.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Override a configuration key, e.g. `--set grid.n=512`. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Circle sample count (shorthand for --set grid.n=N).
    #[arg(long, global = true, value_name = "N")]
    grid_n: Option<usize>,

    /// Plane nodes along x (shorthand for --set grid.nx=N).
    #[arg(long, global = true, value_name = "N")]
    grid_nx: Option<usize>,

    /// Plane nodes along t (shorthand for --set grid.nt=N).
    #[arg(long, global = true, value_name = "N")]
    grid_nt: Option<usize>,

    /// Half-width of the x window (shorthand for --set grid.x=X).
    #[arg(long, global = true, value_name = "X")]
    grid_x: Option<f64>,

    /// Half-width of the t window (shorthand for --set grid.t=T).
    #[arg(long, global = true, value_name = "T")]
    grid_t: Option<f64>,

    /// Resolution multiplier for convergence studies.
    #[arg(long, global = true, value_name = "S")]
    grid_scale: Option<f64>,

    /// Iteration budget for the fixed-point searches.
    #[arg(long, global = true, value_name = "N")]
    max_iter: Option<usize>,

    /// Plateau tolerance for the fixed-point searches.
    #[arg(long, global = true, value_name = "EPS")]
    tolerance: Option<f64>,

    /// Seed for every randomized start.
    #[arg(long, global = true, value_name = "SEED")]
    seed: Option<u64>,

    /// Experiment label echoed into reports.
    #[arg(long, global = true, value_name = "NAME")]
    name: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Maximize the six-angle interaction functional and certify the argmax.
    GammaMax,
    /// Enumerate the signed-permutation symmetry group and its projections.
    Group,
    /// First variation of the extension norm at the Gaussian profile.
    Perturbation,
    /// Measure the Plancherel constant and compare trilinear routes.
    Plancherel,
    /// Antipodal symmetrization: monotonicity, idempotence, norm invariance.
    Symmetrize,
    /// Greedy cap decomposition of a planted two-bump density.
    Decompose,
    /// Interaction decay for separated and nested cap pairs.
    CapInteraction,
    /// Small-cap rescaling identity and the parabolic comparison gap.
    Smallcap,
    /// Multi-start fixed-point search for the sharp circle constant.
    Search,
    /// Strict comparison of the circle constant against the lifted parabola.
    Compare,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::GammaMax => "gamma-max",
            Command::Group => "group",
            Command::Perturbation => "perturbation",
            Command::Plancherel => "plancherel",
            Command::Symmetrize => "symmetrize",
            Command::Decompose => "decompose",
            Command::CapInteraction => "cap-interaction",
            Command::Smallcap => "smallcap",
            Command::Search => "search",
            Command::Compare => "compare",
        }
    }
}

/// Builds the effective configuration: defaults, then the file, then `--set`
/// pairs, then the dedicated flags.
fn effective_config(cli: &Cli) -> anyhow::Result<LabConfig> {
    let mut cfg = match &cli.config {
        Some(path) => LabConfig::load(path)?,
        None => LabConfig::default(),
    };
    for pair in &cli.set {
        cfg.set(pair)?;
    }
    if let Some(v) = cli.grid_n {
        cfg.override_with("grid.n", v);
    }
    if let Some(v) = cli.grid_nx {
        cfg.override_with("grid.nx", v);
    }
    if let Some(v) = cli.grid_nt {
        cfg.override_with("grid.nt", v);
    }
    if let Some(v) = cli.grid_x {
        cfg.override_with("grid.x", v);
    }
    if let Some(v) = cli.grid_t {
        cfg.override_with("grid.t", v);
    }
    if let Some(v) = cli.grid_scale {
        cfg.override_with("grid.scale", v);
    }
    if let Some(v) = cli.max_iter {
        cfg.override_with("search.max_iter", v);
    }
    if let Some(v) = cli.tolerance {
        cfg.override_with("search.tolerance", v);
    }
    if let Some(v) = cli.seed {
        cfg.override_with("search.seed", v);
    }
    if let Some(v) = &cli.name {
        cfg.override_with("name", v.clone());
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let cfg = effective_config(cli)?;
    let outcome = match cli.command {
        Command::GammaMax => commands::gamma_max(&cfg)?,
        Command::Group => commands::group(&cfg)?,
        Command::Perturbation => commands::perturbation(&cfg)?,
        Command::Plancherel => commands::plancherel(&cfg)?,
        Command::Symmetrize => commands::symmetrize(&cfg)?,
        Command::Decompose => commands::decompose_cmd(&cfg)?,
        Command::CapInteraction => commands::cap_interaction(&cfg)?,
        Command::Smallcap => commands::smallcap(&cfg)?,
        Command::Search => commands::search(&cfg)?,
        Command::Compare => commands::compare(&cfg)?,
    };

    for check in &outcome.checks {
        let verdict = if check.pass { "PASS" } else { "FAIL" };
        println!("[{verdict}] {}: {}", check.name, check.detail);
    }
    let out_dir = OutDir::resolve(cli.out.as_deref(), &cfg)?;
    for path in out_dir.write(cli.command.name(), &cfg, &outcome)? {
        println!("wrote {}", path.display());
    }
    Ok(outcome.pass())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            if let Some(usage) = err.downcast_ref::<UsageError>() {
                eprintln!("usage error: {usage}");
                ExitCode::from(2)
            } else {
                eprintln!("error: {err:#}");
                ExitCode::from(1)
            }
        }
    }
}
