use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use nl4s_core::exponents::{
    self, compute_paper_exponents, gamma_pq, is_biharmonic_admissible, is_schrodinger_admissible,
    Exponent,
};
use nl4s_harness::config::{apply_override, ExperimentKind, RunConfig};
use nl4s_harness::experiments::{run_experiment, verify_run};

#[derive(Parser)]
#[command(
    name = "nl4s",
    version,
    about = "Spectral lab for the focusing mass-critical fourth-order NLS on periodic boxes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// TOML config file; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dotted-path overrides mirroring config keys, e.g. --set grid.n=2048.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// Output directory override.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Seed override.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve and certify the ground state.
    GroundState(RunArgs),
    /// Run a time evolution and emit its observable series.
    Evolve(RunArgs),
    /// Run one of the named experiments.
    Experiment {
        /// ground-state | almost-conservation | blowup-concentration |
        /// profile-extraction | gwp-below-threshold | sobolev-growth |
        /// scaling-invariance | lwp-window
        kind: String,
        #[command(flatten)]
        args: RunArgs,
    },
    /// Print the closed-form exponent report for (d_ana, gamma, delta).
    Exponents {
        #[arg(long)]
        d_ana: u32,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        #[arg(long)]
        json: bool,
    },
    /// Check a Lebesgue pair for Schrödinger/biharmonic admissibility.
    CheckPair {
        /// Time exponent, e.g. 16/5 or inf.
        #[arg(long)]
        p: String,
        /// Space exponent, e.g. 4.
        #[arg(long)]
        q: String,
        #[arg(long)]
        d_ana: u32,
    },
    /// Recompute artifact hashes against a run's manifest.
    Verify { run_dir: PathBuf },
}

fn load_config(kind: ExperimentKind, args: &RunArgs) -> anyhow::Result<RunConfig> {
    let base = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            let mut doc: toml::Value = text.parse().context("parsing config TOML")?;
            // the subcommand pins the kind
            apply_override(&mut doc, "kind", kind.as_str()).map_err(|e| anyhow!(e))?;
            doc
        }
        None => toml::Value::try_from(RunConfig::default_for(kind))?,
    };
    let mut doc = base;
    for set in &args.sets {
        let (k, v) = set
            .split_once('=')
            .ok_or_else(|| anyhow!("--set expects KEY=VALUE, got {set:?}"))?;
        apply_override(&mut doc, k.trim(), v.trim()).map_err(|e| anyhow!(e))?;
    }
    let mut cfg: RunConfig = doc.try_into().context("config does not match the schema")?;
    if let Some(out) = &args.output {
        cfg.output_dir = out.clone();
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn execute(kind: ExperimentKind, args: &RunArgs) -> anyhow::Result<bool> {
    let cfg = load_config(kind, args)?;
    let out = run_experiment(&cfg)?;
    println!(
        "{}: pass={} dir={}",
        kind.as_str(),
        out.manifest.pass,
        out.dir.display()
    );
    for a in &out.manifest.advisories {
        println!("  advisory: {a}");
    }
    for f in &out.manifest.failures {
        println!("  failure: {f}");
    }
    println!(
        "  outcome: {}",
        serde_json::to_string(&out.manifest.outcome)?
    );
    Ok(out.manifest.pass)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run() -> anyhow::Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::GroundState(args) => execute(ExperimentKind::GroundState, &args),
        Command::Evolve(args) => execute(ExperimentKind::Evolve, &args),
        Command::Experiment { kind, args } => {
            let kind = ExperimentKind::parse(&kind)
                .ok_or_else(|| anyhow!("unknown experiment kind {kind:?}"))?;
            execute(kind, &args)
        }
        Command::Exponents {
            d_ana,
            gamma,
            delta,
            json,
        } => {
            match compute_paper_exponents(d_ana, gamma, delta) {
                Ok(report) => {
                    if json {
                        println!("{}", serde_json::to_string_pretty(&report)?);
                    } else {
                        println!("d_ana = {d_ana}, gamma = {gamma}, delta = {delta}");
                        println!("  a(gamma)            = {:.12}", report.a_gamma);
                        println!("  a(d, gamma)         = {:.12}", report.a_dgamma);
                        println!("  gamma_lower_conc    = {:.12}", report.gamma_lower_conc);
                        println!("  gamma_lower_gwp     = {:.12}", report.gamma_lower_gwp);
                        println!("  N(T) exponent       = {:.12}", report.n_of_t_exponent);
                        println!("  regularity ceiling  = {}", report.regularity_ok);
                        println!("  positivity window   = {}", report.positivity_ok);
                        println!("  a(gamma) in (0,2)   = {}", report.a_gamma_in_range);
                    }
                    Ok(true)
                }
                Err(e) => {
                    // the domain error is informative on its own
                    println!("exponent report unavailable: {e}");
                    println!(
                        "  gamma_lower_conc = {:.12}",
                        exponents::gamma_lower_conc(d_ana)
                    );
                    println!(
                        "  gamma_lower_gwp  = {:.12}",
                        exponents::rational_to_f64(&exponents::gamma_lower_gwp(d_ana))
                    );
                    Ok(false)
                }
            }
        }
        Command::CheckPair { p, q, d_ana } => {
            let p: Exponent = p.parse().map_err(|e| anyhow!("{e}"))?;
            let q: Exponent = q.parse().map_err(|e| anyhow!("{e}"))?;
            let g = gamma_pq(&p, &q, d_ana).map_err(|e| anyhow!("{e}"))?;
            let s = is_schrodinger_admissible(&p, &q, d_ana);
            let b = is_biharmonic_admissible(&p, &q, d_ana);
            println!("(p, q) = ({p}, {q}), d = {d_ana}");
            println!("  gamma_pq             = {g}");
            println!("  schrodinger admissible = {s}");
            println!("  biharmonic admissible  = {b}");
            Ok(true)
        }
        Command::Verify { run_dir } => {
            let problems = verify_run(&run_dir)?;
            if problems.is_empty() {
                println!("ok: all artifact hashes match");
                Ok(true)
            } else {
                for p in &problems {
                    println!("mismatch: {p}");
                }
                bail!("{} artifact(s) failed verification", problems.len())
            }
        }
    }
}
