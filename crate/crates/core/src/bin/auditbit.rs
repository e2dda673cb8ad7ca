use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use auditbit::adversary::{best_response_surface, argmax, write_surface_csv};
use auditbit::analytic::{expected_transmitted_bits, scheme_performance, Scheme};
use auditbit::clusternet::{aggregate_network, fc_fuse, hexdump, measure_overhead, parse_hex, ClusterReport};
use auditbit::model::{CheckedConfig, ExperimentConfig, ThresholdMode};
use auditbit::report::{sweep, write_sweep, SweepRow, SweepVar};
use auditbit::simcore::{fuse, run_experiment, run_trial};
use auditbit::{AnalysisError, ConfigError};

/// Audit-bit distributed detection experiments.
#[derive(Parser)]
#[command(name = "auditbit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form sweep of one attack parameter.
    Analyze {
        config: PathBuf,
        #[arg(long)]
        scheme: Scheme,
        #[arg(long)]
        sweep: SweepVar,
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 1.0)]
        to: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Monte Carlo run of every applicable scheme.
    Simulate {
        config: PathBuf,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        out: PathBuf,
        /// Schemes to run; defaults to all that apply.
        #[arg(long = "scheme")]
        schemes: Vec<Scheme>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Grid search for the attack that maximizes the fusion error.
    AttackOpt {
        config: PathBuf,
        #[arg(long)]
        scheme: Scheme,
        #[arg(long, default_value_t = 0.01)]
        grid_step: f64,
        /// Where to write the full error surface.
        #[arg(long)]
        surface: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Multi-cluster rounds: bit accounting and decision equivalence.
    ClusterSim {
        config: PathBuf,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Dump and decode one cluster report frame.
    Hexdump {
        file: PathBuf,
        /// The file holds hex text rather than raw bytes.
        #[arg(long)]
        text: bool,
    },
}

/// Command-line values take precedence over the configuration file.
#[derive(Args, Default)]
struct Overrides {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    clusters: Option<usize>,
    #[arg(long)]
    n_sensors: Option<usize>,
    #[arg(long, value_enum)]
    threshold_mode: Option<ModeArg>,
    #[arg(long)]
    alpha0: Option<f64>,
    #[arg(long)]
    p1: Option<f64>,
    #[arg(long)]
    p2: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Expected,
    Realized,
}

enum Failure {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::InvalidArgument(_) | AnalysisError::UnsupportedParameters { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn load(path: &Path, o: &Overrides) -> Result<CheckedConfig, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut cfg = ExperimentConfig::from_json(&text)?;
    let net = &mut cfg.network;
    if let Some(v) = o.seed {
        net.seed = v;
    }
    if let Some(v) = o.clusters {
        net.n_clusters = v;
    }
    if let Some(v) = o.n_sensors {
        net.n_sensors = v;
    }
    if let Some(m) = o.threshold_mode {
        net.threshold_mode = match m {
            ModeArg::Expected => ThresholdMode::Expected,
            ModeArg::Realized => ThresholdMode::Realized,
        };
    }
    let atk = &mut cfg.attack;
    if let Some(v) = o.alpha0 {
        atk.alpha0 = v;
    }
    if let Some(v) = o.p1 {
        atk.p1 = v;
    }
    if let Some(v) = o.p2 {
        atk.p2 = v;
    }
    Ok(cfg.validate()?)
}

fn create(path: &Path) -> Result<io::BufWriter<fs::File>, Failure> {
    let f = fs::File::create(path).map_err(|e| Failure::Io(format!("cannot create {}: {e}", path.display())))?;
    Ok(io::BufWriter::new(f))
}

fn sweep_values(from: f64, to: f64, step: f64) -> Result<Vec<f64>, Failure> {
    if !(step > 0.0) || !(from <= to) || !(0.0..=1.0).contains(&from) || !(0.0..=1.0).contains(&to) {
        return Err(Failure::Usage(format!("empty or invalid sweep range: from {from} to {to} step {step}")));
    }
    let n = ((to - from) / step + 1e-9).floor() as u64;
    Ok((0..=n).map(|k| ((from + k as f64 * step) * 1e12).round() / 1e12).collect())
}

fn default_schemes(cfg: &CheckedConfig) -> Vec<Scheme> {
    Scheme::ALL.into_iter().filter(|&s| s != Scheme::Tas || cfg.attack.is_legacy()).collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { config, scheme, sweep: var, from, to, step, out, overrides } => {
            let cfg = load(&config, &overrides)?;
            let values = sweep_values(from, to, step)?;
            let rows = sweep(scheme, &cfg.detection, cfg.attack, cfg.network.n_sensors, var, &values)?;
            write_sweep(create(&out)?, &rows)?;
            log::info!("{} rows written to {}", rows.len(), out.display());
        }
        Command::Simulate { config, trials, out, schemes, overrides } => {
            if trials == 0 {
                return Err(Failure::Usage("--trials must be at least 1".into()));
            }
            let cfg = load(&config, &overrides)?;
            let schemes = if schemes.is_empty() { default_schemes(&cfg) } else { schemes };
            let result = run_experiment(&cfg, &schemes, trials)?;
            let rows: Vec<SweepRow> = result
                .schemes
                .iter()
                .zip(&result.performance)
                .map(|((_, emp), perf)| SweepRow { attack: cfg.attack, perf: perf.clone(), empirical: Some(*emp) })
                .collect();
            write_sweep(create(&out)?, &rows)?;
        }
        Command::AttackOpt { config, scheme, grid_step, surface, overrides } => {
            let cfg = load(&config, &overrides)?;
            let points = best_response_surface(scheme, &cfg.detection, cfg.attack.alpha0, cfg.network.n_sensors, grid_step)?;
            let best = argmax(&points).ok_or_else(|| Failure::Numerical("no finite error on the grid".into()))?;
            if let Some(path) = surface {
                write_surface_csv(create(&path)?, "# auditbit-surface v1", &points)?;
            }
            let summary = json!({
                "scheme": scheme.name(),
                "alpha0": cfg.attack.alpha0,
                "grid_step": grid_step,
                "p1": best.p1,
                "p2": best.p2,
                "p_e": best.p_e,
            });
            println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
        }
        Command::ClusterSim { config, trials, out, overrides } => {
            if trials == 0 {
                return Err(Failure::Usage("--trials must be at least 1".into()));
            }
            let cfg = load(&config, &overrides)?;
            cluster_sim(&cfg, trials, &out)?;
        }
        Command::Hexdump { file, text } => {
            let raw = fs::read(&file).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
            let bytes = if text {
                parse_hex(&String::from_utf8_lossy(&raw)).map_err(Failure::Usage)?
            } else {
                raw
            };
            print!("{}", hexdump(&bytes));
            let report = ClusterReport::decode(&bytes).map_err(|e| Failure::Usage(e.to_string()))?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
    }
    Ok(())
}

fn cluster_sim(cfg: &CheckedConfig, trials: u64, out: &Path) -> Result<(), Failure> {
    let n_clusters = cfg.network.n_clusters;
    let perf = scheme_performance(Scheme::Ras, &cfg.detection, &cfg.attack, cfg.network.n_sensors)?;
    let mode = cfg.network.threshold_mode;
    let records: Vec<_> = (0..trials).map(|k| run_trial(cfg, k)).collect();
    let ledger = measure_overhead(&records, n_clusters);

    let mut w = create(out)?;
    writeln!(w, "# auditbit-overhead v1")?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["trial", "hypothesis", "ras_bits", "ras_bits_sensor_level", "header_bits", "tas_bits", "decision_single", "decision_clustered", "per_cluster_bits"])?;
    let mut identical = 0u64;
    for (t, round) in records.iter().zip(&ledger.rounds) {
        let single = fuse(&perf, t, mode);
        let clustered = fc_fuse(&aggregate_network(&t.groups, n_clusters), &perf, mode).decision;
        identical += (single == clustered) as u64;
        let per: Vec<String> = round.per_cluster.iter().map(u32::to_string).collect();
        csv.write_record([
            t.index.to_string(),
            format!("{:?}", t.hypothesis),
            round.ras_bits.to_string(),
            round.ras_bits_sensor_level.to_string(),
            round.header_bits.to_string(),
            ledger.tas_baseline().to_string(),
            format!("{single:?}"),
            format!("{clustered:?}"),
            per.join(";"),
        ])?;
    }
    csv.flush()?;

    let expected = expected_transmitted_bits(&cfg.detection, &cfg.attack, cfg.network.n_sensors)?;
    let summary = json!({
        "trials": trials,
        "clusters": n_clusters,
        "identical_decisions": identical,
        "mean_ras_bits": ledger.mean_ras_bits(),
        "standard_error": ledger.standard_error(),
        "expected_ras_bits": expected.ras_group_level,
        "mean_ras_bits_sensor_level": ledger.mean_ras_bits_sensor_level(),
        "expected_ras_bits_sensor_level": expected.ras_sensor_level,
        "tas_bits": ledger.tas_baseline(),
    });
    println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("numerical error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Io(m)) => {
            eprintln!("i/o error: {m}");
            ExitCode::from(1)
        }
    }
}
