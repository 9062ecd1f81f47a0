use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nuqr_cli::{
    emit, load_experiments_file, run_density_map, run_sweep, single_point, Error, GridSpec,
    MapConfig, MeasureColumn, Registry, SweepConfig, SweepTarget, SweepVariable,
};
use nuqr_core::ChannelKind;

/// Quantum-resource tables for the two-qubit mode-entangled state of
/// two-flavor oscillation: steering, negativity, and coherence under
/// amplitude-damping, phase-flip, phase-damping, and correlated dephasing
/// noise.
#[derive(Parser)]
#[command(name = "nuqr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the measures at a single parameter point.
    Measures(MeasuresArgs),
    /// Sweep phi, tau, or t and emit one row per grid point.
    Sweep(SweepArgs),
    /// Sweep the (t, tau) plane at fixed chi and mu.
    Map(MapArgs),
    /// Inspect the experiment registry.
    Experiments(ExperimentsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelFlag {
    /// Amplitude damping.
    Ad,
    /// Phase flip.
    Pf,
    /// Phase damping.
    Pd,
}

impl ChannelFlag {
    fn kind(self) -> ChannelKind {
        match self {
            ChannelFlag::Ad => ChannelKind::AmplitudeDamping,
            ChannelFlag::Pf => ChannelKind::PhaseFlip,
            ChannelFlag::Pd => ChannelKind::PhaseDamping,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariableFlag {
    Phi,
    Tau,
    T,
}

impl VariableFlag {
    fn variable(self) -> SweepVariable {
        match self {
            VariableFlag::Phi => SweepVariable::Phi,
            VariableFlag::Tau => SweepVariable::Tau,
            VariableFlag::T => SweepVariable::Time,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatFlag {
    Csv,
    Json,
}

#[derive(Args)]
struct StateArgs {
    /// Named experiment from the registry.
    #[arg(long)]
    experiment: Option<String>,
    /// Mixing angle in radians (inline alternative to --experiment).
    #[arg(long)]
    theta: Option<f64>,
    /// Mass-squared splitting in eV^2 (goes with --baseline and --energy).
    #[arg(long)]
    dm2: Option<f64>,
    /// Baseline in km.
    #[arg(long)]
    baseline: Option<f64>,
    /// Neutrino energy in GeV.
    #[arg(long)]
    energy: Option<f64>,
    /// Oscillation phase in radians; overrides any computed phase.
    #[arg(long)]
    phi: Option<f64>,
    /// Registry file.
    #[arg(long, default_value = "experiments.conf")]
    config: PathBuf,
}

impl StateArgs {
    fn target(&self) -> Result<SweepTarget, Error> {
        let kinematics = match (self.dm2, self.baseline, self.energy) {
            (None, None, None) => None,
            (Some(dm2), Some(baseline), Some(energy)) => Some((dm2, baseline, energy)),
            _ => {
                return Err(Error::usage(
                    "--dm2, --baseline, and --energy must be given together",
                ))
            }
        };
        Ok(SweepTarget {
            experiment: self.experiment.clone(),
            theta: self.theta,
            kinematics,
            phi: self.phi,
        })
    }

    /// The registry file is only read when an experiment is actually named.
    fn registry(&self) -> Result<Registry, Error> {
        if self.experiment.is_some() {
            load_experiments_file(&self.config)
        } else {
            Ok(Registry::default())
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatFlag::Csv)]
    format: FormatFlag,
    /// Output file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MeasuresArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Decoherence channel.
    #[arg(long, value_enum)]
    channel: Option<ChannelFlag>,
    /// Channel strength in [0, 1]; requires --channel.
    #[arg(long)]
    tau: Option<f64>,
    /// Dephasing time (with --chi and --mu).
    #[arg(long)]
    t: Option<f64>,
    /// Environmental correlation time, > 0.
    #[arg(long)]
    chi: Option<f64>,
    /// Classical correlation strength in [0, 1].
    #[arg(long)]
    mu: Option<f64>,
    /// Comma-separated measure columns (default: all five).
    #[arg(long, value_delimiter = ',')]
    measures: Vec<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Swept variable.
    #[arg(long, value_enum)]
    variable: VariableFlag,
    /// Grid as start:stop:count.
    #[arg(long)]
    grid: String,
    /// Decoherence channel (required when sweeping tau or t).
    #[arg(long, value_enum)]
    channel: Option<ChannelFlag>,
    /// Fixed channel strength in [0, 1].
    #[arg(long)]
    tau: Option<f64>,
    /// Fixed dephasing time.
    #[arg(long)]
    t: Option<f64>,
    /// Environmental correlation time, > 0.
    #[arg(long)]
    chi: Option<f64>,
    /// Classical correlation strength in [0, 1].
    #[arg(long)]
    mu: Option<f64>,
    /// Comma-separated measure columns (default: all five).
    #[arg(long, value_delimiter = ',')]
    measures: Vec<String>,
    /// Worker threads for grid evaluation; the output does not depend on it.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MapArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Decoherence channel.
    #[arg(long, value_enum)]
    channel: ChannelFlag,
    /// Time grid as start:stop:count (outer loop).
    #[arg(long = "t-grid")]
    t_grid: String,
    /// Strength grid as start:stop:count (inner loop).
    #[arg(long = "tau-grid")]
    tau_grid: String,
    /// Environmental correlation time, > 0.
    #[arg(long)]
    chi: f64,
    /// Classical correlation strength in [0, 1].
    #[arg(long)]
    mu: f64,
    /// Comma-separated measure columns (default: all five).
    #[arg(long, value_delimiter = ',')]
    measures: Vec<String>,
    /// Worker threads for grid evaluation; the output does not depend on it.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ExperimentsArgs {
    #[command(subcommand)]
    action: ExperimentsAction,
}

#[derive(Subcommand)]
enum ExperimentsAction {
    /// Print every registry entry with its derived oscillation phase.
    List {
        /// Registry file.
        #[arg(long, default_value = "experiments.conf")]
        config: PathBuf,
    },
}

fn parse_measures(raw: &[String]) -> Result<Vec<MeasureColumn>, Error> {
    if raw.is_empty() {
        return Ok(MeasureColumn::ALL.to_vec());
    }
    raw.iter()
        .map(|name| {
            MeasureColumn::parse(name).ok_or_else(|| {
                Error::usage(format!(
                    "unknown measure `{name}` (expected one of steering_ab, steering_ba, \
                     steering_asym, log_negativity, coherence_l1)"
                ))
            })
        })
        .collect()
}

fn write_table(table: &nuqr_cli::SweepTable, output: &OutputArgs) -> Result<(), Error> {
    let text = match output.format {
        FormatFlag::Csv => emit::emit_csv(table)?,
        FormatFlag::Json => emit::emit_json(table)?,
    };
    match &output.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Measures(args) => {
            let registry = args.state.registry()?;
            let target = args.state.target()?;
            let channel = match (args.channel, args.tau) {
                (None, None) => None,
                (Some(flag), Some(tau)) => Some((flag.kind(), tau)),
                (Some(_), None) => return Err(Error::usage("--channel requires --tau")),
                (None, Some(_)) => return Err(Error::usage("--tau requires --channel")),
            };
            let measures = parse_measures(&args.measures)?;
            let table = single_point(
                &target, &registry, channel, args.t, args.chi, args.mu, &measures,
            )?;
            write_table(&table, &args.output)
        }
        Command::Sweep(args) => {
            let registry = args.state.registry()?;
            let mut cfg = SweepConfig::new(
                args.state.target()?,
                args.variable.variable(),
                GridSpec::parse(&args.grid)?,
            );
            cfg.channel = args.channel.map(ChannelFlag::kind);
            cfg.tau_fixed = args.tau;
            cfg.t_fixed = args.t;
            cfg.chi = args.chi;
            cfg.mu = args.mu;
            cfg.measures = parse_measures(&args.measures)?;
            cfg.threads = args.threads;
            let table = run_sweep(&cfg, &registry)?;
            write_table(&table, &args.output)
        }
        Command::Map(args) => {
            let registry = args.state.registry()?;
            let cfg = MapConfig {
                target: args.state.target()?,
                channel: args.channel.kind(),
                t_grid: GridSpec::parse(&args.t_grid)?,
                tau_grid: GridSpec::parse(&args.tau_grid)?,
                chi: args.chi,
                mu: args.mu,
                measures: parse_measures(&args.measures)?,
                threads: args.threads,
            };
            let table = run_density_map(&cfg, &registry)?;
            write_table(&table, &args.output)
        }
        Command::Experiments(args) => match args.action {
            ExperimentsAction::List { config } => {
                let registry = load_experiments_file(&config)?;
                let mut out = String::new();
                for record in registry.records() {
                    let phase = record.phase()?;
                    out.push_str(&format!(
                        "{}  theta={} dm2={} baseline={} energy={} phi={}{}\n",
                        record.name,
                        record.theta,
                        record.delta_m_squared,
                        record.baseline,
                        record.energy,
                        phase.radians(),
                        if record.phi_override.is_some() {
                            " (override)"
                        } else {
                            ""
                        },
                    ));
                }
                std::io::stdout().write_all(out.as_bytes())?;
                Ok(())
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            error.exit_code()
        }
    }
}
