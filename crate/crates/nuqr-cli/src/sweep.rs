//! Sweep engine: resolves a target state, walks a grid over phi, tau, or t
//! (or the (t, tau) plane), and evaluates the requested measures per cell.
//!
//! Cells are independent; with `threads > 1` the row range is split into
//! contiguous chunks evaluated on scoped threads and written back by index,
//! so the output is identical to the serial order.

use nuqr_core::{
    apply_channel, apply_correlated_dephasing, build_density_matrix, coherence_l1, negativity,
    steering, ChannelKind, DensityMatrix4, DephasingParams, MixingAngle, NoiseStrength,
    PhaseAngle, TimePoint,
};

use crate::error::Error;
use crate::registry::Registry;

/// Independent variable of a one-dimensional sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Phi,
    Tau,
    Time,
}

impl SweepVariable {
    pub fn column_name(&self) -> &'static str {
        match self {
            SweepVariable::Phi => "phi",
            SweepVariable::Tau => "tau",
            SweepVariable::Time => "t",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "phi" => Some(SweepVariable::Phi),
            "tau" => Some(SweepVariable::Tau),
            "t" => Some(SweepVariable::Time),
            _ => None,
        }
    }
}

/// One output column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureColumn {
    SteeringAb,
    SteeringBa,
    SteeringAsym,
    LogNegativity,
    CoherenceL1,
}

impl MeasureColumn {
    pub const ALL: [MeasureColumn; 5] = [
        MeasureColumn::SteeringAb,
        MeasureColumn::SteeringBa,
        MeasureColumn::SteeringAsym,
        MeasureColumn::LogNegativity,
        MeasureColumn::CoherenceL1,
    ];

    pub fn column_name(&self) -> &'static str {
        match self {
            MeasureColumn::SteeringAb => "steering_ab",
            MeasureColumn::SteeringBa => "steering_ba",
            MeasureColumn::SteeringAsym => "steering_asym",
            MeasureColumn::LogNegativity => "log_negativity",
            MeasureColumn::CoherenceL1 => "coherence_l1",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.column_name() == text)
    }
}

/// Inclusive evaluation grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self, Error> {
        if !start.is_finite() || !stop.is_finite() {
            return Err(Error::usage("grid bounds must be finite"));
        }
        if count < 2 {
            return Err(Error::usage("grid needs at least 2 points"));
        }
        if start >= stop {
            return Err(Error::usage(format!(
                "grid start {start} must be below stop {stop}"
            )));
        }
        Ok(Self { start, stop, count })
    }

    /// Parses `start:stop:count`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::usage(format!(
                "grid `{text}` must have the form start:stop:count"
            )));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| Error::usage(format!("malformed grid start `{}`", parts[0])))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| Error::usage(format!("malformed grid stop `{}`", parts[1])))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| Error::usage(format!("malformed grid count `{}`", parts[2])))?;
        Self::new(start, stop, count)
    }

    /// Grid points in ascending order; both endpoints are hit exactly.
    pub fn points(&self) -> Vec<f64> {
        (0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    self.stop
                } else {
                    self.start
                        + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
                }
            })
            .collect()
    }
}

/// Which state the sweep runs on: a registry entry or inline parameters,
/// with an optional direct phase.
#[derive(Debug, Clone, Default)]
pub struct SweepTarget {
    pub experiment: Option<String>,
    pub theta: Option<f64>,
    /// (dm2 [eV^2], baseline [km], energy [GeV]).
    pub kinematics: Option<(f64, f64, f64)>,
    pub phi: Option<f64>,
}

impl SweepTarget {
    pub fn experiment(name: impl Into<String>) -> Self {
        Self {
            experiment: Some(name.into()),
            ..Self::default()
        }
    }

    /// Resolves the mixing angle and, when determinable, the phase.
    pub fn resolve(&self, registry: &Registry) -> Result<(MixingAngle, Option<PhaseAngle>), Error> {
        if let Some(name) = &self.experiment {
            if self.theta.is_some() || self.kinematics.is_some() {
                return Err(Error::usage(
                    "--experiment conflicts with inline --theta/--dm2/--baseline/--energy",
                ));
            }
            let record = registry.get(name).ok_or_else(|| {
                Error::usage(format!("experiment `{name}` is not in the registry"))
            })?;
            let theta = record.mixing_angle()?;
            let phi = match self.phi {
                Some(value) => PhaseAngle::new(value)?,
                None => record.phase()?,
            };
            return Ok((theta, Some(phi)));
        }

        let theta_value = self
            .theta
            .ok_or_else(|| Error::usage("either --experiment or --theta is required"))?;
        let theta = MixingAngle::new(theta_value)?;
        let phi = match (self.phi, self.kinematics) {
            (Some(value), _) => Some(PhaseAngle::new(value)?),
            (None, Some((dm2, baseline, energy))) => {
                let kin = nuqr_core::OscillationKinematics::new(dm2, baseline, energy)?;
                Some(nuqr_core::oscillation_phase(&kin))
            }
            (None, None) => None,
        };
        Ok((theta, phi))
    }
}

/// A one-dimensional sweep request.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub target: SweepTarget,
    pub variable: SweepVariable,
    pub grid: GridSpec,
    pub channel: Option<ChannelKind>,
    pub tau_fixed: Option<f64>,
    pub t_fixed: Option<f64>,
    pub chi: Option<f64>,
    pub mu: Option<f64>,
    pub measures: Vec<MeasureColumn>,
    pub threads: usize,
}

impl SweepConfig {
    pub fn new(target: SweepTarget, variable: SweepVariable, grid: GridSpec) -> Self {
        Self {
            target,
            variable,
            grid,
            channel: None,
            tau_fixed: None,
            t_fixed: None,
            chi: None,
            mu: None,
            measures: MeasureColumn::ALL.to_vec(),
            threads: 1,
        }
    }
}

/// A (t, tau) density-map request.
#[derive(Debug, Clone)]
pub struct MapConfig {
    pub target: SweepTarget,
    pub channel: ChannelKind,
    pub t_grid: GridSpec,
    pub tau_grid: GridSpec,
    pub chi: f64,
    pub mu: f64,
    pub measures: Vec<MeasureColumn>,
    pub threads: usize,
}

/// One output row: the independent variable value(s) followed by the
/// requested measures.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub values: Vec<f64>,
}

/// Column names plus rows, in deterministic order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub columns: Vec<&'static str>,
    pub rows: Vec<ResultRow>,
}

fn dephasing_setting(
    t: Option<f64>,
    chi: Option<f64>,
    mu: Option<f64>,
) -> Result<Option<(TimePoint, DephasingParams)>, Error> {
    match (t, chi, mu) {
        (None, None, None) => Ok(None),
        (Some(t), Some(chi), Some(mu)) => Ok(Some((
            TimePoint::new(t)?,
            DephasingParams::new(chi, mu)?,
        ))),
        _ => Err(Error::usage(
            "dephasing needs --t, --chi, and --mu together",
        )),
    }
}

fn evolve(
    theta: MixingAngle,
    phi: PhaseAngle,
    channel: Option<(ChannelKind, NoiseStrength)>,
    dephasing: Option<(TimePoint, DephasingParams)>,
) -> DensityMatrix4 {
    let mut rho = build_density_matrix(theta, phi);
    if let Some((kind, tau)) = channel {
        rho = apply_channel(&rho, kind, tau);
    }
    if let Some((t, params)) = dephasing {
        rho = apply_correlated_dephasing(&rho, t, &params);
    }
    rho
}

fn measure_values(rho: &DensityMatrix4, measures: &[MeasureColumn]) -> Vec<f64> {
    let report = steering(rho).expect("pipeline states keep central support");
    measures
        .iter()
        .map(|m| match m {
            MeasureColumn::SteeringAb => report.s_ab,
            MeasureColumn::SteeringBa => report.s_ba,
            MeasureColumn::SteeringAsym => report.asymmetry,
            MeasureColumn::LogNegativity => negativity(rho),
            MeasureColumn::CoherenceL1 => coherence_l1(rho),
        })
        .collect()
}

/// Splits `count` row indices into contiguous chunks and evaluates them on
/// scoped threads; single-threaded when `threads == 1`. Assembly is by
/// index, so the result does not depend on the thread count.
fn compute_rows<F>(count: usize, threads: usize, cell: F) -> Vec<ResultRow>
where
    F: Fn(usize) -> ResultRow + Sync,
{
    if threads <= 1 || count <= 1 {
        return (0..count).map(cell).collect();
    }
    let chunk_size = count.div_ceil(threads);
    let mut rows: Vec<Option<ResultRow>> = vec![None; count];
    std::thread::scope(|scope| {
        for (chunk_index, chunk) in rows.chunks_mut(chunk_size).enumerate() {
            let cell = &cell;
            scope.spawn(move || {
                for (offset, slot) in chunk.iter_mut().enumerate() {
                    *slot = Some(cell(chunk_index * chunk_size + offset));
                }
            });
        }
    });
    rows.into_iter().map(|row| row.expect("all rows filled")).collect()
}

fn validate_measures(measures: &[MeasureColumn]) -> Result<(), Error> {
    if measures.is_empty() {
        return Err(Error::usage("at least one measure column is required"));
    }
    Ok(())
}

fn validate_threads(threads: usize) -> Result<(), Error> {
    if threads == 0 {
        return Err(Error::usage("--threads must be at least 1"));
    }
    Ok(())
}

/// Runs a one-dimensional sweep; rows come out in ascending grid order.
pub fn run_sweep(cfg: &SweepConfig, registry: &Registry) -> Result<SweepTable, Error> {
    validate_measures(&cfg.measures)?;
    validate_threads(cfg.threads)?;
    let (theta, phi_base) = cfg.target.resolve(registry)?;
    let points = cfg.grid.points();

    let mut columns = vec![cfg.variable.column_name()];
    columns.extend(cfg.measures.iter().map(|m| m.column_name()));

    let need_phi = cfg.variable != SweepVariable::Phi;
    let phi_fixed = if need_phi {
        Some(phi_base.ok_or_else(|| {
            Error::usage("fixed phase required: give --phi or kinematic parameters")
        })?)
    } else {
        None
    };

    let fixed_channel = match cfg.variable {
        SweepVariable::Tau => {
            let kind = cfg
                .channel
                .ok_or_else(|| Error::usage("--channel is required for a tau sweep"))?;
            if cfg.tau_fixed.is_some() {
                return Err(Error::usage("--tau conflicts with sweeping tau"));
            }
            ChannelSetting::Swept(kind)
        }
        SweepVariable::Time => {
            let kind = cfg
                .channel
                .ok_or_else(|| Error::usage("--channel is required for a t sweep"))?;
            let tau = cfg
                .tau_fixed
                .ok_or_else(|| Error::usage("--tau is required for a t sweep"))?;
            ChannelSetting::Fixed(Some((kind, NoiseStrength::new(tau)?)))
        }
        SweepVariable::Phi => match (cfg.channel, cfg.tau_fixed) {
            (None, None) => ChannelSetting::Fixed(None),
            (Some(kind), Some(tau)) => {
                ChannelSetting::Fixed(Some((kind, NoiseStrength::new(tau)?)))
            }
            (Some(_), None) => return Err(Error::usage("--channel requires --tau")),
            (None, Some(_)) => return Err(Error::usage("--tau requires --channel")),
        },
    };

    let fixed_dephasing = match cfg.variable {
        SweepVariable::Time => {
            if cfg.t_fixed.is_some() {
                return Err(Error::usage("--t conflicts with sweeping t"));
            }
            let chi = cfg
                .chi
                .ok_or_else(|| Error::usage("--chi is required for a t sweep"))?;
            let mu = cfg
                .mu
                .ok_or_else(|| Error::usage("--mu is required for a t sweep"))?;
            DephasingSetting::Swept(DephasingParams::new(chi, mu)?)
        }
        _ => DephasingSetting::Fixed(dephasing_setting(cfg.t_fixed, cfg.chi, cfg.mu)?),
    };

    // Pre-validate every grid point so the parallel cells cannot fail.
    let coordinates: Vec<Coordinate> = points
        .iter()
        .map(|&v| -> Result<Coordinate, Error> {
            Ok(match cfg.variable {
                SweepVariable::Phi => Coordinate::Phi(PhaseAngle::new(v)?),
                SweepVariable::Tau => Coordinate::Tau(NoiseStrength::new(v)?),
                SweepVariable::Time => Coordinate::Time(TimePoint::new(v)?),
            })
        })
        .collect::<Result<_, _>>()?;

    let measures = cfg.measures.clone();
    let cell = |index: usize| -> ResultRow {
        let (value, state) = match coordinates[index] {
            Coordinate::Phi(phi) => {
                let channel = fixed_channel.fixed();
                let dephasing = fixed_dephasing.fixed();
                (phi.radians(), evolve(theta, phi, channel, dephasing))
            }
            Coordinate::Tau(tau) => {
                let kind = fixed_channel.swept_kind();
                let dephasing = fixed_dephasing.fixed();
                (
                    tau.value(),
                    evolve(theta, phi_fixed.unwrap(), Some((kind, tau)), dephasing),
                )
            }
            Coordinate::Time(t) => {
                let channel = fixed_channel.fixed();
                let params = fixed_dephasing.swept_params();
                (
                    t.value(),
                    evolve(theta, phi_fixed.unwrap(), channel, Some((t, params))),
                )
            }
        };
        let mut values = vec![value];
        values.extend(measure_values(&state, &measures));
        ResultRow { values }
    };

    let rows = compute_rows(coordinates.len(), cfg.threads, cell);
    Ok(SweepTable { columns, rows })
}

/// Runs a (t, tau) map in row-major order: t is the outer loop, tau the
/// inner one.
pub fn run_density_map(cfg: &MapConfig, registry: &Registry) -> Result<SweepTable, Error> {
    validate_measures(&cfg.measures)?;
    validate_threads(cfg.threads)?;
    let (theta, phi_base) = cfg.target.resolve(registry)?;
    let phi = phi_base.ok_or_else(|| {
        Error::usage("fixed phase required: give --phi or kinematic parameters")
    })?;
    let params = DephasingParams::new(cfg.chi, cfg.mu)?;

    let times: Vec<TimePoint> = cfg
        .t_grid
        .points()
        .into_iter()
        .map(TimePoint::new)
        .collect::<Result<_, _>>()?;
    let taus: Vec<NoiseStrength> = cfg
        .tau_grid
        .points()
        .into_iter()
        .map(NoiseStrength::new)
        .collect::<Result<_, _>>()?;

    let mut columns = vec!["t", "tau"];
    columns.extend(cfg.measures.iter().map(|m| m.column_name()));

    let tau_count = taus.len();
    let measures = cfg.measures.clone();
    let cell = |index: usize| -> ResultRow {
        let t = times[index / tau_count];
        let tau = taus[index % tau_count];
        let state = evolve(theta, phi, Some((cfg.channel, tau)), Some((t, params)));
        let mut values = vec![t.value(), tau.value()];
        values.extend(measure_values(&state, &measures));
        ResultRow { values }
    };

    let rows = compute_rows(times.len() * tau_count, cfg.threads, cell);
    Ok(SweepTable { columns, rows })
}

/// Evaluates the measures once, at a fully specified point.
pub fn single_point(
    target: &SweepTarget,
    registry: &Registry,
    channel: Option<(ChannelKind, f64)>,
    t: Option<f64>,
    chi: Option<f64>,
    mu: Option<f64>,
    measures: &[MeasureColumn],
) -> Result<SweepTable, Error> {
    validate_measures(measures)?;
    let (theta, phi_base) = target.resolve(registry)?;
    let phi = phi_base.ok_or_else(|| {
        Error::usage("fixed phase required: give --phi or kinematic parameters")
    })?;
    let channel = match channel {
        Some((kind, tau)) => Some((kind, NoiseStrength::new(tau)?)),
        None => None,
    };
    let dephasing = dephasing_setting(t, chi, mu)?;
    let state = evolve(theta, phi, channel, dephasing);
    Ok(SweepTable {
        columns: measures.iter().map(|m| m.column_name()).collect(),
        rows: vec![ResultRow {
            values: measure_values(&state, measures),
        }],
    })
}

#[derive(Clone, Copy)]
enum Coordinate {
    Phi(PhaseAngle),
    Tau(NoiseStrength),
    Time(TimePoint),
}

#[derive(Clone, Copy)]
enum ChannelSetting {
    Fixed(Option<(ChannelKind, NoiseStrength)>),
    Swept(ChannelKind),
}

impl ChannelSetting {
    fn fixed(&self) -> Option<(ChannelKind, NoiseStrength)> {
        match self {
            ChannelSetting::Fixed(setting) => *setting,
            ChannelSetting::Swept(_) => unreachable!("channel is swept"),
        }
    }

    fn swept_kind(&self) -> ChannelKind {
        match self {
            ChannelSetting::Swept(kind) => *kind,
            ChannelSetting::Fixed(_) => unreachable!("channel is fixed"),
        }
    }
}

#[derive(Clone, Copy)]
enum DephasingSetting {
    Fixed(Option<(TimePoint, DephasingParams)>),
    Swept(DephasingParams),
}

impl DephasingSetting {
    fn fixed(&self) -> Option<(TimePoint, DephasingParams)> {
        match self {
            DephasingSetting::Fixed(setting) => *setting,
            DephasingSetting::Swept(_) => unreachable!("dephasing time is swept"),
        }
    }

    fn swept_params(&self) -> DephasingParams {
        match self {
            DephasingSetting::Swept(params) => *params,
            DephasingSetting::Fixed(_) => unreachable!("dephasing is fixed"),
        }
    }
}
