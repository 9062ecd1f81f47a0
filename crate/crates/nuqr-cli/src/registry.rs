//! Experiment parameter registry backed by a flat sectioned text file.
//!
//! ```text
//! # comment
//! [KamLAND]
//! theta = 0.563943      # radians
//! dm2 = 7.9e-5          # eV^2
//! baseline = 180.0      # km
//! energy = 0.004        # GeV
//! phi = 4.5             # optional phase override, radians
//! ```

use nuqr_core::{oscillation_phase, MixingAngle, OscillationKinematics, PhaseAngle};

use crate::error::Error;

/// One named oscillation parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub name: String,
    /// Mixing angle, radians.
    pub theta: f64,
    /// Mass-squared splitting, eV^2.
    pub delta_m_squared: f64,
    /// Baseline, km.
    pub baseline: f64,
    /// Energy, GeV.
    pub energy: f64,
    /// When present, used verbatim instead of the phase computed from the
    /// kinematics.
    pub phi_override: Option<f64>,
}

impl ExperimentRecord {
    pub fn mixing_angle(&self) -> Result<MixingAngle, Error> {
        Ok(MixingAngle::new(self.theta)?)
    }

    /// The oscillation phase: the override when present, otherwise
    /// `PHASE_UNIT_FACTOR * |dm2| * L / E`.
    pub fn phase(&self) -> Result<PhaseAngle, Error> {
        match self.phi_override {
            Some(phi) => Ok(PhaseAngle::new(phi)?),
            None => {
                let kin =
                    OscillationKinematics::new(self.delta_m_squared, self.baseline, self.energy)?;
                Ok(oscillation_phase(&kin))
            }
        }
    }
}

/// An ordered collection of uniquely named experiments.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    records: Vec<ExperimentRecord>,
}

impl Registry {
    pub fn records(&self) -> &[ExperimentRecord] {
        &self.records
    }

    pub fn get(&self, name: &str) -> Option<&ExperimentRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Parses registry text; errors carry 1-based line numbers.
pub fn load_experiments(text: &str) -> Result<Registry, Error> {
    let mut records: Vec<ExperimentRecord> = Vec::new();
    let mut current: Option<PartialRecord> = None;

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }

        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| config_error(line_no, "unterminated section header"))?
                .trim();
            if name.is_empty() {
                return Err(config_error(line_no, "empty experiment name"));
            }
            if let Some(partial) = current.take() {
                records.push(partial.finish()?);
            }
            if records.iter().any(|r| r.name == name) {
                return Err(config_error(
                    line_no,
                    format!("duplicate experiment `{name}`"),
                ));
            }
            current = Some(PartialRecord::new(name.to_owned(), line_no));
            continue;
        }

        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| config_error(line_no, "expected `key = value`"))?;
        let key = key.trim();
        let value = value.trim();
        let partial = current
            .as_mut()
            .ok_or_else(|| config_error(line_no, "value outside of an experiment section"))?;
        let number: f64 = value.parse().map_err(|_| {
            config_error(line_no, format!("malformed number `{value}` for `{key}`"))
        })?;
        partial.set(key, number, line_no)?;
    }

    if let Some(partial) = current.take() {
        records.push(partial.finish()?);
    }

    Ok(Registry { records })
}

/// Reads and parses a registry file.
pub fn load_experiments_file(path: &std::path::Path) -> Result<Registry, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
        line: 0,
        message: format!("cannot read `{}`: {e}", path.display()),
    })?;
    load_experiments(&text)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

fn config_error(line: usize, message: impl Into<String>) -> Error {
    Error::Config {
        line,
        message: message.into(),
    }
}

struct PartialRecord {
    name: String,
    start_line: usize,
    theta: Option<f64>,
    dm2: Option<f64>,
    baseline: Option<f64>,
    energy: Option<f64>,
    phi: Option<f64>,
}

impl PartialRecord {
    fn new(name: String, start_line: usize) -> Self {
        Self {
            name,
            start_line,
            theta: None,
            dm2: None,
            baseline: None,
            energy: None,
            phi: None,
        }
    }

    fn set(&mut self, key: &str, value: f64, line_no: usize) -> Result<(), Error> {
        let slot = match key {
            "theta" => &mut self.theta,
            "dm2" => &mut self.dm2,
            "baseline" => &mut self.baseline,
            "energy" => &mut self.energy,
            "phi" => &mut self.phi,
            other => {
                return Err(config_error(line_no, format!("unknown key `{other}`")));
            }
        };
        if slot.is_some() {
            return Err(config_error(line_no, format!("duplicate key `{key}`")));
        }
        *slot = Some(value);
        Ok(())
    }

    fn finish(self) -> Result<ExperimentRecord, Error> {
        let missing = |field: &str| {
            config_error(
                self.start_line,
                format!("experiment `{}` is missing `{field}`", self.name),
            )
        };
        Ok(ExperimentRecord {
            theta: self.theta.ok_or_else(|| missing("theta"))?,
            delta_m_squared: self.dm2.ok_or_else(|| missing("dm2"))?,
            baseline: self.baseline.ok_or_else(|| missing("baseline"))?,
            energy: self.energy.ok_or_else(|| missing("energy"))?,
            phi_override: self.phi,
            name: self.name,
        })
    }
}
