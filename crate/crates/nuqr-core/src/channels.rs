//! Amplitude-damping, phase-flip, and phase-damping channels acting
//! symmetrically on both qubits, each available as a closed-form update and
//! as a generic Kraus product map.
//!
//! The amplitude-damping populations follow the generic Kraus map:
//! `alpha_22 = (1 - tau) rho_22` and `alpha_33 = (1 - tau) rho_33`
//! independently. Any variant that sets `alpha_22 = alpha_33` breaks trace
//! preservation whenever the two populations differ; the dual-path tests pin
//! this down.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::math;
use crate::matrix::{Matrix2, Matrix4, SIGMA_Z};
use crate::state::DensityMatrix4;

/// Completeness tolerance for externally supplied Kraus sets.
const COMPLETENESS_TOL: f64 = 1e-12;

/// The three decoherence channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    AmplitudeDamping,
    PhaseFlip,
    PhaseDamping,
}

/// Channel strength tau in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseStrength {
    tau: f64,
}

impl NoiseStrength {
    pub fn new(tau: f64) -> Result<Self, Error> {
        if !tau.is_finite() {
            return Err(Error::NonFinite { name: "tau" });
        }
        if !(0.0..=1.0).contains(&tau) {
            return Err(Error::OutOfRange {
                name: "tau",
                value: tau,
            });
        }
        Ok(Self { tau })
    }

    /// `tau = 1 - exp(-rate * time)` for callers that think in decay rates.
    pub fn from_decay(rate: f64, time: f64) -> Result<Self, Error> {
        if !rate.is_finite() || !time.is_finite() {
            return Err(Error::NonFinite { name: "rate * time" });
        }
        let exponent = rate * time;
        if exponent < 0.0 {
            return Err(Error::OutOfRange {
                name: "rate * time",
                value: exponent,
            });
        }
        Self::new(1.0 - math::exp(-exponent))
    }

    pub fn value(&self) -> f64 {
        self.tau
    }
}

/// A set of two-qubit Kraus operators satisfying the completeness condition
/// `sum K^dag K = I` within 1e-12.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    operators: Vec<Matrix4>,
}

impl KrausSet {
    pub fn new(operators: Vec<Matrix4>) -> Result<Self, Error> {
        let mut sum = Matrix4::zero();
        for k in &operators {
            sum = sum + k.conjugate_transpose() * *k;
        }
        let residual = sum.max_abs_diff(&Matrix4::identity());
        if residual > COMPLETENESS_TOL {
            return Err(Error::IncompleteKrausSet { residual });
        }
        Ok(Self { operators })
    }

    pub fn operators(&self) -> &[Matrix4] {
        &self.operators
    }
}

/// The four two-qubit operators `K_i (x) K_j` built from the single-qubit
/// pair of the chosen channel.
pub fn kraus_set(kind: ChannelKind, tau: NoiseStrength) -> KrausSet {
    let (k1, k2) = single_qubit_pair(kind, tau.tau);
    let pair = [k1, k2];
    let mut operators = Vec::with_capacity(4);
    for a in &pair {
        for b in &pair {
            operators.push(a.kron(b));
        }
    }
    KrausSet::new(operators).expect("product of a complete single-qubit pair is complete")
}

fn single_qubit_pair(kind: ChannelKind, tau: f64) -> (Matrix2, Matrix2) {
    let keep = math::sqrt(1.0 - tau);
    let flip = math::sqrt(tau);
    match kind {
        ChannelKind::AmplitudeDamping => {
            let k1 = Matrix2::diagonal(1.0, keep);
            let k2 = Matrix2::new([
                [Complex64::new(0.0, 0.0), Complex64::new(flip, 0.0)],
                [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
            ]);
            (k1, k2)
        }
        ChannelKind::PhaseFlip => (Matrix2::diagonal(flip, flip), SIGMA_Z.scale(keep)),
        ChannelKind::PhaseDamping => (Matrix2::diagonal(1.0, keep), Matrix2::diagonal(0.0, flip)),
    }
}

/// Closed-form channel action.
///
/// Phase flip scales the central coherence by `(1 - 2 tau)^2`, phase damping
/// by `(1 - tau)`, both leaving populations untouched. Amplitude damping
/// scales the coherence by `(1 - tau)` and drains population toward `|00>`:
/// `alpha_11 = rho_11 + tau (rho_22 + rho_33) + tau^2 rho_44`. States outside
/// the central-support family are routed through the generic Kraus map
/// instead.
pub fn apply_channel(
    rho: &DensityMatrix4,
    kind: ChannelKind,
    tau: NoiseStrength,
) -> DensityMatrix4 {
    if rho.check_central_support().is_err() {
        return apply_kraus_generic(rho, &kraus_set(kind, tau));
    }
    let d = rho.populations();
    let c = rho.central_coherence();
    let t = tau.tau;
    match kind {
        ChannelKind::AmplitudeDamping => {
            let keep = 1.0 - t;
            DensityMatrix4::from_x_parts(
                [
                    d[0] + t * (d[1] + d[2]) + t * t * d[3],
                    keep * (d[1] + t * d[3]),
                    keep * (d[2] + t * d[3]),
                    keep * keep * d[3],
                ],
                c * keep,
            )
        }
        ChannelKind::PhaseFlip => {
            let f = (1.0 - 2.0 * t) * (1.0 - 2.0 * t);
            DensityMatrix4::from_x_parts(d, c * f)
        }
        ChannelKind::PhaseDamping => DensityMatrix4::from_x_parts(d, c * (1.0 - t)),
    }
}

/// Generic Kraus application `xi(rho) = sum K rho K^dag`.
pub fn apply_kraus_generic(rho: &DensityMatrix4, set: &KrausSet) -> DensityMatrix4 {
    let mut out = Matrix4::zero();
    for k in &set.operators {
        out = out + *k * *rho.matrix() * k.conjugate_transpose();
    }
    DensityMatrix4::from_matrix_unchecked(out)
}
