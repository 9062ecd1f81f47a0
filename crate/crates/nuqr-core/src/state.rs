//! Construction of the two-qubit mode-entangled state of two-flavor
//! oscillation.
//!
//! Conventions used by every module in this crate:
//!
//! * Basis ordering is `{|00>, |01>, |10>, |11>}`. The surviving flavor mode
//!   occupies `|01>` and the converted mode `|10>`, so the noiseless state is
//!   `|psi> = u_s |01> + u_t |10>` and all population sits in the central
//!   2x2 block of the density matrix.
//! * A global phase is factored out of the amplitudes so that only the
//!   relative phase `2 phi` between the two mass eigenstates enters; the
//!   density matrix is invariant under that choice.
//! * `phi >= 0`: a sign flip of `phi` only conjugates the central coherence,
//!   which none of the measures in this crate distinguishes, so kinematics
//!   with a negative mass-squared splitting are folded onto `|dm2|`.

use num_complex::Complex64;

use crate::error::Error;
use crate::math;
use crate::matrix::Matrix4;
use crate::oracle;

/// hbar*c in eV*m (CODATA 2018: 197.3269804 MeV*fm).
const HBARC_EV_M: f64 = 1.973269804e-7;

/// Conversion factor for `phi = dm2[eV^2] * L[km] / (4 E[GeV])` evaluated in
/// mixed units: `1e3 / (4e9 * hbar*c[eV*m])`, approximately 1.2669327 per
/// (eV^2 km / GeV).
pub const PHASE_UNIT_FACTOR: f64 = 1.0e3 / (4.0e9 * HBARC_EV_M);

/// Mixing angle theta in radians, restricted to the physical range [0, pi/2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingAngle {
    theta: f64,
}

impl MixingAngle {
    pub fn new(theta: f64) -> Result<Self, Error> {
        if !theta.is_finite() {
            return Err(Error::NonFinite { name: "theta" });
        }
        if !(0.0..=core::f64::consts::FRAC_PI_2).contains(&theta) {
            return Err(Error::OutOfRange {
                name: "theta",
                value: theta,
            });
        }
        Ok(Self { theta })
    }

    pub fn radians(&self) -> f64 {
        self.theta
    }
}

/// Kinematic inputs of the oscillation phase: mass-squared splitting in eV^2,
/// baseline in km, and energy in GeV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillationKinematics {
    delta_m_squared: f64,
    baseline: f64,
    energy: f64,
}

impl OscillationKinematics {
    /// The splitting may carry either sign; baseline and energy must be
    /// positive and finite.
    pub fn new(delta_m_squared: f64, baseline: f64, energy: f64) -> Result<Self, Error> {
        if !delta_m_squared.is_finite() {
            return Err(Error::NonFinite {
                name: "delta_m_squared",
            });
        }
        if !baseline.is_finite() {
            return Err(Error::NonFinite { name: "baseline" });
        }
        if !energy.is_finite() {
            return Err(Error::NonFinite { name: "energy" });
        }
        if baseline <= 0.0 {
            return Err(Error::OutOfRange {
                name: "baseline",
                value: baseline,
            });
        }
        if energy <= 0.0 {
            return Err(Error::OutOfRange {
                name: "energy",
                value: energy,
            });
        }
        Ok(Self {
            delta_m_squared,
            baseline,
            energy,
        })
    }

    pub fn delta_m_squared(&self) -> f64 {
        self.delta_m_squared
    }

    pub fn baseline(&self) -> f64 {
        self.baseline
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }
}

/// Oscillation phase phi in radians, non-negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseAngle {
    phi: f64,
}

impl PhaseAngle {
    pub fn new(phi: f64) -> Result<Self, Error> {
        if !phi.is_finite() {
            return Err(Error::NonFinite { name: "phi" });
        }
        if phi < 0.0 {
            return Err(Error::OutOfRange {
                name: "phi",
                value: phi,
            });
        }
        Ok(Self { phi })
    }

    pub fn radians(&self) -> f64 {
        self.phi
    }
}

/// The pair of complex survival/transition amplitudes of the evolved flavor
/// state, normalized to `|u_s|^2 + |u_t|^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlavorAmplitudes {
    pub survival: Complex64,
    pub transition: Complex64,
}

/// phi = `PHASE_UNIT_FACTOR * |dm2| * L / E`.
pub fn oscillation_phase(kin: &OscillationKinematics) -> PhaseAngle {
    let phi =
        PHASE_UNIT_FACTOR * math::abs(kin.delta_m_squared) * kin.baseline / kin.energy;
    PhaseAngle { phi }
}

/// Complex amplitudes of the evolved state, with the heavier mass phase
/// factored out:
///
/// ```text
/// u_s = cos^2(theta) + sin^2(theta) e^{2 i phi}
/// u_t = sin(theta) cos(theta) (e^{2 i phi} - 1)
/// ```
///
/// so `|u_s|^2 = 1 - sin^2(2 theta) sin^2(phi)`.
pub fn flavor_amplitudes(theta: MixingAngle, phi: PhaseAngle) -> FlavorAmplitudes {
    let (s, c) = (math::sin(theta.theta), math::cos(theta.theta));
    let rel = Complex64::new(math::cos(2.0 * phi.phi), math::sin(2.0 * phi.phi));
    FlavorAmplitudes {
        survival: Complex64::new(c * c, 0.0) + rel * (s * s),
        transition: (rel - Complex64::new(1.0, 0.0)) * (s * c),
    }
}

/// Survival probability `1 - sin^2(2 theta) sin^2(phi)`.
pub fn survival_probability(theta: MixingAngle, phi: PhaseAngle) -> f64 {
    1.0 - transition_probability(theta, phi)
}

/// Transition probability `sin^2(2 theta) sin^2(phi)`.
pub fn transition_probability(theta: MixingAngle, phi: PhaseAngle) -> f64 {
    let a = math::sin(2.0 * theta.theta) * math::sin(phi.phi);
    a * a
}

/// Two-qubit density matrix in the ordered basis `{|00>, |01>, |10>, |11>}`.
///
/// Every state this crate produces keeps its support on the diagonal plus the
/// central `(1,2)/(2,1)` coherence (zero-based indices); amplitude damping
/// additionally populates the `(0,0)` entry. [`DensityMatrix4::try_new`]
/// accepts any Hermitian, unit-trace, positive-semidefinite matrix, so
/// externally built states without that structure are representable too; the
/// closed-form measures reject them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4 {
    entries: Matrix4,
}

pub(crate) const HERMITICITY_TOL: f64 = 1e-12;
pub(crate) const TRACE_TOL: f64 = 1e-12;
pub(crate) const PSD_TOL: f64 = 1e-10;
pub(crate) const SUPPORT_TOL: f64 = 1e-12;

impl DensityMatrix4 {
    /// Validates Hermiticity (1e-12), unit trace (1e-12), and positive
    /// semidefiniteness (eigenvalues >= -1e-10).
    pub fn try_new(entries: Matrix4) -> Result<Self, Error> {
        let residual = entries.hermiticity_residual();
        if residual > HERMITICITY_TOL {
            return Err(Error::NotHermitian { residual });
        }
        let trace = entries.trace();
        if math::abs(trace.re - 1.0) > TRACE_TOL || math::abs(trace.im) > TRACE_TOL {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        let eigenvalues = oracle::hermitian_eigenvalues(&entries)?;
        if eigenvalues[0] < -PSD_TOL {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: eigenvalues[0],
            });
        }
        Ok(Self { entries })
    }

    /// Assembles a member of the supported family from its diagonal and the
    /// central coherence; the `(2,1)` entry is set to the exact conjugate.
    pub(crate) fn from_x_parts(diag: [f64; 4], coherence: Complex64) -> Self {
        let mut entries = Matrix4::diagonal(diag);
        entries[(1, 2)] = coherence;
        entries[(2, 1)] = coherence.conj();
        Self { entries }
    }

    /// Wraps a matrix produced by a trace-preserving map without re-running
    /// the spectral check.
    pub(crate) fn from_matrix_unchecked(entries: Matrix4) -> Self {
        debug_assert!(entries.hermiticity_residual() < 1e-9);
        debug_assert!((entries.trace().re - 1.0).abs() < 1e-9);
        Self { entries }
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    /// Diagonal entries (all real for a Hermitian matrix).
    pub fn populations(&self) -> [f64; 4] {
        [
            self.entries[(0, 0)].re,
            self.entries[(1, 1)].re,
            self.entries[(2, 2)].re,
            self.entries[(3, 3)].re,
        ]
    }

    /// The central coherence (row 1, column 2, zero-based).
    pub fn central_coherence(&self) -> Complex64 {
        self.entries[(1, 2)]
    }

    /// Checks that all off-diagonal support is confined to the central
    /// coherence, which is what the closed-form measures assume.
    pub fn check_central_support(&self) -> Result<(), Error> {
        for i in 0..4 {
            for j in 0..4 {
                if i == j || (i == 1 && j == 2) || (i == 2 && j == 1) {
                    continue;
                }
                if cmod_entry(self.entries[(i, j)]) > SUPPORT_TOL {
                    return Err(Error::UnsupportedStructure { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Re-runs the construction invariants; used by tests and callers that
    /// assemble matrices by hand.
    pub fn validate(&self) -> Result<(), Error> {
        Self::try_new(self.entries).map(|_| ())
    }
}

#[inline]
fn cmod_entry(z: Complex64) -> f64 {
    crate::matrix::cmod(z)
}

/// The noiseless mode-entangled state: populations
/// `rho_11 = 1 - sin^2(2 theta) sin^2(phi)`, `rho_22 = sin^2(2 theta) sin^2(phi)`
/// (zero-based), and central coherence
/// `sin(2 theta) [-cos(2 theta) sin^2(phi) - i sin(phi) cos(phi)]`.
pub fn build_density_matrix(theta: MixingAngle, phi: PhaseAngle) -> DensityMatrix4 {
    let s2t = math::sin(2.0 * theta.theta);
    let c2t = math::cos(2.0 * theta.theta);
    let sp = math::sin(phi.phi);
    let cp = math::cos(phi.phi);
    let transition = s2t * s2t * sp * sp;
    let coherence = Complex64::new(-s2t * c2t * sp * sp, -s2t * sp * cp);
    DensityMatrix4::from_x_parts([0.0, 1.0 - transition, transition, 0.0], coherence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

    // Frozen by an independent high-precision evaluation of
    // 1e3 / (4e9 * hbar*c) * dm2 * L / E before this module was written.
    const PHASE_FACTOR_GOLDEN: f64 = 1.266_932_679_419_849;
    const PHASE_GOLDEN: f64 = 3.420718234433592;

    #[test]
    fn phase_unit_factor_matches_golden() {
        assert!((PHASE_UNIT_FACTOR - PHASE_FACTOR_GOLDEN).abs() < 1e-12);
    }

    #[test]
    fn phase_zero_splitting() {
        let kin = OscillationKinematics::new(0.0, 180.0, 0.005).unwrap();
        assert_eq!(oscillation_phase(&kin).radians(), 0.0);
    }

    #[test]
    fn phase_depends_only_on_ratio() {
        let a = OscillationKinematics::new(7.5e-5, 180.0, 0.005).unwrap();
        let b = OscillationKinematics::new(7.5e-5, 360.0, 0.010).unwrap();
        assert_eq!(
            oscillation_phase(&a).radians(),
            oscillation_phase(&b).radians()
        );
    }

    #[test]
    fn phase_golden_value() {
        let kin = OscillationKinematics::new(7.5e-5, 180.0, 0.005).unwrap();
        assert!((oscillation_phase(&kin).radians() - PHASE_GOLDEN).abs() < 1e-12);
    }

    #[test]
    fn phase_folds_negative_splitting() {
        let pos = OscillationKinematics::new(2.4e-3, 295.0, 0.6).unwrap();
        let neg = OscillationKinematics::new(-2.4e-3, 295.0, 0.6).unwrap();
        assert_eq!(
            oscillation_phase(&pos).radians(),
            oscillation_phase(&neg).radians()
        );
    }

    #[test]
    fn kinematics_rejects_bad_inputs() {
        assert!(OscillationKinematics::new(1e-3, 0.0, 1.0).is_err());
        assert!(OscillationKinematics::new(1e-3, -5.0, 1.0).is_err());
        assert!(OscillationKinematics::new(1e-3, 5.0, 0.0).is_err());
        assert!(OscillationKinematics::new(f64::NAN, 5.0, 1.0).is_err());
        assert!(OscillationKinematics::new(1e-3, 5.0, f64::INFINITY).is_err());
    }

    #[test]
    fn mixing_angle_range() {
        assert!(MixingAngle::new(-0.1).is_err());
        assert!(MixingAngle::new(FRAC_PI_2 + 0.1).is_err());
        assert!(MixingAngle::new(FRAC_PI_4).is_ok());
    }

    #[test]
    fn amplitudes_no_mixing() {
        let amps = flavor_amplitudes(
            MixingAngle::new(0.0).unwrap(),
            PhaseAngle::new(1.3).unwrap(),
        );
        assert!((amps.survival.norm_sqr() - 1.0).abs() < 1e-15);
        assert!(amps.transition.norm_sqr() < 1e-30);
    }

    #[test]
    fn amplitudes_zero_baseline() {
        let amps = flavor_amplitudes(
            MixingAngle::new(0.7).unwrap(),
            PhaseAngle::new(0.0).unwrap(),
        );
        assert_eq!(amps.survival, Complex64::new(1.0, 0.0));
        assert_eq!(amps.transition, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn amplitudes_balanced_point() {
        let amps = flavor_amplitudes(
            MixingAngle::new(FRAC_PI_4).unwrap(),
            PhaseAngle::new(FRAC_PI_4).unwrap(),
        );
        assert!((amps.survival.norm_sqr() - 0.5).abs() < 1e-14);
        assert!((amps.transition.norm_sqr() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn density_matrix_balanced_point() {
        let rho = build_density_matrix(
            MixingAngle::new(FRAC_PI_4).unwrap(),
            PhaseAngle::new(FRAC_PI_4).unwrap(),
        );
        let d = rho.populations();
        assert!((d[1] - 0.5).abs() < 1e-14);
        assert!((d[2] - 0.5).abs() < 1e-14);
        let c = rho.central_coherence();
        assert!(c.re.abs() < 1e-14);
        assert!((c.im + 0.5).abs() < 1e-14);
    }

    #[test]
    fn density_matrix_initial_flavor_state() {
        let rho = build_density_matrix(
            MixingAngle::new(0.9).unwrap(),
            PhaseAngle::new(0.0).unwrap(),
        );
        assert_eq!(rho.populations(), [0.0, 1.0, 0.0, 0.0]);
        assert_eq!(rho.central_coherence(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn density_matrix_bell_point_has_real_coherence() {
        let rho = build_density_matrix(
            MixingAngle::new(FRAC_PI_8).unwrap(),
            PhaseAngle::new(FRAC_PI_2).unwrap(),
        );
        let d = rho.populations();
        assert!((d[1] - 0.5).abs() < 1e-14);
        assert!((d[2] - 0.5).abs() < 1e-14);
        let c = rho.central_coherence();
        assert!((c.re + 0.5).abs() < 1e-14);
        assert!(c.im.abs() < 1e-14);
    }

    #[test]
    fn probabilities() {
        let t8 = MixingAngle::new(FRAC_PI_8).unwrap();
        let t4 = MixingAngle::new(FRAC_PI_4).unwrap();
        let p2 = PhaseAngle::new(FRAC_PI_2).unwrap();
        assert!((transition_probability(t4, p2) - 1.0).abs() < 1e-14);
        assert!(survival_probability(t4, p2).abs() < 1e-14);
        assert!((survival_probability(t8, p2) - 0.5).abs() < 1e-14);
        assert!((transition_probability(t8, p2) - 0.5).abs() < 1e-14);
        let any = PhaseAngle::new(2.2).unwrap();
        assert_eq!(survival_probability(MixingAngle::new(0.0).unwrap(), any), 1.0);
    }

    #[test]
    fn probabilities_sum_to_one() {
        let theta = MixingAngle::new(0.61).unwrap();
        let phi = PhaseAngle::new(2.9).unwrap();
        let sum = survival_probability(theta, phi) + transition_probability(theta, phi);
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn try_new_rejects_non_hermitian() {
        let mut m = Matrix4::diagonal([0.0, 0.5, 0.5, 0.0]);
        m[(1, 2)] = Complex64::new(0.3, 0.0);
        m[(2, 1)] = Complex64::new(0.1, 0.0);
        assert!(matches!(
            DensityMatrix4::try_new(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn try_new_rejects_bad_trace() {
        let m = Matrix4::diagonal([0.0, 0.6, 0.5, 0.0]);
        assert!(matches!(
            DensityMatrix4::try_new(m),
            Err(Error::TraceNotOne { .. })
        ));
    }

    #[test]
    fn try_new_rejects_negative_state() {
        // Central block [[0.5, 0.6], [0.6, 0.5]] has eigenvalue -0.1.
        let mut m = Matrix4::diagonal([0.0, 0.5, 0.5, 0.0]);
        m[(1, 2)] = Complex64::new(0.6, 0.0);
        m[(2, 1)] = Complex64::new(0.6, 0.0);
        assert!(matches!(
            DensityMatrix4::try_new(m),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn support_check_flags_stray_entries() {
        let mut m = Matrix4::diagonal([0.2, 0.4, 0.2, 0.2]);
        m[(0, 3)] = Complex64::new(0.1, 0.0);
        m[(3, 0)] = Complex64::new(0.1, 0.0);
        let rho = DensityMatrix4::try_new(m).unwrap();
        assert!(matches!(
            rho.check_central_support(),
            Err(Error::UnsupportedStructure { row: 0, col: 3 })
        ));
    }
}
