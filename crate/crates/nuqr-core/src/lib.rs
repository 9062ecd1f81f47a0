//! Two-flavor neutrino mode entanglement as an open quantum system.
//!
//! The crate builds the two-qubit density matrix of an oscillating flavor
//! state from a mixing angle and an oscillation phase, quantifies its quantum
//! resources (entropic EPR steering in both directions, negativity from the
//! partial transpose, l1-coherence), and evolves it through
//! amplitude-damping / phase-flip / phase-damping Kraus channels and a
//! correlated random-telegraph dephasing map with Markovian and
//! non-Markovian regimes.
//!
//! Every closed-form routine has an independent brute-force counterpart in
//! [`oracle`] (dense measurement statistics, partial transpose, a Jacobi
//! eigensolver); the test suites hold the two paths together on dense
//! parameter grids.
//!
//! The crate is `no_std`-compatible: disable default features and enable
//! `libm` to use it without the standard library (an allocator is still
//! required).

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
mod math;

pub mod channels;
pub mod dephasing;
pub mod matrix;
pub mod measures;
pub mod oracle;
pub mod state;

pub use error::Error;
pub use num_complex::Complex64;

pub use channels::{
    apply_channel, apply_kraus_generic, kraus_set, ChannelKind, KrausSet, NoiseStrength,
};
pub use dephasing::{
    apply_correlated_dephasing, attenuation_factor, correlated_pauli_kraus,
    decoherence_function, dephasing_kraus_map, evolve_combined, flip_probability,
    DephasingParams, TimePoint,
};
pub use matrix::{Matrix2, Matrix4};
pub use measures::{
    coherence_l1, negativity, resource_triple, steering, steering_quantity, ResourceTriple,
    SteeringReport,
};
pub use oracle::{
    hermitian_eigen, hermitian_eigenvalues, measurement_distribution, partial_transpose,
    steering_entropy_oracle, trace_norm, MeasurementDistribution, PauliAxis, SteeringDirection,
};
pub use state::{
    build_density_matrix, flavor_amplitudes, oscillation_phase, survival_probability,
    transition_probability, DensityMatrix4, FlavorAmplitudes, MixingAngle,
    OscillationKinematics, PhaseAngle, PHASE_UNIT_FACTOR,
};
