//! Randomized invariants: eigensolver against closed-form spectra on random
//! X-structured states, channel completeness for arbitrary strengths, and
//! normalization of random flavor states.

use nuqr_core::{
    build_density_matrix, coherence_l1, flavor_amplitudes, kraus_set, negativity, oracle,
    steering_quantity, ChannelKind, Complex64, DensityMatrix4, Matrix4, MixingAngle,
    NoiseStrength, PhaseAngle, SteeringDirection,
};
use proptest::prelude::*;

fn x_state_strategy() -> impl Strategy<Value = DensityMatrix4> {
    (
        0.0..=0.5f64,
        0.0..=1.0f64,
        0.0..=1.0f64,
        0.0..=core::f64::consts::TAU,
    )
        .prop_map(|(ground, split, coherence_frac, phase)| {
            let d1 = (1.0 - ground) * split;
            let d2 = (1.0 - ground) * (1.0 - split);
            let magnitude = coherence_frac * (d1 * d2).sqrt();
            let coherence = Complex64::new(phase.cos(), phase.sin()) * magnitude;
            let mut m = Matrix4::diagonal([ground, d1, d2, 0.0]);
            m[(1, 2)] = coherence;
            m[(2, 1)] = coherence.conj();
            DensityMatrix4::try_new(m).expect("constructed state is PSD")
        })
}

proptest! {
    #[test]
    fn random_flavor_states_are_normalized_and_pure(
        theta in 0.0..=core::f64::consts::FRAC_PI_2,
        phi in 0.0..=core::f64::consts::PI,
    ) {
        let theta = MixingAngle::new(theta).unwrap();
        let phi = PhaseAngle::new(phi).unwrap();
        let amps = flavor_amplitudes(theta, phi);
        prop_assert!((amps.survival.norm_sqr() + amps.transition.norm_sqr() - 1.0).abs() < 1e-12);

        let rho = build_density_matrix(theta, phi);
        prop_assert!(rho.validate().is_ok());
        let purity = (*rho.matrix() * *rho.matrix()).trace().re;
        prop_assert!((purity - 1.0).abs() < 1e-12);
        prop_assert!((negativity(&rho) - coherence_l1(&rho)).abs() < 1e-12);
    }

    #[test]
    fn jacobi_matches_closed_form_spectrum_on_x_states(rho in x_state_strategy()) {
        let pt = oracle::partial_transpose(rho.matrix());
        let numeric = oracle::hermitian_eigenvalues(&pt).unwrap();

        let d = rho.populations();
        let c = rho.central_coherence().norm();
        let half_gap = (d[0] * d[0] * 0.25 + c * c).sqrt();
        let mut analytic = [
            d[1],
            d[2],
            d[0] * 0.5 + half_gap,
            d[0] * 0.5 - half_gap,
        ];
        analytic.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (n, a) in numeric.iter().zip(analytic.iter()) {
            prop_assert!((n - a).abs() < 1e-10, "numeric {n}, analytic {a}");
        }

        prop_assert!((negativity(&rho) - (-2.0 * numeric[0]).max(0.0)).abs() < 1e-10);
    }

    #[test]
    fn partial_transpose_is_involutive_on_random_states(rho in x_state_strategy()) {
        let twice = oracle::partial_transpose(&oracle::partial_transpose(rho.matrix()));
        prop_assert!(twice.max_abs_diff(rho.matrix()) == 0.0);
    }

    #[test]
    fn steering_closed_form_tracks_oracle_on_random_states(rho in x_state_strategy()) {
        for direction in [SteeringDirection::AToB, SteeringDirection::BToA] {
            let closed = steering_quantity(&rho, direction).unwrap();
            let brute = oracle::steering_entropy_oracle(&rho, direction);
            prop_assert!((closed - brute).abs() < 1e-9);
        }
    }

    #[test]
    fn kraus_sets_are_complete_for_any_strength(
        tau in 0.0..=1.0f64,
        kind_index in 0usize..3,
    ) {
        let kind = [
            ChannelKind::AmplitudeDamping,
            ChannelKind::PhaseFlip,
            ChannelKind::PhaseDamping,
        ][kind_index];
        let set = kraus_set(kind, NoiseStrength::new(tau).unwrap());
        let mut sum = Matrix4::zero();
        for k in set.operators() {
            sum = sum + k.conjugate_transpose() * *k;
        }
        prop_assert!(sum.max_abs_diff(&Matrix4::identity()) < 1e-12);
    }
}
