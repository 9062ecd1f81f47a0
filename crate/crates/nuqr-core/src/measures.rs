//! The three quantum-resource measures: entropic EPR steering (both
//! directions plus asymmetry), negativity from the partial transpose, and
//! l1-coherence.
//!
//! # Steering convention
//!
//! The quantity returned by [`steering_quantity`] satisfies
//! `N = 6 - 2 sum_{w in {x,y,z}} H(conditioned | conditioning)`, so the
//! three-axis entropic steering inequality `sum H <= 2` is violated exactly
//! when `N > 2`. The normalized measure is `S = max(0, (N - 2) / 4)`, which
//! reaches 1 on the maximally entangled state with real central coherence.
//!
//! # Sensitivity to the coherence phase
//!
//! For states supported on the diagonal plus the central coherence, both
//! `<sigma_x (x) sigma_x>` and `<sigma_y (x) sigma_y>` equal `2 Re(rho_23)`
//! because the corner coherence vanishes. The x/y joint distributions below
//! therefore use the real part only; a purely imaginary coherence is
//! invisible to this steering quantifier even when the state is entangled.

use crate::error::Error;
use crate::math;
use crate::matrix::cmod;
use crate::oracle;
pub use crate::oracle::SteeringDirection;
use crate::state::DensityMatrix4;

/// Both directional steering quantities with their normalized measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteeringReport {
    /// Entropic quantity for A steering B.
    pub n_ab: f64,
    /// Entropic quantity for B steering A.
    pub n_ba: f64,
    /// Normalized steering A -> B, in [0, 1].
    pub s_ab: f64,
    /// Normalized steering B -> A, in [0, 1].
    pub s_ba: f64,
    /// |s_ab - s_ba|.
    pub asymmetry: f64,
}

/// The three measures of one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResourceTriple {
    pub steering: SteeringReport,
    pub negativity: f64,
    pub coherence: f64,
}

/// `v log2(v)` with the 0 log 0 = 0 convention; small negative rounding
/// residues are clipped to zero.
#[inline]
fn vlog2(v: f64) -> f64 {
    if v > 0.0 {
        v * math::log2(v)
    } else {
        0.0
    }
}

/// Closed-form entropic steering quantity for states supported on the
/// diagonal plus the central coherence.
///
/// Joint x/y distributions enter as `1 +/- 2 Re(rho_23)` (each twice), the
/// joint z distribution as `4 rho_ii`, and the conditioning party's z
/// marginal as `2 p` with `p` read off the actual diagonal, which covers the
/// population shift that amplitude damping introduces.
pub fn steering_quantity(
    rho: &DensityMatrix4,
    direction: SteeringDirection,
) -> Result<f64, Error> {
    rho.check_central_support()?;
    let d = rho.populations();
    let r = rho.central_coherence().re;

    // (1/2) sum_i I log2 I over {1+2r, 1+2r, 1-2r, 1-2r}, for x and y alike.
    let xy_joint = 2.0 * (vlog2(1.0 + 2.0 * r) + vlog2(1.0 - 2.0 * r));
    let z_joint = 0.5 * d.iter().map(|&p| vlog2(4.0 * p)).sum::<f64>();
    let (m_plus, m_minus) = match direction {
        SteeringDirection::AToB => (d[0] + d[1], d[2] + d[3]),
        SteeringDirection::BToA => (d[0] + d[2], d[1] + d[3]),
    };
    let z_marginal = vlog2(2.0 * m_plus) + vlog2(2.0 * m_minus);

    Ok(xy_joint + z_joint - z_marginal)
}

/// Evaluates both steering directions and the asymmetry.
pub fn steering(rho: &DensityMatrix4) -> Result<SteeringReport, Error> {
    let n_ab = steering_quantity(rho, SteeringDirection::AToB)?;
    let n_ba = steering_quantity(rho, SteeringDirection::BToA)?;
    let s_ab = normalize(n_ab);
    let s_ba = normalize(n_ba);
    Ok(SteeringReport {
        n_ab,
        n_ba,
        s_ab,
        s_ba,
        asymmetry: math::abs(s_ab - s_ba),
    })
}

#[inline]
fn normalize(n: f64) -> f64 {
    ((n - 2.0) / 4.0).max(0.0)
}

/// `max(0, -2 h_min)` with `h_min` the smallest eigenvalue of the partial
/// transpose.
///
/// On the supported family the spectrum is known in closed form (the corner
/// block eigenvalues `(rho_11 + rho_44)/2 +/- sqrt((rho_11 - rho_44)^2/4 + |rho_23|^2)`
/// next to the central populations); any other state goes through the
/// brute-force partial transpose and eigensolver.
pub fn negativity(rho: &DensityMatrix4) -> f64 {
    let h_min = if rho.check_central_support().is_ok() {
        let d = rho.populations();
        let c = cmod(rho.central_coherence());
        let half_gap = math::sqrt((d[0] - d[3]) * (d[0] - d[3]) * 0.25 + c * c);
        let corner_min = (d[0] + d[3]) * 0.5 - half_gap;
        corner_min.min(d[1]).min(d[2])
    } else {
        let pt = oracle::partial_transpose(rho.matrix());
        oracle::hermitian_eigenvalues(&pt)
            .expect("partial transpose of a Hermitian matrix is Hermitian")[0]
    };
    (-2.0 * h_min).max(0.0)
}

/// l1-coherence: sum of the moduli of all off-diagonal entries.
pub fn coherence_l1(rho: &DensityMatrix4) -> f64 {
    let mut total = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                total += cmod(rho.entry(i, j));
            }
        }
    }
    total
}

/// Bundles steering, negativity, and coherence for one state.
pub fn resource_triple(rho: &DensityMatrix4) -> Result<ResourceTriple, Error> {
    Ok(ResourceTriple {
        steering: steering(rho)?,
        negativity: negativity(rho),
        coherence: coherence_l1(rho),
    })
}
