//! Brute-force reference routines used as ground truth by the dual-path
//! tests: partial transposition, a dense Hermitian eigensolver, trace norm,
//! Pauli measurement statistics, and the entropic steering quantity computed
//! from those statistics.
//!
//! Nothing here exploits the X-structure of the states produced elsewhere in
//! the crate; the value of this module is its independence from the closed
//! forms it checks.

use num_complex::Complex64;

use crate::error::Error;
use crate::math;
use crate::matrix::{cmod, Matrix2, Matrix4, SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z};
use crate::state::DensityMatrix4;

/// Hermiticity tolerance accepted by the eigensolver entry points.
const EIGEN_HERMITICITY_TOL: f64 = 1e-10;
/// Off-diagonal Frobenius norm at which the Jacobi iteration stops.
const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Transposes the second-qubit indices: out[(2a + b', 2a' + b)] = m[(2a + b, 2a' + b')].
pub fn partial_transpose(m: &Matrix4) -> Matrix4 {
    let mut out = Matrix4::zero();
    for a in 0..2 {
        for ap in 0..2 {
            for b in 0..2 {
                for bp in 0..2 {
                    out[(2 * a + bp, 2 * ap + b)] = m[(2 * a + b, 2 * ap + bp)];
                }
            }
        }
    }
    out
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Rejects inputs whose Hermiticity residual exceeds 1e-10.
pub fn hermitian_eigenvalues(m: &Matrix4) -> Result<[f64; 4], Error> {
    hermitian_eigen(m).map(|(values, _)| values)
}

/// Full eigendecomposition of a Hermitian matrix: ascending eigenvalues and a
/// unitary whose columns are the matching eigenvectors, so `m = V diag(w) V^dag`.
///
/// Cyclic complex Jacobi rotations, fixed iteration budget, off-diagonal norm
/// threshold 1e-14.
pub fn hermitian_eigen(m: &Matrix4) -> Result<([f64; 4], Matrix4), Error> {
    let residual = m.hermiticity_residual();
    if residual > EIGEN_HERMITICITY_TOL {
        return Err(Error::NotHermitian { residual });
    }

    let mut a = *m;
    let mut v = Matrix4::identity();

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < JACOBI_OFF_TOL {
            break;
        }
        for p in 0..4 {
            for q in (p + 1)..4 {
                let apq = a[(p, q)];
                let mag = cmod(apq);
                if mag < 1e-300 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                // Smaller-magnitude root of t^2 - 2 tau t - 1 = 0.
                let t = if tau >= 0.0 {
                    -1.0 / (tau + math::sqrt(1.0 + tau * tau))
                } else {
                    1.0 / (-tau + math::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let sigma = t * c;
                let phase = apq / mag;

                let mut rot = Matrix4::identity();
                rot[(p, p)] = Complex64::new(c, 0.0);
                rot[(p, q)] = -phase * sigma;
                rot[(q, p)] = phase.conj() * sigma;
                rot[(q, q)] = Complex64::new(c, 0.0);

                a = rot.conjugate_transpose() * a * rot;
                v = v * rot;
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    let diag = [a[(0, 0)].re, a[(1, 1)].re, a[(2, 2)].re, a[(3, 3)].re];
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));

    let mut values = [0.0; 4];
    let mut vectors = Matrix4::zero();
    for (dst, &src) in order.iter().enumerate() {
        values[dst] = diag[src];
        for row in 0..4 {
            vectors[(row, dst)] = v[(row, src)];
        }
    }
    Ok((values, vectors))
}

fn off_diagonal_norm(m: &Matrix4) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    math::sqrt(acc)
}

/// Sum of the absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &Matrix4) -> Result<f64, Error> {
    let values = hermitian_eigenvalues(m)?;
    Ok(values.iter().map(|&w| math::abs(w)).sum())
}

/// Local Pauli measurement axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub fn operator(&self) -> Matrix2 {
        match self {
            PauliAxis::X => SIGMA_X,
            PauliAxis::Y => SIGMA_Y,
            PauliAxis::Z => SIGMA_Z,
        }
    }
}

/// Outcome statistics of the same Pauli measurement on both qubits.
///
/// `joint` is ordered `(+,+), (+,-), (-,+), (-,-)`; marginals are the row and
/// column sums of `joint`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementDistribution {
    pub axis: PauliAxis,
    pub joint: [f64; 4],
    pub marginal_a: [f64; 2],
    pub marginal_b: [f64; 2],
}

/// Joint outcome probabilities `p(a, b) = tr(rho (P_a (x) P_b))` with `P_+/-`
/// the eigenprojectors of the chosen Pauli operator.
pub fn measurement_distribution(rho: &DensityMatrix4, axis: PauliAxis) -> MeasurementDistribution {
    let sigma = axis.operator();
    let plus = pauli_projector(&sigma, 1.0);
    let minus = pauli_projector(&sigma, -1.0);

    let mut joint = [0.0; 4];
    for (slot, (pa, pb)) in [
        (&plus, &plus),
        (&plus, &minus),
        (&minus, &plus),
        (&minus, &minus),
    ]
    .iter()
    .enumerate()
    {
        let projector = pa.kron(pb);
        joint[slot] = (*rho.matrix() * projector).trace().re;
    }

    MeasurementDistribution {
        axis,
        joint,
        marginal_a: [joint[0] + joint[1], joint[2] + joint[3]],
        marginal_b: [joint[0] + joint[2], joint[1] + joint[3]],
    }
}

/// Eigenprojector `(I + outcome * sigma) / 2` for outcome +1 or -1.
fn pauli_projector(sigma: &Matrix2, outcome: f64) -> Matrix2 {
    (SIGMA_0 + sigma.scale(outcome)).scale(0.5)
}

/// Steering direction: which party conditions the other's outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteeringDirection {
    AToB,
    BToA,
}

/// Entropic steering quantity `N = 6 - 2 sum_axes H(conditioned | conditioning)`
/// computed from [`measurement_distribution`]; steering requires `N > 2`.
pub fn steering_entropy_oracle(rho: &DensityMatrix4, direction: SteeringDirection) -> f64 {
    let mut conditional_sum = 0.0;
    for axis in [PauliAxis::X, PauliAxis::Y, PauliAxis::Z] {
        let dist = measurement_distribution(rho, axis);
        let joint_entropy = shannon_entropy(&dist.joint);
        let marginal_entropy = match direction {
            SteeringDirection::AToB => shannon_entropy(&dist.marginal_a),
            SteeringDirection::BToA => shannon_entropy(&dist.marginal_b),
        };
        conditional_sum += joint_entropy - marginal_entropy;
    }
    6.0 - 2.0 * conditional_sum
}

/// Shannon entropy in bits with the 0 log 0 = 0 convention.
fn shannon_entropy(probs: &[f64]) -> f64 {
    let mut h = 0.0;
    for &p in probs {
        if p > 0.0 {
            h -= p * math::log2(p);
        }
    }
    h
}
