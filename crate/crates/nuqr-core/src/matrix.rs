//! Dense 2x2 and 4x4 complex matrices.
//!
//! The sizes the two-qubit problem needs are fixed, so everything is stored
//! inline as arrays and all operations are allocation-free.

use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::math;

const C_ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const C_ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Modulus |z|.
#[inline]
pub(crate) fn cmod(z: Complex64) -> f64 {
    math::sqrt(z.norm_sqr())
}

/// A 2x2 complex matrix (single-qubit operator).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix2 {
    entries: [[Complex64; 2]; 2],
}

/// Identity on one qubit (also written sigma_0).
pub const SIGMA_0: Matrix2 = Matrix2::new([[C_ONE, C_ZERO], [C_ZERO, C_ONE]]);
pub const SIGMA_X: Matrix2 = Matrix2::new([
    [C_ZERO, C_ONE],
    [C_ONE, C_ZERO],
]);
pub const SIGMA_Y: Matrix2 = Matrix2::new([
    [C_ZERO, Complex64 { re: 0.0, im: -1.0 }],
    [Complex64 { re: 0.0, im: 1.0 }, C_ZERO],
]);
pub const SIGMA_Z: Matrix2 = Matrix2::new([
    [C_ONE, C_ZERO],
    [C_ZERO, Complex64 { re: -1.0, im: 0.0 }],
]);

impl Matrix2 {
    pub const fn new(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub const fn zero() -> Self {
        Self::new([[C_ZERO; 2]; 2])
    }

    /// Builds a diagonal matrix from two real entries.
    pub fn diagonal(a: f64, b: f64) -> Self {
        Self::new([
            [Complex64::new(a, 0.0), C_ZERO],
            [C_ZERO, Complex64::new(b, 0.0)],
        ])
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = *self;
        for row in out.entries.iter_mut() {
            for z in row.iter_mut() {
                *z *= k;
            }
        }
        out
    }

    /// Kronecker product, first factor acting on the first qubit.
    pub fn kron(&self, rhs: &Matrix2) -> Matrix4 {
        let mut out = Matrix4::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out[(2 * i + k, 2 * j + l)] = self[(i, j)] * rhs[(k, l)];
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for Matrix2 {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i][j]
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;

    fn add(self, rhs: Matrix2) -> Matrix2 {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.entries[i][j] += rhs.entries[i][j];
            }
        }
        out
    }
}

/// A 4x4 complex matrix (two-qubit operator).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix4 {
    entries: [[Complex64; 4]; 4],
}

impl Matrix4 {
    pub const fn new(entries: [[Complex64; 4]; 4]) -> Self {
        Self { entries }
    }

    pub const fn zero() -> Self {
        Self::new([[C_ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            out[(i, i)] = C_ONE;
        }
        out
    }

    /// Builds a diagonal matrix from four real entries.
    pub fn diagonal(d: [f64; 4]) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            out[(i, i)] = Complex64::new(d[i], 0.0);
        }
        out
    }

    pub fn conjugate_transpose(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = *self;
        for row in out.entries.iter_mut() {
            for z in row.iter_mut() {
                *z *= k;
            }
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0;
        for row in &self.entries {
            for &z in row {
                let a = cmod(z);
                if a > m {
                    m = a;
                }
            }
        }
        m
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Largest deviation from Hermitian symmetry, max |m_ij - conj(m_ji)|.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut m = 0.0;
        for i in 0..4 {
            for j in i..4 {
                let a = cmod(self[(i, j)] - self[(j, i)].conj());
                if a > m {
                    m = a;
                }
            }
        }
        m
    }
}

impl Index<(usize, usize)> for Matrix4 {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i][j]
    }
}

impl IndexMut<(usize, usize)> for Matrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i][j]
    }
}

impl Add for Matrix4 {
    type Output = Matrix4;

    fn add(self, rhs: Matrix4) -> Matrix4 {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out[(i, j)] += rhs[(i, j)];
            }
        }
        out
    }
}

impl Sub for Matrix4 {
    type Output = Matrix4;

    fn sub(self, rhs: Matrix4) -> Matrix4 {
        let mut out = self;
        for i in 0..4 {
            for j in 0..4 {
                out[(i, j)] -= rhs[(i, j)];
            }
        }
        out
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;

    fn mul(self, rhs: Matrix4) -> Matrix4 {
        let mut out = Matrix4::zero();
        for i in 0..4 {
            for k in 0..4 {
                let a = self[(i, k)];
                if a == C_ZERO {
                    continue;
                }
                for j in 0..4 {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}
