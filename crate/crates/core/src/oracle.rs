//! Dense 2×2 complex matrices, used as an independent check on the Bloch
//! arithmetic. Nothing in the main computation paths depends on this module.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::bloch::{BlochVector, PovmElement, QubitState};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Row-major 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);
    pub const SIGMA_X: Mat2 = Mat2([[ZERO, ONE], [ONE, ZERO]]);
    pub const SIGMA_Y: Mat2 = Mat2([[ZERO, C64::new(0.0, -1.0)], [I, ZERO]]);
    pub const SIGMA_Z: Mat2 = Mat2([[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]]);

    pub fn scale(self, s: C64) -> Mat2 {
        Mat2(self.0.map(|row| row.map(|v| v * s)))
    }

    pub fn scale_real(self, s: f64) -> Mat2 {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn adjoint(&self) -> Mat2 {
        let m = self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    /// Eigenvalues of a Hermitian matrix from its characteristic polynomial,
    /// larger first.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let t = self.trace().re;
        let d = self.det().re;
        let disc = (0.25 * t * t - d).max(0.0).sqrt();
        [0.5 * t + disc, 0.5 * t - disc]
    }

    /// Principal square root of a positive semidefinite matrix via
    /// `√A = (A + √det·I) / √(tr A + 2√det)`.
    pub fn psd_sqrt(&self) -> Mat2 {
        let s = self.det().re.max(0.0).sqrt();
        let t = (self.trace().re + 2.0 * s).sqrt();
        (*self + Mat2::IDENTITY.scale_real(s)).scale_real(1.0 / t)
    }

    /// Coefficients `(r, x)` with `self = r·I + x·σ`, read off as
    /// `r = tr(M)/2`, `x_k = tr(M σ_k)/2`. Imaginary parts are dropped.
    pub fn to_bloch(&self) -> (f64, BlochVector) {
        let half = |m: Mat2| 0.5 * m.trace().re;
        (
            half(*self),
            BlochVector::new(
                half(*self * Mat2::SIGMA_X),
                half(*self * Mat2::SIGMA_Y),
                half(*self * Mat2::SIGMA_Z),
            ),
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let mut out = self;
        for r in 0..2 {
            for c in 0..2 {
                out.0[r][c] += o.0[r][c];
            }
        }
        out
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale_real(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        let mut out = [[ZERO; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }
}

/// `r·I + x·σ` written out entry by entry.
pub fn operator_matrix(r: f64, x: BlochVector) -> Mat2 {
    Mat2([
        [C64::new(r + x.z, 0.0), C64::new(x.x, -x.y)],
        [C64::new(x.x, x.y), C64::new(r - x.z, 0.0)],
    ])
}

/// Dense form of a POVM element.
pub fn effect_matrix(element: &PovmElement) -> Mat2 {
    operator_matrix(element.r(), element.x())
}

/// Density matrix `(I + r·σ)/2`, assembled from the Pauli matrices.
pub fn density_matrix(state: &QubitState) -> Mat2 {
    let r = state.polarization();
    (Mat2::IDENTITY
        + Mat2::SIGMA_X.scale_real(r.x)
        + Mat2::SIGMA_Y.scale_real(r.y)
        + Mat2::SIGMA_Z.scale_real(r.z))
    .scale_real(0.5)
}

/// Projector onto the ± eigenspace of `n·σ`, assembled from the Pauli matrices.
pub fn projector_matrix(n: BlochVector, sign: f64) -> Mat2 {
    (Mat2::IDENTITY
        + (Mat2::SIGMA_X.scale_real(n.x)
            + Mat2::SIGMA_Y.scale_real(n.y)
            + Mat2::SIGMA_Z.scale_real(n.z))
        .scale_real(sign))
    .scale_real(0.5)
}

/// `Re tr(ρ E)`.
pub fn trace_product(rho: &Mat2, effect: &Mat2) -> f64 {
    (*rho * *effect).trace().re
}
