// SPDX-License-Identifier: Apache-2.0

//! Exact 2×2 Hermitian algebra for a single qubit.
//!
//! Hamiltonians are stored as `H = h0·1 + h·σ` (ħ = 1, energies are inverse
//! times). Pure states are kept both as amplitude pairs and as unit Bloch
//! vectors with `ρ = (1 + a·σ)/2`.

use nalgebra::{Matrix2, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;
pub type CMatrix2 = Matrix2<Complex64>;

/// Normalization tolerance for states and Bloch vectors.
pub const TOL_NORM: f64 = 1e-12;
/// Hermiticity tolerance for explicit 2×2 matrices.
pub const TOL_HERM: f64 = 1e-12;
/// Largest raw arccos argument excursion that is still treated as rounding.
const TOL_ACOS: f64 = 1e-9;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The three Pauli matrices in the computational basis.
pub fn pauli() -> [CMatrix2; 3] {
    let zero = c(0.0);
    let one = c(1.0);
    [CMatrix2::new(zero, one, one, zero), CMatrix2::new(zero, -I, I, zero), CMatrix2::new(one, zero, zero, -one)]
}

/// `arccos` with the argument clamped to [-1, 1].
///
/// Arguments outside the interval by more than 1e-9 are treated as a genuine
/// numerical failure rather than rounding.
pub fn checked_acos(x: f64) -> Result<f64> {
    if !x.is_finite() || x.abs() > 1.0 + TOL_ACOS {
        return Err(Error::Numerical(format!("arccos argument {x} outside [-1, 1]")));
    }
    Ok(x.clamp(-1.0, 1.0).acos())
}

/// A normalized pure qubit state `c0|0⟩ + c1|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    c0: Complex64,
    c1: Complex64,
}

impl QubitState {
    pub fn new(c0: Complex64, c1: Complex64) -> Result<Self> {
        let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > TOL_NORM {
            return Err(Error::Normalization { norm });
        }
        Ok(Self { c0, c1 })
    }

    /// Builds a state from arbitrary nonzero amplitudes by rescaling.
    pub fn normalized(c0: Complex64, c1: Complex64) -> Result<Self> {
        let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::Normalization { norm });
        }
        Ok(Self { c0: c0 / norm, c1: c1 / norm })
    }

    pub fn from_real(c0: f64, c1: f64) -> Result<Self> {
        Self::new(c(c0), c(c1))
    }

    pub(crate) fn from_parts_unchecked(c0: Complex64, c1: Complex64) -> Self {
        Self { c0, c1 }
    }

    pub fn c0(&self) -> Complex64 {
        self.c0
    }

    pub fn c1(&self) -> Complex64 {
        self.c1
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.c0, self.c1]
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QubitState) -> Complex64 {
        self.c0.conj() * other.c0 + self.c1.conj() * other.c1
    }

    /// Multiplies by the global phase `e^{iθ}`.
    pub fn with_phase(&self, theta: f64) -> QubitState {
        let p = Complex64::from_polar(1.0, theta);
        QubitState { c0: p * self.c0, c1: p * self.c1 }
    }

    pub fn bloch(&self) -> BlochVector {
        bloch_from_state(self)
    }
}

/// A real unit 3-vector on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(Vec3);

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_vec(Vec3::new(x, y, z))
    }

    pub fn from_vec(a: Vec3) -> Result<Self> {
        let n = a.norm();
        if !n.is_finite() || (n - 1.0).abs() > TOL_NORM {
            return Err(Error::Normalization { norm: n });
        }
        Ok(Self(a))
    }

    /// Projects a nonzero vector onto the unit sphere.
    pub fn normalize(a: Vec3) -> Result<Self> {
        let n = a.norm();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::Normalization { norm: n });
        }
        Ok(Self(a / n))
    }

    pub(crate) fn from_vec_unchecked(a: Vec3) -> Self {
        Self(a)
    }

    pub fn x() -> Self {
        Self(Vec3::x())
    }

    pub fn y() -> Self {
        Self(Vec3::y())
    }

    pub fn z() -> Self {
        Self(Vec3::z())
    }

    pub fn as_vec(&self) -> &Vec3 {
        &self.0
    }

    pub fn to_vec(self) -> Vec3 {
        self.0
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.0.dot(&other.0)
    }

    /// Right-handed rotation about `axis` by `angle` (Rodrigues' formula).
    pub fn rotated(&self, axis: &Vec3, angle: f64) -> BlochVector {
        let n = axis.normalize();
        let v = self.0;
        let (s, co) = angle.sin_cos();
        BlochVector(v * co + n.cross(&v) * s + n * n.dot(&v) * (1.0 - co))
    }
}

/// A 2×2 Hermitian matrix stored canonically as `(h0, h)`.
///
/// The explicit complex entries are a derived view, so the stored value is
/// Hermitian by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianMatrix2 {
    pub h0: f64,
    pub h: Vec3,
}

impl HermitianMatrix2 {
    pub fn new(h0: f64, h: Vec3) -> Self {
        Self { h0, h }
    }

    /// Decomposes an explicit matrix; see [`pauli_decompose`].
    pub fn from_matrix(m: &CMatrix2) -> Result<Self> {
        let (h0, h) = pauli_decompose(m)?;
        Ok(Self { h0, h })
    }

    pub fn to_matrix(&self) -> CMatrix2 {
        let [hx, hy, hz] = [self.h.x, self.h.y, self.h.z];
        CMatrix2::new(c(self.h0 + hz), Complex64::new(hx, -hy), Complex64::new(hx, hy), c(self.h0 - hz))
    }

    pub fn spectral_norm(&self) -> f64 {
        spectral_norm(self.h0, &self.h)
    }

    /// `⟨ψ|H|ψ⟩ = h0 + a·h`.
    pub fn expectation(&self, a: &BlochVector) -> f64 {
        self.h0 + a.as_vec().dot(&self.h)
    }
}

/// Returns `(h0, h)` with `h0 = tr(H)/2` and `h_k = tr(H σ_k)/2`.
pub fn pauli_decompose(m: &CMatrix2) -> Result<(f64, Vec3)> {
    let deviation = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !deviation.is_finite() || deviation > TOL_HERM {
        return Err(Error::Hermiticity { deviation });
    }
    let h0 = 0.5 * (m[(0, 0)] + m[(1, 1)]).re;
    let [sx, sy, sz] = pauli();
    let half_trace = |s: &CMatrix2| 0.5 * (m * s).trace().re;
    Ok((h0, Vec3::new(half_trace(&sx), half_trace(&sy), half_trace(&sz))))
}

/// Bloch vector `(2Re(c0* c1), 2Im(c0* c1), |c0|² − |c1|²)`.
pub fn bloch_from_state(psi: &QubitState) -> BlochVector {
    let cross = psi.c0.conj() * psi.c1;
    BlochVector(Vec3::new(2.0 * cross.re, 2.0 * cross.im, psi.c0.norm_sqr() - psi.c1.norm_sqr()))
}

/// Phase-fixed inverse of [`bloch_from_state`]: `c0 = cos(θ/2) ≥ 0`,
/// `c1 = e^{iφ} sin(θ/2)`. The south pole maps to `(0, 1)`.
pub fn state_from_bloch(a: &BlochVector) -> QubitState {
    let v = a.as_vec();
    let z = v.z.clamp(-1.0, 1.0);
    let c0 = (0.5 * (1.0 + z)).max(0.0).sqrt();
    let s = (0.5 * (1.0 - z)).max(0.0).sqrt();
    let rho = v.x.hypot(v.y);
    let c1 = if rho == 0.0 { c(s) } else { Complex64::new(v.x / rho, v.y / rho) * s };
    QubitState::from_parts_unchecked(c(c0), c1)
}

/// Energy uncertainty `√(h·h − (a·h)²)`; the trace part never enters.
///
/// Evaluated as `‖a × h‖`, which equals the radicand form for unit `a` and
/// stays accurate near eigenstates where the difference of squares cancels.
pub fn energy_uncertainty(a: &BlochVector, _h0: f64, h: &Vec3) -> Result<f64> {
    let de = a.as_vec().cross(h).norm();
    if de.is_finite() {
        Ok(de)
    } else {
        Err(Error::Numerical(format!("non-finite energy uncertainty for h = {h:?}")))
    }
}

/// Largest singular value of `h0·1 + h·σ`, i.e. `|h0| + ‖h‖`.
pub fn spectral_norm(h0: f64, h: &Vec3) -> f64 {
    h0.abs() + h.norm()
}

/// Fubini–Study geodesic distance `θ_AB = arccos(a·b) ∈ [0, π]`, equal to
/// `2 arccos|⟨A|B⟩|` for the corresponding states.
pub fn fubini_study_s0(a: &BlochVector, b: &BlochVector) -> f64 {
    a.dot(b).clamp(-1.0, 1.0).acos()
}

/// `2 arccos|⟨A|B⟩|` computed from amplitudes.
pub fn fubini_study_from_states(a: &QubitState, b: &QubitState) -> f64 {
    2.0 * a.inner(b).norm().clamp(0.0, 1.0).acos()
}
