// SPDX-License-Identifier: Apache-2.0

//! Hamiltonian families.
//!
//! The stationary family rotates `â` into `b̂` about a fixed axis `n̂(α)`;
//! only `α = π/2` follows the great circle. The driven-path constructions
//! take a parallel-transported path `|m(t)⟩` and build the Hamiltonian that
//! moves along it, optionally with an extra phase `φ(t)` that wastes energy
//! without changing the path.
//!
//! The symbol `γ` is avoided here: the half rotation angle is `half_angle`
//! and a field magnitude is `field_strength`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::dynamics::TimeGrid;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, ScalarFn};
use crate::qubit::{bloch_from_state, fubini_study_s0, BlochVector, QubitState, Vec3, TOL_NORM};

/// Endpoints closer than this to coincident or antipodal are rejected.
pub const TOL_DEG: f64 = 1e-6;
/// Allowed `|⟨m|ṁ⟩|` (scaled by `1 + ‖ṁ‖`) for a driven path.
pub const TOL_TRANSPORT: f64 = 1e-6;

fn check_endpoints(a: &BlochVector, b: &BlochVector) -> Result<f64> {
    let theta_ab = fubini_study_s0(a, b);
    if theta_ab <= TOL_DEG || theta_ab >= std::f64::consts::PI - TOL_DEG {
        return Err(Error::DegenerateEndpoints { theta_ab });
    }
    Ok(theta_ab)
}

/// Rotation axis `n̂(α)` carrying `a` to `b`.
pub fn suboptimal_axis(alpha: f64, a: &BlochVector, b: &BlochVector) -> Result<Vec3> {
    let theta_ab = check_endpoints(a, b)?;
    let (a, b) = (a.as_vec(), b.as_vec());
    let bisector = (a + b) / (2.0 * (0.5 * theta_ab).cos());
    let normal = a.cross(b) / theta_ab.sin();
    Ok(alpha.cos() * bisector + alpha.sin() * normal)
}

/// `√(1 − cos²α cos²(θ_AB/2))`: chord-to-radius factor of the traced circle.
fn ac_factor(alpha: f64, theta_ab: f64) -> f64 {
    let c = alpha.cos() * (0.5 * theta_ab).cos();
    (1.0 - c * c).max(0.0).sqrt()
}

/// Rotation angle about `n̂(α)` that lands on `b̂`.
pub fn rotation_angle(alpha: f64, theta_ab: f64) -> f64 {
    let half_angle = (alpha.sin() * (0.5 * theta_ab).cos() / ac_factor(alpha, theta_ab)).clamp(-1.0, 1.0).acos();
    2.0 * half_angle
}

/// Travel time `φ(α)/(2E)`.
pub fn travel_time(alpha: f64, theta_ab: f64, energy: f64) -> f64 {
    rotation_angle(alpha, theta_ab) / (2.0 * energy)
}

/// Length of the circular arc traced on the sphere.
pub fn arc_length_alpha(alpha: f64, theta_ab: f64) -> f64 {
    ac_factor(alpha, theta_ab) * rotation_angle(alpha, theta_ab)
}

/// Energy uncertainty along the arc (constant in time).
pub fn delta_e_alpha(alpha: f64, theta_ab: f64, energy: f64) -> f64 {
    energy * ac_factor(alpha, theta_ab)
}

/// A member of the stationary family with its derived geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuboptimalStationary {
    alpha: f64,
    a_hat: BlochVector,
    b_hat: BlochVector,
    energy: f64,
    theta_ab: f64,
    n_hat: Vec3,
    phi: f64,
    t_ab: f64,
}

impl SuboptimalStationary {
    pub fn new(alpha: f64, a_hat: BlochVector, b_hat: BlochVector, energy: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0 && alpha < std::f64::consts::PI) {
            return Err(Error::Config(format!("alpha must lie in (0, pi), got {alpha}")));
        }
        if !(energy.is_finite() && energy > 0.0) {
            return Err(Error::Config(format!("energy must be positive, got {energy}")));
        }
        let n_hat = suboptimal_axis(alpha, &a_hat, &b_hat)?;
        let theta_ab = fubini_study_s0(&a_hat, &b_hat);
        let phi = rotation_angle(alpha, theta_ab);
        Ok(Self { alpha, a_hat, b_hat, energy, theta_ab, n_hat, phi, t_ab: phi / (2.0 * energy) })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn a_hat(&self) -> &BlochVector {
        &self.a_hat
    }

    pub fn b_hat(&self) -> &BlochVector {
        &self.b_hat
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn theta_ab(&self) -> f64 {
        self.theta_ab
    }

    pub fn n_hat(&self) -> &Vec3 {
        &self.n_hat
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn t_ab(&self) -> f64 {
        self.t_ab
    }

    pub fn arc_length(&self) -> f64 {
        arc_length_alpha(self.alpha, self.theta_ab)
    }

    pub fn delta_e(&self) -> f64 {
        delta_e_alpha(self.alpha, self.theta_ab, self.energy)
    }
}

/// Constant traceless field `E·n̂(α)` on `[0, t_AB]`.
pub fn suboptimal_hamiltonian(family: &SuboptimalStationary) -> FieldSpec {
    FieldSpec::constant(0.0, family.energy * family.n_hat, (0.0, family.t_ab))
}

pub type SpinorFn = Arc<dyn Fn(f64) -> [Complex64; 2] + Send + Sync>;

/// Phase `φ(t)` added on top of a driven path.
#[derive(Clone)]
pub enum PhaseProfile {
    /// `φ0 + φ̇0·t`.
    Linear { phi0: f64, phidot0: f64 },
    /// `φ0·ln(1 + (φ̇0/φ0)·t)`, with `φ0 > 0`.
    Logarithmic { phi0: f64, phidot0: f64 },
    /// `φ0 + e^{φ̇0·t} − 1`.
    Exponential { phi0: f64, phidot0: f64 },
    /// User-supplied value and rate; acceleration optional.
    Custom { value: ScalarFn, rate: ScalarFn, accel: Option<ScalarFn> },
}

impl fmt::Debug for PhaseProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Linear { phi0, phidot0 } => write!(f, "Linear({phi0}, {phidot0})"),
            Self::Logarithmic { phi0, phidot0 } => write!(f, "Logarithmic({phi0}, {phidot0})"),
            Self::Exponential { phi0, phidot0 } => write!(f, "Exponential({phi0}, {phidot0})"),
            Self::Custom { .. } => write!(f, "Custom"),
        }
    }
}

impl PhaseProfile {
    pub fn linear(phi0: f64, phidot0: f64) -> Self {
        Self::Linear { phi0, phidot0 }
    }

    pub fn logarithmic(phi0: f64, phidot0: f64) -> Result<Self> {
        if phi0.is_nan() || phi0 <= 0.0 {
            return Err(Error::Config(format!("logarithmic phase needs phi0 > 0, got {phi0}")));
        }
        Ok(Self::Logarithmic { phi0, phidot0 })
    }

    pub fn exponential(phi0: f64, phidot0: f64) -> Self {
        Self::Exponential { phi0, phidot0 }
    }

    /// Constant rate `φ̇`, zero offset.
    pub fn constant_rate(phidot: f64) -> Self {
        Self::Linear { phi0: 0.0, phidot0: phidot }
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            Self::Linear { phi0, phidot0 } => phi0 + phidot0 * t,
            Self::Logarithmic { phi0, phidot0 } => phi0 * (phidot0 / phi0 * t).ln_1p(),
            Self::Exponential { phi0, phidot0 } => phi0 + (phidot0 * t).exp_m1(),
            Self::Custom { value, .. } => value(t),
        }
    }

    pub fn rate(&self, t: f64) -> f64 {
        match self {
            Self::Linear { phidot0, .. } => *phidot0,
            Self::Logarithmic { phi0, phidot0 } => phidot0 / (1.0 + phidot0 / phi0 * t),
            Self::Exponential { phidot0, .. } => phidot0 * (phidot0 * t).exp(),
            Self::Custom { rate, .. } => rate(t),
        }
    }

    pub fn accel(&self, t: f64) -> Option<f64> {
        match self {
            Self::Linear { .. } => Some(0.0),
            Self::Logarithmic { phi0, phidot0 } => {
                let k = phidot0 / phi0;
                Some(-phidot0 * k / (1.0 + k * t).powi(2))
            }
            Self::Exponential { phidot0, .. } => Some(phidot0 * phidot0 * (phidot0 * t).exp()),
            Self::Custom { accel, .. } => accel.as_ref().map(|a| a(t)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UzdinVariant {
    /// `H = i(|ṁ⟩⟨m| − |m⟩⟨ṁ|)`.
    Optimal,
    /// Optimal plus `φ̇|m⟩⟨m|`.
    TraceNonzero,
    /// Optimal plus `φ̇|m⟩⟨m| − (φ̇/2)·1`.
    TraceZero,
}

/// A driven path `|m(t)⟩` with an optional extra phase.
#[derive(Clone)]
pub struct UzdinFamily {
    m: SpinorFn,
    m_dot: Option<SpinorFn>,
    m_ddot: Option<SpinorFn>,
    phase: Option<PhaseProfile>,
    variant: UzdinVariant,
}

impl fmt::Debug for UzdinFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UzdinFamily")
            .field("analytic_m_dot", &self.m_dot.is_some())
            .field("analytic_m_ddot", &self.m_ddot.is_some())
            .field("phase", &self.phase)
            .field("variant", &self.variant)
            .finish()
    }
}

fn braket(a: &[Complex64; 2], b: &[Complex64; 2]) -> Complex64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

/// `−Im⟨u|σ_k|v⟩` for k = x, y, z.
fn pauli_im(u: &[Complex64; 2], v: &[Complex64; 2]) -> Vec3 {
    let sx = u[0].conj() * v[1] + u[1].conj() * v[0];
    let sy = u[0].conj() * (-Complex64::i() * v[1]) + u[1].conj() * (Complex64::i() * v[0]);
    let sz = u[0].conj() * v[0] - u[1].conj() * v[1];
    -Vec3::new(sx.im, sy.im, sz.im)
}

impl UzdinFamily {
    pub fn new<F>(m: F) -> Self
    where
        F: Fn(f64) -> [Complex64; 2] + Send + Sync + 'static,
    {
        Self { m: Arc::new(m), m_dot: None, m_ddot: None, phase: None, variant: UzdinVariant::Optimal }
    }

    pub fn with_m_dot<F>(mut self, m_dot: F) -> Self
    where
        F: Fn(f64) -> [Complex64; 2] + Send + Sync + 'static,
    {
        self.m_dot = Some(Arc::new(m_dot));
        self
    }

    pub fn with_m_ddot<F>(mut self, m_ddot: F) -> Self
    where
        F: Fn(f64) -> [Complex64; 2] + Send + Sync + 'static,
    {
        self.m_ddot = Some(Arc::new(m_ddot));
        self
    }

    pub fn with_phase(mut self, phase: PhaseProfile) -> Self {
        self.phase = Some(phase);
        self
    }

    pub fn with_variant(mut self, variant: UzdinVariant) -> Self {
        self.variant = variant;
        self
    }

    /// Drops the analytic derivatives so they are differenced numerically.
    pub fn without_derivatives(mut self) -> Self {
        self.m_dot = None;
        self.m_ddot = None;
        self
    }

    pub fn variant(&self) -> UzdinVariant {
        self.variant
    }

    pub fn phase(&self) -> Option<&PhaseProfile> {
        self.phase.as_ref()
    }

    /// `|m(t)⟩`, checked for normalization.
    pub fn state(&self, t: f64) -> Result<QubitState> {
        let [c0, c1] = (self.m)(t);
        QubitState::new(c0, c1)
    }

    /// Meridian path `cos(θ/2)|0⟩ + e^{iφ0} sin(θ/2)|1⟩` with `θ(t) = θ0 + θ̇·t`.
    pub fn meridian(theta0: f64, theta_rate: f64, varphi0: f64) -> Self {
        let e = Complex64::from_polar(1.0, varphi0);
        let theta = move |t: f64| 0.5 * (theta0 + theta_rate * t);
        let w = 0.5 * theta_rate;
        Self::new(move |t| [Complex64::from(theta(t).cos()), e * theta(t).sin()])
            .with_m_dot(move |t| [Complex64::from(-w * theta(t).sin()), e * (w * theta(t).cos())])
            .with_m_ddot(move |t| [Complex64::from(-w * w * theta(t).cos()), e * (-w * w * theta(t).sin())])
    }

    /// Precessing path `(√3/2)e^{−iγt/2}|0⟩ + (1/2)e^{3iγt/2}|1⟩` on the
    /// circle of latitude `z = 1/2`.
    pub fn latitude_circle(field_strength: f64) -> Self {
        let g = field_strength;
        let r = 0.75_f64.sqrt();
        let w0 = Complex64::new(0.0, -0.5 * g);
        let w1 = Complex64::new(0.0, 1.5 * g);
        let amps = move |t: f64, k: i32| [r * w0.powi(k) * (w0 * t).exp(), 0.5 * w1.powi(k) * (w1 * t).exp()];
        Self::new(move |t| amps(t, 0)).with_m_dot(move |t| amps(t, 1)).with_m_ddot(move |t| amps(t, 2))
    }

    fn m_dot_fn(&self, step: f64) -> SpinorFn {
        match &self.m_dot {
            Some(d) => d.clone(),
            None => {
                let m = self.m.clone();
                Arc::new(move |t| {
                    let (p, q) = (m(t + step), m(t - step));
                    [(p[0] - q[0]) / (2.0 * step), (p[1] - q[1]) / (2.0 * step)]
                })
            }
        }
    }

    fn validate(&self, grid: &TimeGrid, m_dot: &SpinorFn) -> Result<()> {
        for t in grid.times() {
            let m = (self.m)(t);
            let norm = (m[0].norm_sqr() + m[1].norm_sqr()).sqrt();
            if !norm.is_finite() || (norm - 1.0).abs() > TOL_NORM {
                return Err(Error::Normalization { norm });
            }
            let md = m_dot(t);
            let scale = 1.0 + (md[0].norm_sqr() + md[1].norm_sqr()).sqrt();
            let overlap = braket(&m, &md).norm();
            if overlap > TOL_TRANSPORT * scale {
                return Err(Error::Precondition(format!(
                    "path is not parallel transported at t = {t}: |<m|dm/dt>| = {overlap:e}"
                )));
            }
        }
        Ok(())
    }
}

/// Field of `H_opt = i(|ṁ⟩⟨m| − |m⟩⟨ṁ|)` for the family's path.
///
/// `ṁ` is differenced with the grid spacing when not supplied. Both the
/// normalization of `m` and `⟨m|ṁ⟩ = 0` are checked at every grid node.
pub fn uzdin_optimal(family: &UzdinFamily, grid: &TimeGrid) -> Result<FieldSpec> {
    if family.variant != UzdinVariant::Optimal {
        return Err(Error::Config(format!("uzdin_optimal called on a {:?} family", family.variant)));
    }
    optimal_field(family, grid)
}

fn optimal_field(family: &UzdinFamily, grid: &TimeGrid) -> Result<FieldSpec> {
    let m_dot = family.m_dot_fn(grid.dt());
    family.validate(grid, &m_dot)?;
    let span = (grid.t_start(), grid.t_end());
    let h_dot = family.m_ddot.as_ref().map(|m_ddot| {
        let (m, m_ddot) = (family.m.clone(), m_ddot.clone());
        Arc::new(move |t: f64| pauli_im(&m(t), &m_ddot(t))) as crate::field::VectorFn
    });
    let m = family.m.clone();
    Ok(FieldSpec::traceless(move |t| pauli_im(&m(t), &m_dot(t)), span).with_h_dot_arc(h_dot))
}

/// Field of the wasteful variants: `H_opt + φ̇|m⟩⟨m|`, minus `(φ̇/2)·1`
/// for the traceless one. Both trace the same Bloch path as `H_opt`.
pub fn uzdin_suboptimal(family: &UzdinFamily, grid: &TimeGrid) -> Result<FieldSpec> {
    let trace = match family.variant {
        UzdinVariant::Optimal => {
            return Err(Error::Config("uzdin_suboptimal needs a trace_nonzero or trace_zero family".into()))
        }
        UzdinVariant::TraceNonzero => true,
        UzdinVariant::TraceZero => false,
    };
    let phase = family
        .phase
        .clone()
        .ok_or_else(|| Error::Config("missing phase profile (phidot) for sub-optimal family".into()))?;
    let opt = optimal_field(family, grid)?;
    let m = family.m.clone();
    let bloch_at = move |t: f64| {
        let [c0, c1] = m(t);
        *bloch_from_state(&QubitState::from_parts_unchecked(c0, c1)).as_vec()
    };
    let h_dot = match (opt.has_analytic_h_dot(), phase.accel(0.0).is_some()) {
        (true, true) => {
            let (opt, phase, bloch_at) = (opt.clone(), phase.clone(), bloch_at.clone());
            Some(Arc::new(move |t: f64| {
                let a = bloch_at(t);
                let a_dot = 2.0 * opt.h(t).cross(&a);
                opt.h_dot(t, 0.0) + 0.5 * phase.accel(t).unwrap_or(0.0) * a + 0.5 * phase.rate(t) * a_dot
            }) as crate::field::VectorFn)
        }
        _ => None,
    };
    let (h_opt, rate) = (opt.clone(), phase.clone());
    let h = move |t: f64| h_opt.h(t) + 0.5 * rate.rate(t) * bloch_at(t);
    let h0 = move |t: f64| if trace { 0.5 * phase.rate(t) } else { 0.0 };
    Ok(FieldSpec::new(h0, h, opt.t_span()).with_h_dot_arc(h_dot))
}

/// Dispatches on the family's variant.
pub fn uzdin_field(family: &UzdinFamily, grid: &TimeGrid) -> Result<FieldSpec> {
    match family.variant {
        UzdinVariant::Optimal => uzdin_optimal(family, grid),
        _ => uzdin_suboptimal(family, grid),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn xy() -> (BlochVector, BlochVector) {
        (BlochVector::x(), BlochVector::y())
    }

    #[test]
    fn axis_special_cases() {
        let (a, b) = xy();
        assert_abs_diff_eq!(suboptimal_axis(FRAC_PI_2, &a, &b).unwrap(), Vec3::z(), epsilon = 1e-15);
        let s = 0.5_f64.sqrt();
        assert_abs_diff_eq!(suboptimal_axis(0.0, &a, &b).unwrap(), Vec3::new(s, s, 0.0), epsilon = 1e-15);
        let neg = BlochVector::new(-1.0, 0.0, 0.0).unwrap();
        assert!(matches!(suboptimal_axis(1.0, &a, &a), Err(Error::DegenerateEndpoints { .. })));
        assert!(matches!(suboptimal_axis(1.0, &a, &neg), Err(Error::DegenerateEndpoints { .. })));
    }

    #[test]
    fn closed_form_values() {
        assert_abs_diff_eq!(rotation_angle(FRAC_PI_2, 1.1), 1.1, epsilon = 1e-14);
        assert_abs_diff_eq!(rotation_angle(0.0, 1.1), PI, epsilon = 1e-14);
        assert_abs_diff_eq!(rotation_angle(FRAC_PI_4, FRAC_PI_2), 1.910_633_236_249_019, epsilon = 1e-12);
        assert_abs_diff_eq!(travel_time(FRAC_PI_2, FRAC_PI_2, 1.0), FRAC_PI_4, epsilon = 1e-15);
        assert_abs_diff_eq!(travel_time(0.0, 0.7, 1.0), FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(travel_time(FRAC_PI_4, FRAC_PI_2, 1.0), 0.955_316_618_124_509_5, epsilon = 1e-12);
        assert_abs_diff_eq!(arc_length_alpha(FRAC_PI_2, 0.9), 0.9, epsilon = 1e-15);
        assert_abs_diff_eq!(arc_length_alpha(0.3, PI - 1e-6), PI, epsilon = 1e-4);
        assert_abs_diff_eq!(arc_length_alpha(FRAC_PI_4, FRAC_PI_2), 1.654_656_919_906_525, epsilon = 1e-12);
        assert_abs_diff_eq!(delta_e_alpha(FRAC_PI_2, 0.9, 2.0), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(delta_e_alpha(0.0, 0.9, 1.0), 0.45_f64.sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(delta_e_alpha(FRAC_PI_4, FRAC_PI_2, 1.0), 0.75_f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn stationary_family_lands_on_target() {
        let (a, b) = xy();
        for alpha in [FRAC_PI_2, 1e-3, FRAC_PI_4, 2.5] {
            let fam = SuboptimalStationary::new(alpha, a, b, 1.0).unwrap();
            assert_abs_diff_eq!(fam.n_hat().norm(), 1.0, epsilon = 1e-12);
            let landed = a.rotated(fam.n_hat(), fam.phi());
            assert_abs_diff_eq!(*landed.as_vec(), *b.as_vec(), epsilon = 1e-12);
            let f = suboptimal_hamiltonian(&fam);
            assert_eq!(f.t_span(), (0.0, fam.t_ab()));
        }
        assert!(SuboptimalStationary::new(0.0, a, b, 1.0).is_err());
        assert!(SuboptimalStationary::new(1.0, a, b, 0.0).is_err());
    }

    #[test]
    fn phase_profiles() {
        let lin = PhaseProfile::linear(1.0, 2.0);
        assert_eq!((lin.value(1.0), lin.rate(5.0), lin.accel(0.0)), (3.0, 2.0, Some(0.0)));
        let log = PhaseProfile::logarithmic(1.0, 1.0).unwrap();
        assert_abs_diff_eq!(log.value(1.0), 2.0_f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(log.rate(1.0), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(log.accel(1.0).unwrap(), -0.25, epsilon = 1e-15);
        assert!(PhaseProfile::logarithmic(0.0, 1.0).is_err());
        let exp = PhaseProfile::exponential(1.0, 1.0);
        assert_abs_diff_eq!(exp.value(1.0), 1.0_f64.exp(), epsilon = 1e-15);
        assert_abs_diff_eq!(exp.rate(0.0), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn meridian_field_matches_closed_form() {
        let grid = TimeGrid::new(0.0, 1.0, 100).unwrap();
        let fam = UzdinFamily::meridian(0.0, 1.0, FRAC_PI_2);
        let f = uzdin_optimal(&fam, &grid).unwrap();
        assert_abs_diff_eq!(f.h(0.3), Vec3::new(-0.5, 0.0, 0.0), epsilon = 1e-15);
        assert_eq!(f.h0(0.3), 0.0);
        let still = UzdinFamily::meridian(0.4, 0.0, 0.0);
        assert_abs_diff_eq!(uzdin_optimal(&still, &grid).unwrap().h(0.5), Vec3::zeros());
    }

    #[test]
    fn latitude_circle_field() {
        let grid = TimeGrid::new(0.0, 1.0, 100).unwrap();
        let f = uzdin_optimal(&UzdinFamily::latitude_circle(1.0), &grid).unwrap();
        let r = 0.75_f64.sqrt();
        for t in [0.0_f64, 0.4, 1.0] {
            let expect = r * Vec3::new(-0.5 * (2.0 * t).cos(), -0.5 * (2.0 * t).sin(), r);
            assert_abs_diff_eq!(f.h(t), expect, epsilon = 1e-14);
            let expect_dot = r * Vec3::new((2.0 * t).sin(), -(2.0 * t).cos(), 0.0);
            assert_abs_diff_eq!(f.h_dot(t, 0.0), expect_dot, epsilon = 1e-14);
        }
    }

    #[test]
    fn suboptimal_variants() {
        let grid = TimeGrid::new(0.0, 1.0, 100).unwrap();
        let base = UzdinFamily::meridian(0.0, 1.0, 0.0).with_phase(PhaseProfile::constant_rate(2.0));
        let nz = uzdin_suboptimal(&base.clone().with_variant(UzdinVariant::TraceNonzero), &grid).unwrap();
        let z = uzdin_suboptimal(&base.clone().with_variant(UzdinVariant::TraceZero), &grid).unwrap();
        assert_eq!(nz.h0(0.2), 1.0);
        assert_eq!(z.h0(0.2), 0.0);
        assert_abs_diff_eq!(nz.h(0.2), z.h(0.2));
        let t: f64 = 0.2;
        assert_abs_diff_eq!(nz.h(t), Vec3::new(t.sin(), 0.5, t.cos()), epsilon = 1e-15);

        let still = UzdinFamily::meridian(0.0, 1.0, 0.0).with_phase(PhaseProfile::constant_rate(0.0));
        let opt = uzdin_optimal(&still, &grid).unwrap();
        let nz0 = uzdin_suboptimal(&still.with_variant(UzdinVariant::TraceNonzero), &grid).unwrap();
        assert_abs_diff_eq!(opt.h(0.7), nz0.h(0.7));
        assert_eq!(nz0.h0(0.7), 0.0);

        let missing = UzdinFamily::meridian(0.0, 1.0, 0.0).with_variant(UzdinVariant::TraceZero);
        assert!(matches!(uzdin_suboptimal(&missing, &grid), Err(Error::Config(_))));
        assert!(matches!(uzdin_optimal(&missing, &grid), Err(Error::Config(_))));
    }

    #[test]
    fn rejects_bad_paths() {
        let grid = TimeGrid::new(0.0, 1.0, 10).unwrap();
        let unnormalized = UzdinFamily::new(|_| [Complex64::from(1.0), Complex64::from(0.1)]);
        assert!(matches!(uzdin_optimal(&unnormalized, &grid), Err(Error::Normalization { .. })));
        let phased = UzdinFamily::new(|t: f64| [Complex64::from_polar(1.0, t), Complex64::from(0.0)]);
        assert!(matches!(uzdin_optimal(&phased, &grid), Err(Error::Precondition(_))));
    }

    #[test]
    fn numeric_derivative_fallback() {
        let grid = TimeGrid::new(0.0, 1.0, 1000).unwrap();
        let exact = uzdin_optimal(&UzdinFamily::latitude_circle(1.0), &grid).unwrap();
        let fd = uzdin_optimal(&UzdinFamily::latitude_circle(1.0).without_derivatives(), &grid).unwrap();
        assert!(!fd.has_analytic_h_dot());
        assert_abs_diff_eq!(fd.h(0.5), exact.h(0.5), epsilon = 1e-6);
    }
}
