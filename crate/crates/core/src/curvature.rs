// SPDX-License-Identifier: Apache-2.0

//! Curvature coefficient `κ²_AC` of a qubit evolution.
//!
//! Three independent routes: a closed form in `(a, h, ḣ)`, an expectation
//! value form built from `Δh = (H − ⟨H⟩)/ΔE`, and a finite-difference
//! covariant derivative of the transported state.
//!
//! Normalization differs from [`crate::dynamics`]: here arc length uses the
//! speed `v = ΔE`, not `2ΔE`. `κ²` is consistent within this module.

use num_complex::Complex64;
use serde::Serialize;

use crate::dynamics::{parallel_transport, Trajectory};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::qubit::{BlochVector, CMatrix2, QubitState, Vec3};

/// Smallest admissible `h² − (a·h)²` (or `ΔE`) before the evolution is
/// treated as stationary.
pub const TOL_SING: f64 = 1e-12;
/// Negative round-off tolerated before a curvature value is an error.
pub const TOL_NEG: f64 = 1e-9;
/// Allowed `|a·h|` for the transverse form.
pub const TOL_TRANSVERSE: f64 = 1e-9;
/// Allowed real part of `⟨[(Δh)², Δh′]⟩` before a node is flagged.
pub const TOL_COMMUTATOR: f64 = 1e-10;

fn clamp_nonneg(k: f64) -> Result<f64> {
    if !k.is_finite() {
        Err(Error::Numerical(format!("non-finite curvature {k}")))
    } else if k >= 0.0 {
        Ok(k)
    } else if k > -TOL_NEG {
        Ok(0.0)
    } else {
        Err(Error::Numerical(format!("negative curvature {k:e}")))
    }
}

/// Closed form in terms of the Bloch vector and field. The trace part of
/// the Hamiltonian does not enter and is not an argument.
pub fn curvature_bloch(a: &BlochVector, h: &Vec3, h_dot: &Vec3) -> Result<f64> {
    let a = a.as_vec();
    let ah = a.dot(h);
    let d = h.norm_squared() - ah * ah;
    if d <= TOL_SING {
        return Err(Error::SingularEvolution(format!("h^2 - (a.h)^2 = {d:e}: state is an eigenstate")));
    }
    let t1 = 4.0 * ah * ah / d;
    let hh = h.norm_squared() * h_dot.norm_squared() - h.dot(h_dot).powi(2);
    let w = a.dot(h_dot) * h - ah * h_dot;
    let t2 = (hh - w.norm_squared()) / (d * d * d);
    let t3 = 4.0 * ah * a.dot(&h.cross(h_dot)) / (d * d);
    clamp_nonneg(t1 + t2 + t3)
}

/// Transverse case `a·h = 0`: `|dĥ/dt|²/h²`.
pub fn curvature_transverse(field: &FieldSpec, a: &BlochVector, t: f64, step: f64) -> Result<f64> {
    let h = field.eval(t)?.h;
    let ah = a.as_vec().dot(&h);
    if ah.abs() > TOL_TRANSVERSE * h.norm().max(1.0) {
        return Err(Error::Precondition(format!("a.h = {ah:e} is not zero at t = {t}")));
    }
    let h2 = h.norm_squared();
    if h2 <= TOL_SING {
        return Err(Error::SingularEvolution(format!("field vanishes at t = {t}")));
    }
    let h_dot = field.h_dot(t, step);
    let unit = h / h2.sqrt();
    let unit_dot = (h_dot - unit.dot(&h_dot) * unit) / h2.sqrt();
    clamp_nonneg(unit_dot.norm_squared() / h2)
}

fn expect(psi: &[Complex64; 2], m: &CMatrix2) -> Complex64 {
    let v = [m[(0, 0)] * psi[0] + m[(0, 1)] * psi[1], m[(1, 0)] * psi[0] + m[(1, 1)] * psi[1]];
    psi[0].conj() * v[0] + psi[1].conj() * v[1]
}

/// `Δh = (H − ⟨H⟩)/ΔE` at one node.
fn delta_h(trajectory: &Trajectory, field: &FieldSpec, j: usize) -> Result<CMatrix2> {
    let t = trajectory.grid().time(j);
    let de = trajectory.delta_e()[j];
    if de <= TOL_SING {
        return Err(Error::SingularEvolution(format!("energy uncertainty vanishes at t = {t}")));
    }
    let h = field.eval(t)?;
    let mean = h.expectation(&trajectory.bloch()[j]);
    Ok((h.to_matrix() - CMatrix2::identity() * Complex64::from(mean)) / Complex64::from(de))
}

/// Expectation-form curvature at one node, with diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpectationCurvature {
    pub kappa_sq: f64,
    /// Real part of `⟨[(Δh)², Δh′]⟩`; zero up to round-off.
    pub commutator_real: f64,
    /// Set when `commutator_real` exceeds [`TOL_COMMUTATOR`].
    pub flagged: bool,
    /// Set at the first and last node, where the stencil is one-sided.
    pub boundary: bool,
}

/// `⟨Δh⁴⟩ − ⟨Δh²⟩² + ⟨Δh′²⟩ − ⟨Δh′⟩² + i⟨[Δh², Δh′]⟩` at node `k`.
pub fn curvature_expectation_detailed(
    trajectory: &Trajectory,
    field: &FieldSpec,
    k: usize,
) -> Result<ExpectationCurvature> {
    let n = trajectory.len();
    if k >= n {
        return Err(Error::Shape(format!("node {k} outside trajectory of {n} nodes")));
    }
    let dt = trajectory.grid().dt();
    let dh = delta_h(trajectory, field, k)?;
    let v = trajectory.delta_e()[k];
    let boundary = k == 0 || k == n - 1;
    let dh_t = if k == 0 {
        let (d1, d2) = (delta_h(trajectory, field, 1)?, delta_h(trajectory, field, 2)?);
        (d1 * Complex64::from(4.0) - dh * Complex64::from(3.0) - d2) / Complex64::from(2.0 * dt)
    } else if k == n - 1 {
        let (d1, d2) = (delta_h(trajectory, field, k - 1)?, delta_h(trajectory, field, k - 2)?);
        (dh * Complex64::from(3.0) - d1 * Complex64::from(4.0) + d2) / Complex64::from(2.0 * dt)
    } else {
        (delta_h(trajectory, field, k + 1)? - delta_h(trajectory, field, k - 1)?) / Complex64::from(2.0 * dt)
    };
    let dh_prime = dh_t / Complex64::from(v);
    let psi = trajectory.states()[k].amplitudes();
    let dh2 = dh * dh;
    let stationary = expect(&psi, &(dh2 * dh2)) - expect(&psi, &dh2).powi(2);
    let moving = expect(&psi, &(dh_prime * dh_prime)) - expect(&psi, &dh_prime).powi(2);
    let comm = expect(&psi, &(dh2 * dh_prime - dh_prime * dh2));
    let total = stationary + moving + Complex64::i() * comm;
    Ok(ExpectationCurvature {
        kappa_sq: clamp_nonneg(total.re)?,
        commutator_real: comm.re,
        flagged: comm.re.abs() > TOL_COMMUTATOR,
        boundary,
    })
}

pub fn curvature_expectation(trajectory: &Trajectory, field: &FieldSpec, k: usize) -> Result<f64> {
    Ok(curvature_expectation_detailed(trajectory, field, k)?.kappa_sq)
}

type Spinor = [Complex64; 2];

fn sp(a: &QubitState) -> Spinor {
    a.amplitudes()
}

/// Finite-difference second covariant derivative of the transported state,
/// reparameterized by arc length `ds = ΔE dt`, at interior node `k`.
///
/// Transports the whole trajectory on every call; use
/// [`curvature_numeric_series`] for many nodes.
pub fn curvature_numeric_oracle(trajectory: &Trajectory, field: &FieldSpec, k: usize) -> Result<f64> {
    let transported = parallel_transport(trajectory, field)?;
    numeric_at(trajectory, &transported, k)
}

/// Oracle values at every interior node.
pub fn curvature_numeric_series(trajectory: &Trajectory, field: &FieldSpec) -> Result<Vec<f64>> {
    let transported = parallel_transport(trajectory, field)?;
    (1..trajectory.len() - 1).map(|k| numeric_at(trajectory, &transported, k)).collect()
}

fn numeric_at(trajectory: &Trajectory, psi: &[QubitState], k: usize) -> Result<f64> {
    let n = trajectory.len();
    if k == 0 || k + 1 >= n {
        return Err(Error::Precondition(format!("numeric curvature needs an interior node, got {k} of {n}")));
    }
    let dt = trajectory.grid().dt();
    let de = trajectory.delta_e();
    let v = de[k];
    if v <= TOL_SING {
        return Err(Error::SingularEvolution(format!("energy uncertainty vanishes at node {k}")));
    }
    let v_dot = (de[k + 1] - de[k - 1]) / (2.0 * dt);
    let (prev, cur, next) = (sp(&psi[k - 1]), sp(&psi[k]), sp(&psi[k + 1]));
    let mut n_vec = [Complex64::from(0.0); 2];
    for i in 0..2 {
        let d1 = (next[i] - prev[i]) / (2.0 * dt);
        let d2 = (next[i] - 2.0 * cur[i] + prev[i]) / (dt * dt);
        n_vec[i] = d2 / (v * v) - d1 * (v_dot / (v * v * v));
    }
    let overlap = cur[0].conj() * n_vec[0] + cur[1].conj() * n_vec[1];
    let projected = [n_vec[0] - overlap * cur[0], n_vec[1] - overlap * cur[1]];
    clamp_nonneg(projected[0].norm_sqr() + projected[1].norm_sqr())
}

/// Curvature at one node by the available routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureSample {
    pub t: f64,
    pub kappa_bloch: f64,
    pub kappa_expect: Option<f64>,
    pub kappa_numeric: Option<f64>,
}

/// Samples at every interior node. `ḣ` is analytic when the field carries
/// it, otherwise a central difference with the grid spacing.
pub fn curvature_samples(
    trajectory: &Trajectory,
    field: &FieldSpec,
    with_oracle: bool,
) -> Result<Vec<CurvatureSample>> {
    let grid = trajectory.grid();
    let numeric = if with_oracle { Some(curvature_numeric_series(trajectory, field)?) } else { None };
    (1..trajectory.len() - 1)
        .map(|k| {
            let t = grid.time(k);
            let h = field.eval(t)?.h;
            let kappa_bloch = curvature_bloch(&trajectory.bloch()[k], &h, &field.h_dot(t, grid.dt()))?;
            Ok(CurvatureSample {
                t,
                kappa_bloch,
                kappa_expect: Some(curvature_expectation(trajectory, field, k)?),
                kappa_numeric: numeric.as_ref().map(|v| v[k - 1]),
            })
        })
        .collect()
}
