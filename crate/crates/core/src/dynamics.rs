// SPDX-License-Identifier: Apache-2.0

//! Time evolution on a uniform grid.
//!
//! Both engines are fixed-step fourth-order Runge–Kutta with renormalization
//! after every step. Quadratures (path length, transport phase) use the
//! composite trapezoid rule on the same nodes.
//!
//! Path length uses `ds = 2ΔE dt`. The curvature module works with the speed
//! `v = ΔE` instead; see [`crate::curvature`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::quadrature::cumulative_trapezoid;
use crate::qubit::{bloch_from_state, energy_uncertainty, fubini_study_s0, BlochVector, QubitState, Vec3};

/// Largest tolerated pre-renormalization norm drift in a single step.
pub const MAX_STEP_DRIFT: f64 = 1e-4;
/// Default resolution: steps per unit time.
pub const STEPS_PER_UNIT_TIME: usize = 2000;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Uniform grid with `n_steps + 1` nodes on `[t_start, t_end]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    n_steps: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, n_steps: usize) -> Result<Self> {
        if !(t_start.is_finite() && t_end.is_finite()) || t_end <= t_start {
            return Err(Error::Config(format!("time grid needs t_end > t_start, got [{t_start}, {t_end}]")));
        }
        if n_steps < 2 {
            return Err(Error::Config(format!("time grid needs at least 2 steps, got {n_steps}")));
        }
        Ok(Self { t_start, t_end, n_steps })
    }

    /// Grid with the default density of [`STEPS_PER_UNIT_TIME`].
    pub fn with_default_density(t_start: f64, t_end: f64) -> Result<Self> {
        let n = ((t_end - t_start) * STEPS_PER_UNIT_TIME as f64).ceil().max(2.0) as usize;
        Self::new(t_start, t_end, n)
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn n_nodes(&self) -> usize {
        self.n_steps + 1
    }

    pub fn dt(&self) -> f64 {
        (self.t_end - self.t_start) / self.n_steps as f64
    }

    pub fn time(&self, k: usize) -> f64 {
        if k == self.n_steps {
            self.t_end
        } else {
            self.t_start + k as f64 * self.dt()
        }
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_nodes()).map(move |k| self.time(k))
    }
}

/// A sampled evolution. Immutable once built.
#[derive(Debug, Clone)]
pub struct Trajectory {
    grid: TimeGrid,
    states: Vec<QubitState>,
    bloch: Vec<BlochVector>,
    delta_e: Vec<f64>,
    s_accum: Vec<f64>,
    s0_from_start: Vec<f64>,
    norm_drift: f64,
}

impl Trajectory {
    /// Builds the derived per-node quantities from a list of states.
    pub fn from_states(grid: TimeGrid, states: Vec<QubitState>, field: &FieldSpec) -> Result<Self> {
        if states.len() != grid.n_nodes() {
            return Err(Error::Shape(format!("{} states for a grid of {} nodes", states.len(), grid.n_nodes())));
        }
        let bloch: Vec<BlochVector> = states.iter().map(bloch_from_state).collect();
        let delta_e = grid
            .times()
            .zip(&bloch)
            .map(|(t, a)| {
                let h = field.eval(t)?;
                energy_uncertainty(a, h.h0, &h.h)
            })
            .collect::<Result<Vec<f64>>>()?;
        let two_de: Vec<f64> = delta_e.iter().map(|e| 2.0 * e).collect();
        let s_accum = cumulative_trapezoid(&two_de, grid.dt());
        let s0_from_start = bloch.iter().map(|b| fubini_study_s0(&bloch[0], b)).collect();
        Ok(Self { grid, states, bloch, delta_e, s_accum, s0_from_start, norm_drift: 0.0 })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[QubitState] {
        &self.states
    }

    pub fn bloch(&self) -> &[BlochVector] {
        &self.bloch
    }

    pub fn delta_e(&self) -> &[f64] {
        &self.delta_e
    }

    /// Accumulated path length `s(t) = ∫ 2ΔE dt`.
    pub fn s_accum(&self) -> &[f64] {
        &self.s_accum
    }

    /// Geodesic distance from the initial node.
    pub fn s0_from_start(&self) -> &[f64] {
        &self.s0_from_start
    }

    /// Sum over steps of the pre-renormalization norm error `|‖ψ‖ − 1|`.
    pub fn norm_drift(&self) -> f64 {
        self.norm_drift
    }

    pub fn final_state(&self) -> &QubitState {
        self.states.last().expect("trajectory has at least three nodes")
    }
}

type Spinor = [Complex64; 2];

fn apply_generator(field: &FieldSpec, t: f64, psi: &Spinor) -> Result<Spinor> {
    let m = field.eval(t)?.to_matrix();
    let hpsi = [m[(0, 0)] * psi[0] + m[(0, 1)] * psi[1], m[(1, 0)] * psi[0] + m[(1, 1)] * psi[1]];
    Ok([-I * hpsi[0], -I * hpsi[1]])
}

fn axpy(psi: &Spinor, k: &Spinor, h: f64) -> Spinor {
    [psi[0] + k[0] * h, psi[1] + k[1] * h]
}

/// Integrates `i ∂_t|ψ⟩ = H(t)|ψ⟩` with RK4 and per-step renormalization.
pub fn schrodinger_evolve(field: &FieldSpec, psi0: &QubitState, grid: &TimeGrid) -> Result<Trajectory> {
    let dt = grid.dt();
    let mut psi: Spinor = psi0.amplitudes();
    let mut states = Vec::with_capacity(grid.n_nodes());
    states.push(*psi0);
    let mut drift_total = 0.0;
    for k in 0..grid.n_steps() {
        let t = grid.time(k);
        let k1 = apply_generator(field, t, &psi)?;
        let k2 = apply_generator(field, t + 0.5 * dt, &axpy(&psi, &k1, 0.5 * dt))?;
        let k3 = apply_generator(field, t + 0.5 * dt, &axpy(&psi, &k2, 0.5 * dt))?;
        let k4 = apply_generator(field, t + dt, &axpy(&psi, &k3, dt))?;
        for i in 0..2 {
            psi[i] += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (dt / 6.0);
        }
        let norm = (psi[0].norm_sqr() + psi[1].norm_sqr()).sqrt();
        let drift = (norm - 1.0).abs();
        if !norm.is_finite() || drift > MAX_STEP_DRIFT {
            return Err(Error::Integration { t: t + dt, drift });
        }
        drift_total += drift;
        psi = [psi[0] / norm, psi[1] / norm];
        states.push(QubitState::from_parts_unchecked(psi[0], psi[1]));
    }
    let mut traj = Trajectory::from_states(*grid, states, field)?;
    traj.norm_drift = drift_total;
    Ok(traj)
}

/// Integrates the Bloch-vector equation `dâ/dt = 2h × â` with RK4.
///
/// The trace part `h0` does not enter.
pub fn feynman_evolve(field: &FieldSpec, a0: &BlochVector, grid: &TimeGrid) -> Result<Vec<BlochVector>> {
    let dt = grid.dt();
    let rhs = |t: f64, a: &Vec3| -> Result<Vec3> { Ok(2.0 * field.eval(t)?.h.cross(a)) };
    let mut a = a0.to_vec();
    let mut out = Vec::with_capacity(grid.n_nodes());
    out.push(*a0);
    for k in 0..grid.n_steps() {
        let t = grid.time(k);
        let k1 = rhs(t, &a)?;
        let k2 = rhs(t + 0.5 * dt, &(a + k1 * (0.5 * dt)))?;
        let k3 = rhs(t + 0.5 * dt, &(a + k2 * (0.5 * dt)))?;
        let k4 = rhs(t + dt, &(a + k3 * dt))?;
        a += (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (dt / 6.0);
        let norm = a.norm();
        let drift = (norm - 1.0).abs();
        if !norm.is_finite() || drift > MAX_STEP_DRIFT {
            return Err(Error::Integration { t: t + dt, drift });
        }
        a /= norm;
        out.push(BlochVector::from_vec_unchecked(a));
    }
    Ok(out)
}

/// Removes the dynamical phase: `|m(t_k)⟩ = e^{iβ(t_k)}|ψ(t_k)⟩` with
/// `β(t) = ∫ ⟨ψ|H|ψ⟩ dt` by trapezoid quadrature.
pub fn parallel_transport(trajectory: &Trajectory, field: &FieldSpec) -> Result<Vec<QubitState>> {
    let grid = trajectory.grid();
    let (a, b) = field.t_span();
    let tol = 1e-9 * (1.0 + grid.t_end().abs());
    if grid.t_start() < a - tol || grid.t_end() > b + tol {
        return Err(Error::Shape(format!(
            "trajectory span [{}, {}] not covered by field span [{a}, {b}]",
            grid.t_start(),
            grid.t_end()
        )));
    }
    let energy = grid
        .times()
        .zip(trajectory.bloch())
        .map(|(t, bv)| Ok(field.eval(t)?.expectation(bv)))
        .collect::<Result<Vec<f64>>>()?;
    let beta = cumulative_trapezoid(&energy, grid.dt());
    Ok(trajectory.states().iter().zip(beta).map(|(psi, phase)| psi.with_phase(phase)).collect())
}

/// Largest `|⟨m_k|ṁ_k⟩|` over interior nodes, with `ṁ` from a central
/// difference. Zero for an exactly parallel-transported sequence.
pub fn transport_residual(states: &[QubitState], dt: f64) -> f64 {
    states
        .windows(3)
        .map(|w| {
            let fwd = w[1].inner(&w[2]);
            let bwd = w[1].inner(&w[0]);
            ((fwd - bwd) / (2.0 * dt)).norm()
        })
        .fold(0.0, f64::max)
}

/// Total length `s = ∫ 2ΔE dt` of the traced path.
pub fn path_length(trajectory: &Trajectory) -> f64 {
    *trajectory.s_accum().last().unwrap_or(&0.0)
}
