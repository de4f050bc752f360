// SPDX-License-Identifier: Apache-2.0

//! Geodesic, speed and hybrid efficiencies and the scenario classifier.

use std::fmt;

use serde::Serialize;

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::quadrature::trapezoid_mean;
use crate::qubit::{energy_uncertainty, spectral_norm, BlochVector, Vec3};

/// Below this path length `η_GE` is taken as its `0/0` limit of 1.
pub const TOL_S: f64 = 1e-9;
/// A factor within this distance of 1 counts as 1.
pub const TOL_ONE: f64 = 1e-3;
/// Relative tolerance when comparing the two loss diagnostics.
pub const TOL_CMP: f64 = 1e-3;
/// Quadrature slack allowed above 1 for an efficiency.
pub const TOL_RANGE: f64 = 1e-9;

/// `s0(t_A, t_B)/s` over the whole trajectory.
pub fn geodesic_efficiency_global(trajectory: &Trajectory) -> Result<f64> {
    let k = trajectory.len() - 1;
    let s = trajectory.s_accum()[k];
    if s <= TOL_S {
        return Err(Error::ZeroPath(s));
    }
    Ok(trajectory.s0_from_start()[k] / s)
}

/// `s0(t_A, t_k)/s(t_k)`, equal to 1 while the path length is below [`TOL_S`].
pub fn geodesic_efficiency_instant(trajectory: &Trajectory, k: usize) -> f64 {
    let s = trajectory.s_accum()[k];
    if s < TOL_S {
        1.0
    } else {
        trajectory.s0_from_start()[k] / s
    }
}

/// `ΔE/‖H‖_SP`.
pub fn speed_efficiency(a: &BlochVector, h0: f64, h: &Vec3) -> Result<f64> {
    let norm = spectral_norm(h0, h);
    if norm == 0.0 {
        return Err(Error::ZeroHamiltonian);
    }
    Ok(energy_uncertainty(a, h0, h)? / norm)
}

fn check_rate_args(cdot_sq: f64, phidot: f64) -> Result<()> {
    if cdot_sq.is_nan() || cdot_sq < 0.0 || !phidot.is_finite() {
        return Err(Error::Config(format!("need cdot_sq >= 0 and finite phidot, got ({cdot_sq}, {phidot})")));
    }
    if cdot_sq == 0.0 && phidot == 0.0 {
        return Err(Error::ZeroHamiltonian);
    }
    Ok(())
}

/// Closed-form `η_SE` for `H_opt + φ̇|m⟩⟨m|`, with `cdot_sq = |ċ0|² + |ċ1|²`.
pub fn speed_efficiency_tracenonzero(cdot_sq: f64, phidot: f64) -> Result<f64> {
    check_rate_args(cdot_sq, phidot)?;
    let p2 = phidot * phidot;
    let denom = 0.5 * p2 + cdot_sq + 0.5 * phidot.abs() * (p2 + 4.0 * cdot_sq).sqrt();
    Ok(cdot_sq.sqrt() / denom.sqrt())
}

/// Closed-form `η_SE` for the traceless variant.
pub fn speed_efficiency_tracezero(cdot_sq: f64, phidot: f64) -> Result<f64> {
    check_rate_args(cdot_sq, phidot)?;
    Ok(cdot_sq.sqrt() / (0.25 * phidot * phidot + cdot_sq).sqrt())
}

/// Per-node `η_SE(t_k)` along a trajectory.
pub fn speed_efficiency_series(trajectory: &Trajectory, field: &FieldSpec) -> Result<Vec<f64>> {
    trajectory
        .grid()
        .times()
        .zip(trajectory.bloch())
        .map(|(t, a)| {
            let h = field.eval(t)?;
            speed_efficiency(a, h.h0, &h.h)
        })
        .collect()
}

/// Per-node `η_GE(t_k)` anchored at the first node.
pub fn geodesic_efficiency_series(trajectory: &Trajectory) -> Vec<f64> {
    (0..trajectory.len()).map(|k| geodesic_efficiency_instant(trajectory, k)).collect()
}

/// Trapezoid time averages `(η̄_GE, η̄_SE)`.
pub fn averaged_efficiencies(trajectory: &Trajectory, field: &FieldSpec) -> Result<(f64, f64)> {
    let dt = trajectory.grid().dt();
    let ge = trapezoid_mean(&geodesic_efficiency_series(trajectory), dt);
    let se = trapezoid_mean(&speed_efficiency_series(trajectory, field)?, dt);
    Ok((ge, se))
}

/// `η_HE = η̄_GE · η̄_SE`. Inputs may exceed 1 by at most [`TOL_RANGE`].
pub fn hybrid_efficiency(eta_ge_bar: f64, eta_se_bar: f64) -> Result<f64> {
    for (name, value) in [("eta_ge_bar", eta_ge_bar), ("eta_se_bar", eta_se_bar)] {
        if !(0.0..=1.0 + TOL_RANGE).contains(&value) {
            return Err(Error::Range { name, value });
        }
    }
    Ok(eta_ge_bar * eta_se_bar)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    GeodesicUnwasteful,
    NongeodesicUnwasteful,
    GeodesicWasteful,
    MoreWastefulThanNongeodesic,
    LessWastefulThanNongeodesic,
    AsWastefulAsNongeodesic,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::GeodesicUnwasteful => "GeodesicUnwasteful",
            Self::NongeodesicUnwasteful => "NongeodesicUnwasteful",
            Self::GeodesicWasteful => "GeodesicWasteful",
            Self::MoreWastefulThanNongeodesic => "MoreWastefulThanNongeodesic",
            Self::LessWastefulThanNongeodesic => "LessWastefulThanNongeodesic",
            Self::AsWastefulAsNongeodesic => "AsWastefulAsNongeodesic",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Efficiencies of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EfficiencyReport {
    pub eta_ge_t: Vec<f64>,
    pub eta_se_t: Vec<f64>,
    pub eta_ge_bar: f64,
    pub eta_se_bar: f64,
    pub eta_he: f64,
    /// `⟨Δs/s⟩ = 1 − η̄_GE`.
    pub mean_ds_over_s: f64,
    /// `⟨Δε/ε⟩ = 1 − η̄_SE`, with `Δε = ‖H‖_SP − ΔE`.
    pub mean_de_over_e: f64,
    pub classification: Classification,
}

/// Builds the full report for a trajectory; `tol_one` is passed to [`classify`].
pub fn efficiency_report(trajectory: &Trajectory, field: &FieldSpec, tol_one: f64) -> Result<EfficiencyReport> {
    let dt = trajectory.grid().dt();
    let eta_ge_t = geodesic_efficiency_series(trajectory);
    let eta_se_t = speed_efficiency_series(trajectory, field)?;
    let eta_ge_bar = trapezoid_mean(&eta_ge_t, dt);
    let eta_se_bar = trapezoid_mean(&eta_se_t, dt);
    let mean_ds_over_s = trapezoid_mean(&eta_ge_t.iter().map(|e| 1.0 - e).collect::<Vec<_>>(), dt);
    let mean_de_over_e = trapezoid_mean(&eta_se_t.iter().map(|e| 1.0 - e).collect::<Vec<_>>(), dt);
    let eta_he = hybrid_efficiency(eta_ge_bar, eta_se_bar)?;
    let mut report = EfficiencyReport {
        eta_ge_t,
        eta_se_t,
        eta_ge_bar,
        eta_se_bar,
        eta_he,
        mean_ds_over_s,
        mean_de_over_e,
        classification: Classification::GeodesicUnwasteful,
    };
    report.classification = classify(&report, tol_one);
    Ok(report)
}

/// Assigns the scenario label from the averaged efficiencies and diagnostics.
pub fn classify(report: &EfficiencyReport, tol_one: f64) -> Classification {
    classify_values(report.eta_ge_bar, report.eta_se_bar, report.mean_ds_over_s, report.mean_de_over_e, tol_one)
}

pub fn classify_values(
    eta_ge_bar: f64,
    eta_se_bar: f64,
    ds_over_s: f64,
    de_over_e: f64,
    tol_one: f64,
) -> Classification {
    let geodesic = (1.0 - eta_ge_bar).abs() <= tol_one;
    let unwasteful = (1.0 - eta_se_bar).abs() <= tol_one;
    match (geodesic, unwasteful) {
        (true, true) => Classification::GeodesicUnwasteful,
        (false, true) => Classification::NongeodesicUnwasteful,
        (true, false) => Classification::GeodesicWasteful,
        (false, false) => {
            let scale = ds_over_s.abs().max(de_over_e.abs());
            if (de_over_e - ds_over_s).abs() <= TOL_CMP * scale {
                Classification::AsWastefulAsNongeodesic
            } else if de_over_e > ds_over_s {
                Classification::MoreWastefulThanNongeodesic
            } else {
                Classification::LessWastefulThanNongeodesic
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{schrodinger_evolve, TimeGrid};
    use crate::qubit::QubitState;
    use approx::assert_abs_diff_eq;

    #[test]
    fn speed_efficiency_cases() {
        let a = BlochVector::new(0.75_f64.sqrt(), 0.0, 0.5).unwrap();
        assert_abs_diff_eq!(speed_efficiency(&a, 0.0, &Vec3::z()).unwrap(), 0.75_f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(speed_efficiency(&BlochVector::z(), 0.0, &Vec3::x()).unwrap(), 1.0);
        assert!(matches!(speed_efficiency(&a, 0.0, &Vec3::zeros()), Err(Error::ZeroHamiltonian)));
    }

    #[test]
    fn closed_form_speed_efficiencies() {
        assert_eq!(speed_efficiency_tracenonzero(1.0, 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(speed_efficiency_tracenonzero(1.0, 2.0).unwrap(), 2.0_f64.sqrt() - 1.0, epsilon = 1e-15);
        assert_eq!(speed_efficiency_tracezero(1.0, 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(speed_efficiency_tracezero(1.0, 2.0).unwrap(), 0.5_f64.sqrt(), epsilon = 1e-15);
        // residual from 1 − φ̇²/8 is the next term 3φ̇⁴/128
        let gap = speed_efficiency_tracezero(1.0, 0.1).unwrap() - (1.0 - 0.00125);
        assert_abs_diff_eq!(gap, 3.0e-4 / 128.0, epsilon = 1e-8);
        assert!(matches!(speed_efficiency_tracezero(0.0, 0.0), Err(Error::ZeroHamiltonian)));
        assert!(matches!(speed_efficiency_tracenonzero(-1.0, 0.0), Err(Error::Config(_))));
    }

    #[test]
    fn hybrid_and_range() {
        assert_eq!(hybrid_efficiency(1.0, 1.0).unwrap(), 1.0);
        assert_abs_diff_eq!(hybrid_efficiency(0.98, 1.0).unwrap(), 0.98);
        assert_abs_diff_eq!(hybrid_efficiency(0.98, 0.75_f64.sqrt()).unwrap(), 0.848_705, epsilon = 1e-6);
        assert!(matches!(hybrid_efficiency(1.2, 0.5), Err(Error::Range { name: "eta_ge_bar", .. })));
        assert!(matches!(hybrid_efficiency(0.5, -0.1), Err(Error::Range { name: "eta_se_bar", .. })));
    }

    #[test]
    fn classifier_rules() {
        use Classification::*;
        assert_eq!(classify_values(1.0, 1.0, 0.0, 0.0, TOL_ONE), GeodesicUnwasteful);
        assert_eq!(classify_values(0.98, 1.0, 0.02, 0.0, TOL_ONE), NongeodesicUnwasteful);
        assert_eq!(classify_values(0.9995, 0.8, 0.0005, 0.2, TOL_ONE), GeodesicWasteful);
        assert_eq!(classify_values(0.98, 0.7, 0.02, 0.30, TOL_ONE), MoreWastefulThanNongeodesic);
        assert_eq!(classify_values(0.7, 0.98, 0.30, 0.02, TOL_ONE), LessWastefulThanNongeodesic);
        assert_eq!(classify_values(0.9, 0.9, 0.1, 0.10005, TOL_ONE), AsWastefulAsNongeodesic);
        assert_eq!(MoreWastefulThanNongeodesic.to_string(), "MoreWastefulThanNongeodesic");
    }

    #[test]
    fn zero_path_and_first_node() {
        let grid = TimeGrid::new(0.0, 1.0, 10).unwrap();
        let psi = QubitState::from_real(1.0, 0.0).unwrap();
        let f = FieldSpec::constant(1.0, Vec3::z(), (0.0, 1.0));
        let traj = schrodinger_evolve(&f, &psi, &grid).unwrap();
        assert!(matches!(geodesic_efficiency_global(&traj), Err(Error::ZeroPath(_))));
        assert_eq!(geodesic_efficiency_instant(&traj, 0), 1.0);
        assert_eq!(speed_efficiency_series(&traj, &f).unwrap()[3], 0.0);
    }
}
