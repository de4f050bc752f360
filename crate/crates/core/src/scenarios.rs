// SPDX-License-Identifier: Apache-2.0

//! Scenario registry, report runs and parameter sweeps.
//!
//! Curves are written as CSV with 15 significant digits; reports as JSON.
//! Output is a pure function of the configuration.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::curvature::curvature_samples;
use crate::dynamics::{schrodinger_evolve, TimeGrid, Trajectory, STEPS_PER_UNIT_TIME};
use crate::efficiency::{
    efficiency_report, speed_efficiency_tracenonzero, speed_efficiency_tracezero, Classification, EfficiencyReport,
    TOL_ONE,
};
use crate::error::{Error, Result};
use crate::families::{
    arc_length_alpha, delta_e_alpha, suboptimal_hamiltonian, travel_time, uzdin_field, PhaseProfile,
    SuboptimalStationary, UzdinFamily, UzdinVariant,
};
use crate::field::FieldSpec;
use crate::qubit::{state_from_bloch, BlochVector, QubitState, Vec3};

/// Margin that keeps the α sweep off the singular endpoints 0 and π.
pub const ALPHA_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Example1,
    Example2,
    Example3,
    Example4,
    SuboptimalFamily,
    Custom,
}

impl ScenarioKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Example1 => "example1",
            Self::Example2 => "example2",
            Self::Example3 => "example3",
            Self::Example4 => "example4",
            Self::SuboptimalFamily => "suboptimal_family",
            Self::Custom => "custom",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "example1" => Self::Example1,
            "example2" => Self::Example2,
            "example3" => Self::Example3,
            "example4" => Self::Example4,
            "suboptimal_family" => Self::SuboptimalFamily,
            "custom" => Self::Custom,
            other => return Err(Error::Config(format!("unknown scenario '{other}'"))),
        })
    }

    /// Parameter names accepted by the scenario.
    fn allowed(&self) -> &'static [&'static str] {
        match self {
            Self::Example1 => &["omega0", "theta0", "varphi0"],
            Self::Example2 => &["omega0", "nu0", "Omega0", "theta0", "varphi0"],
            Self::Example3 | Self::Example4 => &["gamma"],
            Self::SuboptimalFamily => &["alpha", "theta_ab", "E"],
            Self::Custom => &[],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Trajectory,
    Efficiency,
    Curvature,
    Report,
}

fn all_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Trajectory, OutputKind::Efficiency, OutputKind::Curvature, OutputKind::Report]
}

/// A run description, read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub parameters: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_span: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_steps: Option<usize>,
    #[serde(default = "all_outputs")]
    pub outputs: Vec<OutputKind>,
    /// Rows `(t, h0, hx, hy, hz)` for `custom`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_table: Option<Vec<[f64; 5]>>,
    /// Initial Bloch vector for `custom`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_bloch: Option<[f64; 3]>,
}

impl ScenarioConfig {
    pub fn new(kind: ScenarioKind) -> Self {
        Self {
            scenario: kind.as_str().to_string(),
            name: None,
            parameters: BTreeMap::new(),
            t_span: None,
            n_steps: None,
            outputs: all_outputs(),
            field_table: None,
            initial_bloch: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    pub fn with_t_span(mut self, t_a: f64, t_b: f64) -> Self {
        self.t_span = Some([t_a, t_b]);
        self
    }

    pub fn with_steps(mut self, n_steps: usize) -> Self {
        self.n_steps = Some(n_steps);
        self
    }

    pub fn with_outputs(mut self, outputs: Vec<OutputKind>) -> Self {
        self.outputs = outputs;
        self
    }

    pub fn kind(&self) -> Result<ScenarioKind> {
        ScenarioKind::parse(&self.scenario)
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.scenario.clone())
    }

    fn param_or(&self, key: &str, default: f64) -> f64 {
        self.parameters.get(key).copied().unwrap_or(default)
    }

    fn param(&self, key: &str) -> Result<f64> {
        self.parameters
            .get(key)
            .copied()
            .ok_or_else(|| Error::Config(format!("scenario '{}' requires parameter '{key}'", self.scenario)))
    }
}

/// Field, initial state and grid of a configured run.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub field: FieldSpec,
    pub psi0: QubitState,
    pub grid: TimeGrid,
    /// Remarks carried into the JSON report.
    pub notes: Vec<String>,
}

fn grid_for(config: &ScenarioConfig, default_span: (f64, f64)) -> Result<TimeGrid> {
    let (a, b) = config.t_span.map(|[a, b]| (a, b)).unwrap_or(default_span);
    match config.n_steps {
        Some(n) => TimeGrid::new(a, b, n),
        None => {
            if a.is_nan() || b.is_nan() || b <= a {
                return Err(Error::Config(format!("t_span must satisfy t_A < t_B, got [{a}, {b}]")));
            }
            TimeGrid::new(a, b, ((b - a) * STEPS_PER_UNIT_TIME as f64).ceil().max(2.0) as usize)
        }
    }
}

fn finite(key: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Config(format!("parameter '{key}' must be finite, got {v}")))
    }
}

/// Builds the field, initial state and grid for a configuration.
pub fn build_scenario(config: &ScenarioConfig) -> Result<Scenario> {
    let kind = config.kind()?;
    if let Some(bad) = config.parameters.keys().find(|k| !kind.allowed().contains(&k.as_str())) {
        return Err(Error::Config(format!("parameter '{bad}' is not used by scenario '{}'", config.scenario)));
    }
    for (k, v) in &config.parameters {
        finite(k, *v)?;
    }
    let mut notes = Vec::new();
    let (field, psi0, grid) = match kind {
        ScenarioKind::Example1 => {
            let grid = grid_for(config, (0.0, 1.0))?;
            let fam = UzdinFamily::meridian(
                config.param_or("theta0", 0.0),
                config.param_or("omega0", 1.0),
                config.param_or("varphi0", 0.0),
            );
            (uzdin_field(&fam, &grid)?, fam.state(grid.t_start())?, grid)
        }
        ScenarioKind::Example2 => {
            let grid = grid_for(config, (0.0, 1.0))?;
            let nu0 = match (config.parameters.get("nu0"), config.parameters.get("Omega0")) {
                (Some(_), Some(_)) => return Err(Error::Config("give only one of 'nu0' and 'Omega0'".into())),
                (Some(v), None) | (None, Some(v)) => *v,
                (None, None) => 0.1,
            };
            let omega0 = config.param_or("omega0", 1.0);
            let fam = UzdinFamily::meridian(config.param_or("theta0", 0.0), omega0, config.param_or("varphi0", 0.0))
                .with_phase(PhaseProfile::constant_rate(nu0))
                .with_variant(UzdinVariant::TraceNonzero);
            let closed = omega0.abs() / (nu0.abs() + (nu0 * nu0 + omega0 * omega0).sqrt());
            notes.push(format!(
                "eta_se_bar closed form omega0/(|nu0| + sqrt(nu0^2 + omega0^2)) = {closed:.9}; \
                 an earlier published estimate of ~0.87 for omega0 = 1, nu0 = 0.1 corresponds to nu0 ~ 0.14"
            ));
            (uzdin_field(&fam, &grid)?, fam.state(grid.t_start())?, grid)
        }
        ScenarioKind::Example3 => {
            let grid = grid_for(config, (0.0, 1.0))?;
            let gamma = config.param_or("gamma", 1.0);
            let field = FieldSpec::constant(0.0, Vec3::new(0.0, 0.0, gamma), (grid.t_start(), grid.t_end()));
            (field, QubitState::from_real(0.75_f64.sqrt(), 0.5)?, grid)
        }
        ScenarioKind::Example4 => {
            let grid = grid_for(config, (0.0, 1.0))?;
            let fam = UzdinFamily::latitude_circle(config.param_or("gamma", 1.0));
            (uzdin_field(&fam, &grid)?, fam.state(grid.t_start())?, grid)
        }
        ScenarioKind::SuboptimalFamily => {
            let alpha = config.param("alpha")?;
            let theta_ab = config.param("theta_ab")?;
            let a = BlochVector::x();
            let b = BlochVector::new(theta_ab.cos(), theta_ab.sin(), 0.0)?;
            let fam = SuboptimalStationary::new(alpha, a, b, config.param_or("E", 1.0))?;
            let grid = grid_for(config, (0.0, fam.t_ab()))?;
            let field = suboptimal_hamiltonian(&fam).with_span((grid.t_start(), grid.t_end()));
            (field, state_from_bloch(&a), grid)
        }
        ScenarioKind::Custom => {
            let rows = config
                .field_table
                .as_ref()
                .ok_or_else(|| Error::Config("scenario 'custom' requires 'field_table'".into()))?;
            let [x, y, z] = config
                .initial_bloch
                .ok_or_else(|| Error::Config("scenario 'custom' requires 'initial_bloch'".into()))?;
            let field = FieldSpec::from_table(rows)?;
            let grid = grid_for(config, field.t_span())?;
            let a0 = BlochVector::new(x, y, z).map_err(|e| Error::Config(format!("initial_bloch: {e}")))?;
            (field, state_from_bloch(&a0), grid)
        }
    };
    Ok(Scenario { kind, field, psi0, grid, notes })
}

/// One row of the summary table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub scenario: String,
    pub eta_ge_bar: f64,
    pub eta_se_bar: f64,
    pub eta_he: f64,
    pub classification: Classification,
}

/// JSON document written for a run.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub scenario: String,
    pub name: String,
    pub parameters: BTreeMap<String, f64>,
    pub t_span: [f64; 2],
    pub n_steps: usize,
    pub eta_ge_bar: f64,
    pub eta_se_bar: f64,
    pub eta_he: f64,
    pub eta_ge_final: f64,
    pub path_length: f64,
    pub geodesic_distance: f64,
    pub mean_ds_over_s: f64,
    pub mean_de_over_e: f64,
    pub classification: Classification,
    pub notes: Vec<String>,
}

/// Everything produced by [`run_report`].
#[derive(Debug, Clone)]
pub struct ReportRun {
    pub row: ReportRow,
    pub document: ReportDocument,
    pub trajectory: Trajectory,
    pub efficiency: EfficiencyReport,
    pub files: Vec<PathBuf>,
}

/// A header plus numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| format_number(*v)))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is ascii"))
    }

    pub fn write_csv_file(&self, path: &Path) -> Result<()> {
        self.write_csv(BufWriter::new(File::create(path)?))
    }
}

/// 15 significant digits in scientific notation; `-0` printed as `0`.
pub fn format_number(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.14e}")
}

fn trajectory_table(traj: &Trajectory) -> Table {
    let rows = traj
        .grid()
        .times()
        .enumerate()
        .map(|(k, t)| {
            let psi = traj.states()[k];
            let a = traj.bloch()[k];
            vec![
                t,
                psi.c0().re,
                psi.c0().im,
                psi.c1().re,
                psi.c1().im,
                a.as_vec().x,
                a.as_vec().y,
                a.as_vec().z,
                traj.delta_e()[k],
                traj.s_accum()[k],
                traj.s0_from_start()[k],
            ]
        })
        .collect();
    Table { header: vec!["t", "c0_re", "c0_im", "c1_re", "c1_im", "ax", "ay", "az", "delta_e", "s", "s0"], rows }
}

fn efficiency_table(traj: &Trajectory, report: &EfficiencyReport) -> Table {
    let rows = traj.grid().times().enumerate().map(|(k, t)| vec![t, report.eta_ge_t[k], report.eta_se_t[k]]).collect();
    Table { header: vec!["t", "eta_ge", "eta_se"], rows }
}

fn curvature_table(traj: &Trajectory, field: &FieldSpec) -> Result<Table> {
    let rows = curvature_samples(traj, field, true)?
        .into_iter()
        .map(|s| vec![s.t, s.kappa_bloch, s.kappa_expect.unwrap_or(f64::NAN), s.kappa_numeric.unwrap_or(f64::NAN)])
        .collect();
    Ok(Table { header: vec!["t", "kappa_bloch", "kappa_expect", "kappa_numeric"], rows })
}

/// Runs a scenario, computes efficiencies, and writes the requested
/// artifacts into `out_dir` as `<name>_<output>.csv` and `<name>_report.json`.
pub fn run_report(config: &ScenarioConfig, out_dir: Option<&Path>) -> Result<ReportRun> {
    let sc = build_scenario(config)?;
    let traj = schrodinger_evolve(&sc.field, &sc.psi0, &sc.grid)?;
    let eff = efficiency_report(&traj, &sc.field, TOL_ONE)?;
    let name = config.display_name();
    let last = traj.len() - 1;
    let document = ReportDocument {
        scenario: sc.kind.as_str().to_string(),
        name: name.clone(),
        parameters: config.parameters.clone(),
        t_span: [sc.grid.t_start(), sc.grid.t_end()],
        n_steps: sc.grid.n_steps(),
        eta_ge_bar: eff.eta_ge_bar,
        eta_se_bar: eff.eta_se_bar,
        eta_he: eff.eta_he,
        eta_ge_final: eff.eta_ge_t[last],
        path_length: traj.s_accum()[last],
        geodesic_distance: traj.s0_from_start()[last],
        mean_ds_over_s: eff.mean_ds_over_s,
        mean_de_over_e: eff.mean_de_over_e,
        classification: eff.classification,
        notes: sc.notes.clone(),
    };
    let row = ReportRow {
        scenario: name.clone(),
        eta_ge_bar: eff.eta_ge_bar,
        eta_se_bar: eff.eta_se_bar,
        eta_he: eff.eta_he,
        classification: eff.classification,
    };
    let mut files = Vec::new();
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        let mut outputs = config.outputs.clone();
        outputs.sort();
        outputs.dedup();
        for out in outputs {
            let path = match out {
                OutputKind::Trajectory => {
                    let p = dir.join(format!("{name}_trajectory.csv"));
                    trajectory_table(&traj).write_csv_file(&p)?;
                    p
                }
                OutputKind::Efficiency => {
                    let p = dir.join(format!("{name}_efficiency.csv"));
                    efficiency_table(&traj, &eff).write_csv_file(&p)?;
                    p
                }
                OutputKind::Curvature => {
                    let p = dir.join(format!("{name}_curvature.csv"));
                    curvature_table(&traj, &sc.field)?.write_csv_file(&p)?;
                    p
                }
                OutputKind::Report => {
                    let p = dir.join(format!("{name}_report.json"));
                    let mut w = BufWriter::new(File::create(&p)?);
                    serde_json::to_writer_pretty(&mut w, &document)?;
                    writeln!(w)?;
                    w.flush()?;
                    p
                }
            };
            files.push(path);
        }
    }
    Ok(ReportRun { row, document, trajectory: traj, efficiency: eff, files })
}

/// Runs the four examples with default parameters on `[0, 1]`.
pub fn table2(out_dir: Option<&Path>) -> Result<Vec<ReportRun>> {
    [ScenarioKind::Example1, ScenarioKind::Example2, ScenarioKind::Example3, ScenarioKind::Example4]
        .into_iter()
        .map(|k| run_report(&ScenarioConfig::new(k), out_dir))
        .collect()
}

/// Stationary-family quantities over `α ∈ [ε, π − ε]`, `n_points` evenly
/// spaced (odd counts include `π/2`).
pub fn sweep_alpha(theta_ab: f64, n_points: usize, energy: f64) -> Result<Table> {
    if n_points < 3 {
        return Err(Error::Config(format!("sweep needs at least 3 points, got {n_points}")));
    }
    if !(theta_ab > 0.0 && theta_ab < std::f64::consts::PI) {
        return Err(Error::Config(format!("theta_ab must lie in (0, pi), got {theta_ab}")));
    }
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(Error::Config(format!("energy must be positive, got {energy}")));
    }
    let span = std::f64::consts::PI - 2.0 * ALPHA_EPS;
    let rows = (0..n_points)
        .map(|i| {
            let alpha = ALPHA_EPS + span * i as f64 / (n_points - 1) as f64;
            let s = arc_length_alpha(alpha, theta_ab);
            let de = delta_e_alpha(alpha, theta_ab, energy);
            vec![alpha, s, travel_time(alpha, theta_ab, energy), de, theta_ab / s, de / energy]
        })
        .collect();
    Ok(Table { header: vec!["alpha", "s", "t_ab", "delta_e", "eta_ge", "eta_se"], rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    Log,
    Linear,
    Exp,
}

impl ProfileKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "log" => Ok(Self::Log),
            "linear" => Ok(Self::Linear),
            "exp" => Ok(Self::Exp),
            other => Err(Error::Config(format!("unknown phase profile '{other}' (expected log, linear or exp)"))),
        }
    }

    pub fn profile(&self, phi0: f64, phidot0: f64) -> Result<PhaseProfile> {
        match self {
            Self::Log => PhaseProfile::logarithmic(phi0, phidot0),
            Self::Linear => Ok(PhaseProfile::linear(phi0, phidot0)),
            Self::Exp => Ok(PhaseProfile::exponential(phi0, phidot0)),
        }
    }
}

/// Parameters of a phase-profile sweep on the path `cos(ω0 t)|0⟩ + sin(ω0 t)|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSweep {
    pub phi0: f64,
    pub phidot0: f64,
    pub omega0: f64,
    pub t_end: f64,
    pub n_points: usize,
}

impl Default for PhaseSweep {
    fn default() -> Self {
        Self { phi0: 1.0, phidot0: 1.0, omega0: 1.0, t_end: 5.0, n_points: 101 }
    }
}

/// `η_SE(t)` of both wasteful variants for one phase profile.
pub fn sweep_phase_profiles(kind: ProfileKind, params: &PhaseSweep) -> Result<Table> {
    if params.n_points < 2 || params.t_end.is_nan() || params.t_end <= 0.0 {
        return Err(Error::Config("phase sweep needs n_points >= 2 and t_end > 0".into()));
    }
    let profile = kind.profile(params.phi0, params.phidot0)?;
    let cdot_sq = params.omega0 * params.omega0;
    let rows = (0..params.n_points)
        .map(|i| {
            let t = params.t_end * i as f64 / (params.n_points - 1) as f64;
            let rate = profile.rate(t);
            Ok(vec![
                t,
                profile.value(t),
                rate,
                speed_efficiency_tracezero(cdot_sq, rate)?,
                speed_efficiency_tracenonzero(cdot_sq, rate)?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table { header: vec!["t", "phi", "phidot", "eta_se_trace_zero", "eta_se_trace_nonzero"], rows })
}

/// `η_SE(φ̇)` of both wasteful variants on a symmetric grid `[−max, max]`.
pub fn sweep_phidot(omega0: f64, phidot_max: f64, n_points: usize) -> Result<Table> {
    if n_points < 2 || phidot_max.is_nan() || phidot_max <= 0.0 {
        return Err(Error::Config("phidot sweep needs n_points >= 2 and phidot_max > 0".into()));
    }
    let cdot_sq = omega0 * omega0;
    let rows = (0..n_points)
        .map(|i| {
            let p = -phidot_max + 2.0 * phidot_max * i as f64 / (n_points - 1) as f64;
            Ok(vec![p, speed_efficiency_tracezero(cdot_sq, p)?, speed_efficiency_tracenonzero(cdot_sq, p)?])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table { header: vec!["phidot", "eta_se_trace_zero", "eta_se_trace_nonzero"], rows })
}
