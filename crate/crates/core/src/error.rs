// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    Hermiticity { deviation: f64 },

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("state is not normalized (norm {norm})")]
    Normalization { norm: f64 },

    #[error("field evaluation failed at t = {t}: {reason}")]
    Field { t: f64, reason: String },

    #[error("integration failed at t = {t}: norm drift {drift:e} exceeds the per-step limit")]
    Integration { t: f64, drift: f64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degenerate endpoints: theta_ab = {theta_ab} is too close to 0 or pi")]
    DegenerateEndpoints { theta_ab: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("path length {0:e} is too small to define a geodesic efficiency")]
    ZeroPath(f64),

    #[error("Hamiltonian vanishes; speed efficiency is undefined")]
    ZeroHamiltonian,

    #[error("value {value} out of range [0, 1] for {name}")]
    Range { name: &'static str, value: f64 },

    #[error("singular evolution: {0}")]
    SingularEvolution(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command-line front end.
    ///
    /// Configuration problems and numerical failures get distinct codes so
    /// scripts can tell a bad input file from a run that diverged.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Json(_) => 2,
            Error::Io(_) | Error::Csv(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
