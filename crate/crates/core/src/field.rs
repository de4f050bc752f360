// SPDX-License-Identifier: Apache-2.0

//! Time-dependent qubit Hamiltonians `H(t) = h0(t)·1 + h(t)·σ`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::qubit::{HermitianMatrix2, Vec3};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type VectorFn = Arc<dyn Fn(f64) -> Vec3 + Send + Sync>;

/// A qubit Hamiltonian given as closures of time.
///
/// When no analytic `ḣ` is supplied, [`FieldSpec::h_dot`] falls back to a
/// central difference with the caller's step (one-sided at the ends of
/// `t_span`).
#[derive(Clone)]
pub struct FieldSpec {
    h0: ScalarFn,
    h: VectorFn,
    h_dot: Option<VectorFn>,
    t_span: (f64, f64),
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("t_span", &self.t_span)
            .field("analytic_h_dot", &self.h_dot.is_some())
            .finish()
    }
}

impl FieldSpec {
    pub fn new<F0, F>(h0: F0, h: F, t_span: (f64, f64)) -> Self
    where
        F0: Fn(f64) -> f64 + Send + Sync + 'static,
        F: Fn(f64) -> Vec3 + Send + Sync + 'static,
    {
        Self { h0: Arc::new(h0), h: Arc::new(h), h_dot: None, t_span }
    }

    /// Traceless field `h(t)·σ`.
    pub fn traceless<F>(h: F, t_span: (f64, f64)) -> Self
    where
        F: Fn(f64) -> Vec3 + Send + Sync + 'static,
    {
        Self::new(|_| 0.0, h, t_span)
    }

    pub fn constant(h0: f64, h: Vec3, t_span: (f64, f64)) -> Self {
        Self::new(move |_| h0, move |_| h, t_span).with_h_dot(|_| Vec3::zeros())
    }

    pub fn zero(t_span: (f64, f64)) -> Self {
        Self::constant(0.0, Vec3::zeros(), t_span)
    }

    pub fn with_h_dot<F>(mut self, h_dot: F) -> Self
    where
        F: Fn(f64) -> Vec3 + Send + Sync + 'static,
    {
        self.h_dot = Some(Arc::new(h_dot));
        self
    }

    pub(crate) fn with_h_dot_arc(mut self, h_dot: Option<VectorFn>) -> Self {
        self.h_dot = h_dot;
        self
    }

    /// Drops the analytic derivative so `ḣ` is differenced numerically.
    pub fn without_h_dot(mut self) -> Self {
        self.h_dot = None;
        self
    }

    /// Adds `extra(t)` to the trace part; changes states only by a global phase.
    pub fn with_added_trace<F>(&self, extra: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let base = self.h0.clone();
        Self {
            h0: Arc::new(move |t| base(t) + extra(t)),
            h: self.h.clone(),
            h_dot: self.h_dot.clone(),
            t_span: self.t_span,
        }
    }

    /// Same field on a different time span.
    pub fn with_span(&self, t_span: (f64, f64)) -> Self {
        Self { t_span, ..self.clone() }
    }

    pub fn t_span(&self) -> (f64, f64) {
        self.t_span
    }

    pub fn has_analytic_h_dot(&self) -> bool {
        self.h_dot.is_some()
    }

    pub fn h0(&self, t: f64) -> f64 {
        (self.h0)(t)
    }

    pub fn h(&self, t: f64) -> Vec3 {
        (self.h)(t)
    }

    /// Evaluates `(h0, h)` and rejects non-finite values.
    pub fn eval(&self, t: f64) -> Result<HermitianMatrix2> {
        let h0 = (self.h0)(t);
        let h = (self.h)(t);
        if !h0.is_finite() || h.iter().any(|v| !v.is_finite()) {
            return Err(Error::Field { t, reason: "non-finite field value".into() });
        }
        Ok(HermitianMatrix2::new(h0, h))
    }

    /// `ḣ(t)`: analytic when available, otherwise a second-order central
    /// difference with `step`, one-sided (still second order) at the span ends.
    pub fn h_dot(&self, t: f64, step: f64) -> Vec3 {
        if let Some(d) = &self.h_dot {
            return d(t);
        }
        let (a, b) = self.t_span;
        let h = &self.h;
        if t - step < a - 1e-12 * step {
            (-3.0 * h(t) + 4.0 * h(t + step) - h(t + 2.0 * step)) / (2.0 * step)
        } else if t + step > b + 1e-12 * step {
            (3.0 * h(t) - 4.0 * h(t - step) + h(t - 2.0 * step)) / (2.0 * step)
        } else {
            (h(t + step) - h(t - step)) / (2.0 * step)
        }
    }

    /// Piecewise-linear field through tabulated `(t, h0, hx, hy, hz)` rows.
    pub fn from_table(rows: &[[f64; 5]]) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::Config("field_table needs at least two rows".into()));
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Config("field_table contains non-finite values".into()));
        }
        if rows.windows(2).any(|w| w[1][0] <= w[0][0]) {
            return Err(Error::Config("field_table times must be strictly increasing".into()));
        }
        let table: Arc<Vec<[f64; 5]>> = Arc::new(rows.to_vec());
        let span = (rows[0][0], rows[rows.len() - 1][0]);
        let lookup = {
            let table = table.clone();
            move |t: f64| -> [f64; 5] {
                let n = table.len();
                let i = match table.binary_search_by(|r| r[0].total_cmp(&t)) {
                    Ok(i) => i.min(n - 2),
                    Err(0) => 0,
                    Err(i) => (i - 1).min(n - 2),
                };
                let (lo, hi) = (&table[i], &table[i + 1]);
                let w = (t - lo[0]) / (hi[0] - lo[0]);
                let mut out = [0.0; 5];
                for k in 1..5 {
                    out[k] = lo[k] + w * (hi[k] - lo[k]);
                }
                out
            }
        };
        let lookup = Arc::new(lookup);
        let l0 = lookup.clone();
        Ok(Self::new(
            move |t| l0(t)[1],
            move |t| {
                let r = lookup(t);
                Vec3::new(r[2], r[3], r[4])
            },
            span,
        ))
    }
}
