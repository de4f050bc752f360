// SPDX-License-Identifier: Apache-2.0

//! Composite trapezoid rules on a uniform grid.

/// Running integral: `out[k] = ∫_{t_0}^{t_k} f dt`, with `out[0] = 0`.
pub fn cumulative_trapezoid(values: &[f64], dt: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    out.push(0.0);
    for w in values.windows(2) {
        acc += 0.5 * dt * (w[0] + w[1]);
        out.push(acc);
    }
    out.truncate(values.len());
    out
}

pub fn trapezoid(values: &[f64], dt: f64) -> f64 {
    match values {
        [] | [_] => 0.0,
        [first, inner @ .., last] => dt * (0.5 * (first + last) + inner.iter().sum::<f64>()),
    }
}

/// Time average `(1/(t_B − t_A)) ∫ f dt` over the grid.
pub fn trapezoid_mean(values: &[f64], dt: f64) -> f64 {
    let span = dt * (values.len().saturating_sub(1)) as f64;
    if span == 0.0 {
        return values.first().copied().unwrap_or(0.0);
    }
    trapezoid(values, dt) / span
}
