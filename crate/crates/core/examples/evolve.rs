// SPDX-License-Identifier: Apache-2.0

//! Schrödinger and Bloch-vector engines on the same field.

use bloch_efficiency::dynamics::{feynman_evolve, path_length, schrodinger_evolve, TimeGrid};
use bloch_efficiency::{FieldSpec, QubitState, Result, Vec3};

fn main() -> Result<()> {
    let field = FieldSpec::traceless(|t: f64| Vec3::new(0.3 * t.cos(), 0.2, 1.0 + 0.1 * t), (0.0, 2.0));
    let psi0 = QubitState::from_real(0.75_f64.sqrt(), 0.5)?;
    let grid = TimeGrid::new(0.0, 2.0, 2000)?;

    let traj = schrodinger_evolve(&field, &psi0, &grid)?;
    let bloch = feynman_evolve(&field, &psi0.bloch(), &grid)?;
    let gap = traj.bloch().iter().zip(&bloch).map(|(a, b)| (a.as_vec() - b.as_vec()).norm()).fold(0.0, f64::max);
    println!("max engine gap {gap:.3e}");
    println!("path length {:.9}", path_length(&traj));
    println!("accumulated norm drift {:.3e}", traj.norm_drift());
    Ok(())
}
