// SPDX-License-Identifier: Apache-2.0

//! Removing the dynamical phase from a precession under sigma_z.

use bloch_efficiency::dynamics::{parallel_transport, schrodinger_evolve, transport_residual, TimeGrid};
use bloch_efficiency::{FieldSpec, QubitState, Result, Vec3};

fn main() -> Result<()> {
    let field = FieldSpec::constant(0.0, Vec3::z(), (0.0, 1.0));
    let psi0 = QubitState::from_real(0.75_f64.sqrt(), 0.5)?;
    let grid = TimeGrid::new(0.0, 1.0, 1000)?;
    let traj = schrodinger_evolve(&field, &psi0, &grid)?;
    let m = parallel_transport(&traj, &field)?;

    for k in (0..=1000).step_by(250) {
        let t = grid.time(k);
        let [c0, c1] = m[k].amplitudes();
        println!("t = {t:.2}  m = ({c0:.6}, {c1:.6})");
    }
    println!("max |<m|dm/dt>| = {:.3e}", transport_residual(&m, grid.dt()));
    Ok(())
}
