// SPDX-License-Identifier: Apache-2.0

//! Curvature of a latitude circle by three routes.

use bloch_efficiency::curvature::{curvature_samples, curvature_transverse};
use bloch_efficiency::dynamics::{schrodinger_evolve, TimeGrid};
use bloch_efficiency::families::{uzdin_optimal, UzdinFamily};
use bloch_efficiency::Result;

fn main() -> Result<()> {
    let grid = TimeGrid::new(0.0, 1.0, 10_000)?;
    let fam = UzdinFamily::latitude_circle(1.0);
    let field = uzdin_optimal(&fam, &grid)?;
    let traj = schrodinger_evolve(&field, &fam.state(0.0)?, &grid)?;
    let samples = curvature_samples(&traj, &field, true)?;
    for s in samples.iter().step_by(2500) {
        println!(
            "t = {:.4}  bloch {:.10}  expect {:.10}  numeric {:.6}",
            s.t,
            s.kappa_bloch,
            s.kappa_expect.unwrap(),
            s.kappa_numeric.unwrap()
        );
    }
    println!("transverse form at t = 0.5: {:.10}", curvature_transverse(&field, &traj.bloch()[5000], 0.5, 1e-4)?);
    Ok(())
}
