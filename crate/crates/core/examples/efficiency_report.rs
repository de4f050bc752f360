// SPDX-License-Identifier: Apache-2.0

//! Efficiencies and classification of a nongeodesic, wasteful precession.

use bloch_efficiency::dynamics::{schrodinger_evolve, TimeGrid};
use bloch_efficiency::efficiency::{efficiency_report, geodesic_efficiency_global, TOL_ONE};
use bloch_efficiency::{FieldSpec, QubitState, Result, Vec3};

fn main() -> Result<()> {
    let field = FieldSpec::constant(0.0, Vec3::z(), (0.0, 1.0));
    let psi0 = QubitState::from_real(0.75_f64.sqrt(), 0.5)?;
    let traj = schrodinger_evolve(&field, &psi0, &TimeGrid::new(0.0, 1.0, 2000)?)?;
    let r = efficiency_report(&traj, &field, TOL_ONE)?;
    println!("eta_ge(t_B)  {:.6}", geodesic_efficiency_global(&traj)?);
    println!("eta_ge_bar   {:.6}", r.eta_ge_bar);
    println!("eta_se_bar   {:.6}", r.eta_se_bar);
    println!("eta_he       {:.6}", r.eta_he);
    println!("<ds/s> {:.4}  <de/e> {:.4}  -> {}", r.mean_ds_over_s, r.mean_de_over_e, r.classification);
    Ok(())
}
