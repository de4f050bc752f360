// SPDX-License-Identifier: Apache-2.0

//! Pauli decomposition, state/Bloch conversions and the basic scalars.

use bloch_efficiency::qubit::{
    bloch_from_state, energy_uncertainty, fubini_study_s0, pauli_decompose, spectral_norm, state_from_bloch,
};
use bloch_efficiency::{BlochVector, HermitianMatrix2, QubitState, Result, Vec3};

fn main() -> Result<()> {
    let h = HermitianMatrix2::new(-1.5, Vec3::new(3.0, 4.0, 0.0));
    let (h0, hv) = pauli_decompose(&h.to_matrix())?;
    println!("H = {h0}*1 + ({}, {}, {}).sigma, spectral norm {}", hv.x, hv.y, hv.z, spectral_norm(h0, &hv));

    let psi = QubitState::from_real(0.75_f64.sqrt(), 0.5)?;
    let a = bloch_from_state(&psi);
    println!("bloch(psi) = {:?}", a.as_vec().as_slice());
    println!("round trip = {:?}", state_from_bloch(&a).amplitudes());
    println!("dE under sigma_z = {}", energy_uncertainty(&a, 0.0, &Vec3::z())?);
    println!("s0(x, z) = {}", fubini_study_s0(&BlochVector::x(), &BlochVector::z()));
    Ok(())
}
