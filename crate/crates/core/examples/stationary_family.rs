// SPDX-License-Identifier: Apache-2.0

//! Fixed-axis rotations from x to y: only alpha = pi/2 is a great circle.

use std::f64::consts::FRAC_PI_2;

use bloch_efficiency::dynamics::{feynman_evolve, TimeGrid};
use bloch_efficiency::families::{suboptimal_hamiltonian, SuboptimalStationary};
use bloch_efficiency::scenarios::sweep_alpha;
use bloch_efficiency::{BlochVector, Result};

fn main() -> Result<()> {
    for alpha in [0.3, FRAC_PI_2, 2.5] {
        let fam = SuboptimalStationary::new(alpha, BlochVector::x(), BlochVector::y(), 1.0)?;
        let grid = TimeGrid::new(0.0, fam.t_ab(), 2000)?;
        let path = feynman_evolve(&suboptimal_hamiltonian(&fam), fam.a_hat(), &grid)?;
        let end = path.last().unwrap().as_vec();
        println!(
            "alpha {alpha:.3}: phi {:.6} t_ab {:.6} s {:.6} end ({:.6}, {:.6}, {:.6})",
            fam.phi(),
            fam.t_ab(),
            fam.arc_length(),
            end.x,
            end.y,
            end.z
        );
    }
    print!("{}", sweep_alpha(FRAC_PI_2, 9, 1.0)?.to_csv_string()?);
    Ok(())
}
