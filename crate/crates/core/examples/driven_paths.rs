// SPDX-License-Identifier: Apache-2.0

//! Optimal and wasteful Hamiltonians that trace the same meridian.

use bloch_efficiency::dynamics::TimeGrid;
use bloch_efficiency::efficiency::speed_efficiency;
use bloch_efficiency::families::{uzdin_field, PhaseProfile, UzdinFamily, UzdinVariant};
use bloch_efficiency::Result;

fn main() -> Result<()> {
    let grid = TimeGrid::new(0.0, 1.0, 100)?;
    let base = UzdinFamily::meridian(0.0, 1.0, 0.0).with_phase(PhaseProfile::constant_rate(0.5));
    for variant in [UzdinVariant::Optimal, UzdinVariant::TraceZero, UzdinVariant::TraceNonzero] {
        let fam = base.clone().with_variant(variant);
        let field = uzdin_field(&fam, &grid)?;
        let h = field.eval(0.5)?;
        let a = fam.state(0.5)?.bloch();
        println!(
            "{variant:?}: h0 {:.4} |h| {:.4} norm {:.4} eta_se {:.6}",
            h.h0,
            h.h.norm(),
            h.spectral_norm(),
            speed_efficiency(&a, h.h0, &h.h)?
        );
    }
    Ok(())
}
