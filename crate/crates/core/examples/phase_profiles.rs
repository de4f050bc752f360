// SPDX-License-Identifier: Apache-2.0

//! Speed efficiency under logarithmic, linear and exponential extra phases.

use bloch_efficiency::scenarios::{sweep_phase_profiles, sweep_phidot, PhaseSweep, ProfileKind};
use bloch_efficiency::Result;

fn main() -> Result<()> {
    let params = PhaseSweep { t_end: 3.0, n_points: 7, ..PhaseSweep::default() };
    for kind in [ProfileKind::Log, ProfileKind::Linear, ProfileKind::Exp] {
        let eta = sweep_phase_profiles(kind, &params)?.column("eta_se_trace_zero").unwrap();
        let cells: Vec<String> = eta.iter().map(|v| format!("{v:.4}")).collect();
        println!("{kind:?}: {}", cells.join(" "));
    }
    print!("{}", sweep_phidot(1.0, 2.0, 5)?.to_csv_string()?);
    Ok(())
}
