// SPDX-License-Identifier: Apache-2.0

//! The four worked examples on [0, 1] with default parameters.

use bloch_efficiency::scenarios::table2;
use bloch_efficiency::Result;

fn main() -> Result<()> {
    for run in table2(None)? {
        let r = &run.row;
        println!("{:<9} {:.6} {:.6} {:.6} {}", r.scenario, r.eta_ge_bar, r.eta_se_bar, r.eta_he, r.classification);
        for note in &run.document.notes {
            println!("          note: {note}");
        }
    }
    Ok(())
}
