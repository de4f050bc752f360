// SPDX-License-Identifier: Apache-2.0

//! A tabulated field loaded from JSON, with artifacts written to a temp dir.

use bloch_efficiency::scenarios::{run_report, ScenarioConfig};
use bloch_efficiency::Result;

const CONFIG: &str = r#"{
  "scenario": "custom",
  "name": "ramp",
  "field_table": [[0.0, 0.0, 1.0, 0.0, 0.0], [1.0, 0.5, 1.0, 0.0, 1.0], [2.0, 0.0, 0.0, 1.0, 1.0]],
  "initial_bloch": [0.0, 0.0, 1.0],
  "n_steps": 4000,
  "outputs": ["trajectory", "efficiency", "report"]
}"#;

fn main() -> Result<()> {
    let cfg = ScenarioConfig::from_json(CONFIG)?;
    let dir = std::env::temp_dir().join("bloch-eff-custom");
    let run = run_report(&cfg, Some(&dir))?;
    println!("{}", serde_json::to_string_pretty(&run.row)?);
    for f in &run.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}
