//! Run a scenario from a JSON config and write the CSV atomically.

use ergokit::scenario::{self, ScenarioConfig};

fn main() -> ergokit::Result<()> {
    let cfg = ScenarioConfig::from_json(
        r#"{"scenario": "decay", "parameters": {"type": "gaussian", "table": "half-lives", "grid": 50}}"#,
    )?;
    let ds = scenario::run(&cfg)?;
    println!("{}", ds.to_csv());
    let path = std::env::temp_dir().join("ergokit-example.csv");
    let out = ScenarioConfig { output: Some(path.clone()), ..cfg };
    scenario::execute(&out)?;
    println!("wrote {}", path.display());
    Ok(())
}
