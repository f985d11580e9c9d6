// Runs a declarative experiment and prints its CSV report.

use di_gauss::experiment::{run_experiment, ExperimentConfig};

const CONFIG: &str = r#"{
    "name": "demo",
    "kind": "multi",
    "n": 64,
    "L": 2,
    "c": 1e4,
    "sigma": 0.1,
    "P": 1e5,
    "threshold": {"mode": "fixed", "value": 1.0},
    "k_per_layer": [2, 2],
    "trials": 20000,
    "seed": 1
}"#;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig::from_json(CONFIG)?;
    let report = run_experiment(&cfg)?;
    print!("{}", report.to_csv());
    println!("lambda1 {:.4}, lambda2 {:.4}", report.lambda1_hat, report.lambda2_hat);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
