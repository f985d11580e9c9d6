// One universal codebook, built without knowing the noise level or the
// power limit, decoded under several noise levels.

use di_gauss::channel::phi;
use di_gauss::codebook::build_universal;
use di_gauss::montecarlo::estimate_miss;
use di_gauss::{RngSeed, SimulationMode};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (layers, t_abs) = (2, 1.0);
    let code = build_universal(1024, layers, 0.1, t_abs, &[3, 3], &mut RngSeed::new(8, 0).rng())?;
    println!("radii {:?}", code.radii());
    let audit = code.audit(Some(1.0));
    assert!(audit.is_valid(), "{:?}", audit.violations);

    for (i, sigma) in [0.5, 1.0, 2.0].into_iter().enumerate() {
        let r = estimate_miss(&code, 0, sigma, 100_000, RngSeed::new(8, 1 + i as u64), SimulationMode::ScalarFast)?;
        let law = 1.0 - (1.0 - 2.0 * phi(-t_abs / sigma)).powi(layers as i32);
        println!("sigma {sigma:.1}: miss {:.5}, law {law:.5}", r.estimate);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
