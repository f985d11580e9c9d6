// A single-layer code on the power sphere, its decoder, and measured error
// rates against the exact values.

use di_gauss::codebook::build_single_layer;
use di_gauss::montecarlo::{estimate_false, estimate_miss};
use di_gauss::{ChannelParams, RngSeed, SimulationMode};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = ChannelParams::new(64, 1.0, 4.0)?;
    let code = build_single_layer(params, 1.0, 6, &mut RngSeed::new(2, 0).rng())?;
    let audit = code.audit(None);
    assert!(audit.is_valid(), "{:?}", audit.violations);
    println!("{} words of energy {:.1} (budget {:.1})", code.len(), code.energy(), params.budget());

    let seed = RngSeed::new(2, 1);
    let miss = estimate_miss(&code, 0, params.sigma, 200_000, seed, SimulationMode::ScalarFast)?;
    println!(
        "miss   {:.5} in [{:.5}, {:.5}], exact {:.5}",
        miss.estimate,
        miss.ci_low,
        miss.ci_high,
        miss.analytic.unwrap()
    );
    let fa = estimate_false(&code, 0, 1, params.sigma, 200_000, seed.child(1), SimulationMode::ScalarFast)?;
    println!("false  {:.5}, exact {:.3e}, bound {:.3e}", fa.estimate, fa.analytic.unwrap(), fa.bound.unwrap());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
