// Rate–reliability codes: the radius recursion against its closed form, the
// admissible exponent range, and the achievability/converse gap.

use di_gauss::bounds::{rr_lower, rr_upper};
use di_gauss::codebook::{build_rate_reliability, max_exponent, rr_radii_closed_form, rr_radii_recursive};
use di_gauss::{ChannelParams, Error, RngSeed};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = ChannelParams::new(64, 1.0, 1e8)?;
    let layers = 2;
    let e0 = max_exponent(params.power, params.sigma);
    println!("E0 = {e0:e}");

    for e in [1e-3, 1e-2, 1e-1, 1.0] {
        let rec = rr_radii_recursive(params, layers, e);
        let closed = rr_radii_closed_form(params, layers, e);
        let lo = rr_lower(e, params.power, params.sigma, layers)?;
        let hi = rr_upper(e, params.power, params.sigma)?;
        println!("E {e:>6}: radii {rec:.3?} (closed form {closed:.3?}), rate in [{lo:.3}, {hi:.3}]");
    }

    let code = build_rate_reliability(params, layers, 1.0 / 32.0, &[3, 2], &mut RngSeed::new(6, 0).rng())?;
    println!("built {} words, thresholds {:?}", code.len(), code.layers.iter().map(|l| l.threshold).collect::<Vec<_>>());

    match build_rate_reliability(params, layers, e0 * 1.01, &[2, 2], &mut RngSeed::new(6, 0).rng()) {
        Err(Error::ExponentTooLarge { exponent, e0 }) => println!("rejected E = {exponent:e} > {e0:e}"),
        other => panic!("expected rejection, got {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
