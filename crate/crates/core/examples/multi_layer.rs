// Three-layer code: radii, the tree audit, and the miss law
// `1 - (1 - 2Φ(-t))^L` checked by simulating the full received vector.

use di_gauss::codebook::{build_multi_layer, multi_layer_radii};
use di_gauss::montecarlo::estimate_miss;
use di_gauss::{ChannelParams, RngSeed, SimulationMode};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (n, layers, c, t) = (256, 3, 1e6, 2.0);
    let params = ChannelParams::new(n, 0.05, 1e7)?;
    println!("radii {:?}", multi_layer_radii(n, layers, c));

    let code = build_multi_layer(params, layers, c, t, &[3, 2, 2], &mut RngSeed::new(4, 0).rng())?;
    let audit = code.audit(None);
    assert!(audit.is_valid(), "{:?}", audit.violations);
    println!("words {} from layer counts {:?}", code.len(), code.layer_counts());
    println!("path orthogonality {:.1e}, pythagoras {:.1e}", audit.max_path_cosine, audit.max_pythagoras_error);
    if let Some(s) = audit.worst_separation {
        println!("worst separation {:.4} vs lemma bound {:.4}", s.separation, s.lemma_bound);
    }

    let report = estimate_miss(&code, 0, params.sigma, 50_000, RngSeed::new(4, 1), SimulationMode::FullVector)?;
    println!("miss {:.5}, exact {:.5}", report.estimate, report.analytic.unwrap());
    assert!(report.within_sigmas(4.0));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
