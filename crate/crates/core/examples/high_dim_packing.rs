// Greedy packing in a subspace that avoids two forbidden directions, with
// the audit that every codebook layer is held to.

use di_gauss::geometry::{chord_bound, greedy_angle_dense, PackingConfig, RealVector};
use di_gauss::RngSeed;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 32;
    let center = RealVector::unit(n, 0).scale(50.0);
    let forbidden = [RealVector::unit(n, 0), RealVector::unit(n, 1)];
    let cfg = PackingConfig {
        radius: 6.0,
        ambient_dim: n,
        subspace_dim: n - forbidden.len(),
        min_projected_distance: 4.0,
        max_points: 200,
        saturation_rejections: 2000,
        seed: 9,
    };
    let arr = greedy_angle_dense(&cfg, &center, &forbidden, &mut RngSeed::new(9, 0).rng())?;
    let audit = arr.audit();
    println!("points           {}", audit.points);
    println!("saturated        {}", arr.saturated);
    println!("radius error     {:.2e}", audit.max_radius_error);
    println!("basis leak       {:.2e}", audit.max_basis_leak);
    println!("min proj. dist   {:.4} (need {})", audit.min_projected_distance, cfg.min_projected_distance);
    println!("min chord        {:.4} (bound {:.4})", audit.min_chord, chord_bound(4.0, 6.0)?);
    assert!(audit.is_valid(), "{:?}", audit.violations);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
