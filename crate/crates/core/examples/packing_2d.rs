// Angle-dense arrangements on a circle: the equiangular construction next
// to what greedy random sequential addition manages.

use di_gauss::geometry::{equiangular_2d, greedy_angle_dense, min_angle_bound, PackingConfig, RealVector};
use di_gauss::RngSeed;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let r = 10.0;
    println!("{:>6} {:>8} {:>10} {:>10}", "d", "theta", "equiangle", "greedy");
    for d in [0.5, 1.0, 2.0, 5.0, 10.0, 15.0] {
        let theta = min_angle_bound(d, r)?;
        let exact = equiangular_2d(r, d)?;
        assert!(exact.audit().is_valid());

        let cfg = PackingConfig {
            radius: r,
            ambient_dim: 2,
            subspace_dim: 2,
            min_projected_distance: d,
            max_points: 1000,
            saturation_rejections: 5000,
            seed: 1,
        };
        let mut rng = RngSeed::new(1, 0).rng();
        let greedy = greedy_angle_dense(&cfg, &RealVector::zeros(2), &[], &mut rng)?;
        assert!(greedy.audit().is_valid());
        println!("{d:>6.1} {theta:>8.4} {:>10} {:>10}", exact.len(), greedy.len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
