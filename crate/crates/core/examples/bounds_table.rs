// Finite-n rate bounds as the block length grows.

use di_gauss::bounds::{capacity, rate_lower_finite, rate_lower_single, rate_lower_universal};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>5} {:>10} {:>12} {:>12}", "log n", "single", "multi L=3", "univ L=3");
    for k in [10, 20, 40, 80, 160] {
        let n = 2f64.powi(k);
        let t = n.log2();
        let show = |v: Result<f64, di_gauss::Error>| v.map_or("void".to_string(), |v| format!("{v:.6}"));
        println!(
            "{k:>5} {:>10} {:>12} {:>12}",
            show(rate_lower_single(n)),
            show(rate_lower_finite(n, 3, 1.0, 1.0, t)),
            show(rate_lower_universal(n, 3, 0.1, t)),
        );
    }
    println!("capacity {}", capacity());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
