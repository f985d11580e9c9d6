// The normal tail and the Mill's ratio bound used for per-layer errors.

use di_gauss::channel::{phi, projection_tail};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for x in [0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
        let tail = projection_tail(x)?;
        assert!(tail.exact <= tail.mills_bound);
        println!("x {x:>4}: 2Phi(-x) = {:.6e}, bound {:.6e}", tail.exact, tail.mills_bound);
    }
    println!("Phi(-20) = {:e}", phi(-20.0));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
