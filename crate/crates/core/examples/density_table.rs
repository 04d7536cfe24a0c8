//! Exact odd densities of p(n, k) for small k, with the joint densities of
//! consecutive columns.
//!
//!     cargo run --example density_table -- 12

use partition_parity::analysis::{joint_densities, odd_density};
use partition_parity::Caps;

fn main() -> partition_parity::Result<()> {
    let k_max: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let caps = Caps::default();

    println!("{:>3}  {:>8}  {:>8}  {:>8}", "k", "odd", "(o,o)", "(e,o)");
    for k in 1..=k_max {
        let d = odd_density(k, &caps)?;
        if k == 1 {
            println!("{k:>3}  {:>8}", d.to_string());
            continue;
        }
        let j = joint_densities(k, &caps)?.joint;
        println!(
            "{k:>3}  {:>8}  {:>8}  {:>8}",
            d.to_string(),
            j.odd_odd.to_string(),
            j.even_odd.to_string()
        );
    }
    Ok(())
}
