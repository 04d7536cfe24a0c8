//! Longest runs of even values of p(n, k). The maximal run has length
//! k(k+1)/2 - 1 and ends just before each multiple of the period.

use partition_parity::analysis::{check_lower_bound, max_even_run};
use partition_parity::Caps;

fn main() -> partition_parity::Result<()> {
    let caps = Caps::default();
    println!("{:>3} {:>7} {:>4} {:>10}  density >= 2/(k(k+1))", "k", "L", "run", "at end");
    for k in 1..=12 {
        let r = max_even_run(k, &caps)?;
        let lb = check_lower_bound(k, &caps)?;
        println!(
            "{k:>3} {:>7} {:>4} {:>10}  {} >= {}: {}",
            r.period,
            r.max_even_run,
            r.run_at_period_end,
            lb.odd_density,
            lb.bound,
            lb.holds()
        );
    }
    Ok(())
}
