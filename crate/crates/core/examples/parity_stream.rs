//! Bit-packed parities of p(n, k) over a window, cross-checked against the
//! residue engine, with a rough throughput figure.
//!
//!     cargo run --release --example parity_stream -- 10 1000000 5000000

use std::time::Instant;

use partition_parity::engines::{mod_values, parity_stream};
use partition_parity::{Caps, PartitionParams};

fn main() -> partition_parity::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let k = args.next().flatten().unwrap_or(10) as u32;
    let start = args.next().flatten().unwrap_or(0);
    let count = args.next().flatten().unwrap_or(1_000_000);
    let caps = Caps::default();

    let t0 = Instant::now();
    let bits = parity_stream(k, start, count, &caps)?;
    let secs = t0.elapsed().as_secs_f64();

    let head: String = bits.iter().take(64).map(|b| if b { '1' } else { '0' }).collect();
    println!("p(n, {k}) mod 2 for n = {start}..:");
    println!("{head}...");
    println!("{} odd of {count} ({:.1e} values/s)", bits.count_ones(), count as f64 / secs);

    let naive = mod_values(PartitionParams::new(k, 2)?, start, count.min(100_000), &caps)?;
    let agree = naive.values().iter().enumerate().all(|(i, &v)| v == bits.bit(i as u64) as u64);
    println!("residue engine agrees on the first {} values: {agree}", naive.len());
    Ok(())
}
