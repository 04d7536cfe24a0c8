//! A small verification campaign run through the library, the same code path
//! as `pnk verify`.

use partition_parity::cli::{evaluate_campaign, CampaignConfig};

fn main() -> partition_parity::Result<()> {
    let mut cfg = CampaignConfig::new(1, 10, vec![2, 3])?;
    cfg.canonical = true;
    let summary = evaluate_campaign(&cfg)?;
    for r in &summary.results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("{status} {:<9} k={:<2} m={} {}", r.check.name(), r.k, r.m, r.details);
    }
    println!("all passed: {}", summary.all_passed);
    Ok(())
}
