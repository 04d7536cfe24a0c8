//! Minimal period of p(n, k) mod m by order descent, written out as a JSON
//! certificate and checked again from scratch.
//!
//!     cargo run --example period_certificate -- 7 3

use partition_parity::period::{minimal_period, structural_bound, verify_certificate};
use partition_parity::{Caps, PeriodCertificate};

fn main() -> partition_parity::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let k = args.next().flatten().unwrap_or(6) as u32;
    let m = args.next().flatten().unwrap_or(2);
    let caps = Caps::default();

    let bound = structural_bound(k, m)?;
    let (l, cert) = minimal_period(k, m, &caps)?;
    println!("k = {k}, m = {m}");
    println!("structural bound {bound} = {}", bound.value());
    println!("minimal period   {l}");
    for w in &cert.divisor_witnesses {
        println!("  L/{} = {} fails at n = {}", w.prime, w.divisor, w.witness_index);
    }

    let path = std::env::temp_dir().join(format!("period_k{k}_m{m}.json"));
    cert.write(&path)?;
    let reloaded = PeriodCertificate::read(&path)?;
    println!("{}: {:?}", path.display(), verify_certificate(&reloaded, &caps)?);

    // Tampering with one evidence residue is caught.
    let mut bad = reloaded;
    bad.evidence.shifted[0] = (bad.evidence.shifted[0] + 1) % m;
    println!("tampered: {:?}", verify_certificate(&bad, &caps)?);
    Ok(())
}
