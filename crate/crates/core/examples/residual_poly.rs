//! The residual polynomial a(q) = (1 - q^L) / D(q) over GF(2). Its
//! coefficients are the first L parities and its degree is L - k(k+1)/2.

use partition_parity::engines::parity_stream;
use partition_parity::period::residual_poly;
use partition_parity::Caps;

fn main() -> partition_parity::Result<()> {
    let caps = Caps::default();
    for k in 1..=8 {
        let r = residual_poly(k, &caps)?;
        let bits = parity_stream(k, 0, r.period, &caps)?;
        let same = (0..r.period).all(|n| r.poly.coeff(n as usize) == bits.bit(n) as u64);
        println!(
            "k = {k}: L = {:>4}, deg a = {:>4}, identity {}, coefficients = parities {same}",
            r.period,
            r.degree(),
            r.degree_identity_holds()
        );
    }
    let small = residual_poly(3, &caps)?;
    println!("a(q) for k = 3: {}", small.poly);
    Ok(())
}
