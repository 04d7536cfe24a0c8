//! Polynomial arithmetic over Z/m and powers of q modulo D(q).

use num_bigint::BigUint;
use partition_parity::polyring::{denominator_poly, pow_q_mod};
use partition_parity::ModPoly;

fn main() -> partition_parity::Result<()> {
    let a = ModPoly::from_signed(5, &[1, -1, 0, 2])?;
    let b = ModPoly::from_signed(5, &[3, 1])?;
    let (q, r) = a.mul(&b)?.divrem(&b)?;
    println!("({a}) * ({b}) / ({b}) = {q} rem {r}");

    let d = denominator_poly(4, 2)?;
    println!("D(q) mod 2, k = 4: {d}");
    for e in [6u32, 12, 24] {
        let p = pow_q_mod(&d, &BigUint::from(e))?;
        println!("q^{e:<2} mod D = {}", p.representative());
    }
    Ok(())
}
