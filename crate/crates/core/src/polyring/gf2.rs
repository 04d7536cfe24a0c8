//! Packed GF(2) multiplication: coefficients become bits of `u64` words and
//! the product is a shift-and-XOR convolution.

use super::ModPoly;

fn pack(p: &ModPoly) -> Vec<u64> {
    let mut words = vec![0u64; p.coeffs().len().div_ceil(64)];
    for (i, &c) in p.coeffs().iter().enumerate() {
        if c & 1 == 1 {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    words
}

fn unpack(words: &[u64], bits: usize) -> ModPoly {
    let coeffs = (0..bits).map(|i| (words[i / 64] >> (i % 64)) & 1).collect();
    ModPoly::from_reduced(2, coeffs)
}

pub(super) fn mul(a: &ModPoly, b: &ModPoly) -> ModPoly {
    if a.is_zero() || b.is_zero() {
        return ModPoly::zero(2);
    }
    // Iterate over the set bits of the sparser operand.
    let (a, b) = if a.coeffs().len() <= b.coeffs().len() {
        (a, b)
    } else {
        (b, a)
    };
    let bw = pack(b);
    let bits = a.coeffs().len() + b.coeffs().len() - 1;
    let mut out = vec![0u64; bits.div_ceil(64) + 1];
    for (i, _) in a.coeffs().iter().enumerate().filter(|(_, &c)| c == 1) {
        let wo = i / 64;
        let s = i % 64;
        if s == 0 {
            for (t, &w) in bw.iter().enumerate() {
                out[wo + t] ^= w;
            }
        } else {
            for (t, &w) in bw.iter().enumerate() {
                out[wo + t] ^= w << s;
                out[wo + t + 1] ^= w >> (64 - s);
            }
        }
    }
    unpack(&out, bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_schoolbook_on_dense_case() {
        let a = ModPoly::new(2, (0..200).map(|i| (i * 7 % 3 == 0) as u64).collect()).unwrap();
        let b = ModPoly::new(2, (0..130).map(|i| (i % 5 != 1) as u64).collect()).unwrap();
        assert_eq!(mul(&a, &b), a.mul_schoolbook(&b));
    }
}
