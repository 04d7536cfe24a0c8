use std::sync::Arc;

use num_bigint::BigUint;

use super::{inverse_mod, ModPoly};
use crate::error::{Error, Result};

/// `(Z/m)[q] / (D)` for a divisor `D` with invertible leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientRing {
    divisor: Arc<ModPoly>,
}

/// A residue class modulo `D`, held by its reduced representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientElement {
    divisor: Arc<ModPoly>,
    rep: ModPoly,
}

impl QuotientElement {
    pub fn modulus(&self) -> u64 {
        self.rep.modulus()
    }

    pub fn divisor(&self) -> &ModPoly {
        &self.divisor
    }

    /// Representative with degree below `deg D`.
    pub fn representative(&self) -> &ModPoly {
        &self.rep
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }
}

impl QuotientRing {
    pub fn new(divisor: ModPoly) -> Result<Self> {
        let lead = divisor.leading_coeff().ok_or(Error::DivisionByZero)?;
        let m = divisor.modulus();
        if inverse_mod(lead, m).is_none() {
            return Err(Error::NonInvertibleLeading { coeff: lead, modulus: m });
        }
        Ok(QuotientRing {
            divisor: Arc::new(divisor),
        })
    }

    pub fn divisor(&self) -> &ModPoly {
        &self.divisor
    }

    pub fn element(&self, p: &ModPoly) -> Result<QuotientElement> {
        Ok(QuotientElement {
            divisor: Arc::clone(&self.divisor),
            rep: p.rem(&self.divisor)?,
        })
    }

    pub fn one(&self) -> QuotientElement {
        self.element(&ModPoly::one(self.divisor.modulus()))
            .expect("divisor validated at construction")
    }

    pub fn mul(&self, a: &QuotientElement, b: &QuotientElement) -> Result<QuotientElement> {
        let prod = a.rep.mul(&b.rep)?;
        self.element(&prod)
    }

    /// `q^e` by left-to-right square-and-multiply; multiplying by `q` is a
    /// shift followed by one reduction step.
    pub fn pow_q(&self, e: &BigUint) -> Result<QuotientElement> {
        let mut acc = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.mul(&acc, &acc)?;
            if e.bit(i) {
                acc = self.element(&acc.rep.shift(1))?;
            }
        }
        Ok(acc)
    }
}

/// `q^e` reduced modulo `(D, m)`. `q^e` is one exactly when `D` divides
/// `1 - q^e`.
pub fn pow_q_mod(divisor: &ModPoly, e: &BigUint) -> Result<QuotientElement> {
    QuotientRing::new(divisor.clone())?.pow_q(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::denominator_poly;

    #[test]
    fn exponent_zero_is_one() {
        let d = denominator_poly(4, 3).unwrap();
        assert!(pow_q_mod(&d, &BigUint::from(0u32)).unwrap().is_one());
    }

    #[test]
    fn four_is_a_period_for_two() {
        let d = denominator_poly(2, 2).unwrap();
        assert!(pow_q_mod(&d, &BigUint::from(4u32)).unwrap().is_one());
        let sq = pow_q_mod(&d, &BigUint::from(2u32)).unwrap();
        assert_eq!(sq.representative(), &ModPoly::monomial(2, 2, 1));
    }

    #[test]
    fn linear_divisor() {
        // mod (1 - q), q == 1
        let d = denominator_poly(1, 5).unwrap();
        for e in [0u32, 1, 7, 1000] {
            assert!(pow_q_mod(&d, &BigUint::from(e)).unwrap().is_one());
        }
    }

    #[test]
    fn huge_exponent_is_cheap() {
        let d = denominator_poly(10, 2).unwrap();
        // 2^9 * 10! is a period, so q raised to it is one.
        let e = BigUint::from(512u32) * BigUint::from(3_628_800u32);
        assert!(pow_q_mod(&d, &e).unwrap().is_one());
    }

    #[test]
    fn rejects_bad_divisor() {
        let d = ModPoly::new(4, vec![1, 2]).unwrap();
        assert!(QuotientRing::new(d).is_err());
    }
}
