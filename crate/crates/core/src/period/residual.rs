use serde::Serialize;

use super::minimal_period_u64;
use crate::engines::{triangular, Caps};
use crate::error::{Error, Result};
use crate::polyring::{denominator_poly, ModPoly};

/// `a(q)` with `sum p(n,k) q^n = a(q) / (1 - q^L)` over GF(2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualPoly {
    pub k: u32,
    pub period: u64,
    pub poly: ModPoly,
}

impl ResidualPoly {
    pub fn degree(&self) -> usize {
        self.poly.degree().expect("1 - q^L is nonzero")
    }

    /// `deg a = L - k(k+1)/2`.
    pub fn degree_identity_holds(&self) -> bool {
        self.degree() as u64 + triangular(self.k) == self.period
    }

    /// Recomputes `a * D` and compares with `1 - q^L`.
    pub fn reconstructs(&self) -> Result<bool> {
        let d = denominator_poly(self.k, 2)?;
        Ok(self.poly.mul(&d)? == one_minus_q_pow(self.period as usize))
    }
}

fn one_minus_q_pow(l: usize) -> ModPoly {
    let mut c = vec![0u64; l + 1];
    c[0] = 1;
    c[l] = 1;
    ModPoly::new(2, c).expect("modulus 2")
}

/// Exact division of `1 - q^L` by `D` over GF(2), `L` the minimal period.
pub fn residual_poly(k: u32, caps: &Caps) -> Result<ResidualPoly> {
    let period = minimal_period_u64(k, 2)?;
    caps.check_residues("residual polynomial degree", period as u128 + 1)?;
    let d = denominator_poly(k, 2)?;
    let (a, r) = one_minus_q_pow(period as usize).divrem(&d)?;
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "D does not divide 1 - q^{period} for k = {k}: remainder {r}"
        )));
    }
    Ok(ResidualPoly { k, period, poly: a })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_residuals() {
        let r = residual_poly(1, &Caps::default()).unwrap();
        assert!(r.poly.is_one());
        assert_eq!(r.degree(), 0);

        let r = residual_poly(2, &Caps::default()).unwrap();
        assert_eq!(r.poly, ModPoly::new(2, vec![1, 1]).unwrap());
        assert!(r.degree_identity_holds());

        let r = residual_poly(3, &Caps::default()).unwrap();
        assert_eq!(r.degree(), 6);
        assert!(r.reconstructs().unwrap());
    }

    #[test]
    fn residual_coefficients_are_one_period_of_parities() {
        // a(q) = (1 - q^L) * sum p(n) q^n truncated, so its coefficients are
        // the first L parities.
        let r = residual_poly(4, &Caps::default()).unwrap();
        let parities = crate::engines::parity_stream(4, 0, r.period, &Caps::default()).unwrap();
        for i in 0..r.period {
            assert_eq!(r.poly.coeff(i as usize) == 1, parities.bit(i));
        }
    }
}
