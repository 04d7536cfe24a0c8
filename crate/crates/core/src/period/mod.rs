//! Periods of `p(n, k) mod m`.
//!
//! The generating function is `1 / D(q)` with `D(q) = prod_{n<=k} (1 - q^n)`.
//! Because `D(0) = 1` the residue sequence is purely periodic, and `L` is a
//! period exactly when `D` divides `1 - q^L`, i.e. when `q^L = 1` in
//! `(Z/m)[q] / (D)`. The minimal period is therefore the multiplicative order
//! of `q`, found by descending from the known multiple `m^(k-1) k!`.

mod certificate;
mod factor;
mod residual;

pub use certificate::{
    verify_certificate, CertificateVerdict, DivisorWitness, Evidence, PeriodCertificate, TOOL_VERSION,
};
pub use factor::{is_prime, FactoredInteger};
pub use residual::{residual_poly, ResidualPoly};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::engines::{Caps, PartitionParams};
use crate::error::{Error, Result};
use crate::polyring::{denominator_poly, QuotientRing};

/// The period `m^(k-1) * k!` obtained by induction on `k`.
pub fn structural_bound(k: u32, m: u64) -> Result<FactoredInteger> {
    let params = PartitionParams::new(k, m)?;
    let base = FactoredInteger::from_u64(params.m()).pow(k - 1);
    Ok(base.mul(&FactoredInteger::factorial(k as u64)))
}

/// Order of `q` modulo `(D, m)`, in factored form.
///
/// Starts from the structural bound and strips each prime while the power
/// stays one. Needs `O(#primes * log N)` quotient-ring exponentiations.
pub fn minimal_period_factored(k: u32, m: u64) -> Result<FactoredInteger> {
    let bound = structural_bound(k, m)?;
    let ring = QuotientRing::new(denominator_poly(k, m)?)?;
    if !ring.pow_q(&bound.value())?.is_one() {
        return Err(Error::Internal(format!(
            "q^({bound}) is not one modulo D for k = {k}, m = {m}"
        )));
    }
    let mut order = bound;
    let primes: Vec<u64> = order.primes().collect();
    for p in primes {
        while let Some(smaller) = order.div_prime(p) {
            if ring.pow_q(&smaller.value())?.is_one() {
                order = smaller;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

/// Order of `q` modulo `(D, m)` as an integer.
pub fn minimal_period_order(k: u32, m: u64) -> Result<BigUint> {
    minimal_period_factored(k, m).map(|f| f.value())
}

/// Minimal period as a `u64`, for callers that go on to scan the sequence.
pub fn minimal_period_u64(k: u32, m: u64) -> Result<u64> {
    let order = minimal_period_order(k, m)?;
    order.to_u64().ok_or(Error::ResourceLimit {
        what: "period length",
        requested: u128::MAX,
        cap: u64::MAX,
    })
}

/// Minimal period together with a certificate that proves it.
pub fn minimal_period(k: u32, m: u64, caps: &Caps) -> Result<(u64, PeriodCertificate)> {
    let params = PartitionParams::new(k, m)?;
    let period = minimal_period_u64(k, m)?;
    let cert = PeriodCertificate::build(params, period, true, caps)?;
    Ok((period, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_examples() {
        assert_eq!(structural_bound(1, 7).unwrap(), FactoredInteger::one());
        let b = structural_bound(3, 2).unwrap();
        assert_eq!(b.value(), BigUint::from(24u32));
        assert_eq!(b.exponent(2), 3);
        assert_eq!(b.exponent(3), 1);
        let b = structural_bound(10, 2).unwrap();
        assert_eq!(b.value(), BigUint::from(512u64 * 3_628_800));
        assert_eq!(b.exponent(2), 17);
    }

    #[test]
    fn bound_for_composite_modulus() {
        let b = structural_bound(4, 6).unwrap();
        assert_eq!(b.value(), BigUint::from(216u32 * 24));
        assert!(b.is_well_formed());
    }

    #[test]
    fn small_periods() {
        assert_eq!(minimal_period_u64(1, 2).unwrap(), 1);
        assert_eq!(minimal_period_u64(2, 2).unwrap(), 4);
        assert_eq!(minimal_period_u64(3, 2).unwrap(), 12);
        assert_eq!(minimal_period_u64(4, 2).unwrap(), 24);
        assert_eq!(minimal_period_u64(1, 9).unwrap(), 1);
    }

    #[test]
    fn ten_mod_two() {
        // (1+q) appears 23 times in D mod 2, forcing 32 | L.
        assert_eq!(minimal_period_u64(10, 2).unwrap(), 10080);
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(minimal_period_u64(0, 2).is_err());
        assert!(structural_bound(3, 1).is_err());
    }
}
