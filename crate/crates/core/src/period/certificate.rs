use std::fs;
use std::path::Path;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::FactoredInteger;
use crate::engines::{mod_values, Caps, PartitionParams};
use crate::error::Result;
use crate::polyring::{denominator_poly, pow_q_mod};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

const DOCUMENTATION: &str = "p(n,k) mod m satisfies a linear recurrence of order T = k(k+1)/2 whose \
characteristic polynomial is the reversal of D(q) = prod_{j<=k}(1-q^j); D(0) = 1 makes the recurrence \
run forward from any T consecutive terms. The difference p(n+L,k) - p(n,k) obeys the same recurrence, \
so T consecutive zero differences starting at n = 0 force every difference to vanish: matching base \
and shifted evidence proves L is a period. Minimality: for each prime p | L, witness_index is the first \
n < T with p(n,k) != p(n+L/p,k) mod m, and q^(L/p) != 1 modulo (D, m).";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    /// `p(n, k) mod m` for `n = 0 .. T`.
    pub base: Vec<u64>,
    /// `p(n + L, k) mod m` for `n = 0 .. T`.
    pub shifted: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorWitness {
    pub prime: u64,
    /// `L / prime`.
    pub divisor: u64,
    pub witness_index: u64,
}

/// A claimed period `L` of `p(n, k) mod m` with the finite evidence that
/// proves it. See the `documentation` field for the argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodCertificate {
    pub tool_version: String,
    pub k: u32,
    pub m: u64,
    #[serde(rename = "L")]
    pub period: u64,
    pub minimal: bool,
    pub evidence: Evidence,
    pub divisor_witnesses: Vec<DivisorWitness>,
    pub documentation: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateVerdict {
    Valid,
    /// First failing check.
    Invalid(String),
}

impl CertificateVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateVerdict::Valid)
    }
}

fn first_mismatch(a: &[u64], b: &[u64]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y)
}

impl PeriodCertificate {
    /// Collects evidence for `period` (and, if `minimal`, one witness per
    /// prime divisor). Does not check anything.
    pub fn build(params: PartitionParams, period: u64, minimal: bool, caps: &Caps) -> Result<Self> {
        let t = params.triangular();
        let base = mod_values(params, 0, t, caps)?.values().to_vec();
        let shifted = mod_values(params, period, t, caps)?.values().to_vec();

        let mut divisor_witnesses = Vec::new();
        if minimal {
            for p in FactoredInteger::from_u64(period).primes() {
                let divisor = period / p;
                let other = mod_values(params, divisor, t, caps)?;
                // None would mean `divisor` is also a period; recorded as T so
                // the verifier rejects it.
                let witness_index = first_mismatch(&base, other.values()).map_or(t, |i| i as u64);
                divisor_witnesses.push(DivisorWitness {
                    prime: p,
                    divisor,
                    witness_index,
                });
            }
        }

        Ok(PeriodCertificate {
            tool_version: TOOL_VERSION.to_string(),
            k: params.k(),
            m: params.m(),
            period,
            minimal,
            evidence: Evidence { base, shifted },
            divisor_witnesses,
            documentation: DOCUMENTATION.to_string(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut s = self.to_json()?;
        s.push('\n');
        fs::write(path, s)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}

/// Re-checks a certificate from scratch using the residue engine and the
/// quotient ring, never the order computation that produced it.
pub fn verify_certificate(cert: &PeriodCertificate, caps: &Caps) -> Result<CertificateVerdict> {
    use CertificateVerdict::Invalid;

    let params = match PartitionParams::new(cert.k, cert.m) {
        Ok(p) => p,
        Err(e) => return Ok(Invalid(e.to_string())),
    };
    if cert.period == 0 {
        return Ok(Invalid("period must be positive".into()));
    }
    let t = params.triangular();
    if cert.evidence.base.len() as u64 != t || cert.evidence.shifted.len() as u64 != t {
        return Ok(Invalid(format!(
            "evidence windows must hold exactly k(k+1)/2 = {t} entries, got {} and {}",
            cert.evidence.base.len(),
            cert.evidence.shifted.len()
        )));
    }

    let base = mod_values(params, 0, t, caps)?;
    if let Some(i) = first_mismatch(base.values(), &cert.evidence.base) {
        return Ok(Invalid(format!("base evidence wrong at n = {i}")));
    }
    let shifted = mod_values(params, cert.period, t, caps)?;
    if let Some(i) = first_mismatch(shifted.values(), &cert.evidence.shifted) {
        return Ok(Invalid(format!("shifted evidence wrong at n = {i} + L")));
    }
    if let Some(i) = first_mismatch(base.values(), shifted.values()) {
        return Ok(Invalid(format!(
            "not a period: p({i}) != p({i} + {}) mod {}",
            cert.period, cert.m
        )));
    }

    let d = denominator_poly(cert.k, cert.m)?;
    if !pow_q_mod(&d, &BigUint::from(cert.period))?.is_one() {
        return Ok(Invalid(format!("q^{} != 1 modulo D", cert.period)));
    }

    if !cert.minimal {
        if !cert.divisor_witnesses.is_empty() {
            return Ok(Invalid("divisor witnesses present on a non-minimal claim".into()));
        }
        return Ok(CertificateVerdict::Valid);
    }

    let primes: Vec<u64> = FactoredInteger::from_u64(cert.period).primes().collect();
    let listed: Vec<u64> = cert.divisor_witnesses.iter().map(|w| w.prime).collect();
    if primes != listed {
        return Ok(Invalid(format!(
            "witnesses must cover the primes {primes:?} of L in order, got {listed:?}"
        )));
    }
    for w in &cert.divisor_witnesses {
        if w.divisor != cert.period / w.prime {
            return Ok(Invalid(format!("divisor {} is not L / {}", w.divisor, w.prime)));
        }
        if pow_q_mod(&d, &BigUint::from(w.divisor))?.is_one() {
            return Ok(Invalid(format!("q^{} = 1, so L is not minimal", w.divisor)));
        }
        let other = mod_values(params, w.divisor, t, caps)?;
        match first_mismatch(base.values(), other.values()) {
            Some(i) if i as u64 == w.witness_index => {}
            Some(i) => {
                return Ok(Invalid(format!(
                    "witness for L / {} should be n = {i}, got {}",
                    w.prime, w.witness_index
                )))
            }
            None => {
                return Ok(Invalid(format!(
                    "{} agrees with the sequence on {t} terms, so it is a period",
                    w.divisor
                )))
            }
        }
    }
    Ok(CertificateVerdict::Valid)
}
