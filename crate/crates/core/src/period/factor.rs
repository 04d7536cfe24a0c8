use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// A positive integer as `prime -> exponent`. The empty map is 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    /// Factors `n >= 1` by trial division.
    pub fn from_u64(mut n: u64) -> Self {
        assert!(n >= 1, "cannot factor zero");
        let mut factors = BTreeMap::new();
        let mut d = 2u64;
        while d.saturating_mul(d) <= n {
            while n.is_multiple_of(d) {
                *factors.entry(d).or_insert(0) += 1;
                n /= d;
            }
            d += 1;
        }
        if n > 1 {
            *factors.entry(n).or_insert(0) += 1;
        }
        FactoredInteger { factors }
    }

    /// `n!` by Legendre's formula: the exponent of `p` is `sum_i floor(n / p^i)`.
    pub fn factorial(n: u64) -> Self {
        let mut factors = BTreeMap::new();
        for p in (2..=n).filter(|&p| is_prime(p)) {
            let mut e = 0u64;
            let mut pk = p;
            loop {
                e += n / pk;
                match pk.checked_mul(p) {
                    Some(next) if next <= n => pk = next,
                    _ => break,
                }
            }
            factors.insert(p, e as u32);
        }
        FactoredInteger { factors }
    }

    pub fn factors(&self) -> &BTreeMap<u64, u32> {
        &self.factors
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    pub fn mul(&self, other: &FactoredInteger) -> FactoredInteger {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            *factors.entry(p).or_insert(0) += e;
        }
        FactoredInteger { factors }
    }

    pub fn pow(&self, e: u32) -> FactoredInteger {
        let factors = self
            .factors
            .iter()
            .filter(|_| e > 0)
            .map(|(&p, &x)| (p, x * e))
            .collect();
        FactoredInteger { factors }
    }

    /// Divides by the prime `p`; `None` if `p` does not divide.
    pub fn div_prime(&self, p: u64) -> Option<FactoredInteger> {
        let mut factors = self.factors.clone();
        let e = factors.get_mut(&p)?;
        *e -= 1;
        if *e == 0 {
            factors.remove(&p);
        }
        Some(FactoredInteger { factors })
    }

    pub fn divides(&self, other: &FactoredInteger) -> bool {
        self.factors.iter().all(|(&p, &e)| other.exponent(p) >= e)
    }

    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e))
    }

    /// All keys prime and no zero exponents.
    pub fn is_well_formed(&self) -> bool {
        self.factors.iter().all(|(&p, &e)| e > 0 && is_prime(p))
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}
