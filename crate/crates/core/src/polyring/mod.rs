//! Dense polynomials over `Z/m`, a packed GF(2) multiplication path, and
//! exponentiation in the quotient ring `(Z/m)[q] / (D)`.

mod gf2;
mod quotient;

pub use quotient::{pow_q_mod, QuotientElement, QuotientRing};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engines::MAX_MODULUS;
use crate::error::{Error, Result};

/// Polynomial over `Z/m`, lowest degree first, with trailing zeros stripped.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

impl ModPoly {
    /// Builds a polynomial from raw coefficients, reducing them modulo `m`.
    pub fn new(modulus: u64, coeffs: Vec<u64>) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Self::from_reduced(modulus, coeffs.into_iter().map(|c| c % modulus).collect()))
    }

    /// Builds from signed coefficients (handy for `1 - q^n`).
    pub fn from_signed(modulus: u64, coeffs: &[i64]) -> Result<Self> {
        check_modulus(modulus)?;
        let m = modulus as i128;
        let reduced = coeffs
            .iter()
            .map(|&c| (c as i128).rem_euclid(m) as u64)
            .collect();
        Ok(Self::from_reduced(modulus, reduced))
    }

    pub(crate) fn from_reduced(modulus: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { modulus, coeffs }
    }

    pub fn zero(modulus: u64) -> Self {
        ModPoly {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn one(modulus: u64) -> Self {
        Self::monomial(modulus, 0, 1)
    }

    /// `c * q^degree`.
    pub fn monomial(modulus: u64, degree: usize, c: u64) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c % modulus;
        Self::from_reduced(modulus, coeffs)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `q^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading_coeff(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    fn same_ring(&self, other: &ModPoly) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn add(&self, other: &ModPoly) -> Result<ModPoly> {
        self.same_ring(other)?;
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let s = self.coeff(i) + other.coeff(i);
                if s >= m {
                    s - m
                } else {
                    s
                }
            })
            .collect();
        Ok(Self::from_reduced(m, coeffs))
    }

    pub fn neg(&self) -> ModPoly {
        let m = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| if c == 0 { 0 } else { m - c })
            .collect();
        Self::from_reduced(m, coeffs)
    }

    pub fn sub(&self, other: &ModPoly) -> Result<ModPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ModPoly) -> Result<ModPoly> {
        self.same_ring(other)?;
        if self.modulus == 2 {
            Ok(gf2::mul(self, other))
        } else {
            Ok(self.mul_schoolbook(other))
        }
    }

    /// Plain quadratic product, used for every modulus (and as the reference
    /// for the packed GF(2) path).
    pub fn mul_schoolbook(&self, other: &ModPoly) -> ModPoly {
        let m = self.modulus;
        if self.is_zero() || other.is_zero() {
            return Self::zero(m);
        }
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        let m128 = m as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let slot = &mut acc[i + j];
                *slot = (*slot + a as u128 * b as u128) % m128;
            }
        }
        Self::from_reduced(m, acc.into_iter().map(|c| c as u64).collect())
    }

    pub fn scale(&self, c: u64) -> ModPoly {
        let m = self.modulus;
        Self::from_reduced(m, self.coeffs.iter().map(|&a| mul_mod(a, c, m)).collect())
    }

    /// `self * q^n`.
    pub fn shift(&self, n: usize) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; n];
        coeffs.extend_from_slice(&self.coeffs);
        ModPoly {
            modulus: self.modulus,
            coeffs,
        }
    }

    /// Euclidean division `self = quotient * d + remainder` with
    /// `deg remainder < deg d`. The leading coefficient of `d` must be a unit.
    pub fn divrem(&self, d: &ModPoly) -> Result<(ModPoly, ModPoly)> {
        self.same_ring(d)?;
        let m = self.modulus;
        let lead = d.leading_coeff().ok_or(Error::DivisionByZero)?;
        let lead_inv = inverse_mod(lead, m).ok_or(Error::NonInvertibleLeading {
            coeff: lead,
            modulus: m,
        })?;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(m), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let f = mul_mod(c, lead_inv, m);
            quot[i - dd] = f;
            let base = i - dd;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                if dc == 0 {
                    continue;
                }
                let t = mul_mod(f, dc, m);
                let slot = &mut rem[base + j];
                *slot = if *slot >= t { *slot - t } else { *slot + m - t };
            }
        }
        rem.truncate(dd);
        Ok((Self::from_reduced(m, quot), Self::from_reduced(m, rem)))
    }

    /// Remainder only; same preconditions as [`divrem`](Self::divrem).
    pub fn rem(&self, d: &ModPoly) -> Result<ModPoly> {
        self.divrem(d).map(|(_, r)| r)
    }
}

fn check_modulus(m: u64) -> Result<()> {
    if !(2..=MAX_MODULUS).contains(&m) {
        return Err(Error::InvalidParams(format!("modulus {m} outside [2, 2^62]")));
    }
    Ok(())
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "{c}q")?,
                (_, 1) => write!(f, "q^{i}")?,
                _ => write!(f, "{c}q^{i}")?,
            }
        }
        Ok(())
    }
}

/// `prod_{n=1..k} (1 - q^n)` over `Z/m`, the reciprocal of the generating
/// function of `p(n, k)`. Degree `k(k+1)/2`, constant term 1.
pub fn denominator_poly(k: u32, m: u64) -> Result<ModPoly> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    check_modulus(m)?;
    // Multiplying by (1 - q^n) in place: c[i] -= c[i - n], descending i.
    let deg = crate::engines::triangular(k) as usize;
    let mut c = vec![0u64; deg + 1];
    c[0] = 1;
    let mut cur = 0;
    for n in 1..=k as usize {
        cur += n;
        for i in (n..=cur).rev() {
            let t = c[i - n];
            c[i] = if c[i] >= t { c[i] - t } else { c[i] + m - t };
        }
    }
    Ok(ModPoly::from_reduced(m, c))
}
