//! Sequence engines for the restricted partition function `p(n, k)`.
//!
//! All three engines evaluate the same recurrence
//!
//! ```text
//! p(n, k) = p(n - k, k) + p(n, k - 1),   p(0, k) = 1,   p(n, k) = 0 for n < 0
//! ```
//!
//! * [`exact_values`] keeps arbitrary-precision integers,
//! * [`mod_values`] keeps residues modulo `m` with a rolling per-column buffer,
//! * [`parity_stream`] works on packed 64-bit words over GF(2).
//!
//! They share nothing beyond the recurrence, so [`self_check`] can pit them
//! against each other.

mod bits;
mod check;
mod exact;
mod residue;

pub use bits::{parity_stream, ParityBitStream, WORD_BITS};
pub use check::{check_window, self_check, CheckReport};
pub use exact::{exact_values, ExactColumns};
pub use residue::{mod_values, ModSequence};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported modulus. Residues are added in `u64` without widening.
pub const MAX_MODULUS: u64 = 1 << 62;

/// The pair `(k, m)`: largest allowed part and the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionParams {
    k: u32,
    m: u64,
}

impl PartitionParams {
    pub fn new(k: u32, m: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        if m < 2 {
            return Err(Error::InvalidParams(format!("modulus must be at least 2, got {m}")));
        }
        if m > MAX_MODULUS {
            return Err(Error::InvalidParams(format!("modulus {m} exceeds 2^62")));
        }
        Ok(PartitionParams { k, m })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// `k(k+1)/2`, the degree of the denominator polynomial.
    pub fn triangular(&self) -> u64 {
        triangular(self.k)
    }
}

pub fn triangular(k: u32) -> u64 {
    let k = k as u64;
    k * (k + 1) / 2
}

/// Per-call resource limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Residues (or parity bits) computed by one call, warm-up prefix included.
    pub max_residues: u64,
    /// Exact big-integer values materialized by one call.
    pub max_exact: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_residues: 1_000_000_000,
            max_exact: 100_000,
        }
    }
}

impl Caps {
    pub(crate) fn check_residues(&self, what: &'static str, requested: u128) -> Result<()> {
        if requested > self.max_residues as u128 {
            return Err(Error::ResourceLimit {
                what,
                requested,
                cap: self.max_residues,
            });
        }
        Ok(())
    }

    pub(crate) fn check_exact(&self, requested: u128) -> Result<()> {
        if requested > self.max_exact as u128 {
            return Err(Error::ResourceLimit {
                what: "exact values",
                requested,
                cap: self.max_exact,
            });
        }
        Ok(())
    }
}
