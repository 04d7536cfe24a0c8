//! Exact computation of the restricted partition function `p(n, k)` (partitions
//! of `n` into parts of size at most `k`) modulo `m`.
//!
//! * [`engines`]: exact, residue and bit-packed parity evaluators,
//! * [`polyring`]: polynomials over `Z/m` and quotient-ring powers of `q`,
//! * [`period`]: minimal periods by order descent, period certificates and the
//!   residual polynomial `a(q) = (1 - q^L) / D(q)`,
//! * [`analysis`]: exact odd densities, joint densities and even-run lengths,
//! * [`cli`]: the `pnk` command line and its report formats.

pub mod analysis;
pub mod cli;
pub mod engines;
pub mod error;
pub mod period;
pub mod polyring;

pub use analysis::Rational;
pub use engines::{Caps, ModSequence, ParityBitStream, PartitionParams};
pub use error::{Error, Result};
pub use period::{FactoredInteger, PeriodCertificate};
pub use polyring::ModPoly;
