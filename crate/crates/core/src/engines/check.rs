use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{exact_values, mod_values, parity_stream, Caps, ModSequence, PartitionParams};
use crate::error::{Error, Result};

/// Outcome of a cross-engine check. `first_mismatch` is an absolute index `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub agree: bool,
    pub first_mismatch: Option<u64>,
    pub detail: Option<String>,
}

impl CheckReport {
    fn pass() -> Self {
        CheckReport {
            agree: true,
            first_mismatch: None,
            detail: None,
        }
    }

    fn fail(n: u64, detail: String) -> Self {
        CheckReport {
            agree: false,
            first_mismatch: Some(n),
            detail: Some(detail),
        }
    }

    /// Keeps the failure with the smallest index.
    fn merge(self, other: CheckReport) -> CheckReport {
        match (self.first_mismatch, other.first_mismatch) {
            (None, _) => other,
            (_, None) => self,
            (Some(a), Some(b)) => {
                if b < a {
                    other
                } else {
                    self
                }
            }
        }
    }
}

/// Runs every engine on `[start, start + count)` and checks they agree.
pub fn self_check(params: PartitionParams, start: u64, count: u64, caps: &Caps) -> Result<CheckReport> {
    let candidate = mod_values(params, start, count, caps)?;
    check_window(&candidate, caps)
}

/// Checks `candidate` against the exact engine reduced mod `m`, a fresh run of
/// the residue engine, the bit engine (when `m = 2`), and every instance of
/// the recurrence whose indices fall inside the window.
pub fn check_window(candidate: &ModSequence, caps: &Caps) -> Result<CheckReport> {
    let params = candidate.params();
    let k = params.k();
    let m = params.m();
    let start = candidate.start();
    let count = candidate.len() as u64;
    if count < k as u64 + 1 {
        return Err(Error::InvalidParams(format!(
            "window of {count} values is shorter than k + 1 = {}",
            k + 1
        )));
    }
    let end = start + count;
    let vals = candidate.values();
    let mut report = CheckReport::pass();

    let first_diff = |other: &[u64], name: &str| -> CheckReport {
        match vals.iter().zip(other).position(|(a, b)| a != b) {
            Some(i) => CheckReport::fail(
                start + i as u64,
                format!("{name}: {} vs {} at n = {}", vals[i], other[i], start + i as u64),
            ),
            None => CheckReport::pass(),
        }
    };

    let exact = exact_values(k, end - 1, caps)?;
    let modulus = BigUint::from(m);
    let reduced: Vec<u64> = exact[start as usize..]
        .iter()
        .map(|v| (v % &modulus).to_u64().expect("residue below modulus"))
        .collect();
    report = report.merge(first_diff(&reduced, "exact engine"));

    let residues = mod_values(params, start, count, caps)?;
    report = report.merge(first_diff(residues.values(), "residue engine"));

    if m == 2 {
        let bits = parity_stream(k, start, count, caps)?;
        let unpacked: Vec<u64> = bits.iter().map(u64::from).collect();
        report = report.merge(first_diff(&unpacked, "bit engine"));
    }

    report = report.merge(check_recurrence(candidate, caps)?);
    Ok(report)
}

fn check_recurrence(candidate: &ModSequence, caps: &Caps) -> Result<CheckReport> {
    let params = candidate.params();
    let k = params.k() as u64;
    let m = params.m();
    let start = candidate.start();
    let vals = candidate.values();

    if k == 1 {
        if let Some(i) = vals.iter().position(|&v| v != 1 % m) {
            return Ok(CheckReport::fail(
                start + i as u64,
                format!("p(n, 1) must be 1, got {} at n = {}", vals[i], start + i as u64),
            ));
        }
        return Ok(CheckReport::pass());
    }

    let lower_params = PartitionParams::new(params.k() - 1, m)?;
    let lower = mod_values(lower_params, start, vals.len() as u64, caps)?;
    for (i, &v) in vals.iter().enumerate() {
        let n = start + i as u64;
        let back = if n < k {
            Some(0)
        } else {
            candidate.at(n - k)
        };
        let Some(back) = back else { continue };
        let expected = (back + lower.values()[i]) % m;
        if expected != v {
            return Ok(CheckReport::fail(
                n,
                format!("recurrence fails at n = {n}: {v} != {back} + {}", lower.values()[i]),
            ));
        }
        if n == 0 && v != 1 % m {
            return Ok(CheckReport::fail(0, format!("p(0, k) must be 1, got {v}")));
        }
    }
    Ok(CheckReport::pass())
}
