use serde::{Deserialize, Serialize};

use super::{Caps, PartitionParams};
use crate::error::Result;

/// A window of `p(n, k) mod m` for `n = start .. start + values.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModSequence {
    params: PartitionParams,
    start: u64,
    values: Vec<u64>,
}

impl ModSequence {
    /// Wraps residues computed elsewhere. Values are reduced modulo `m`.
    pub fn from_residues(params: PartitionParams, start: u64, mut values: Vec<u64>) -> Self {
        let m = params.m();
        values.iter_mut().for_each(|v| *v %= m);
        ModSequence {
            params,
            start,
            values,
        }
    }

    pub fn params(&self) -> PartitionParams {
        self.params
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Residue at absolute index `n`, if it lies in the window.
    pub fn at(&self, n: u64) -> Option<u64> {
        n.checked_sub(self.start)
            .and_then(|i| self.values.get(i as usize).copied())
    }

    /// Mutable access for fault-injection in tests and tools.
    pub fn values_mut(&mut self) -> &mut [u64] {
        &mut self.values
    }
}

/// Residues `p(n, k) mod m` for `n` in `[n_start, n_start + count)`.
///
/// Column `j` keeps a ring of its last `j` values; slot `n mod j` holds
/// `p(n - j, j)` until it is overwritten by `p(n, j)`. Memory is
/// `O(k^2 + count)` and the prefix before `n_start` is computed and dropped.
pub fn mod_values(
    params: PartitionParams,
    n_start: u64,
    count: u64,
    caps: &Caps,
) -> Result<ModSequence> {
    caps.check_residues("residues", n_start as u128 + count as u128)?;
    let k = params.k() as usize;
    let m = params.m();

    // rings[offset[j] .. offset[j] + j] is the ring for column j (j >= 2).
    let mut offset = vec![0usize; k + 1];
    let mut total = 0;
    for (j, off) in offset.iter_mut().enumerate().skip(2) {
        *off = total;
        total += j;
    }
    let mut rings = vec![0u64; total];
    let mut cursor = vec![0usize; k + 1];

    let mut out = Vec::with_capacity(count as usize);
    let end = n_start + count;
    for n in 0..end {
        // p(n, 1) = 1 for n >= 0
        let mut v = 1 % m;
        for j in 2..=k {
            let slot = offset[j] + cursor[j];
            let s = v + rings[slot];
            v = if s >= m { s - m } else { s };
            rings[slot] = v;
            cursor[j] = if cursor[j] + 1 == j { 0 } else { cursor[j] + 1 };
        }
        if n >= n_start {
            out.push(v);
        }
    }
    Ok(ModSequence {
        params,
        start: n_start,
        values: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k: u32, m: u64) -> PartitionParams {
        PartitionParams::new(k, m).unwrap()
    }

    #[test]
    fn parities_for_three() {
        let s = mod_values(params(3, 2), 0, 12, &Caps::default()).unwrap();
        assert_eq!(s.values(), &[1, 1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn parities_for_two() {
        let s = mod_values(params(2, 2), 0, 8, &Caps::default()).unwrap();
        assert_eq!(s.values(), &[1, 1, 0, 0, 1, 1, 0, 0]);
    }

    #[test]
    fn column_one_is_constant() {
        let s = mod_values(params(1, 5), 37, 20, &Caps::default()).unwrap();
        assert!(s.values().iter().all(|&v| v == 1));
        assert_eq!(s.start(), 37);
        assert_eq!(s.at(40), Some(1));
        assert_eq!(s.at(36), None);
        assert_eq!(s.at(57), None);
    }

    #[test]
    fn offset_window_matches_prefix() {
        let p = params(6, 7);
        let full = mod_values(p, 0, 300, &Caps::default()).unwrap();
        let tail = mod_values(p, 123, 100, &Caps::default()).unwrap();
        assert_eq!(tail.values(), &full.values()[123..223]);
    }

    #[test]
    fn starts_with_one() {
        for k in 1..8 {
            let s = mod_values(params(k, 3), 0, 1, &Caps::default()).unwrap();
            assert_eq!(s.values(), &[1]);
        }
    }

    #[test]
    fn cap_covers_warmup() {
        let caps = Caps {
            max_residues: 100,
            ..Caps::default()
        };
        assert!(mod_values(params(3, 2), 50, 50, &caps).is_ok());
        assert!(mod_values(params(3, 2), 51, 50, &caps)
            .unwrap_err()
            .is_resource_limit());
    }
}
