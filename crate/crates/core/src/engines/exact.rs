use num_bigint::BigUint;
use num_traits::One;

use super::Caps;
use crate::error::{Error, Result};

/// Exact values `p(0, k) ..= p(n_max, k)`.
pub fn exact_values(k: u32, n_max: u64, caps: &Caps) -> Result<Vec<BigUint>> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    let mut columns = ExactColumns::new(n_max, caps)?;
    for _ in 1..k {
        columns.advance();
    }
    Ok(columns.into_values())
}

/// Column-by-column exact table: starts at `k = 1` and each [`advance`]
/// moves to `k + 1` in place.
///
/// [`advance`]: ExactColumns::advance
#[derive(Debug, Clone)]
pub struct ExactColumns {
    k: u32,
    values: Vec<BigUint>,
}

impl ExactColumns {
    pub fn new(n_max: u64, caps: &Caps) -> Result<Self> {
        caps.check_exact(n_max as u128 + 1)?;
        Ok(ExactColumns {
            k: 1,
            values: vec![BigUint::one(); n_max as usize + 1],
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigUint> {
        self.values
    }

    /// Replaces column `k` by column `k + 1`.
    pub fn advance(&mut self) {
        self.k += 1;
        let step = self.k as usize;
        // p(n, k+1) = p(n, k) + p(n - (k+1), k+1), ascending n.
        for n in step..self.values.len() {
            let (lo, hi) = self.values.split_at_mut(n);
            hi[0] += &lo[n - step];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_has_five_partitions() {
        let v = exact_values(4, 4, &Caps::default()).unwrap();
        assert_eq!(v[4], BigUint::from(5u32));
    }

    #[test]
    fn single_part_size_is_constant() {
        let v = exact_values(1, 50, &Caps::default()).unwrap();
        assert!(v.iter().all(|x| x.is_one()));
    }

    #[test]
    fn cap_is_enforced() {
        let caps = Caps {
            max_exact: 10,
            ..Caps::default()
        };
        let err = exact_values(3, 10, &caps).unwrap_err();
        assert!(err.is_resource_limit());
        assert!(exact_values(3, 9, &caps).is_ok());
    }

    #[test]
    fn zero_k_rejected() {
        assert!(exact_values(0, 3, &Caps::default()).is_err());
    }

    #[test]
    fn columns_track_k() {
        let mut c = ExactColumns::new(6, &Caps::default()).unwrap();
        c.advance();
        assert_eq!(c.k(), 2);
        // p(n, 2) = floor(n/2) + 1
        let expect: Vec<BigUint> = (0..=6u32).map(|n| BigUint::from(n / 2 + 1)).collect();
        assert_eq!(c.values(), &expect[..]);
    }
}
