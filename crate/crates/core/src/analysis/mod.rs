//! Exact parity statistics of `p(n, k)` over one minimal period.
//!
//! Every limit density of the sequence is a finite count over one period, so
//! all results here are exact [`Rational`]s; nothing touches floating point.

mod rational;

pub use rational::Rational;

use num_integer::Integer;
use serde::Serialize;

use crate::engines::{mod_values, parity_stream, triangular, Caps, ParityBitStream, PartitionParams};
use crate::error::Result;
use crate::period::minimal_period_u64;

/// Parities of one full minimal period of column `k`.
fn one_period(k: u32, caps: &Caps) -> Result<(u64, ParityBitStream)> {
    let period = minimal_period_u64(k, 2)?;
    let bits = parity_stream(k, 0, period, caps)?;
    Ok((period, bits))
}

/// Limit density of odd values of `p(n, k)`.
///
/// The reduced fraction does not depend on which multiple of the period is
/// scanned; the minimal period is simply the cheapest.
pub fn odd_density(k: u32, caps: &Caps) -> Result<Rational> {
    let (period, bits) = one_period(k, caps)?;
    Ok(Rational::new(bits.count_ones(), period))
}

/// Fraction of odd values among `p(0, k) .. p(len - 1, k)`.
pub fn odd_fraction_of_prefix(k: u32, len: u64, caps: &Caps) -> Result<Rational> {
    let bits = parity_stream(k, 0, len, caps)?;
    Ok(Rational::new(bits.count_ones(), len))
}

/// Limit density of `n` with `p(n, k) != 0 mod m`.
///
/// For `m = 2` this is [`odd_density`]; for other moduli it is an extra
/// statistic with no parity interpretation.
pub fn nonzero_density(k: u32, m: u64, caps: &Caps) -> Result<Rational> {
    let params = PartitionParams::new(k, m)?;
    let period = minimal_period_u64(k, m)?;
    let seq = mod_values(params, 0, period, caps)?;
    let nonzero = seq.values().iter().filter(|&&v| v != 0).count() as u64;
    Ok(Rational::new(nonzero, period))
}

/// Joint densities of the parity pair `(p(n, k), p(n, k - 1))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JointDensities {
    pub odd_odd: Rational,
    pub odd_even: Rational,
    pub even_odd: Rational,
    pub even_even: Rational,
}

impl JointDensities {
    pub fn total(&self) -> Rational {
        self.odd_odd
            .add(&self.odd_even)
            .add(&self.even_odd)
            .add(&self.even_even)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub k: u32,
    /// lcm of the minimal periods of columns `k` and `k - 1`.
    pub period: u64,
    pub odd_density: Rational,
    pub joint: JointDensities,
    /// `(odd, odd)` equals `(even, odd)`: among `n` with `p(n, k-1)` odd,
    /// exactly half have `p(n, k)` odd.
    pub odd_column_balanced: bool,
}

/// Joint parity densities of columns `k` and `k - 1`, `k >= 2`.
pub fn joint_densities(k: u32, caps: &Caps) -> Result<DensityReport> {
    if k < 2 {
        return Err(crate::error::Error::InvalidParams(
            "joint densities need k >= 2".into(),
        ));
    }
    let period = minimal_period_u64(k, 2)?.lcm(&minimal_period_u64(k - 1, 2)?);
    let upper = parity_stream(k, 0, period, caps)?;
    let lower = parity_stream(k - 1, 0, period, caps)?;

    let mut counts = [0u64; 4];
    for (&a, &b) in upper.words().iter().zip(lower.words()) {
        counts[0] += (a & b).count_ones() as u64;
        counts[1] += (a & !b).count_ones() as u64;
        counts[2] += (!a & b).count_ones() as u64;
    }
    counts[3] = period - counts[0] - counts[1] - counts[2];
    let joint = JointDensities {
        odd_odd: Rational::new(counts[0], period),
        odd_even: Rational::new(counts[1], period),
        even_odd: Rational::new(counts[2], period),
        even_even: Rational::new(counts[3], period),
    };
    Ok(DensityReport {
        k,
        period,
        odd_density: Rational::new(counts[0] + counts[1], period),
        odd_column_balanced: joint.odd_odd == joint.even_odd,
        joint,
    })
}

/// Longest block of even values of `p(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub k: u32,
    pub period: u64,
    pub max_even_run: u64,
    /// Residues mod `L` where a maximal run starts.
    pub run_starts: Vec<u64>,
    /// `k(k+1)/2 - 1`.
    pub expected_max: u64,
    /// A maximal run fills the residues `L - (k(k+1)/2 - 1) .. L - 1`.
    pub run_at_period_end: bool,
    /// The maximal run over a linear scan of `max(2L, L + k(k+1)/2)` terms
    /// matches the circular value.
    pub linear_rescan_agrees: bool,
}

impl RunReport {
    pub fn holds(&self) -> bool {
        self.max_even_run == self.expected_max && self.run_at_period_end && self.linear_rescan_agrees
    }
}

/// Maximal zero-runs of a bit sequence: `(length, starts)`.
fn zero_runs(bits: impl Iterator<Item = bool>) -> (u64, Vec<u64>) {
    let mut best = 0u64;
    let mut starts = Vec::new();
    let mut cur = 0u64;
    let mut i = 0u64;
    let close = |cur: u64, end: u64, best: &mut u64, starts: &mut Vec<u64>| {
        if cur == 0 {
            return;
        }
        if cur > *best {
            *best = cur;
            starts.clear();
        }
        if cur == *best {
            starts.push(end - cur);
        }
    };
    for b in bits {
        if b {
            close(cur, i, &mut best, &mut starts);
            cur = 0;
        } else {
            cur += 1;
        }
        i += 1;
    }
    close(cur, i, &mut best, &mut starts);
    (best, starts)
}

pub fn max_even_run(k: u32, caps: &Caps) -> Result<RunReport> {
    let period = minimal_period_u64(k, 2)?;
    let t = triangular(k);
    let scan = (2 * period).max(period + t);
    let bits = parity_stream(k, 0, scan, caps)?;

    // p(0, k) = 1, so no even run wraps around the period boundary and the
    // circular runs are the linear runs inside [0, L).
    let (best, starts) = zero_runs((0..period).map(|i| bits.bit(i)));
    let (linear_best, _) = zero_runs(bits.iter());

    let expected_max = t - 1;
    let run_at_period_end = if expected_max == 0 {
        best == 0
    } else {
        best == expected_max && starts.contains(&(period - expected_max))
    };

    Ok(RunReport {
        k,
        period,
        max_even_run: best,
        run_starts: starts,
        expected_max,
        run_at_period_end,
        linear_rescan_agrees: linear_best == best,
    })
}

/// One step of the two-thirds implication: if `density(k) > 2/3` then
/// `density(k + 1) <= 2/3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationRecord {
    pub k: u32,
    pub density: Rational,
    pub next_density: Rational,
    pub premise: bool,
    pub holds: bool,
}

/// Checks the two-thirds implication for every `k < k_max`.
pub fn check_density_implication(k_max: u32, caps: &Caps) -> Result<Vec<ImplicationRecord>> {
    let two_thirds = Rational::new(2, 3);
    let densities = (1..=k_max)
        .map(|k| odd_density(k, caps))
        .collect::<Result<Vec<_>>>()?;
    Ok(densities
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let premise = w[0] > two_thirds;
            ImplicationRecord {
                k: i as u32 + 1,
                density: w[0],
                next_density: w[1],
                premise,
                holds: !premise || w[1] <= two_thirds,
            }
        })
        .collect())
}

/// Lower bound `density(k) >= 2 / (k(k+1))` and its window form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBoundRecord {
    pub k: u32,
    pub odd_density: Rational,
    pub bound: Rational,
    pub density_holds: bool,
    /// Every `k(k+1)/2` consecutive values contain an odd one.
    pub window_holds: bool,
}

impl LowerBoundRecord {
    pub fn holds(&self) -> bool {
        self.density_holds && self.window_holds
    }
}

pub fn check_lower_bound(k: u32, caps: &Caps) -> Result<LowerBoundRecord> {
    let period = minimal_period_u64(k, 2)?;
    let t = triangular(k);
    let bits = parity_stream(k, 0, period + t, caps)?;
    let odd_density = Rational::new(bits.count_ones_in(0, period), period);
    let bound = Rational::new(2, k as u64 * (k as u64 + 1));

    // Sliding count of odd values over every window starting in [0, L).
    let mut in_window = bits.count_ones_in(0, t);
    let mut window_holds = in_window > 0;
    for start in 1..period {
        in_window += bits.bit(start + t - 1) as u64;
        in_window -= bits.bit(start - 1) as u64;
        window_holds &= in_window > 0;
    }

    Ok(LowerBoundRecord {
        k,
        odd_density,
        bound,
        density_holds: odd_density >= bound,
        window_holds,
    })
}

/// One CSV row of the per-`k` parity summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisRow {
    pub k: u32,
    #[serde(rename = "L")]
    pub period: u64,
    pub odd_num: u64,
    pub odd_den: u64,
    pub max_run: u64,
    pub run_at_period_end: bool,
    /// Empty for `k = 1`.
    pub lemma31_holds: Option<bool>,
    pub thm13_holds: bool,
}

pub fn analysis_row(k: u32, caps: &Caps) -> Result<AnalysisRow> {
    let runs = max_even_run(k, caps)?;
    let density = odd_density(k, caps)?;
    let balanced = if k >= 2 {
        Some(joint_densities(k, caps)?.odd_column_balanced)
    } else {
        None
    };
    let bound = check_lower_bound(k, caps)?;
    Ok(AnalysisRow {
        k,
        period: runs.period,
        odd_num: density.numer(),
        odd_den: density.denom(),
        max_run: runs.max_even_run,
        run_at_period_end: runs.run_at_period_end,
        lemma31_holds: balanced,
        thm13_holds: bound.holds(),
    })
}

/// Writes rows as CSV with the header
/// `k,L,odd_num,odd_den,max_run,run_at_period_end,lemma31_holds,thm13_holds`.
pub fn write_csv<W: std::io::Write>(rows: &[AnalysisRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn density_small_k() {
        assert_eq!(odd_density(1, &caps()).unwrap(), Rational::integer(1));
        assert_eq!(odd_density(3, &caps()).unwrap(), Rational::new(5, 12));
        assert_eq!(odd_density(4, &caps()).unwrap(), Rational::new(11, 24));
        assert_eq!(odd_density(7, &caps()).unwrap(), Rational::new(23, 56));
    }

    #[test]
    fn nonzero_density_mod_two_is_odd_density() {
        for k in 1..7 {
            assert_eq!(nonzero_density(k, 2, &caps()).unwrap(), odd_density(k, &caps()).unwrap());
        }
        // p(n, 1) = 1 is never 0 mod 3
        assert_eq!(nonzero_density(1, 3, &caps()).unwrap(), Rational::integer(1));
    }

    #[test]
    fn joint_three() {
        let r = joint_densities(3, &caps()).unwrap();
        assert_eq!(r.period, 12);
        assert_eq!(r.joint.odd_odd, Rational::new(3, 12));
        assert_eq!(r.joint.even_odd, Rational::new(3, 12));
        assert!(r.odd_column_balanced);
        assert_eq!(r.joint.total(), Rational::integer(1));
        assert_eq!(r.odd_density, Rational::new(5, 12));
    }

    #[test]
    fn joint_two() {
        let r = joint_densities(2, &caps()).unwrap();
        assert_eq!(r.period, 4);
        assert_eq!(r.joint.odd_odd, Rational::new(1, 2));
        assert_eq!(r.joint.even_odd, Rational::new(1, 2));
        assert_eq!(r.joint.odd_even, Rational::integer(0));
        assert!(joint_densities(1, &caps()).is_err());
    }

    #[test]
    fn runs_small_k() {
        let r = max_even_run(3, &caps()).unwrap();
        assert_eq!(r.max_even_run, 5);
        assert_eq!(r.run_starts, vec![7]);
        assert!(r.holds());

        let r = max_even_run(2, &caps()).unwrap();
        assert_eq!(r.max_even_run, 2);
        assert_eq!(r.run_starts, vec![2]);
        assert!(r.holds());

        let r = max_even_run(1, &caps()).unwrap();
        assert_eq!(r.max_even_run, 0);
        assert!(r.run_starts.is_empty());
        assert!(r.holds());
    }

    #[test]
    fn zero_run_helper() {
        let bits = [true, false, false, true, false, false, false, true, false, false, false];
        assert_eq!(zero_runs(bits.iter().copied()), (3, vec![4, 8]));
        assert_eq!(zero_runs([true, true].into_iter()), (0, vec![]));
    }

    #[test]
    fn implication_small() {
        let recs = check_density_implication(6, &caps()).unwrap();
        assert_eq!(recs.len(), 5);
        assert!(recs[0].premise && recs[0].holds);
        assert_eq!(recs[0].next_density, Rational::new(1, 2));
        assert!(recs.iter().skip(1).all(|r| !r.premise && r.holds));
    }

    #[test]
    fn lower_bound_examples() {
        let r = check_lower_bound(3, &caps()).unwrap();
        assert_eq!(r.bound, Rational::new(1, 6));
        assert!(r.holds());
        let r = check_lower_bound(1, &caps()).unwrap();
        assert_eq!(r.odd_density, r.bound);
        assert!(r.holds());
    }

    #[test]
    fn csv_shape() {
        let rows = vec![analysis_row(1, &caps()).unwrap(), analysis_row(3, &caps()).unwrap()];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "k,L,odd_num,odd_den,max_run,run_at_period_end,lemma31_holds,thm13_holds\n\
             1,1,1,1,0,true,,true\n\
             3,12,5,12,5,true,true,true\n"
        );
    }
}
