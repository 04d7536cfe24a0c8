//! Independent oracles. Nothing here calls into the library.
#![allow(dead_code)]

/// Number of partitions of `n` into parts `<= max_part`, by enumerating
/// every partition with non-increasing parts.
pub fn count_partitions(n: u32, max_part: u32) -> u64 {
    fn go(remaining: u32, cap: u32) -> u64 {
        if remaining == 0 {
            return 1;
        }
        (1..=cap.min(remaining)).map(|part| go(remaining - part, part)).sum()
    }
    go(n, max_part)
}

/// `p(n, k) mod m` for `n < len` by the coin-change table over parts 1..=k.
pub fn coin_change_residues(k: u32, m: u64, len: usize) -> Vec<u64> {
    let mut dp = vec![0u64; len];
    if len > 0 {
        dp[0] = 1 % m;
    }
    for part in 1..=k as usize {
        for n in part..len {
            dp[n] = (dp[n] + dp[n - part]) % m;
        }
    }
    dp
}

/// Least `p >= 1` with `s[i] == s[i + p]` for every `i` with `i + p < s.len()`.
pub fn least_period_by_scan(s: &[u64]) -> Option<usize> {
    (1..s.len()).find(|&p| (0..s.len() - p).all(|i| s[i] == s[i + p]))
}

/// Longest run of zeros in `s`.
pub fn longest_zero_run(s: &[u64]) -> usize {
    let mut best = 0;
    let mut cur = 0;
    for &v in s {
        if v == 0 {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best
}
