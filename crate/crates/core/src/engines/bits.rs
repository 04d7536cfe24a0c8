//! Word-parallel parity engine.
//!
//! Over GF(2) column `j` is column `j - 1` divided by `1 + q^j`:
//! `x[n] = y[n] ^ x[n - j]`. Words are produced left to right and every
//! column keeps just enough history to look `j` bits back.
//!
//! Within a word, for `j < 64`, the feedback is resolved in two parts: a
//! stride-`j` prefix XOR of the incoming word (log-doubling), and the last `j`
//! bits of the previous output word repeated with period `j` across the word.
//! For `j >= 64` there is no in-word feedback and the engine XORs in a
//! 64-bit slice starting `j` bits back.

use serde::{Deserialize, Serialize};

use super::{Caps, ModSequence, PartitionParams};
use crate::error::{Error, Result};

/// Bits per packed word. Bit `i` of the stream lives in word `i / 64` at bit
/// position `i % 64`; the least-significant bit holds the lowest `n`.
pub const WORD_BITS: usize = 64;

/// Packed parities `p(start + i, k) mod 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityBitStream {
    k: u32,
    start: u64,
    len: u64,
    words: Vec<u64>,
}

impl ParityBitStream {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed words; bits past `len` in the last word are zero.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Bit `i` of the window (i.e. parity of `p(start + i, k)`).
    pub fn bit(&self, i: u64) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        (self.words[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Number of odd values in the window positions `[from, to)`.
    pub fn count_ones_in(&self, from: u64, to: u64) -> u64 {
        assert!(from <= to && to <= self.len);
        (from..to).filter(|&i| self.bit(i)).count() as u64
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bit(i))
    }

    pub fn to_mod_sequence(&self) -> ModSequence {
        let params = PartitionParams::new(self.k, 2).expect("k >= 1 by construction");
        ModSequence::from_residues(params, self.start, self.iter().map(u64::from).collect())
    }
}

/// `x[i] = XOR of y[i - t*j]` for `t >= 0`, restricted to one word.
#[inline]
fn stride_prefix_xor(mut y: u64, j: usize) -> u64 {
    let mut shift = j;
    while shift < WORD_BITS {
        y ^= y << shift;
        shift <<= 1;
    }
    y
}

/// Repeats the low `j` bits of `z` with period `j` across a word.
#[inline]
fn repeat_low_bits(mut z: u64, j: usize) -> u64 {
    let mut shift = j;
    while shift < WORD_BITS {
        z |= z << shift;
        shift <<= 1;
    }
    z
}

/// History ring of one column, indexed by absolute word number.
struct ColumnHistory {
    ring: Vec<u64>,
}

impl ColumnHistory {
    fn new(j: usize) -> Self {
        ColumnHistory {
            ring: vec![0; j / WORD_BITS + 2],
        }
    }

    #[inline]
    fn word(&self, idx: i64) -> u64 {
        if idx < 0 {
            0
        } else {
            self.ring[idx as usize % self.ring.len()]
        }
    }

    #[inline]
    fn store(&mut self, idx: usize, w: u64) {
        let len = self.ring.len();
        self.ring[idx % len] = w;
    }

    /// 64 bits starting at (possibly negative) bit position `pos`.
    #[inline]
    fn slice(&self, pos: i64) -> u64 {
        let wi = pos.div_euclid(64);
        let s = pos.rem_euclid(64) as u32;
        if s == 0 {
            self.word(wi)
        } else {
            (self.word(wi) >> s) | (self.word(wi + 1) << (64 - s))
        }
    }
}

/// Packed parities of `p(n, k)` for `n` in `[n_start, n_start + count)`.
pub fn parity_stream(k: u32, n_start: u64, count: u64, caps: &Caps) -> Result<ParityBitStream> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    if count == 0 {
        return Err(Error::InvalidParams("count must be at least 1".into()));
    }
    caps.check_residues("parity bits", n_start as u128 + count as u128)?;

    let end = n_start + count;
    let first_word = (n_start / 64) as usize;
    let last_word = ((end - 1) / 64) as usize;

    let mut history: Vec<ColumnHistory> = (0..=k as usize).map(ColumnHistory::new).collect();
    let mut raw = Vec::with_capacity(last_word - first_word + 1);

    for w in 0..=last_word {
        let base = (w * 64) as i64;
        let mut y = !0u64;
        for (j, col) in history.iter_mut().enumerate().skip(2) {
            let x = if j < WORD_BITS {
                let tail = col.word(w as i64 - 1) >> (WORD_BITS - j);
                stride_prefix_xor(y, j) ^ repeat_low_bits(tail, j)
            } else {
                y ^ col.slice(base - j as i64)
            };
            col.store(w, x);
            y = x;
        }
        if w >= first_word {
            raw.push(y);
        }
    }

    // Realign so bit 0 is n_start.
    let shift = (n_start % 64) as u32;
    let n_words = count.div_ceil(64) as usize;
    let mut words = Vec::with_capacity(n_words);
    for i in 0..n_words {
        let lo = raw[i] >> shift;
        let hi = if shift == 0 {
            0
        } else {
            raw.get(i + 1).map_or(0, |&h| h << (64 - shift))
        };
        words.push(lo | hi);
    }
    let tail_bits = count % 64;
    if tail_bits != 0 {
        *words.last_mut().unwrap() &= (1u64 << tail_bits) - 1;
    }

    Ok(ParityBitStream {
        k,
        start: n_start,
        len: count,
        words,
    })
}
