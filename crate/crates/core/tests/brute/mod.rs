//! Slow reference implementations used as oracles. Nothing here shares code
//! with the library's palindrome engine.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn is_pal(w: &[u64]) -> bool {
    w.iter().eq(w.iter().rev())
}

/// Maximal palindrome length at each of the `2n - 1` centers, by expanding
/// outwards from every center.
pub fn radii(w: &[u64]) -> Vec<usize> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(2 * n - 1);
    for c in 0..2 * n - 1 {
        // Left and right ends of the palindrome as half-open bounds.
        let (mut lo, mut hi) = if c % 2 == 0 { (c / 2, c / 2 + 1) } else { (c / 2 + 1, c / 2 + 1) };
        while lo > 0 && hi < n && w[lo - 1] == w[hi] {
            lo -= 1;
            hi += 1;
        }
        out.push(hi - lo);
    }
    out
}

/// Every `(start, len)` spelling a palindrome, tested one by one.
pub fn count_cubic(w: &[u64], min_len: usize) -> u64 {
    let n = w.len();
    let mut c = 0;
    for i in 0..n {
        for j in i + min_len.max(1)..=n {
            if is_pal(&w[i..j]) {
                c += 1;
            }
        }
    }
    c
}

/// Every palindromic occurrence as `(start (1-based), len)`, found by
/// expanding around each center.
pub fn occurrences(w: &[u64], min_len: usize) -> Vec<(usize, usize)> {
    let n = w.len() as isize;
    let mut out = Vec::new();
    for center in 0..2 * n - 1 {
        let (mut lo, mut hi) = (center / 2, (center + 1) / 2);
        while lo >= 0 && hi < n && w[lo as usize] == w[hi as usize] {
            let len = (hi - lo + 1) as usize;
            if len >= min_len {
                out.push((lo as usize + 1, len));
            }
            lo -= 1;
            hi += 1;
        }
    }
    out
}

/// Occurrences that cannot be extended on both sides.
pub fn maximal(w: &[u64], min_len: usize) -> BTreeSet<(usize, usize)> {
    occurrences(w, min_len)
        .into_iter()
        .filter(|&(s, len)| {
            let (i, j) = (s - 1, s - 1 + len);
            !(i > 0 && j < w.len() && w[i - 1] == w[j])
        })
        .collect()
}

pub fn distinct(w: &[u64], min_len: usize) -> BTreeSet<Vec<u64>> {
    occurrences(w, min_len)
        .into_iter()
        .map(|(s, len)| w[s - 1..s - 1 + len].to_vec())
        .collect()
}

/// Deterministic corpus of random words. Small alphabets are favoured so
/// that long palindromes actually occur.
pub fn corpus(seed: u64, count: usize, max_len: usize, max_alphabet: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            let sigma = if rng.gen_bool(0.5) {
                rng.gen_range(1..=3.min(max_alphabet))
            } else {
                rng.gen_range(1..=max_alphabet)
            };
            (0..len).map(|_| rng.gen_range(0..sigma)).collect()
        })
        .collect()
}
