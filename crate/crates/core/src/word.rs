//! Finite words over the nonnegative integers and the k-bonacci generators.
//!
//! `W_n` is the n-th iterate of the morphism
//!
//! ```text
//! ki + j  ->  (ki)(ki + j + 1)   for 0 <= j <= k - 2
//! ki + j  ->  (ki + j + 1)       for j = k - 1
//! ```
//!
//! applied to the single digit `0`. Reducing every digit mod `k` gives the
//! classical k-bonacci word `F_n`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub type Digit = u64;

/// Default cap on the number of digits any generator will produce.
pub const DEFAULT_MAX_LEN: u64 = 1 << 26;

/// The alphabet-family parameter `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Params {
    k: u64,
}

impl Params {
    /// Parameters valid for generation (`k >= 2`).
    pub fn new(k: u64) -> Result<Self> {
        if k < 2 {
            return domain(format!("k must be at least 2, got {k}"));
        }
        Ok(Params { k })
    }

    /// Parameters valid for the palindrome theory (`k >= 3`).
    pub fn for_palindromes(k: u64) -> Result<Self> {
        if k < 3 {
            return domain(format!("palindrome operations require k >= 3, got {k}"));
        }
        Ok(Params { k })
    }

    pub fn k(self) -> u64 {
        self.k
    }
}

/// A finite sequence of digits.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Digit>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_digits(digits: Vec<Digit>) -> Self {
        Word(digits)
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<Digit> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// `W[from, to]`, 1-based and inclusive on both ends.
    pub fn slice(&self, from: usize, to: usize) -> Result<Word> {
        if from == 0 || from > to || to > self.len() {
            return domain(format!(
                "slice [{from}, {to}] out of range for a word of length {}",
                self.len()
            ));
        }
        Ok(Word(self.0[from - 1..to].to_vec()))
    }

    /// Set of digits occurring in the word.
    pub fn alphabet(&self) -> BTreeSet<Digit> {
        self.0.iter().copied().collect()
    }

    /// `|W|_a`.
    pub fn count_of(&self, a: Digit) -> usize {
        self.0.iter().filter(|&&d| d == a).count()
    }

    pub fn max_digit(&self) -> Option<Digit> {
        self.0.iter().copied().max()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut digits = Vec::with_capacity(self.len() + other.len());
        digits.extend_from_slice(&self.0);
        digits.extend_from_slice(&other.0);
        Word(digits)
    }

    pub fn push(&mut self, d: Digit) {
        self.0.push(d);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    /// 1-based start of the first occurrence of `needle`, if any.
    pub fn find(&self, needle: &Word) -> Option<usize> {
        if needle.is_empty() {
            return Some(1);
        }
        self.0
            .windows(needle.len())
            .position(|w| w == needle.digits())
            .map(|p| p + 1)
    }

    pub fn contains_factor(&self, needle: &Word) -> bool {
        self.find(needle).is_some()
    }

    /// `W a^{-1}`: drops the last digit, which must equal `a`.
    pub fn strip_suffix_digit(&self, a: Digit) -> Result<Word> {
        match self.0.split_last() {
            Some((&last, rest)) if last == a => Ok(Word(rest.to_vec())),
            _ => domain(format!("word does not end with digit {a}")),
        }
    }

    /// `a^{-1} W`: drops the first digit, which must equal `a`.
    pub fn strip_prefix_digit(&self, a: Digit) -> Result<Word> {
        match self.0.split_first() {
            Some((&first, rest)) if first == a => Ok(Word(rest.to_vec())),
            _ => domain(format!("word does not start with digit {a}")),
        }
    }

    /// Concatenation of the digits, or `None` when some digit exceeds 9 and
    /// the result would be ambiguous.
    pub fn to_plain(&self) -> Option<String> {
        if self.0.iter().any(|&d| d > 9) {
            return None;
        }
        Some(self.0.iter().map(|d| char::from(b'0' + *d as u8)).collect())
    }

    /// Digits separated by single spaces.
    pub fn to_spaced(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        parts.join(" ")
    }
}

impl From<Vec<Digit>> for Word {
    fn from(digits: Vec<Digit>) -> Self {
        Word(digits)
    }
}

impl AsRef<[Digit]> for Word {
    fn as_ref(&self) -> &[Digit] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_plain() {
            Some(s) => f.write_str(&s),
            None => f.write_str(&self.to_spaced()),
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts either a run of decimal digits (`0102013`), one digit per
    /// character, or whitespace/comma separated integers (`0 1 10 2`).
    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<Digit>()
                        .map_err(|_| Error::Domain(format!("invalid digit {t:?}")))
                })
                .collect::<Result<Vec<_>>>()
                .map(Word)
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(Digit::from)
                        .ok_or_else(|| Error::Domain(format!("invalid digit {c:?}")))
                })
                .collect::<Result<Vec<_>>>()
                .map(Word)
        }
    }
}

/// How [`Generator::word`] builds `W_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum GenMethod {
    /// Iterate the morphism from `0`.
    ByMorphism,
    /// Concatenate earlier words using the block recurrences.
    #[default]
    ByRecurrence,
}

/// `f_n^(k)`: `k - 1` zeros, then `1`, then the sum of the previous `k` terms.
pub fn kbonacci_number(k: u64, n: u64) -> Result<u64> {
    Params::new(k)?;
    if n + 1 < k {
        return Ok(0);
    }
    if n + 1 == k {
        return Ok(1);
    }
    // Sliding window over the last k values; the window sum is the next term.
    let k_us = usize::try_from(k).map_err(|_| Error::Overflow("k-bonacci window"))?;
    let mut window = std::collections::VecDeque::with_capacity(k_us);
    window.extend(std::iter::repeat_n(0u64, k_us - 1));
    window.push_back(1);
    // The running sum may exceed u64 one step before the terms do.
    let mut sum: u128 = 1;
    for _ in k..=n {
        let next = u64::try_from(sum).map_err(|_| Error::Overflow("k-bonacci number"))?;
        let dropped = window.pop_front().unwrap_or(0);
        window.push_back(next);
        sum = sum + u128::from(next) - u128::from(dropped);
    }
    Ok(*window.back().unwrap_or(&0))
}

/// Applies the morphism once, digit by digit.
pub fn apply_morphism(k: u64, w: &Word) -> Result<Word> {
    Params::new(k)?;
    let mut out = Vec::with_capacity(w.len() * 2);
    for &d in w.digits() {
        let base = d - d % k;
        let next = d.checked_add(1).ok_or(Error::Overflow("morphism image"))?;
        if d % k != k - 1 {
            out.push(base);
        }
        out.push(next);
    }
    Ok(Word(out))
}

/// Applies the classical morphism `i -> 0(i+1)` for `i < k - 1`, `k - 1 -> 0`.
fn apply_classical_morphism(k: u64, w: &Word) -> Result<Word> {
    let mut out = Vec::with_capacity(w.len() * 2);
    for &d in w.digits() {
        if d >= k {
            return domain(format!("digit {d} is outside the alphabet 0..{k}"));
        }
        out.push(0);
        if d != k - 1 {
            out.push(d + 1);
        }
    }
    Ok(Word(out))
}

/// `d ⊕ w`: adds `d` to every digit.
pub fn shift_add(d: Digit, w: &Word) -> Result<Word> {
    w.digits()
        .iter()
        .map(|&x| x.checked_add(d).ok_or(Error::Overflow("shifted digit")))
        .collect::<Result<Vec<_>>>()
        .map(Word)
}

/// Subtracts `d` from every digit; fails if some digit is smaller than `d`.
pub fn shift_sub(d: Digit, w: &Word) -> Option<Word> {
    w.digits()
        .iter()
        .map(|&x| x.checked_sub(d))
        .collect::<Option<Vec<_>>>()
        .map(Word)
}

pub fn reduce_mod_k(k: u64, w: &Word) -> Result<Word> {
    Params::new(k)?;
    Ok(Word(w.digits().iter().map(|d| d % k).collect()))
}

/// The last two digits of `W_n`, predicted from `n mod k`.
pub fn suffix_pair(k: u64, n: u64) -> Result<(Digit, Digit)> {
    Params::for_palindromes(k)?;
    if n == 0 {
        return domain("suffix_pair is undefined for n = 0");
    }
    let r = n % k;
    if r == 0 {
        Ok((n - k + 1, n))
    } else {
        Ok((n - r, n))
    }
}

/// Generator for `W_n` and `F_n` with a configurable length guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    params: Params,
    max_len: u64,
}

impl Generator {
    pub fn new(k: u64) -> Result<Self> {
        Ok(Generator {
            params: Params::new(k)?,
            max_len: DEFAULT_MAX_LEN,
        })
    }

    pub fn with_max_len(mut self, max_len: u64) -> Self {
        self.max_len = max_len;
        self
    }

    pub fn k(&self) -> u64 {
        self.params.k()
    }

    pub fn max_len(&self) -> u64 {
        self.max_len
    }

    /// `|W_n| = f_{n+k}`.
    pub fn word_len(&self, n: u64) -> Result<u64> {
        let idx = n
            .checked_add(self.k())
            .ok_or(Error::Overflow("word index"))?;
        kbonacci_number(self.k(), idx)
    }

    fn check_guard(&self, n: u64) -> Result<usize> {
        let len = match self.word_len(n) {
            Ok(len) => len,
            Err(Error::Overflow(_)) => u64::MAX,
            Err(e) => return Err(e),
        };
        if len > self.max_len {
            return Err(Error::LengthGuard {
                n,
                len,
                limit: self.max_len,
            });
        }
        usize::try_from(len).map_err(|_| Error::Overflow("word length"))
    }

    /// Largest `n` whose word fits within `limit` digits.
    pub fn max_index_within(&self, limit: u64) -> u64 {
        let mut n = 0;
        while matches!(self.word_len(n + 1), Ok(len) if len <= limit) {
            n += 1;
        }
        n
    }

    pub fn word(&self, n: u64, method: GenMethod) -> Result<Word> {
        match method {
            GenMethod::ByMorphism => self.word_by_morphism(n),
            GenMethod::ByRecurrence => self.word_by_recurrence(n),
        }
    }

    fn word_by_morphism(&self, n: u64) -> Result<Word> {
        self.check_guard(n)?;
        let mut w = Word(vec![0]);
        for _ in 0..n {
            w = apply_morphism(self.k(), &w)?;
        }
        Ok(w)
    }

    /// Every `W_i` with `i <= n` is a prefix of `W_n`, so the word is built in
    /// a single buffer by copying earlier prefixes:
    /// `W_n = W_{n-1} ... W_0 n` for `n < k` and
    /// `W_n = W_{n-1} ... W_{n-k+1} (k ⊕ W_{n-k})` otherwise.
    fn word_by_recurrence(&self, n: u64) -> Result<Word> {
        let total = self.check_guard(n)?;
        let k = self.k();
        let mut buf: Vec<Digit> = Vec::with_capacity(total);
        let mut lens: Vec<usize> = Vec::with_capacity(n as usize + 1);
        buf.push(0);
        lens.push(1);
        for m in 1..=n {
            let prev = buf.len();
            if m < k {
                // W_{m-1} is already the whole buffer; append W_{m-2} ... W_0 then m.
                for i in (0..m - 1).rev() {
                    let l = lens[i as usize];
                    buf.extend_from_within(..l);
                }
                buf.push(m);
            } else {
                for i in (m - k + 1..m - 1).rev() {
                    let l = lens[i as usize];
                    buf.extend_from_within(..l);
                }
                let l = lens[(m - k) as usize];
                for idx in 0..l {
                    let d = buf[idx]
                        .checked_add(k)
                        .ok_or(Error::Overflow("shifted digit"))?;
                    buf.push(d);
                }
            }
            debug_assert!(buf.len() > prev);
            lens.push(buf.len());
        }
        debug_assert_eq!(buf.len(), total);
        Ok(Word(buf))
    }

    /// All of `W_0 ..= W_n`, as prefixes of `W_n`.
    pub fn word_with_prefix_lengths(&self, n: u64) -> Result<(Word, Vec<usize>)> {
        let w = self.word_by_recurrence(n)?;
        let lens = (0..=n)
            .map(|i| self.word_len(i).map(|l| l as usize))
            .collect::<Result<Vec<_>>>()?;
        Ok((w, lens))
    }

    /// `F_n`, by iterating the classical morphism on `0`.
    pub fn classical_word(&self, n: u64) -> Result<Word> {
        self.check_guard(n)?;
        let mut w = Word(vec![0]);
        for _ in 0..n {
            w = apply_classical_morphism(self.k(), &w)?;
        }
        Ok(w)
    }
}

/// `W_n^(k)` with the default length guard.
pub fn word(k: u64, n: u64, method: GenMethod) -> Result<Word> {
    Generator::new(k)?.word(n, method)
}

/// `F_n^(k)` with the default length guard.
pub fn classical_word(k: u64, n: u64) -> Result<Word> {
    Generator::new(k)?.classical_word(n)
}
