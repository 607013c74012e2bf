//! Palindrome machinery over unbounded alphabets.
//!
//! Centers are indexed `0 ..= 2|w| - 2`: even index `2p` is the digit at
//! 0-based position `p`, odd index `2p + 1` is the gap between `p` and `p + 1`.
//! For a palindrome occurrence the doubled center `2·start + len − 1`
//! (1-based `start`) is exactly the center index plus 2.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::word::{Digit, Word};

/// A located palindromic factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Occurrence {
    /// 1-based.
    pub start: usize,
    pub length: usize,
    pub doubled_center: usize,
}

impl Occurrence {
    pub fn new(start: usize, length: usize) -> Self {
        Occurrence {
            start,
            length,
            doubled_center: 2 * start + length - 1,
        }
    }

    /// 1-based, inclusive.
    pub fn end(&self) -> usize {
        self.start + self.length - 1
    }

    pub fn factor(&self, w: &Word) -> Word {
        Word::from_digits(w.digits()[self.start - 1..self.end()].to_vec())
    }
}

/// Maximal palindrome length at each of the `2|w| - 1` centers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RadiusProfile {
    lengths: Vec<usize>,
}

impl RadiusProfile {
    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// Values at digit positions (odd-length centers).
    pub fn odd(&self) -> Vec<usize> {
        self.lengths.iter().step_by(2).copied().collect()
    }

    /// Values at gaps (even-length centers).
    pub fn even(&self) -> Vec<usize> {
        self.lengths.iter().skip(1).step_by(2).copied().collect()
    }

    /// The maximal occurrence at center index `c`, if nonempty.
    pub fn occurrence(&self, c: usize) -> Option<Occurrence> {
        let len = self.lengths[c];
        if len == 0 {
            return None;
        }
        // 2·start + len − 1 = c + 2
        let start = (c + 3 - len) / 2;
        Some(Occurrence::new(start, len))
    }
}

pub fn is_palindrome(w: &[Digit]) -> bool {
    let n = w.len();
    (0..n / 2).all(|i| w[i] == w[n - 1 - i])
}

fn check_min_len(min_len: usize) -> Result<()> {
    if min_len < 1 {
        return domain("min_len must be at least 1");
    }
    Ok(())
}

/// Manacher's scan on the implicit interleaving `#w_0#w_1#...#w_{n-1}#`,
/// comparing digits for equality only.
pub fn maximal_radii(w: &[Digit]) -> RadiusProfile {
    let n = w.len();
    if n == 0 {
        return RadiusProfile::default();
    }
    // rad[i] on the interleaved string of length 2n+1; rad[i] is the
    // palindrome length in original digits centered at i.
    let m = 2 * n + 1;
    let mut rad = vec![0usize; m];
    let at = |i: usize| -> Option<Digit> {
        if i % 2 == 1 {
            Some(w[i / 2])
        } else {
            None
        }
    };
    let (mut center, mut right) = (0usize, 0usize);
    for i in 0..m {
        let mut r = if i < right {
            rad[2 * center - i].min(right - i)
        } else {
            0
        };
        while i + r + 1 < m && i > r && at(i + r + 1) == at(i - r - 1) {
            r += 1;
        }
        rad[i] = r;
        if i + r > right {
            center = i;
            right = i + r;
        }
    }
    RadiusProfile {
        lengths: rad[1..m - 1].to_vec(),
    }
}

/// Number of palindromic lengths `len, len − 2, …` that are `>= min_len`.
fn nested_count(len: usize, min_len: usize) -> u64 {
    if len < min_len {
        return 0;
    }
    let lowest = if (len - min_len).is_multiple_of(2) {
        min_len
    } else {
        min_len + 1
    };
    ((len - lowest) / 2 + 1) as u64
}

/// Number of `(start, length)` pairs with `length >= min_len` spelling a
/// palindrome.
pub fn count_occurrences(w: &[Digit], min_len: usize) -> Result<u64> {
    check_min_len(min_len)?;
    Ok(count_from_profile(&maximal_radii(w), min_len))
}

pub fn count_from_profile(profile: &RadiusProfile, min_len: usize) -> u64 {
    profile
        .lengths()
        .iter()
        .map(|&len| nested_count(len, min_len))
        .sum()
}

/// One occurrence per center whose maximal palindrome has length
/// `>= min_len`, sorted by doubled center.
pub fn enumerate_maximal(w: &[Digit], min_len: usize) -> Result<Vec<Occurrence>> {
    check_min_len(min_len)?;
    let profile = maximal_radii(w);
    Ok((0..profile.len())
        .filter(|&c| profile.lengths()[c] >= min_len)
        .filter_map(|c| profile.occurrence(c))
        .collect())
}

/// Palindromic tree over an unbounded alphabet: edges are keyed by digit.
#[derive(Debug, Clone)]
pub struct Eertree {
    nodes: Vec<Node>,
    last: usize,
}

#[derive(Debug, Clone)]
struct Node {
    /// -1 for the imaginary root.
    len: isize,
    link: usize,
    edges: HashMap<Digit, usize>,
    /// 0-based end position of the first occurrence.
    end: usize,
}

const IMAGINARY: usize = 0;
const EMPTY: usize = 1;

impl Eertree {
    pub fn build(w: &[Digit]) -> Self {
        let mut tree = Eertree {
            nodes: vec![
                Node {
                    len: -1,
                    link: IMAGINARY,
                    edges: HashMap::new(),
                    end: 0,
                },
                Node {
                    len: 0,
                    link: IMAGINARY,
                    edges: HashMap::new(),
                    end: 0,
                },
            ],
            last: EMPTY,
        };
        for i in 0..w.len() {
            tree.add(w, i);
        }
        tree
    }

    fn suffix_fitting(&self, w: &[Digit], mut v: usize, i: usize) -> usize {
        loop {
            let len = self.nodes[v].len;
            let j = i as isize - len - 1;
            if j >= 0 && w[j as usize] == w[i] {
                return v;
            }
            v = self.nodes[v].link;
        }
    }

    fn add(&mut self, w: &[Digit], i: usize) {
        let c = w[i];
        let cur = self.suffix_fitting(w, self.last, i);
        if let Some(&next) = self.nodes[cur].edges.get(&c) {
            self.last = next;
            return;
        }
        let len = self.nodes[cur].len + 2;
        let link = if len == 1 {
            EMPTY
        } else {
            let p = self.suffix_fitting(w, self.nodes[cur].link, i);
            self.nodes[p].edges[&c]
        };
        let id = self.nodes.len();
        self.nodes.push(Node {
            len,
            link,
            edges: HashMap::new(),
            end: i,
        });
        self.nodes[cur].edges.insert(c, id);
        self.last = id;
    }

    /// Number of distinct nonempty palindromic factors.
    pub fn distinct_count(&self) -> usize {
        self.nodes.len() - 2
    }

    /// `(first end position, length)` for every distinct palindrome.
    fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nodes[2..].iter().map(|n| (n.end, n.len as usize))
    }

    pub fn lengths(&self, min_len: usize) -> BTreeSet<usize> {
        self.entries()
            .map(|(_, len)| len)
            .filter(|&len| len >= min_len)
            .collect()
    }

    pub fn factors(&self, w: &[Digit], min_len: usize) -> BTreeSet<Word> {
        self.entries()
            .filter(|&(_, len)| len >= min_len)
            .map(|(end, len)| Word::from_digits(w[end + 1 - len..=end].to_vec()))
            .collect()
    }
}

/// Distinct palindromic factors of length `>= min_len`.
pub fn distinct_factors(w: &[Digit], min_len: usize) -> Result<BTreeSet<Word>> {
    check_min_len(min_len)?;
    Ok(Eertree::build(w).factors(w, min_len))
}

/// Distinct lengths of palindromic factors of length `>= min_len`.
pub fn distinct_lengths(w: &[Digit], min_len: usize) -> Result<BTreeSet<usize>> {
    check_min_len(min_len)?;
    Ok(Eertree::build(w).lengths(min_len))
}

/// Block boundaries of a word, each given as the number of digits before
/// the cut. The last block is the designated final block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSpec {
    cuts: Vec<usize>,
    labels: Vec<u64>,
}

impl CutSpec {
    /// Blocks are labelled `0, 1, …` from the left.
    pub fn new(cuts: Vec<usize>) -> Self {
        let labels = (0..=cuts.len() as u64).collect();
        CutSpec { cuts, labels }
    }

    /// `labels` has one entry per block, i.e. `cuts.len() + 1` entries.
    pub fn with_labels(cuts: Vec<usize>, labels: Vec<u64>) -> Result<Self> {
        if labels.len() != cuts.len() + 1 {
            return domain(format!(
                "{} cuts need {} block labels, got {}",
                cuts.len(),
                cuts.len() + 1,
                labels.len()
            ));
        }
        Ok(CutSpec { cuts, labels })
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    fn validate(&self, len: usize) -> Result<()> {
        let mut prev = 0;
        for &c in &self.cuts {
            if c <= prev || c >= len {
                return domain(format!(
                    "cuts {:?} are not strictly increasing inside (0, {len})",
                    self.cuts
                ));
            }
            prev = c;
        }
        Ok(())
    }

    /// Block index containing 0-based position `p`.
    fn block_of(&self, p: usize) -> usize {
        self.cuts.partition_point(|&c| c <= p)
    }
}

/// Occurrence counts split by how they sit relative to the cuts.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CrossingCounts {
    pub contained: u64,
    /// Keyed by the label of the block holding the start; one entry per
    /// non-final block.
    pub bordering: BTreeMap<u64, u64>,
    pub straddling: u64,
}

impl CrossingCounts {
    pub fn total(&self) -> u64 {
        self.contained + self.bordering.values().sum::<u64>() + self.straddling
    }
}

/// Classifies every palindromic occurrence of length `>= min_len`:
/// straddling if it crosses the cut in front of the final block, otherwise
/// bordering (under its start block) if it crosses any cut, else contained.
pub fn classify_crossing(w: &[Digit], cuts: &CutSpec, min_len: usize) -> Result<CrossingCounts> {
    check_min_len(min_len)?;
    cuts.validate(w.len())?;
    let mut out = CrossingCounts::default();
    let blocks = cuts.cuts.len() + 1;
    for b in 0..blocks - 1 {
        out.bordering.insert(cuts.labels[b], 0);
    }
    let profile = maximal_radii(w);
    let final_cut = cuts.cuts.last().copied();

    for (c, &len) in profile.lengths().iter().enumerate() {
        if len < min_len {
            continue;
        }
        // Innermost occurrence of admissible length, 0-based inclusive bounds.
        let inner = if (len - min_len).is_multiple_of(2) {
            min_len
        } else {
            min_len + 1
        };
        let steps = ((len - inner) / 2) as i64; // t ranges over 0..=steps
        let s0 = ((c + 1 - inner) / 2) as i64;
        let e0 = s0 + inner as i64 - 1;
        // Occurrence t spans [s0 - t, e0 + t]; it crosses the cut b
        // (between b - 1 and b) iff t >= max(s0 - b + 1, b - e0).
        let threshold = |b: usize| -> i64 { (s0 - b as i64 + 1).max(b as i64 - e0).max(0) };

        let straddle_from = final_cut.map(threshold).unwrap_or(i64::MAX);
        if straddle_from <= steps {
            out.straddling += (steps - straddle_from + 1) as u64;
        }
        let cross_from = cuts
            .cuts
            .iter()
            .map(|&b| threshold(b))
            .min()
            .unwrap_or(i64::MAX);
        let contained_upto = cross_from.min(steps + 1); // exclusive
        out.contained += contained_upto as u64;

        // Bordering: t in [cross_from, min(straddle_from, steps + 1)),
        // bucketed by the block holding s0 - t.
        let hi = straddle_from.min(steps + 1);
        let mut t = cross_from;
        while t < hi {
            let start = (s0 - t) as usize;
            let block = cuts.block_of(start);
            // Smallest t' > t whose start falls in an earlier block.
            let block_lo = if block == 0 { 0 } else { cuts.cuts[block - 1] as i64 };
            let next = (s0 - block_lo + 1).min(hi);
            *out.bordering.entry(cuts.labels[block]).or_insert(0) += (next - t) as u64;
            t = next;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{word, GenMethod};

    fn d(s: &str) -> Vec<Digit> {
        s.parse::<Word>().unwrap().into_digits()
    }

    #[test]
    fn palindrome_predicate() {
        assert!(is_palindrome(&[]));
        assert!(is_palindrome(&d("10201")));
        assert!(!is_palindrome(&d("0102")));
    }

    #[test]
    fn radii_examples() {
        let p = maximal_radii(&d("0102010"));
        assert_eq!(p.odd(), vec![1, 3, 1, 7, 1, 3, 1]);
        assert!(p.even().iter().all(|&x| x == 0));
        assert_eq!(maximal_radii(&d("33")).lengths(), &[1, 2, 1]);
        assert!(maximal_radii(&[]).is_empty());
    }

    #[test]
    fn counts() {
        assert_eq!(count_occurrences(&d("0102"), 2).unwrap(), 1);
        assert_eq!(count_occurrences(&d("01020103"), 2).unwrap(), 5);
        assert_eq!(count_occurrences(&d("010201030102014"), 2).unwrap(), 14);
        assert_eq!(count_occurrences(&d("0102"), 1).unwrap(), 5);
        assert!(count_occurrences(&d("0102"), 0).is_err());
    }

    #[test]
    fn maximal_enumeration() {
        let occ = enumerate_maximal(&d("0102013"), 2).unwrap();
        assert_eq!(occ, vec![Occurrence::new(1, 3), Occurrence::new(2, 5)]);
        assert_eq!(occ[0].doubled_center, 4);
        assert_eq!(occ[1].doubled_center, 8);
        assert_eq!(enumerate_maximal(&d("33"), 2).unwrap(), vec![Occurrence::new(1, 2)]);
        assert!(enumerate_maximal(&d("012"), 2).unwrap().is_empty());
        assert!(enumerate_maximal(&d("012"), 0).is_err());
    }

    #[test]
    fn distinct() {
        let set = distinct_factors(&d("0102013"), 2).unwrap();
        let expect: BTreeSet<Word> = ["010", "020", "10201"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(set, expect);
        let set = distinct_factors(&d("111"), 2).unwrap();
        assert_eq!(set.len(), 2);
        let w5 = word(3, 5, GenMethod::ByRecurrence).unwrap();
        assert!(distinct_factors(w5.digits(), 2).unwrap().contains(&"33".parse().unwrap()));
        assert!(distinct_factors(&d("1"), 0).is_err());
    }

    #[test]
    fn crossing_examples() {
        // W_4^(4) = W_3 | W_2 | W_1 | 4 ⊕ W_0
        let w = word(4, 4, GenMethod::ByRecurrence).unwrap();
        let cuts = CutSpec::with_labels(vec![8, 12, 14], vec![3, 2, 1, 0]).unwrap();
        let cc = classify_crossing(w.digits(), &cuts, 2).unwrap();
        assert_eq!(cc.contained, 6);
        assert_eq!(cc.bordering, BTreeMap::from([(3, 6), (2, 2), (1, 0)]));
        assert_eq!(cc.straddling, 0);

        let w = word(3, 5, GenMethod::ByRecurrence).unwrap();
        let cuts = CutSpec::new(vec![13, 20]);
        let cc = classify_crossing(w.digits(), &cuts, 2).unwrap();
        assert_eq!(cc.straddling, 1);

        let cc = classify_crossing(w.digits(), &CutSpec::new(vec![]), 2).unwrap();
        assert_eq!(cc.contained, count_occurrences(w.digits(), 2).unwrap());
        assert_eq!(cc.straddling, 0);
    }

    #[test]
    fn invalid_cuts() {
        let w = d("0102013");
        assert!(classify_crossing(&w, &CutSpec::new(vec![3, 3]), 2).is_err());
        assert!(classify_crossing(&w, &CutSpec::new(vec![0]), 2).is_err());
        assert!(classify_crossing(&w, &CutSpec::new(vec![7]), 2).is_err());
        assert!(CutSpec::with_labels(vec![2], vec![1]).is_err());
    }
}
