//! Verification suites that pair each formula with an independent scan of
//! the generated words.
//!
//! A check compares an `expected` value (from a formula, tagged with its
//! provenance) with an `actual` value measured on the words. A mismatch is
//! a `Fail` unless the expected value comes from the printed statement
//! ([`Provenance::AsStated`]), in which case it is recorded as a documented
//! discrepancy.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::counting::{alpha, b_count, border_max_length, s_count, CountTable, FormulaMode};
use crate::error::{domain, Error, Result};
use crate::palindrome::{
    classify_crossing, count_occurrences, distinct_lengths, enumerate_maximal, is_palindrome,
    maximal_radii, CutSpec,
};
use crate::structure::{allowed_lengths, maximal_bordering_word, maximal_straddling_words, Catalog, Family};
use crate::word::{
    apply_morphism, reduce_mod_k, shift_add, suffix_pair, GenMethod, Generator, Params, Word,
    DEFAULT_MAX_LEN,
};

/// Largest word length the brute-force-backed suites pick by default.
pub const ORACLE_LEN_LIMIT: u64 = 1 << 16;
/// Largest word length the scan-only suites pick by default.
pub const SCAN_LEN_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Provenance {
    AsStated,
    Derived,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
    #[serde(rename = "Discrepancy-Documented")]
    DiscrepancyDocumented,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Ints(Vec<u64>),
    Pairs(Vec<(Vec<u64>, Vec<u64>)>),
    None,
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&Word> for Value {
    fn from(w: &Word) -> Self {
        Value::Ints(w.digits().to_vec())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub k: u64,
    pub n: Option<u64>,
    pub j: Option<u64>,
    pub expected: Value,
    pub provenance: Provenance,
    pub actual: Value,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub discrepancy: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub k: u64,
    /// Parameter ranges, e.g. `("n_max", 10)`.
    pub parameters: Vec<(String, u64)>,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    pub wall_time_ms: f64,
}

impl Report {
    fn new(suite: &str, k: u64, parameters: &[(&str, u64)]) -> Self {
        Report {
            suite: suite.to_string(),
            k,
            parameters: parameters.iter().map(|(s, v)| (s.to_string(), *v)).collect(),
            checks: Vec::new(),
            summary: Summary::default(),
            wall_time_ms: 0.0,
        }
    }

    fn check(
        &mut self,
        id: &str,
        (n, j): (Option<u64>, Option<u64>),
        expected: impl Into<Value>,
        provenance: Provenance,
        actual: impl Into<Value>,
    ) -> &mut CheckResult {
        let (expected, actual) = (expected.into(), actual.into());
        let verdict = if expected == actual {
            Verdict::Pass
        } else if provenance == Provenance::AsStated {
            Verdict::DiscrepancyDocumented
        } else {
            Verdict::Fail
        };
        self.checks.push(CheckResult {
            id: id.to_string(),
            k: self.k,
            n,
            j,
            expected,
            provenance,
            actual,
            verdict,
            note: None,
        });
        self.checks.last_mut().unwrap()
    }

    fn skip(&mut self, id: &str, n: Option<u64>, note: &str) {
        self.checks.push(CheckResult {
            id: id.to_string(),
            k: self.k,
            n,
            j: None,
            expected: Value::None,
            provenance: Provenance::Oracle,
            actual: Value::None,
            verdict: Verdict::Skipped,
            note: Some(note.to_string()),
        });
    }

    /// Sorts checks canonically and recomputes the summary.
    fn finish(mut self, started: Instant) -> Self {
        self.checks
            .sort_by(|a, b| (&a.id, a.k, a.n, a.j).cmp(&(&b.id, b.k, b.n, b.j)));
        self.summary = tally(&self.checks);
        self.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
        self
    }

    /// Appends another report's checks (used to join per-`n` reports).
    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.checks
            .sort_by(|a, b| (&a.id, a.k, a.n, a.j).cmp(&(&b.id, b.k, b.n, b.j)));
        self.summary = tally(&self.checks);
        self.wall_time_ms += other.wall_time_ms;
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn has_discrepancies(&self) -> bool {
        self.summary.discrepancy > 0
    }

    pub fn checks_with_id<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a CheckResult> + 'a {
        self.checks.iter().filter(move |c| c.id == id)
    }
}

fn tally(checks: &[CheckResult]) -> Summary {
    let mut s = Summary::default();
    for c in checks {
        match c.verdict {
            Verdict::Pass => s.pass += 1,
            Verdict::Fail => s.fail += 1,
            Verdict::DiscrepancyDocumented => s.discrepancy += 1,
            Verdict::Skipped => s.skipped += 1,
        }
    }
    s
}

fn at(n: u64) -> (Option<u64>, Option<u64>) {
    (Some(n), None)
}

fn at_j(n: u64, j: u64) -> (Option<u64>, Option<u64>) {
    (Some(n), Some(j))
}

/// Largest `n` with `|W_n| <= ORACLE_LEN_LIMIT`.
pub fn default_n_max(k: u64) -> Result<u64> {
    Ok(Generator::new(k)?.max_index_within(ORACLE_LEN_LIMIT))
}

/// `W_n` together with the lengths of its prefixes `W_0 … W_n`.
fn words_upto(gen: &Generator, n: u64) -> Result<(Word, Vec<usize>)> {
    gen.word_with_prefix_lengths(n)
}

fn prefix(w: &Word, len: usize) -> &[u64] {
    &w.digits()[..len]
}

fn to_i64(x: u64) -> i64 {
    i64::try_from(x).unwrap_or(i64::MAX)
}

/// Checks `P(n)` and `α(n)` against occurrence counts on the words.
pub fn verify_counts(gen: &Generator, n_max: u64) -> Result<Report> {
    let started = Instant::now();
    let k = Params::for_palindromes(gen.k())?.k();
    let mut report = Report::new("counts", k, &[("n_max", n_max)]);
    let (w, lens) = words_upto(gen, n_max)?;
    let derived = CountTable::build(k, n_max, FormulaMode::Derived)?;

    let oracle: Vec<u64> = lens
        .iter()
        .map(|&l| count_occurrences(prefix(&w, l), 2))
        .collect::<Result<_>>()?;

    for n in 0..=n_max {
        let ni = n as usize;
        report.check("counts.p_total", at(n), derived.p[ni], Provenance::Derived, oracle[ni]);
        if n < k {
            continue;
        }
        let before: u64 = oracle[ni - k as usize..ni].iter().sum();
        let oracle_alpha = Value::Int(to_i64(oracle[ni]) - to_i64(before));
        report.check(
            "counts.alpha.derived",
            at(n),
            alpha(k, n, FormulaMode::Derived)?,
            Provenance::Derived,
            oracle_alpha.clone(),
        );
        report.check(
            "counts.alpha.as-stated",
            at(n),
            alpha(k, n, FormulaMode::AsStated)?,
            Provenance::AsStated,
            oracle_alpha,
        );
    }
    Ok(report.finish(started))
}

/// `W_n` and its cuts `W_{n-1} | … | W_{n-k+1} | k ⊕ W_{n-k}`, each block
/// labelled by the index of the word it copies.
pub fn block_cuts(gen: &Generator, n: u64) -> Result<(Word, CutSpec)> {
    let k = Params::for_palindromes(gen.k())?.k();
    if n < k {
        return domain(format!("block decomposition needs n >= k, got n = {n}, k = {k}"));
    }
    let (w, lens) = words_upto(gen, n)?;
    let mut cuts = Vec::new();
    let mut labels = Vec::new();
    let mut pos = 0;
    for i in (n - k + 1..n).rev() {
        pos += lens[i as usize];
        cuts.push(pos);
        labels.push(i);
    }
    labels.push(n - k);
    Ok((w, CutSpec::with_labels(cuts, labels)?))
}

/// Splits `W_n` at `W_{n-1} | … | W_{n-k+1} | k ⊕ W_{n-k}` and compares the
/// buckets with the closed forms.
pub fn verify_decomposition(gen: &Generator, n: u64) -> Result<Report> {
    let started = Instant::now();
    let k = Params::for_palindromes(gen.k())?.k();
    if n < k {
        return domain(format!("decomposition needs n >= k, got n = {n}, k = {k}"));
    }
    let mut report = Report::new("decomposition", k, &[("n", n)]);
    let (w, spec) = block_cuts(gen, n)?;
    let buckets = classify_crossing(w.digits(), &spec, 2)?;

    let table = CountTable::build(k, n, FormulaMode::Derived)?;
    let contained_formula: u64 = table.p[(n - k) as usize..n as usize].iter().sum();
    report.check(
        "decomposition.contained",
        at(n),
        contained_formula,
        Provenance::Derived,
        buckets.contained,
    );
    for j in n - k + 2..n {
        let actual = buckets.bordering.get(&j).copied().unwrap_or(0);
        report.check(
            "decomposition.bordering",
            at_j(n, j),
            b_count(k, n, j)?,
            Provenance::Derived,
            actual,
        );
    }
    report.check(
        "decomposition.straddling",
        at(n),
        s_count(k, n)?,
        Provenance::Derived,
        buckets.straddling,
    );
    report.check(
        "decomposition.partition",
        at(n),
        count_occurrences(w.digits(), 2)?,
        Provenance::Oracle,
        buckets.total(),
    );
    Ok(report.finish(started))
}

/// [`verify_decomposition`] for every `n` in `k ..= n_max`, merged.
pub fn verify_decomposition_range(gen: &Generator, n_max: u64) -> Result<Report> {
    let k = Params::for_palindromes(gen.k())?.k();
    let mut report = Report::new("decomposition", k, &[("n_min", k), ("n_max", n_max)]);
    for n in k..=n_max {
        report.merge(verify_decomposition(gen, n)?);
    }
    Ok(report)
}

/// Maximal palindrome centered on 1-based position `pos`.
fn maximal_at_position(w: &[u64], pos: usize) -> Word {
    let profile = maximal_radii(w);
    let occ = profile
        .occurrence(2 * (pos - 1))
        .expect("odd centers always carry a palindrome");
    Word::from_digits(w[occ.start - 1..occ.end()].to_vec())
}

/// Checks catalog membership of every maximal palindrome of `W_n`, the
/// bordering and straddling constructions, and that catalog elements occur.
pub fn verify_structure(gen: &Generator, n: u64) -> Result<Report> {
    let started = Instant::now();
    let k = Params::for_palindromes(gen.k())?.k();
    let mut report = Report::new("structure", k, &[("n", n)]);
    let catalog = Catalog::new(k)?;
    let (w, lens) = words_upto(gen, n)?;

    // Completeness: every maximal palindrome of W_n is in the catalog.
    let maximal: BTreeSet<Word> = enumerate_maximal(w.digits(), 2)?
        .iter()
        .map(|o| o.factor(&w))
        .collect();
    let mut observed_lengths = BTreeSet::new();
    for p in &maximal {
        let classes = catalog.classify(p)?;
        let c = report.check(
            "structure.classified",
            at(n),
            true,
            Provenance::Derived,
            !classes.is_empty(),
        );
        let names: Vec<String> = classes.iter().map(ToString::to_string).collect();
        c.note = Some(format!("{} -> [{}]", p.to_spaced(), names.join(", ")));
        let mut len = p.len() as u64;
        while len >= 2 {
            observed_lengths.insert(len);
            len -= 2;
        }
    }
    let allowed = allowed_lengths(k, FormulaMode::Derived)?.lengths;
    let outside: Vec<u64> = observed_lengths.difference(&allowed).copied().collect();
    report.check(
        "structure.lengths-within-allowed",
        at(n),
        Value::Ints(Vec::new()),
        Provenance::Derived,
        Value::Ints(outside),
    );

    // Maximal bordering palindromes, centered on the last digit of the
    // block W_j of W_m.
    for m in k..=n.min(2 * k - 3) {
        let wm = prefix(&w, lens[m as usize]);
        for j in m - k + 2..k {
            let built = maximal_bordering_word(k, m, j)?;
            let center: usize = (j..m).map(|i| lens[i as usize]).sum();
            let found = maximal_at_position(wm, center);
            report.check(
                "structure.bordering-word",
                at_j(m, j),
                &built,
                Provenance::Derived,
                &found,
            );
            report.check(
                "structure.bordering-length",
                at_j(m, j),
                border_max_length(k, m, j)?,
                Provenance::Derived,
                found.len() as u64,
            );
        }
    }

    // Maximal straddling palindromes: maximal palindromes crossing the final cut.
    for m in 2 * k - 1..=n.min(3 * k - 2) {
        let wm = prefix(&w, lens[m as usize]);
        let cut = lens[m as usize] - lens[(m - k) as usize];
        let mut found: Vec<(Vec<u64>, Vec<u64>)> = enumerate_maximal(wm, 2)?
            .into_iter()
            .filter(|o| o.start <= cut && o.end() > cut)
            .map(|o| {
                (
                    wm[o.start - 1..cut].to_vec(),
                    wm[cut..o.end()].to_vec(),
                )
            })
            .collect();
        found.sort();
        let mut built: Vec<(Vec<u64>, Vec<u64>)> = maximal_straddling_words(k, m)?
            .into_iter()
            .map(|p| (p.left.into_digits(), p.right.into_digits()))
            .collect();
        built.sort();
        let (left_cap, right_cap) = if m + 1 == 2 * k {
            (1, 1)
        } else if m + 2 == 3 * k {
            (1u64 << (k - 1), (1u64 << k) - 1)
        } else {
            (1u64 << (m + 1 - 2 * k), (1u64 << (m + 2 - 2 * k)) - 1)
        };
        let within = found
            .iter()
            .all(|(l, r)| l.len() as u64 <= left_cap && r.len() as u64 <= right_cap);
        report.check(
            "structure.straddling-words",
            at(m),
            Value::Pairs(built),
            Provenance::Derived,
            Value::Pairs(found),
        );
        report.check("structure.straddling-bounds", at(m), true, Provenance::Derived, within);
    }

    // Realizability: shift-i elements occur in W_{3k-2+ki}. One host word
    // serves both shifts since each W_m is a prefix of the next.
    let host_n = 4 * k - 2;
    let limit = SCAN_LEN_LIMIT.min(gen.max_len());
    let host = if gen.word_len(host_n).is_ok_and(|l| l <= limit) {
        Some(gen.word(host_n, GenMethod::ByRecurrence)?)
    } else {
        None
    };
    for family in Family::ALL {
        for (el, class) in catalog.elements(family, 1)? {
            let target = 3 * k - 2 + k * class.shift();
            let Some(host) = &host else {
                report.skip("structure.realizable", Some(target), "host word above scan limit");
                continue;
            };
            let end = host.find(&el).map(|p| (p + el.len() - 1) as u64);
            let first_index = end.map(|end| {
                (0..=host_n)
                    .find(|&m| gen.word_len(m).is_ok_and(|l| l >= end))
                    .unwrap_or(host_n)
            });
            let c = report.check(
                "structure.realizable",
                at(target),
                true,
                Provenance::Derived,
                first_index.is_some_and(|m| m <= target),
            );
            c.note = Some(match first_index {
                Some(m) => format!("{class} {} first occurs in W_{m}", el.to_spaced()),
                None => format!("{class} {} not found", el.to_spaced()),
            });
        }
    }
    Ok(report.finish(started))
}

/// Executes the word-level properties over `0 ..= n_max`.
pub fn verify_lemmas(gen: &Generator, n_max: u64) -> Result<Report> {
    let started = Instant::now();
    let k = Params::for_palindromes(gen.k())?.k();
    let mut report = Report::new("lemmas", k, &[("n_max", n_max)]);
    let (w, lens) = words_upto(gen, n_max)?;
    let word_at = |n: u64| Word::from_digits(prefix(&w, lens[n as usize]).to_vec());

    for n in 0..=n_max {
        let wn = word_at(n);
        report.check("lemma.size-law", at(n), gen.word_len(n)?, Provenance::Derived, wn.len() as u64);
        if n >= 1 {
            let prev = lens[n as usize - 1] as u64;
            let expect = if n < k {
                2 * prev
            } else if n == k {
                2 * prev - 1
            } else {
                2 * prev - lens[(n - 1 - k) as usize] as u64
            };
            report.check("lemma.size-recurrence", at(n), expect, Provenance::Derived, wn.len() as u64);
        }
        let by_morphism = gen.word(n, GenMethod::ByMorphism)?;
        report.check("lemma.method-agreement", at(n), &by_morphism, Provenance::Oracle, &wn);
        report.check(
            "lemma.classical-reduction",
            at(n),
            &gen.classical_word(n)?,
            Provenance::Oracle,
            &reduce_mod_k(k, &wn)?,
        );
        if n < n_max {
            report.check("lemma.prefix-chain", at(n), true, Provenance::Derived, wn.is_prefix_of(&w));
        }
        let d = wn.digits();
        let has_00 = d.windows(2).any(|p| p == [0, 0]);
        report.check("lemma.no-00", at(n), false, Provenance::Derived, has_00);
        let adjacency = d.windows(2).all(|p| p[1] % k == 0 || p[0] < p[1]);
        report.check("lemma.adjacency", at(n), true, Provenance::Derived, adjacency);
        if n >= 1 {
            let last_ok = wn.max_digit() == Some(n) && wn.count_of(n) == 1 && d.last() == Some(&n);
            report.check("lemma.last-digit", at(n), true, Provenance::Derived, last_ok);
            let (a, b) = suffix_pair(k, n)?;
            report.check(
                "lemma.suffix-pair",
                at(n),
                Value::Ints(vec![a, b]),
                Provenance::Derived,
                Value::Ints(d[d.len() - 2..].to_vec()),
            );
        }
        // φ(k ⊕ w) = k ⊕ φ(w)
        let lhs = apply_morphism(k, &shift_add(k, &wn)?)?;
        let rhs = shift_add(k, &apply_morphism(k, &wn)?)?;
        report.check("lemma.shift-commutation", at(n), &rhs, Provenance::Derived, &lhs);
    }

    // φ^m(ki + j) = φ^m(j) ⊕ ki
    for m in 1..=n_max.min(6) {
        let mut ok = true;
        for i in 0..=6u64 {
            for j in 0..=6u64 {
                let mut lhs = Word::from_digits(vec![k * i + j]);
                let mut rhs = Word::from_digits(vec![j]);
                for _ in 0..m {
                    lhs = apply_morphism(k, &lhs)?;
                    rhs = apply_morphism(k, &rhs)?;
                }
                ok &= lhs == shift_add(k * i, &rhs)?;
            }
        }
        report.check("lemma.power-commutation", at(m), true, Provenance::Derived, ok);
    }
    if n_max == 0 {
        report.skip("lemma.power-commutation", None, "needs n_max >= 1");
    }

    // W_n n^{-1} is a palindrome for 2 <= n <= k - 1.
    let hi = n_max.min(k - 1);
    if hi < 2 {
        report.skip("lemma.wn-palindrome", None, "range 2 ..= min(k - 1, n_max) is empty");
    }
    for n in 2..=hi {
        let stripped = word_at(n).strip_suffix_digit(n)?;
        report.check("lemma.wn-palindrome", at(n), true, Provenance::Derived, is_palindrome(stripped.digits()));
    }

    // Palindromic prefixes of (i+1)·W_{k+i} have largest digit <= i + 1.
    for i in 0..=k - 2 {
        let host = match gen.word(k + i, GenMethod::ByRecurrence) {
            Ok(h) => h,
            Err(Error::LengthGuard { .. }) => {
                report.skip("lemma.palindromic-prefix-cap", Some(k + i), "word above length guard");
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut x = vec![i + 1];
        x.extend_from_slice(host.digits());
        let profile = maximal_radii(&x);
        let mut running_max = 0;
        let mut ok = true;
        for len in 1..=x.len() {
            running_max = running_max.max(x[len - 1]);
            // The prefix of length len is centered at index len - 1.
            if profile.lengths()[len - 1] >= len && running_max > i + 1 {
                ok = false;
            }
        }
        report.check("lemma.palindromic-prefix-cap", at_j(k + i, i), true, Provenance::Derived, ok);
    }
    Ok(report.finish(started))
}

/// Compares the distinct palindrome lengths of `W_{3k+2}` with both length
/// sets.
pub fn verify_lengths(gen: &Generator) -> Result<Report> {
    let started = Instant::now();
    let k = Params::for_palindromes(gen.k())?.k();
    if k > 6 && gen.max_len() <= DEFAULT_MAX_LEN {
        return domain(format!(
            "length scan is limited to k <= 6 under the default guard; raise the guard for k = {k}"
        ));
    }
    let n = 3 * k + 2;
    let mut report = Report::new("lengths", k, &[("n", n)]);
    let w = gen.word(n, GenMethod::ByRecurrence)?;
    let observed: Vec<u64> = distinct_lengths(w.digits(), 2)?
        .into_iter()
        .map(|l| l as u64)
        .collect();
    let derived: Vec<u64> = allowed_lengths(k, FormulaMode::Derived)?.lengths.into_iter().collect();
    let stated: BTreeSet<u64> = allowed_lengths(k, FormulaMode::AsStated)?.lengths;
    report.check(
        "lengths.derived",
        at(n),
        Value::Ints(derived),
        Provenance::Derived,
        Value::Ints(observed.clone()),
    );
    let observed_set: BTreeSet<u64> = observed.iter().copied().collect();
    let stated_only: Vec<u64> = stated.difference(&observed_set).copied().collect();
    let observed_only: Vec<u64> = observed_set.difference(&stated).copied().collect();
    let c = report.check(
        "lengths.as-stated",
        at(n),
        Value::Ints(stated.into_iter().collect()),
        Provenance::AsStated,
        Value::Ints(observed),
    );
    if !stated_only.is_empty() || !observed_only.is_empty() {
        c.note = Some(format!(
            "as-stated only: {stated_only:?}; observed only: {observed_only:?}"
        ));
    }
    Ok(report.finish(started))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    Counts,
    Decomposition,
    Structure,
    Lemmas,
    Lengths,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Counts,
        Suite::Decomposition,
        Suite::Structure,
        Suite::Lemmas,
        Suite::Lengths,
    ];

    pub fn run(self, gen: &Generator, n_max: u64) -> Result<Report> {
        match self {
            Suite::Counts => verify_counts(gen, n_max),
            Suite::Decomposition => verify_decomposition_range(gen, n_max),
            Suite::Structure => verify_structure(gen, n_max),
            Suite::Lemmas => verify_lemmas(gen, n_max),
            Suite::Lengths => verify_lengths(gen),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(k: u64) -> Generator {
        Generator::new(k).unwrap()
    }

    #[test]
    fn counts_k3() {
        let r = verify_counts(&gen(3), 8).unwrap();
        assert_eq!(r.summary.fail, 0);
        assert_eq!(r.summary.discrepancy, 0);
        let vals: Vec<Value> = r.checks_with_id("counts.p_total").map(|c| c.actual.clone()).collect();
        let expect: Vec<Value> = [0u64, 0, 1, 3, 4, 9, 19, 38, 66].iter().map(|&x| x.into()).collect();
        assert_eq!(vals, expect);
    }

    #[test]
    fn counts_k4_documents_alpha() {
        let r = verify_counts(&gen(4), 10).unwrap();
        assert_eq!(r.summary.fail, 0);
        let disc: Vec<&CheckResult> = r
            .checks
            .iter()
            .filter(|c| c.verdict == Verdict::DiscrepancyDocumented)
            .collect();
        assert_eq!(disc.len(), 1);
        assert_eq!(disc[0].n, Some(4));
        assert_eq!(disc[0].expected, Value::Int(12));
        assert_eq!(disc[0].actual, Value::Int(8));
        assert!(verify_counts(&gen(2), 5).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let r = verify_decomposition(&gen(4), 4).unwrap();
        assert_eq!(r.summary.fail, 0, "{r:#?}");
        let r = verify_decomposition(&gen(4), 9).unwrap();
        assert_eq!(r.summary.fail, 0);
        let s = r.checks_with_id("decomposition.straddling").next().unwrap();
        assert_eq!(s.actual, Value::Int(7));
        let r = verify_decomposition(&gen(3), 4).unwrap();
        assert_eq!(r.summary.fail, 0);
        assert!(r
            .checks
            .iter()
            .filter(|c| c.id == "decomposition.bordering" || c.id == "decomposition.straddling")
            .all(|c| c.actual == Value::Int(0)));
        assert!(verify_decomposition(&gen(4), 3).is_err());
    }

    #[test]
    fn structure_and_lemmas() {
        let r = verify_structure(&gen(3), 2).unwrap();
        assert_eq!(r.summary.fail, 0);
        let r = verify_structure(&gen(3), 10).unwrap();
        assert_eq!(r.summary.fail, 0, "{:#?}", r.checks.iter().filter(|c| c.verdict == Verdict::Fail).collect::<Vec<_>>());
        let r = verify_lemmas(&gen(3), 10).unwrap();
        assert_eq!(r.summary.fail, 0);
        let r = verify_lemmas(&gen(4), 1).unwrap();
        assert_eq!(r.summary.fail, 0);
        assert!(r.summary.skipped >= 1);
    }

    #[test]
    fn lengths_k3() {
        let r = verify_lengths(&gen(3)).unwrap();
        assert_eq!(r.summary.fail, 0);
        assert_eq!(r.summary.discrepancy, 1);
        assert!(verify_lengths(&gen(7)).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let mut a = verify_structure(&gen(4), 9).unwrap();
        let mut b = verify_structure(&gen(4), 9).unwrap();
        a.wall_time_ms = 0.0;
        b.wall_time_ms = 0.0;
        assert_eq!(a, b);
    }
}
