//! The catalog of maximal palindromic factors of the infinite word `W`.
//!
//! Every maximal palindrome of `W` is a shift `ki ⊕ T` of one of finitely
//! many base templates `T`, grouped into four families:
//!
//! | family | template | shifts |
//! | --- | --- | --- |
//! | P1 | `W_n n^{-1}`, `2 <= n <= k-1` | `i >= 0` |
//! | P2 | `(W_{j-1} … W_{n-k+1})^R j (W_{j-1} … W_{n-k+1})`, `k <= n <= 2k-3`, `n-k+2 <= j <= k-1` | `i >= 0` |
//! | P3 | `W_m W_m m^{-1}`, `W_m W_m W_m m^{-1}`, `1 <= m <= k-2` | `i >= 1` |
//! | P4 | `W_{k-1} W_{k-1} (k-1)^{-1}`, `0^{-1} W_{k-1}^3 (0 (k-1))^{-1}`, `00` | `i >= 1` |

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::counting::FormulaMode;
use crate::error::{domain, Error, Result};
use crate::palindrome::is_palindrome;
use crate::word::{shift_add, shift_sub, Generator, Params, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    P1,
    P2,
    P3,
    P4,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::P1, Family::P2, Family::P3, Family::P4];

    /// Smallest admissible shift index.
    pub fn min_shift(self) -> u64 {
        match self {
            Family::P1 | Family::P2 => 0,
            Family::P3 | Family::P4 => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::P1 => "P1",
            Family::P2 => "P2",
            Family::P3 => "P3",
            Family::P4 => "P4",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Double,
    Triple,
    /// `ki ki`.
    Kk,
}

/// Membership of a palindrome in one catalog family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum PalClass {
    P1 { shift: u64, n: u64 },
    P2 { shift: u64, n: u64, j: u64 },
    P3 { shift: u64, m: u64, variant: Variant },
    P4 { shift: u64, variant: Variant },
}

impl PalClass {
    pub fn family(&self) -> Family {
        match self {
            PalClass::P1 { .. } => Family::P1,
            PalClass::P2 { .. } => Family::P2,
            PalClass::P3 { .. } => Family::P3,
            PalClass::P4 { .. } => Family::P4,
        }
    }

    pub fn shift(&self) -> u64 {
        match *self {
            PalClass::P1 { shift, .. }
            | PalClass::P2 { shift, .. }
            | PalClass::P3 { shift, .. }
            | PalClass::P4 { shift, .. } => shift,
        }
    }

    fn with_shift(self, i: u64) -> PalClass {
        match self {
            PalClass::P1 { n, .. } => PalClass::P1 { shift: i, n },
            PalClass::P2 { n, j, .. } => PalClass::P2 { shift: i, n, j },
            PalClass::P3 { m, variant, .. } => PalClass::P3 { shift: i, m, variant },
            PalClass::P4 { variant, .. } => PalClass::P4 { shift: i, variant },
        }
    }
}

impl fmt::Display for PalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PalClass::P1 { shift, n } => write!(f, "P1(i={shift}, n={n})"),
            PalClass::P2 { shift, n, j } => write!(f, "P2(i={shift}, n={n}, j={j})"),
            PalClass::P3 { shift, m, variant } => {
                write!(f, "P3(i={shift}, m={m}, {variant:?})")
            }
            PalClass::P4 { shift, variant } => write!(f, "P4(i={shift}, {variant:?})"),
        }
    }
}

/// A straddling palindrome split at the final cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StraddlingPair {
    pub left: Word,
    pub right: Word,
}

impl StraddlingPair {
    pub fn concat(&self) -> Word {
        self.left.concat(&self.right)
    }
}

/// The prefixes `W_0 … W_{k-1}` of `W_{k-1}`.
#[derive(Debug, Clone)]
struct Prefixes {
    word: Word,
    lens: Vec<usize>,
}

impl Prefixes {
    fn new(params: Params) -> Result<Self> {
        let (word, lens) = Generator::new(params.k())?.word_with_prefix_lengths(params.k() - 1)?;
        Ok(Prefixes { word, lens })
    }

    fn w(&self, i: u64) -> Word {
        Word::from_digits(self.word.digits()[..self.lens[i as usize]].to_vec())
    }

    /// `W_hi W_{hi-1} … W_lo`.
    fn chain(&self, hi: u64, lo: u64) -> Word {
        let mut out = Word::new();
        for i in (lo..=hi).rev() {
            out.extend_from(&self.w(i));
        }
        out
    }
}

/// Shift-0 templates of every family for one `k`.
#[derive(Debug, Clone)]
pub struct Catalog {
    params: Params,
    templates: Vec<(Word, PalClass)>,
    index: HashMap<Word, Vec<PalClass>>,
}

/// Largest `k` for which templates and length sets are materialised; the
/// templates hold roughly `k^2 2^k` digits in total.
pub const MAX_CATALOG_K: u64 = 17;

fn catalog_params(k: u64) -> Result<Params> {
    let params = Params::for_palindromes(k)?;
    if k > MAX_CATALOG_K {
        return domain(format!("catalogs are materialised for k <= {MAX_CATALOG_K}, got k = {k}"));
    }
    Ok(params)
}

impl Catalog {
    pub fn new(k: u64) -> Result<Self> {
        let params = catalog_params(k)?;
        let pre = Prefixes::new(params)?;
        let mut templates = Vec::new();

        for n in 2..k {
            templates.push((pre.w(n).strip_suffix_digit(n)?, PalClass::P1 { shift: 0, n }));
        }
        for n in k..=2 * k - 3 {
            for j in n - k + 2..k {
                templates.push((bordering_template(&pre, k, n, j), PalClass::P2 { shift: 0, n, j }));
            }
        }
        for m in 1..=k - 2 {
            let wm = pre.w(m);
            let double = wm.concat(&wm).strip_suffix_digit(m)?;
            let triple = wm.concat(&wm).concat(&wm).strip_suffix_digit(m)?;
            let variant = Variant::Double;
            templates.push((double, PalClass::P3 { shift: 0, m, variant }));
            let variant = Variant::Triple;
            templates.push((triple, PalClass::P3 { shift: 0, m, variant }));
        }
        let top = pre.w(k - 1);
        let double = top.concat(&top).strip_suffix_digit(k - 1)?;
        let triple = top
            .concat(&top)
            .concat(&top)
            .strip_prefix_digit(0)?
            .strip_suffix_digit(k - 1)?
            .strip_suffix_digit(0)?;
        templates.push((double, PalClass::P4 { shift: 0, variant: Variant::Double }));
        templates.push((triple, PalClass::P4 { shift: 0, variant: Variant::Triple }));
        templates.push((
            Word::from_digits(vec![0, 0]),
            PalClass::P4 { shift: 0, variant: Variant::Kk },
        ));

        let mut index: HashMap<Word, Vec<PalClass>> = HashMap::new();
        for (w, c) in &templates {
            index.entry(w.clone()).or_default().push(*c);
        }
        Ok(Catalog {
            params,
            templates,
            index,
        })
    }

    pub fn k(&self) -> u64 {
        self.params.k()
    }

    /// Shift-0 templates, with the class they carry at shift 0 (P3/P4 are
    /// only realised from shift 1 on).
    pub fn templates(&self) -> &[(Word, PalClass)] {
        &self.templates
    }

    /// Family members with shift `<= i_max`.
    pub fn elements(&self, family: Family, i_max: u64) -> Result<Vec<(Word, PalClass)>> {
        let mut out = Vec::new();
        for i in family.min_shift()..=i_max {
            let d = self
                .k()
                .checked_mul(i)
                .ok_or(Error::Overflow("catalog shift"))?;
            for (w, c) in self.templates.iter().filter(|(_, c)| c.family() == family) {
                out.push((shift_add(d, w)?, c.with_shift(i)));
            }
        }
        Ok(out)
    }

    /// All catalog memberships of a palindrome; empty when `w` is not a
    /// maximal palindromic factor of the infinite word.
    pub fn classify(&self, w: &Word) -> Result<BTreeSet<PalClass>> {
        if !is_palindrome(w.digits()) {
            return domain(format!("{w} is not a palindrome"));
        }
        let mut out = BTreeSet::new();
        let Some(min) = w.digits().iter().copied().min() else {
            return Ok(out);
        };
        // Every template contains the digit 0, so the shift is fixed by the
        // smallest digit.
        let k = self.k();
        if min % k != 0 {
            return Ok(out);
        }
        let i = min / k;
        let Some(base) = shift_sub(min, w) else {
            return Ok(out);
        };
        if let Some(classes) = self.index.get(&base) {
            out.extend(
                classes
                    .iter()
                    .filter(|c| i >= c.family().min_shift())
                    .map(|c| c.with_shift(i)),
            );
        }
        Ok(out)
    }
}

fn bordering_template(pre: &Prefixes, k: u64, n: u64, j: u64) -> Word {
    let tail = pre.chain(j - 1, n - k + 1);
    let mut out = tail.reverse();
    out.push(j);
    out.extend_from(&tail);
    out
}

pub fn catalog_elements(k: u64, family: Family, i_max: u64) -> Result<Vec<(Word, PalClass)>> {
    Catalog::new(k)?.elements(family, i_max)
}

pub fn classify_palindrome(k: u64, w: &Word) -> Result<BTreeSet<PalClass>> {
    Catalog::new(k)?.classify(w)
}

/// Maximal bordering palindrome of type `j` in `W_n`.
pub fn maximal_bordering_word(k: u64, n: u64, j: u64) -> Result<Word> {
    let params = Params::for_palindromes(k)?;
    if !(n >= k && n + 3 <= 2 * k && j + k >= n + 2 && j < k) {
        return domain(format!(
            "no bordering palindrome of type {j} in W_{n} for k = {k}"
        ));
    }
    Ok(bordering_template(&Prefixes::new(params)?, k, n, j))
}

/// Maximal straddling palindromes of `W_n`, split at the final cut.
pub fn maximal_straddling_words(k: u64, n: u64) -> Result<Vec<StraddlingPair>> {
    let params = Params::for_palindromes(k)?;
    if n + 1 < 2 * k || n + 2 > 3 * k {
        return Ok(Vec::new());
    }
    if n + 1 == 2 * k {
        return Ok(vec![StraddlingPair {
            left: Word::from_digits(vec![k]),
            right: Word::from_digits(vec![k]),
        }]);
    }
    let pre = Prefixes::new(params)?;
    let m = n + 1 - 2 * k;
    let wm = pre.w(m);
    let shifted = |w: Word| shift_add(k, &w);
    if n + 2 < 3 * k {
        let left = shifted(wm.clone())?;
        Ok(vec![
            StraddlingPair {
                left: left.clone(),
                right: shifted(wm.strip_suffix_digit(m)?)?,
            },
            StraddlingPair {
                left,
                right: shifted(wm.concat(&wm).strip_suffix_digit(m)?)?,
            },
        ])
    } else {
        // n = 3k - 2, m = k - 1
        Ok(vec![
            StraddlingPair {
                left: shifted(wm.clone())?,
                right: shifted(wm.strip_suffix_digit(m)?)?,
            },
            StraddlingPair {
                left: shifted(wm.strip_prefix_digit(0)?)?,
                right: shifted(wm.concat(&wm).strip_suffix_digit(m)?.strip_suffix_digit(0)?)?,
            },
        ])
    }
}

/// Admissible palindrome lengths for one family, or for all of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthSet {
    pub k: u64,
    /// `None` for the union over all families.
    pub family: Option<Family>,
    pub mode: FormulaMode,
    pub lengths: BTreeSet<u64>,
}

fn odd_range(hi: u64) -> impl Iterator<Item = u64> {
    (3..=hi).step_by(2)
}

pub fn length_set(k: u64, family: Family, mode: FormulaMode) -> Result<LengthSet> {
    catalog_params(k)?;
    let lengths = match mode {
        FormulaMode::AsStated => {
            let p = |e: u64| 1u64 << e;
            match family {
                Family::P1 => odd_range(p(k - 1) - 1).collect(),
                Family::P2 => odd_range(p(k) - 3).collect(),
                Family::P3 => odd_range(3 * p(k - 2) - 1).collect(),
                Family::P4 => std::iter::once(2).chain(odd_range(3 * p(k - 1) - 1)).collect(),
            }
        }
        FormulaMode::Derived => {
            let catalog = Catalog::new(k)?;
            let mut set = BTreeSet::new();
            for (w, c) in catalog.templates() {
                if c.family() != family {
                    continue;
                }
                // Centered sub-palindromes of length >= 2.
                let mut len = w.len() as u64;
                while len >= 2 {
                    set.insert(len);
                    len -= 2;
                }
            }
            set
        }
    };
    Ok(LengthSet {
        k,
        family: Some(family),
        mode,
        lengths,
    })
}

/// Union of the four family length sets.
pub fn allowed_lengths(k: u64, mode: FormulaMode) -> Result<LengthSet> {
    let mut lengths = BTreeSet::new();
    for f in Family::ALL {
        lengths.extend(length_set(k, f, mode)?.lengths);
    }
    Ok(LengthSet {
        k,
        family: None,
        mode,
        lengths,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Complexity {
    Infinite,
    Zero,
}

/// Number of distinct palindromic factors of length `len` in the infinite
/// word: either none or infinitely many.
pub fn complexity(k: u64, len: u64, mode: FormulaMode) -> Result<Complexity> {
    Params::for_palindromes(k)?;
    if len < 2 {
        return domain("palindrome complexity is only defined here for lengths >= 2");
    }
    if allowed_lengths(k, mode)?.lengths.contains(&len) {
        Ok(Complexity::Infinite)
    } else {
        Ok(Complexity::Zero)
    }
}
