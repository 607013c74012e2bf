//! Palindrome occurrence counts for `W_n`.
//!
//! `P(n)` counts palindromic occurrences of length at least 2. For `n >= k`
//! the block decomposition `W_{n-1} … W_{n-k+1} (k ⊕ W_{n-k})` splits them
//! into occurrences inside one block, bordering ones `B(n, j)` and
//! straddling ones `S(n)`, so `P(n) = Σ_{i=n-k}^{n-1} P(i) + α(n)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::word::{Generator, Params};

/// Which closed form to use for `α(n)` when `k <= n <= 2k - 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum FormulaMode {
    /// `2^k + (k-3)·2^{n-k+2} − n·2^{n-k+1}`, the closed form as
    /// originally stated. Disagrees with the bordering counts for `k >= 4`,
    /// `k <= n < 2k - 3`.
    AsStated,
    /// `Σ_j B(n, j) + S(n)`.
    #[default]
    Derived,
}

fn pow2(e: u64) -> Result<u64> {
    u32::try_from(e)
        .ok()
        .and_then(|e| 1u64.checked_shl(e))
        .ok_or(Error::Overflow("power of two"))
}

/// `P(n) = 2^{n-1}(n-2) + 1` for `1 <= n <= k - 1`.
pub fn p_initial(k: u64, n: u64) -> Result<u64> {
    Params::for_palindromes(k)?;
    if n < 1 || n >= k {
        return domain(format!("p_initial needs 1 <= n <= k - 1 = {}, got n = {n}", k - 1));
    }
    if n == 1 {
        return Ok(0);
    }
    pow2(n - 1)?
        .checked_mul(n - 2)
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::Overflow("p_initial"))
}

/// Bordering palindromes of type `j` in `W_n`.
pub fn b_count(k: u64, n: u64, j: u64) -> Result<u64> {
    Params::for_palindromes(k)?;
    if n < k {
        return domain(format!("b_count needs n >= k, got n = {n}, k = {k}"));
    }
    if n + 3 <= 2 * k && j + k >= n + 2 && j < k {
        Ok(pow2(j)? - pow2(n - k + 1)?)
    } else {
        Ok(0)
    }
}

/// Straddling palindromes in `W_n`.
pub fn s_count(k: u64, n: u64) -> Result<u64> {
    Params::for_palindromes(k)?;
    if n + 1 < 2 * k || n + 2 > 3 * k {
        Ok(0)
    } else if n + 2 == 3 * k {
        Ok(pow2(k)? - 2)
    } else {
        Ok(pow2(n + 2 - 2 * k)? - 1)
    }
}

/// Length of the maximal bordering palindrome of type `j`:
/// `2(|W_j| − |W_{n-k+1}|) + 1`.
pub fn border_max_length(k: u64, n: u64, j: u64) -> Result<u64> {
    Params::for_palindromes(k)?;
    if !(n >= k && n + 3 <= 2 * k && j + k >= n + 2 && j < k) {
        return domain(format!(
            "border_max_length needs k <= n <= 2k-3 and n-k+2 <= j <= k-1, got k = {k}, n = {n}, j = {j}"
        ));
    }
    let g = Generator::new(k)?;
    Ok(2 * (g.word_len(j)? - g.word_len(n - k + 1)?) + 1)
}

/// `2^k − (2k − n)·2^{n-k+1}`, the sum of `B(n, j)` over `j` for
/// `k <= n <= 2k - 3`.
pub fn alpha_bordering_closed_form(k: u64, n: u64) -> Result<u64> {
    Params::for_palindromes(k)?;
    if n < k || n + 3 > 2 * k {
        return domain(format!("closed form needs k <= n <= 2k - 3, got n = {n}, k = {k}"));
    }
    let sub = (2 * k - n)
        .checked_mul(pow2(n - k + 1)?)
        .ok_or(Error::Overflow("alpha"))?;
    Ok(pow2(k)? - sub)
}

/// `α(n)` for `n >= k`.
pub fn alpha(k: u64, n: u64, mode: FormulaMode) -> Result<u64> {
    Params::for_palindromes(k)?;
    if n < k {
        return domain(format!("alpha needs n >= k, got n = {n}, k = {k}"));
    }
    match mode {
        FormulaMode::Derived => {
            let mut total = s_count(k, n)?;
            for j in n - k + 2..n {
                total = total
                    .checked_add(b_count(k, n, j)?)
                    .ok_or(Error::Overflow("alpha"))?;
            }
            Ok(total)
        }
        FormulaMode::AsStated => {
            if n + 3 <= 2 * k {
                if k > 120 {
                    return Err(Error::Overflow("alpha"));
                }
                let (k_i, n_i) = (k as i128, n as i128);
                let t = n_i - k_i;
                let v = (1i128 << k_i) + (k_i - 3) * (1i128 << (t + 2)) - n_i * (1i128 << (t + 1));
                u64::try_from(v).map_err(|_| Error::Overflow("alpha"))
            } else if n + 2 == 2 * k {
                Ok(0)
            } else {
                // The remaining printed cases coincide with S(n).
                s_count(k, n)
            }
        }
    }
}

/// `P(n)`, by the closed form below `k` and the recurrence from `k` on.
pub fn p_total(k: u64, n: u64, mode: FormulaMode) -> Result<u64> {
    Ok(*CountTable::build(k, n, mode)?.p.last().unwrap_or(&0))
}

/// `P`, `α`, `S` and `B` over `0 ..= n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub k: u64,
    pub mode: FormulaMode,
    pub p: Vec<u64>,
    /// `None` for `n < k`.
    pub alpha: Vec<Option<u64>>,
    pub s: Vec<u64>,
    /// `b[n][j]` for `j < n`; empty rows for `n < k`.
    pub b: Vec<Vec<u64>>,
}

impl CountTable {
    pub fn build(k: u64, n_max: u64, mode: FormulaMode) -> Result<Self> {
        Params::for_palindromes(k)?;
        let size = n_max as usize + 1;
        let mut t = CountTable {
            k,
            mode,
            p: Vec::with_capacity(size),
            alpha: Vec::with_capacity(size),
            s: Vec::with_capacity(size),
            b: Vec::with_capacity(size),
        };
        for n in 0..=n_max {
            if n < k {
                t.p.push(if n == 0 { 0 } else { p_initial(k, n)? });
                t.alpha.push(None);
                t.s.push(0);
                t.b.push(Vec::new());
                continue;
            }
            let a = alpha(k, n, mode)?;
            let lo = (n - k) as usize;
            let prev = t.p[lo..n as usize]
                .iter()
                .try_fold(0u64, |acc, &x| acc.checked_add(x))
                .ok_or(Error::Overflow("P(n)"))?;
            t.p.push(prev.checked_add(a).ok_or(Error::Overflow("P(n)"))?);
            t.alpha.push(Some(a));
            t.s.push(s_count(k, n)?);
            t.b.push((0..n).map(|j| b_count(k, n, j)).collect::<Result<Vec<_>>>()?);
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_values() {
        assert_eq!(p_initial(4, 3).unwrap(), 5);
        assert_eq!(p_initial(7, 1).unwrap(), 0);
        assert_eq!(p_initial(5, 4).unwrap(), 17);
        assert!(p_initial(4, 4).is_err());
        assert!(p_initial(4, 0).is_err());
        assert!(p_initial(2, 1).is_err());
    }

    #[test]
    fn initial_step_law() {
        for k in 3..20 {
            for n in 2..k {
                let lhs = p_initial(k, n).unwrap();
                let rhs = 2 * p_initial(k, n - 1).unwrap() + (1 << (n - 1)) - 1;
                assert_eq!(lhs, rhs, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn bordering_and_straddling() {
        assert_eq!(b_count(4, 4, 3).unwrap(), 6);
        assert_eq!(b_count(3, 3, 2).unwrap(), 2);
        assert_eq!(b_count(4, 6, 3).unwrap(), 0);
        assert_eq!(s_count(4, 7).unwrap(), 1);
        assert_eq!(s_count(4, 9).unwrap(), 7);
        assert_eq!(s_count(4, 10).unwrap(), 14);
        assert_eq!(s_count(4, 6).unwrap(), 0);
        assert_eq!(s_count(4, 11).unwrap(), 0);
    }

    #[test]
    fn border_lengths() {
        assert_eq!(border_max_length(4, 4, 3).unwrap(), 13);
        assert_eq!(border_max_length(4, 5, 3).unwrap(), 9);
        assert_eq!(border_max_length(3, 3, 2).unwrap(), 5);
        assert!(border_max_length(4, 6, 3).is_err());
        assert!(border_max_length(4, 4, 1).is_err());
    }

    #[test]
    fn alpha_modes() {
        assert_eq!(alpha(3, 3, FormulaMode::Derived).unwrap(), 2);
        assert_eq!(alpha(4, 4, FormulaMode::AsStated).unwrap(), 12);
        assert_eq!(alpha(4, 4, FormulaMode::Derived).unwrap(), 8);
        assert_eq!(alpha(4, 10, FormulaMode::AsStated).unwrap(), 14);
        assert_eq!(alpha(4, 10, FormulaMode::Derived).unwrap(), 14);
        assert!(alpha(4, 3, FormulaMode::Derived).is_err());
    }

    #[test]
    fn modes_agree_where_the_printed_form_is_consistent() {
        for k in 3..12u64 {
            for n in k..4 * k {
                let a = alpha(k, n, FormulaMode::AsStated).unwrap();
                let d = alpha(k, n, FormulaMode::Derived).unwrap();
                if k == 3 || n + 3 >= 2 * k {
                    assert_eq!(a, d, "k={k} n={n}");
                } else {
                    assert_ne!(a, d, "k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_bordering_sum() {
        for k in 3..16u64 {
            for n in k..=2 * k - 3 {
                assert_eq!(
                    alpha_bordering_closed_form(k, n).unwrap(),
                    alpha(k, n, FormulaMode::Derived).unwrap(),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn totals() {
        let p3: Vec<u64> = (0..=8).map(|n| p_total(3, n, FormulaMode::Derived).unwrap()).collect();
        assert_eq!(p3, vec![0, 0, 1, 3, 4, 9, 19, 38, 66]);
        let p4: Vec<u64> = (0..=10).map(|n| p_total(4, n, FormulaMode::Derived).unwrap()).collect();
        assert_eq!(p4, vec![0, 0, 1, 5, 14, 24, 44, 88, 173, 336, 655]);
        for k in 3..8 {
            assert_eq!(p_total(k, 2, FormulaMode::AsStated).unwrap(), 1);
        }
    }

    #[test]
    fn table_invariants() {
        let t = CountTable::build(5, 20, FormulaMode::Derived).unwrap();
        assert_eq!(t.p[0], 0);
        for n in 5..=20usize {
            let prev: u64 = t.p[n - 5..n].iter().sum();
            assert_eq!(t.p[n], prev + t.alpha[n].unwrap());
        }
        assert!(CountTable::build(2, 5, FormulaMode::Derived).is_err());
        assert!(CountTable::build(2, 200, FormulaMode::Derived).is_err());
        assert!(p_total(3, 300, FormulaMode::Derived).is_err());
    }
}
