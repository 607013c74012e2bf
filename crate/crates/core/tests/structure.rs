mod brute;

use std::collections::BTreeSet;

use kbonacci::palindrome::distinct_lengths;
use kbonacci::structure::Family;
use kbonacci::verify::verify_structure;
use kbonacci::{
    allowed_lengths, complexity, enumerate_maximal, maximal_straddling_words, shift_add, Catalog, Complexity,
    FormulaMode, GenMethod, Generator, PalClass, Word,
};

fn maximal_factors(k: u64, n: u64) -> BTreeSet<Word> {
    let w = Generator::new(k).unwrap().word(n, GenMethod::ByRecurrence).unwrap();
    enumerate_maximal(w.digits(), 2).unwrap().iter().map(|o| o.factor(&w)).collect()
}

#[test]
fn every_maximal_palindrome_is_catalogued() {
    for (k, n) in [(3, 10), (4, 12), (5, 15)] {
        let catalog = Catalog::new(k).unwrap();
        let factors = maximal_factors(k, n);
        assert!(!factors.is_empty());
        for p in &factors {
            let classes = catalog.classify(p).unwrap();
            assert!(!classes.is_empty(), "k={k} n={n}: {p} unclassified");
            for c in &classes {
                assert!(c.shift() >= c.family().min_shift());
            }
        }
    }
}

#[test]
fn colored_straddling_words() {
    let pairs = maximal_straddling_words(4, 9).unwrap();
    let words: BTreeSet<String> = pairs.iter().map(|p| p.concat().to_string()).collect();
    let want: BTreeSet<String> = ["4546454", "45464546454"].iter().map(|s| s.to_string()).collect();
    assert_eq!(words, want);

    // Both are maximal palindromes of W_9 itself.
    let found: BTreeSet<String> = maximal_factors(4, 9).iter().map(Word::to_string).collect();
    assert!(want.is_subset(&found));
}

#[test]
fn only_kk_straddles_first() {
    for k in 3..8 {
        let pairs = maximal_straddling_words(k, 2 * k - 1).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].concat().digits(), &[k, k]);
    }
}

#[test]
fn structure_suite_passes() {
    for (k, n) in [(3, 2), (3, 10), (4, 12), (5, 15), (6, 16)] {
        let r = verify_structure(&Generator::new(k).unwrap(), n).unwrap();
        assert_eq!(r.summary.fail, 0, "k={k} n={n}");
        assert!(r.summary.pass > 0);
    }
}

#[test]
fn classification_is_shift_invariant() {
    for k in 3..7 {
        let catalog = Catalog::new(k).unwrap();
        for (t, _) in catalog.templates() {
            let strip = |cs: BTreeSet<PalClass>, i: u64| -> Vec<String> {
                assert!(cs.iter().all(|c| c.shift() == i));
                cs.iter().map(|c| c.to_string().replace(&format!("i={i}"), "i")).collect()
            };
            let base = strip(catalog.classify(&shift_add(k, t).unwrap()).unwrap(), 1);
            assert!(!base.is_empty(), "k={k} template {t}");
            for i in 2..5 {
                let shifted = catalog.classify(&shift_add(k * i, t).unwrap()).unwrap();
                assert_eq!(strip(shifted, i), base, "k={k} template {t} i={i}");
            }
        }
    }
}

#[test]
fn non_members() {
    let catalog = Catalog::new(3).unwrap();
    // 020 occurs but always extends to 10201.
    assert!(catalog.classify(&"020".parse().unwrap()).unwrap().is_empty());
    assert!(!catalog.classify(&"010".parse().unwrap()).unwrap().is_empty());
    assert!(catalog.classify(&"11".parse().unwrap()).unwrap().is_empty());
    assert!(catalog.classify(&"12".parse().unwrap()).is_err());
}

#[test]
fn elements_occur_where_predicted() {
    for k in 3..6 {
        let g = Generator::new(k).unwrap();
        let catalog = Catalog::new(k).unwrap();
        for f in Family::ALL {
            for (el, c) in catalog.elements(f, 1).unwrap() {
                let host = g.word(3 * k - 2 + k * c.shift(), GenMethod::ByRecurrence).unwrap();
                assert!(host.contains_factor(&el), "k={k} {c} {el}");
            }
        }
    }
}

#[test]
fn observed_lengths() {
    let w = Generator::new(3).unwrap().word(11, GenMethod::ByRecurrence).unwrap();
    let observed: BTreeSet<u64> = distinct_lengths(w.digits(), 2).unwrap().into_iter().map(|l| l as u64).collect();
    assert_eq!(observed, BTreeSet::from([2, 3, 5, 7, 9]));
    assert_eq!(allowed_lengths(3, FormulaMode::Derived).unwrap().lengths, observed);
    let stated = allowed_lengths(3, FormulaMode::AsStated).unwrap().lengths;
    assert_eq!(stated.difference(&observed).copied().collect::<Vec<_>>(), vec![11]);

    for k in 4..6 {
        let g = Generator::new(k).unwrap();
        let w = g.word(3 * k + 2, GenMethod::ByRecurrence).unwrap();
        let observed: BTreeSet<u64> =
            distinct_lengths(w.digits(), 2).unwrap().into_iter().map(|l| l as u64).collect();
        assert_eq!(allowed_lengths(k, FormulaMode::Derived).unwrap().lengths, observed, "k={k}");
    }
}

#[test]
fn complexity_follows_the_length_set() {
    assert_eq!(complexity(3, 9, FormulaMode::Derived).unwrap(), Complexity::Infinite);
    assert_eq!(complexity(3, 11, FormulaMode::Derived).unwrap(), Complexity::Zero);
    assert_eq!(complexity(3, 11, FormulaMode::AsStated).unwrap(), Complexity::Infinite);
    assert_eq!(complexity(3, 4, FormulaMode::Derived).unwrap(), Complexity::Zero);
    assert!(complexity(3, 1, FormulaMode::Derived).is_err());
}
