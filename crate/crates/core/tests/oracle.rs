//! The exhaustive search for small incidence patterns, against counts
//! frozen from an independent brute force (`tests/oracles/patterns.py`).

use prismatoid::oracle::{count_split, for_each_pattern, minimal_pattern_oracle, PairState};
use prismatoid::Error;

#[test]
fn no_pattern_below_eight_nodes() {
    for total in 2..=7 {
        for p in 1..=total / 2 {
            assert_eq!(count_split(p, total - p).patterns, 0, "{p}+{}", total - p);
        }
    }
    for (p, r) in [(1, 7), (2, 6), (3, 5)] {
        assert_eq!(count_split(p, r).patterns, 0, "{p}+{r}");
    }
}

#[test]
fn frozen_counts() {
    for (p, r, patterns, classes) in [(4, 4, 90, 2), (3, 6, 90, 1)] {
        let c = count_split(p, r);
        assert_eq!((c.patterns, c.classes), (patterns, classes), "{p}+{r}");
    }
}

#[test]
fn summary_finds_the_balanced_split() {
    let s = minimal_pattern_oracle(8).unwrap();
    assert_eq!(s.minimum_nodes, Some(8));
    assert_eq!(s.feasible_splits, vec![(4, 4)]);
    assert_eq!(s.classes_4_4, Some(2));
    assert_eq!(s.classes_3_6, None);
    let s9 = minimal_pattern_oracle(9).unwrap();
    assert_eq!(s9.classes_3_6, Some(1));
    assert!(matches!(minimal_pattern_oracle(10), Err(Error::InvalidArgument(_))));
}

#[test]
fn every_pattern_has_out_degree_two_and_no_two_cycles() {
    let mut seen = 0;
    for_each_pattern(4, 4, 2, |pat| {
        seen += 1;
        for i in 0..4 {
            let out_plus = (0..4).filter(|&j| pat.state(i, j) == PairState::PlusToMinus).count();
            let out_minus = (0..4).filter(|&j| pat.state(j, i) == PairState::MinusToPlus).count();
            assert!(out_plus >= 2 && out_minus >= 2);
        }
        assert!(pat.arrow_count() >= 16);
    });
    assert_eq!(seen, 90);
}
