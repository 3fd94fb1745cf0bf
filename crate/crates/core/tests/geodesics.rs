mod common;

use std::collections::HashMap;

use proptest::prelude::*;

use common::word;
use edgeflow::word::alphabet;
use edgeflow::{length_bounds, mb_eval, min_word_exact, min_word_upper, MetabelianElement};

/// Word length of every element within `r` letters of the identity, by
/// breadth-first search over all words.
fn enumerate(d: usize, r: usize) -> HashMap<MetabelianElement, usize> {
    let mut dist = HashMap::from([(MetabelianElement::identity(d), 0)]);
    let mut frontier = vec![MetabelianElement::identity(d)];
    for n in 1..=r {
        let mut next = Vec::new();
        for g in &frontier {
            for l in alphabet(d) {
                let mut h = g.clone();
                h.push_letter(l);
                dist.entry(h.clone()).or_insert_with(|| {
                    next.push(h);
                    n
                });
            }
        }
        frontier = next;
    }
    dist
}

#[test]
fn exact_matches_enumeration_d2() {
    let ball = enumerate(2, 6);
    for (g, &n) in &ball {
        let w = min_word_exact(g, 6).unwrap();
        assert_eq!(w.len(), n, "{g}");
        assert_eq!(&mb_eval(&w), g);
    }
}

#[test]
fn exact_matches_enumeration_d3() {
    let ball = enumerate(3, 4);
    for (g, &n) in &ball {
        assert_eq!(min_word_exact(g, 4).unwrap().len(), n, "{g}");
    }
}

#[test]
fn ties_break_lexicographically() {
    // x1 x2 and x2 x1 differ, so the only geodesic of x1 x2 is itself.
    let g = mb_eval(&edgeflow::parse_word("x2 x1", 2).unwrap());
    assert_eq!(min_word_exact(&g, 4).unwrap().to_string(), "x2 x1");
    let g = mb_eval(&edgeflow::parse_word("x1 x1", 2).unwrap());
    assert_eq!(min_word_exact(&g, 4).unwrap().to_string(), "x1^2");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bounds_sandwich(w in (2usize..=3).prop_flat_map(|d| word(d, 10))) {
        let g = mb_eval(&w);
        let b = length_bounds(&g);
        let exact = min_word_exact(&g, w.len()).unwrap();
        prop_assert!(b.lower as usize <= exact.len());
        prop_assert!(exact.len() <= b.upper as usize);
        prop_assert!(exact.len() <= w.len());
        prop_assert_eq!(mb_eval(&b.witness), g.clone());
        prop_assert_eq!(mb_eval(&exact), g);
    }

    #[test]
    fn heuristic_is_a_word_for_g(w in (2usize..=4).prop_flat_map(|d| word(d, 60))) {
        let g = mb_eval(&w);
        let h = min_word_upper(&g);
        prop_assert_eq!(mb_eval(&h), g);
        prop_assert!(h.letters().windows(2).all(|p| p[0] != -p[1]));
    }
}
