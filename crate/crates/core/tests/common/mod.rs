#![allow(dead_code)]

use proptest::prelude::*;

use edgeflow::{LatticePoint, Word};

pub fn letters(d: usize, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    let d = d as i32;
    prop::collection::vec((1..=d, any::<bool>()).prop_map(|(g, neg)| if neg { -g } else { g }), 0..=max_len)
}

pub fn word(d: usize, max_len: usize) -> impl Strategy<Value = Word> {
    letters(d, max_len).prop_map(move |l| Word::new(d, l).unwrap())
}

/// A dimension in `2..=4` with two words over it.
pub fn word_pair(max_len: usize) -> impl Strategy<Value = (Word, Word)> {
    (2usize..=4).prop_flat_map(move |d| (word(d, max_len), word(d, max_len)))
}

pub fn word_triple(max_len: usize) -> impl Strategy<Value = (Word, Word, Word)> {
    (2usize..=4).prop_flat_map(move |d| (word(d, max_len), word(d, max_len), word(d, max_len)))
}

pub fn point(d: usize, r: i64) -> impl Strategy<Value = LatticePoint> {
    prop::collection::vec(-r..=r, d).prop_map(LatticePoint::new)
}

pub fn cat(parts: &[&Word]) -> Word {
    Word::product(parts[0].d(), parts.iter().copied()).unwrap()
}
