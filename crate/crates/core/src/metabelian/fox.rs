//! Abelianized Fox derivatives: the Magnus-embedding coordinates of a word.
//!
//! Table `i` holds the image of `d w / d x_i` in the group ring `Z[Z^d]`,
//! a finite Laurent polynomial stored as exponent -> coefficient. It is
//! computed by divide and conquer from the product rule
//! `D(uv) = D(u) + ab(u) * D(v)` and the base cases
//! `D_i(x_j) = delta_ij`, `D_i(x_j^-1) = -delta_ij * t^(-e_j)`,
//! with its own arithmetic: nothing here touches lattice paths or flows.

use std::collections::BTreeMap;

use crate::lattice::EdgeFlow;
use crate::word::Word;

type Laurent = BTreeMap<Vec<i64>, i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTable {
    d: usize,
    tables: Vec<Laurent>,
}

impl LaurentTable {
    pub fn d(&self) -> usize {
        self.d
    }

    /// Coefficient of `t^exponent` in the derivative with respect to `x_axis`.
    pub fn coefficient(&self, axis: usize, exponent: &[i64]) -> i64 {
        self.tables[axis - 1].get(exponent).copied().unwrap_or(0)
    }

    /// Nonzero terms of table `axis`, sorted by exponent.
    pub fn terms(&self, axis: usize) -> impl Iterator<Item = (&[i64], i64)> + '_ {
        self.tables[axis - 1].iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn term_count(&self) -> usize {
        self.tables.iter().map(BTreeMap::len).sum()
    }

    /// True iff coefficient `(axis, u)` equals the flow on edge `(u, axis)`
    /// for every edge.
    pub fn agrees_with(&self, flow: &EdgeFlow) -> bool {
        flow.len() == self.term_count()
            && flow
                .iter()
                .all(|(e, m)| self.coefficient(e.axis, e.base.coords()) == m)
    }
}

struct FoxImage {
    exponent: Vec<i64>,
    tables: Vec<Laurent>,
}

fn add_shifted(into: &mut Laurent, from: &Laurent, shift: &[i64]) {
    use std::collections::btree_map::Entry;
    for (k, &c) in from {
        let key: Vec<i64> = k.iter().zip(shift).map(|(a, b)| a + b).collect();
        match into.entry(key) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().checked_add(c).expect("Laurent coefficient overflow");
                if sum == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }
}

fn fox(letters: &[i32], d: usize) -> FoxImage {
    match letters {
        [] => FoxImage { exponent: vec![0; d], tables: vec![Laurent::new(); d] },
        [l] => {
            let j = l.unsigned_abs() as usize - 1;
            let mut exponent = vec![0; d];
            let mut tables = vec![Laurent::new(); d];
            if *l > 0 {
                exponent[j] = 1;
                tables[j].insert(vec![0; d], 1);
            } else {
                exponent[j] = -1;
                tables[j].insert(exponent.clone(), -1);
            }
            FoxImage { exponent, tables }
        }
        _ => {
            let (u, v) = letters.split_at(letters.len() / 2);
            let mut left = fox(u, d);
            let right = fox(v, d);
            for (t, r) in left.tables.iter_mut().zip(&right.tables) {
                add_shifted(t, r, &left.exponent);
            }
            for (a, b) in left.exponent.iter_mut().zip(&right.exponent) {
                *a += b;
            }
            left
        }
    }
}

/// Abelianized Fox derivatives of `w`, one Laurent table per generator.
pub fn fox_flow_oracle(w: &Word) -> LaurentTable {
    let image = fox(w.letters(), w.d());
    LaurentTable { d: w.d(), tables: image.tables }
}

/// Word problem decided through the Magnus embedding: equal exponent sums
/// and equal Fox tables.
pub fn fox_words_equal(a: &Word, b: &Word) -> bool {
    if a.d() != b.d() {
        return false;
    }
    let fa = fox(a.letters(), a.d());
    let fb = fox(b.letters(), b.d());
    fa.exponent == fb.exponent && fa.tables == fb.tables
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn table(s: &str, d: usize) -> LaurentTable {
        fox_flow_oracle(&parse_word(s, d).unwrap())
    }

    #[test]
    fn base_rules() {
        let t = table("x1", 2);
        assert_eq!(t.terms(1).collect::<Vec<_>>(), vec![(&[0, 0][..], 1)]);
        assert_eq!(t.terms(2).count(), 0);
        let t = table("X1", 2);
        assert_eq!(t.terms(1).collect::<Vec<_>>(), vec![(&[-1, 0][..], -1)]);
    }

    #[test]
    fn commutator_by_hand() {
        let t = table("x1x2X1X2", 2);
        assert_eq!(t.terms(1).collect::<Vec<_>>(), vec![(&[0, 0][..], 1), (&[0, 1][..], -1)]);
        assert_eq!(t.terms(2).collect::<Vec<_>>(), vec![(&[0, 0][..], -1), (&[1, 0][..], 1)]);
    }

    #[test]
    fn word_problem() {
        let w = |s| parse_word(s, 3).unwrap();
        assert!(fox_words_equal(&w("x1x2x3X1X2X3"), &w("x1x2X1X2 x2x3X2X3 x2 x1x3X1X3 X2")));
        assert!(!fox_words_equal(&w("x1x2"), &w("x2x1")));
        assert!(fox_words_equal(&w("x1 X1 x2"), &w("x2")));
    }
}
