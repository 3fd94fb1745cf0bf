mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use common::{cat, point, word, word_pair, word_triple};
use edgeflow::metabelian::fox_words_equal;
use edgeflow::quotient::nil_eval;
use edgeflow::{
    cocycle_beta, extension_mul, flow_of_path, free_reduce, from_extension, ll_eval, ll_project, mb_eval, nil_project,
    parse_word, to_extension, word_to_path, LampGroupSpec, LatticePath, LatticePoint, MetabelianElement,
    PathSystem, Word,
};

/// Areas straight from the letters: steps along axis `j` weighted by the
/// current `i` coordinate, minus the staircase `tau_v` term `v_i v_j` for
/// `i < j`.
fn areas_by_hand(w: &Word) -> Vec<Vec<i64>> {
    let d = w.d();
    let mut pos = vec![0i64; d];
    let mut a = vec![vec![0i64; d]; d];
    for &l in w.letters() {
        let j = l.unsigned_abs() as usize - 1;
        let s = i64::from(l.signum());
        if s < 0 {
            pos[j] -= 1;
        }
        for i in 0..d {
            if i != j {
                a[i][j] += s * pos[i];
            }
        }
        if s > 0 {
            pos[j] += 1;
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            a[i][j] -= pos[i] * pos[j];
        }
    }
    a
}

proptest! {
    #[test]
    fn flow_of_concatenation((u, v) in word_pair(30)) {
        let pu = word_to_path(&u);
        let pv = word_to_path(&v);
        let joined = flow_of_path(&pu.concat(&pv));
        prop_assert_eq!(joined, &flow_of_path(&pu) + &flow_of_path(&pv).translated(&pu.end()));
    }

    #[test]
    fn translation_acts((u, _) in word_pair(20), a in point(4, 5), b in point(4, 5)) {
        let d = u.d();
        let (a, b) = (LatticePoint::new(a.coords()[..d].to_vec()), LatticePoint::new(b.coords()[..d].to_vec()));
        let f = flow_of_path(&word_to_path(&u));
        prop_assert_eq!(f.translated(&a).translated(&b), f.translated(&(&a + &b)));
        let moved = LatticePath::new(a.clone(), u.letters().to_vec()).unwrap();
        prop_assert_eq!(flow_of_path(&moved), f.translated(&a));
    }

    #[test]
    fn path_divergence_is_endpoint_difference((u, _) in word_pair(30)) {
        let p = word_to_path(&u);
        let mut expected = BTreeMap::new();
        if !p.end().is_origin() {
            expected.insert(p.end(), 1);
            expected.insert(LatticePoint::origin(u.d()), -1);
        }
        prop_assert_eq!(flow_of_path(&p).divergence(), expected);
    }

    #[test]
    fn parse_format_round_trip((u, _) in word_pair(40)) {
        prop_assert_eq!(parse_word(&u.to_string(), u.d()).unwrap(), u);
    }

    #[test]
    fn free_reduce_is_idempotent((u, v) in word_pair(40)) {
        let r = free_reduce(&u);
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert!(r.letters().windows(2).all(|w| w[0] != -w[1]));
        prop_assert_eq!(mb_eval(&r), mb_eval(&u));
        prop_assert_eq!(free_reduce(&cat(&[&u, &v, &v.inverse()])), r);
    }

    #[test]
    fn word_problem_matches_fox((u, v) in word_pair(24)) {
        prop_assert_eq!(mb_eval(&u) == mb_eval(&v), fox_words_equal(&u, &v));
        let w = cat(&[&u, &v, &u.inverse(), &v.inverse()]);
        let swapped = cat(&[&v, &u, &v.inverse(), &u.inverse()]);
        prop_assert_eq!(mb_eval(&w) == mb_eval(&swapped.inverse()), fox_words_equal(&w, &swapped.inverse()));
    }

    #[test]
    fn evaluation_is_a_homomorphism((u, v, w) in word_triple(20)) {
        let (a, b, c) = (mb_eval(&u), mb_eval(&v), mb_eval(&w));
        prop_assert_eq!(a.mul(&b).unwrap(), mb_eval(&cat(&[&u, &v])));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.inv(), mb_eval(&u.inverse()));
        prop_assert!(a.mul(&a.inv()).unwrap().is_identity());
    }

    #[test]
    fn cocycle_identity(u in point(3, 10), v in point(3, 10), w in point(3, 10)) {
        for ps in PathSystem::ALL {
            let lhs = &cocycle_beta(&u, &v, ps) + &cocycle_beta(&(&u + &v), &w, ps);
            let rhs = &cocycle_beta(&v, &w, ps).translated(&u) + &cocycle_beta(&u, &(&v + &w), ps);
            prop_assert!(lhs.is_cycle());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn extension_intertwines((u, v) in word_pair(25)) {
        for ps in PathSystem::ALL {
            let (a, b) = (mb_eval(&u), mb_eval(&v));
            let e = extension_mul(&to_extension(&a, ps), &to_extension(&b, ps), ps).unwrap();
            prop_assert_eq!(from_extension(&e, ps).unwrap(), a.mul(&b).unwrap());
            prop_assert_eq!(from_extension(&to_extension(&a, ps), ps).unwrap(), a);
        }
    }

    #[test]
    fn metabelian_relators((a, b, c) in word_triple(6), e in word(4, 6)) {
        let d = a.d();
        let e = Word::new(d, e.letters().iter().copied().filter(|l| l.unsigned_abs() as usize <= d).collect()).unwrap();
        let c1 = Word::commutator(&a, &b).unwrap();
        let c2 = Word::commutator(&c, &e).unwrap();
        prop_assert!(mb_eval(&Word::commutator(&c1, &c2).unwrap()).is_identity());
        prop_assert!(mb_eval(&c1).is_commutant());
    }

    #[test]
    fn json_round_trip((u, _) in word_pair(20)) {
        let g = mb_eval(&u);
        let s = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<MetabelianElement>(&s).unwrap(), g);
    }

    #[test]
    fn nilpotent_quotient((u, v) in word_pair(25)) {
        let n = nil_eval(&u);
        prop_assert_eq!(&nil_project(&mb_eval(&u)), &n);
        prop_assert_eq!(n.area_matrix(), areas_by_hand(&u));
        prop_assert_eq!(n.mul(&nil_eval(&v)).unwrap(), nil_eval(&cat(&[&u, &v])));
        prop_assert_eq!(nil_project(&n.representative()), n.clone());
        prop_assert!(n.mul(&n.inv()).unwrap().is_identity());
    }

    #[test]
    fn lamplighter_quotient((u, v) in word_pair(30), m in prop::sample::select(vec![0u64, 2, 3, 5])) {
        let spec = LampGroupSpec::new(m).unwrap();
        let a = ll_eval(&u, spec).unwrap();
        prop_assert_eq!(ll_project(&mb_eval(&u), spec).unwrap(), a.clone());
        let prod = mb_eval(&u).mul(&mb_eval(&v)).unwrap();
        prop_assert_eq!(ll_project(&prod, spec).unwrap(), a.mul(&ll_eval(&v, spec).unwrap()).unwrap());
        prop_assert!(a.mul(&a.inv()).unwrap().is_identity());
    }
}

#[test]
fn cube_cycle_decomposition() {
    let w = |s| parse_word(s, 3).unwrap();
    assert_eq!(mb_eval(&w("x1x2x3X1X2X3")), mb_eval(&w("x1x2X1X2 x2x3X2X3 x2 x1x3X1X3 X2")));
    assert_ne!(mb_eval(&w("x1x2")), mb_eval(&w("x2x1")));
}
