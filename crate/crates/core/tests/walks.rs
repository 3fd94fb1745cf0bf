mod common;

use proptest::prelude::*;

use edgeflow::walk::{
    drift_estimate, entropy_exact, entropy_series, letter_of_index, simulate, sphere_sizes, Trajectory, Variety,
    WalkConfig,
};

fn cfg(v: Variety, d: usize) -> WalkConfig {
    WalkConfig::new(v, d, None).unwrap()
}

#[test]
fn ball_size_formulas() {
    let ab = sphere_sizes(&cfg(Variety::Abelian, 3), 6, usize::MAX).ball_sizes;
    // |B_N| in Z^3: sum_k 2^k C(3,k) C(N,k).
    let c = |n: u64, k: u64| if k > n { 0 } else { (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) };
    for n in 0..=6u64 {
        assert_eq!(ab[n as usize], (0..=3).map(|k| (1 << k) * c(3, k) * c(n, k)).sum::<u64>());
    }
    let free = sphere_sizes(&cfg(Variety::Free, 3), 6, usize::MAX).ball_sizes;
    for n in 0..=6u32 {
        assert_eq!(free[n as usize], (3 * 5u64.pow(n) - 1) / 2);
    }
    let nil = sphere_sizes(&cfg(Variety::Nilpotent2, 2), 2, usize::MAX).ball_sizes;
    assert_eq!(nil, vec![1, 5, 17]);
}

#[test]
fn truncation_is_reported() {
    let g = sphere_sizes(&cfg(Variety::Free, 2), 10, 100);
    assert!(g.truncated);
    assert!(g.ball_sizes.len() < 11);
}

#[test]
fn entropy_is_subadditive_and_collapses_under_quotients() {
    let series = |v| entropy_series(&cfg(v, 2), 6).unwrap().entries;
    let (ab, nil, mb, free) =
        (series(Variety::Abelian), series(Variety::Nilpotent2), series(Variety::Metabelian), series(Variety::Free));
    for n in 0..6 {
        assert!(ab[n].entropy <= nil[n].entropy + 1e-12);
        assert!(nil[n].entropy <= mb[n].entropy + 1e-12);
        assert!(mb[n].entropy <= free[n].entropy + 1e-12);
    }
    for s in [&ab, &nil, &mb, &free] {
        for m in 1..=6 {
            for n in 1..=6 - m {
                assert!(s[m + n - 1].entropy <= s[m - 1].entropy + s[n - 1].entropy + 1e-12);
            }
        }
    }
    // Two steps in Z^2: 16 words over 9 points, counts 4 at the origin,
    // 2 at the diagonals and 1 at the four points at distance 2.
    let h2 = 16f64.ln() - (4.0 * 4f64.ln() + 4.0 * 2.0 * 2f64.ln()) / 16.0;
    assert!((ab[1].entropy - h2).abs() < 1e-14);
    assert_eq!(ab[1].atoms, 9);
}

#[test]
fn entropy_budget_is_enforced() {
    assert!(entropy_exact(&cfg(Variety::Free, 4), 12).is_err());
}

#[test]
fn letters_are_uniform() {
    // Chi-square over 8 letters with 7 degrees of freedom; 24.32 is the
    // 0.999 quantile.
    let t = Trajectory::new(42, 0, 4, 400_000);
    let mut counts = [0u64; 8];
    for l in t.letters() {
        let k = 2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0);
        counts[k] += 1;
    }
    let e = 400_000.0 / 8.0;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
    assert!(chi2 < 24.32, "chi2 = {chi2}, counts {counts:?}");
}

#[test]
fn two_step_return_probability() {
    let walks = 200_000u64;
    let back = (0..walks)
        .filter(|&i| {
            let t = Trajectory::new(7, i, 1, 2);
            t.letter_at(0) + t.letter_at(1) == 0
        })
        .count() as f64
        / walks as f64;
    // Standard error is about 0.0011.
    assert!((back - 0.5).abs() < 0.006, "{back}");
}

#[test]
fn letter_indices() {
    assert_eq!((0..6).map(letter_of_index).collect::<Vec<_>>(), vec![1, -1, 2, -2, 3, -3]);
}

#[test]
fn free_group_drift() {
    // The speed of the simple random walk on F_2 is 1/2.
    let s = drift_estimate(&cfg(Variety::Free, 2), &[2000], 400, 3);
    let p = &s.points[0];
    let exact = p.exact.expect("free length is exact");
    assert!(exact.low() - 0.01 < 0.5 && 0.5 < exact.high() + 0.01, "{exact:?}");
}

#[test]
fn abelian_drift_matches_the_walk() {
    // E|S_N| for one-dimensional walks: C(N, N/2) N / 2^N for even N.
    let s = drift_estimate(&cfg(Variety::Abelian, 1), &[100], 20_000, 5);
    let mut ln_c = 0.0;
    for i in 0..50 {
        ln_c += ((100 - i) as f64).ln() - ((i + 1) as f64).ln();
    }
    let mean = (ln_c - 100.0 * 2f64.ln()).exp();
    let e = s.points[0].exact.unwrap();
    assert!((e.mean - mean).abs() < 4.0 * e.std_error(), "{e:?} vs {mean}");
}

#[test]
fn runs_are_reproducible() {
    let c = cfg(Variety::Metabelian, 3);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| drift_estimate(&c, &[10, 100], 64, 1));
    let b = four.install(|| drift_estimate(&c, &[10, 100], 64, 1));
    assert_eq!(a, b);
    assert_ne!(a, drift_estimate(&c, &[10, 100], 64, 2));
    let t = simulate(&c, 9, 50);
    assert_eq!(t.letters().collect::<Vec<_>>(), simulate(&c, 9, 50).letters().collect::<Vec<_>>());
}

proptest! {
    #[test]
    fn random_access_matches_iteration(seed in any::<u64>(), index in 0u64..1000, g in 1usize..=5) {
        let t = Trajectory::new(seed, index, g, 300);
        let seq: Vec<i32> = t.letters().collect();
        prop_assert_eq!(seq.len(), 300);
        for (i, &l) in seq.iter().enumerate() {
            prop_assert_eq!(t.letter_at(i as u64), l);
        }
        prop_assert!(seq.iter().all(|l| l.unsigned_abs() as usize <= g && *l != 0));
    }
}
