mod common;

use proptest::prelude::*;

use edgeflow::boundary::{
    expected_flow, green_numeric, green_table, limit_flow, projected_window_lamps, window_lamps, Window,
};
use edgeflow::walk::Trajectory;
use edgeflow::{flow_of_path, Edge, LampGroupSpec, LatticePath, LatticePoint};

#[test]
fn green_function_is_harmonic_off_the_origin() {
    // G(x) = mean of G over the neighbours of x, for x != 0.
    let t = green_table(3, 3, 1e-6).unwrap();
    for (x, &g) in &t.values {
        if x.l1_norm() == 0 || x.l1_norm() >= 3 {
            continue;
        }
        let mean: f64 = (1..=3)
            .flat_map(|a| [a, -a])
            .map(|s| t.values[&x.stepped(s)])
            .sum::<f64>()
            / 6.0;
        assert!((g - mean).abs() < 1e-5, "{x}: {g} vs {mean}");
    }
    let g0 = t.values[&LatticePoint::origin(3)];
    assert!((g0 - green_numeric(&LatticePoint::new(vec![1, 0, 0]), 3, 1e-6).unwrap() - 1.0).abs() < 1e-5);
}

#[test]
fn expected_outflow_from_the_origin_is_one() {
    let o = LatticePoint::origin(3);
    let mut total = 0.0;
    for axis in 1..=3 {
        total += expected_flow(&Edge::new(o.clone(), axis).unwrap(), 3, 1e-6).unwrap();
        total -= expected_flow(&Edge::new(o.stepped(-(axis as i32)), axis).unwrap(), 3, 1e-6).unwrap();
    }
    assert!((total - 1.0).abs() < 2e-5, "{total}");
    // Away from the origin the expected flow is a gradient of G: it
    // vanishes on edges tangent to a symmetry plane.
    let e = Edge::new(LatticePoint::new(vec![2, 0, 0]), 2).unwrap();
    let v = expected_flow(&Edge::new(LatticePoint::new(vec![2, -1, 0]), 2).unwrap(), 3, 1e-6).unwrap()
        + expected_flow(&e, 3, 1e-6).unwrap();
    assert!(v.abs() < 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn window_flow_matches_path_flow(seed in any::<u64>(), d in 1usize..=3, n in 2u64..400, r in 0u32..4) {
        let t = Trajectory::new(seed, 0, d, n);
        let w = Window::new(d, r);
        let report = limit_flow(&t, n, &w);
        let letters: Vec<i32> = t.letters().collect();
        let full = flow_of_path(&LatticePath::from_origin(d, letters.clone()).unwrap());
        let half = flow_of_path(&LatticePath::from_origin(d, letters[..(n / 2) as usize].to_vec()).unwrap());
        for (_, e) in w.edges() {
            prop_assert_eq!(report.value(&e), full.get(&e));
            prop_assert_eq!(report.value_at_half(&e), half.get(&e));
        }
    }

    #[test]
    fn window_lamps_match_the_projection(seed in any::<u64>(), d in 1usize..=2, n in 1u64..300, m in prop::sample::select(vec![0u64, 2, 3])) {
        let spec = LampGroupSpec::new(m).unwrap();
        let t = Trajectory::new(seed, 0, d + 1, n);
        let w = Window::new(d, 2);
        let lamps = window_lamps(&t, spec, &w, &[n]);
        prop_assert_eq!(&lamps[0], &projected_window_lamps(&t, spec, &w, n));
    }
}
