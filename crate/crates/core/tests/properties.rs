use num_complex::Complex64;
use proptest::prelude::*;
use qwalk_core::observables::{self, entanglement_entropy, entropy_oracle, spin_reduced};
use qwalk_core::{CoinField, CoinLayout, WalkerState};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn normalized(right: Vec<Complex64>, left: Vec<Complex64>, half_width: usize) -> WalkerState {
    let norm: f64 = right.iter().chain(&left).map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let scale = |v: Vec<Complex64>| v.into_iter().map(|a| a / norm).collect();
    WalkerState::from_amplitudes(half_width, scale(right), scale(left)).unwrap()
}

fn amplitudes(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im)), n)
}

fn random_state() -> impl Strategy<Value = WalkerState> {
    (0usize..8).prop_flat_map(|l| {
        let n = 2 * l + 1;
        (amplitudes(n), amplitudes(n))
            .prop_filter("non-zero", |(r, lf)| r.iter().chain(lf).any(|a| a.norm_sqr() > 1e-6))
            .prop_map(move |(r, lf)| normalized(r, lf, l))
    })
}

#[test]
fn entropy_routes_agree_on_seeded_states() {
    let mut rng = StdRng::seed_from_u64(42);
    for k in 0..100 {
        let l = k % 9;
        let n = 2 * l + 1;
        let mut draw = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let right: Vec<_> = (0..n).map(|_| draw()).collect();
        let left: Vec<_> = (0..n).map(|_| draw()).collect();
        let state = normalized(right, left, l);
        let closed = entanglement_entropy(&state);
        let oracle = entropy_oracle(&state).unwrap();
        assert!((closed - oracle).abs() < 1e-10, "{closed} vs {oracle}");
    }
}

proptest! {
    #[test]
    fn reduced_state_invariants(state in random_state()) {
        let red = spin_reduced(&state);
        prop_assert!((red.a + red.c - 1.0).abs() < 1e-10);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&red.a));
        prop_assert!((0.0..=1.0 + 1e-12).contains(&red.c));
        prop_assert!(red.b.norm_sqr() <= red.a * red.c + 1e-12);
        let det = red.a * red.c - red.b.norm_sqr();
        prop_assert!((-1e-12..=0.25 + 1e-12).contains(&det));
        prop_assert!((0.5..=1.0).contains(&red.p));
        let s = entanglement_entropy(&state);
        prop_assert!((0.0..=1.0).contains(&s));
        prop_assert!((s - entropy_oracle(&state).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn probabilities_sum_to_one(state in random_state()) {
        let total: f64 = observables::probability_distribution(&state).iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn walk_from_origin_keeps_invariants(generation in 1u32..5, theta1 in -7.0f64..7.0, theta2 in -7.0f64..7.0) {
        let layout = CoinLayout::cantor(generation).unwrap().with_angles(theta1, theta2);
        let coins = CoinField::new(&layout).unwrap();
        let half_width = layout.half_width();
        let mut state = WalkerState::initial(half_width);
        let mut prev_norm = 1.0;
        let mut failure = None;
        state.evolve(&coins, half_width, |s| {
            let obs = observables::observe(s);
            let t = s.t() as f64;
            if (obs.norm - prev_norm).abs() >= 1e-12 {
                failure.get_or_insert(format!("per-step norm drift at t={t}"));
            }
            prev_norm = obs.norm;
            if obs.sigma > t + 1e-9 {
                failure.get_or_insert(format!("sigma {} > t={t}", obs.sigma));
            }
            let closed = obs.entropy;
            let oracle = entropy_oracle(s).unwrap();
            if (closed - oracle).abs() >= 1e-10 {
                failure.get_or_insert(format!("entropy routes differ at t={t}"));
            }
            if s.t() < half_width && s.edge_weight() >= 1e-20 {
                failure.get_or_insert(format!("edge reached at t={t}"));
            }
        }).unwrap();
        prop_assert!(failure.is_none(), "{:?}", failure);
        prop_assert!((prev_norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn step_then_inverse_is_identity(generation in 1u32..4, theta1 in -4.0f64..4.0, theta2 in -4.0f64..4.0, steps in 1usize..4) {
        let layout = CoinLayout::cantor(generation).unwrap().with_angles(theta1, theta2);
        let coins = CoinField::new(&layout).unwrap();
        let mut state = WalkerState::initial(layout.half_width());
        let steps = steps.min(layout.half_width());
        for _ in 0..steps - 1 {
            state.step(&coins).unwrap();
        }
        let before = state.clone();
        state.step(&coins).unwrap();
        state.step_inverse(&coins).unwrap();
        for (a, b) in state.right().iter().zip(before.right()).chain(state.left().iter().zip(before.left())) {
            prop_assert!((a - b).norm() < 1e-12);
        }
    }
}
