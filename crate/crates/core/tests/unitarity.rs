//! The one-step map checked against an explicitly assembled `S · (I ⊗ C)`
//! matrix on small chains.

use num_complex::Complex64;
use qwalk_core::{CoinField, CoinLayout, WalkerState};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Matrix = Vec<Vec<Complex64>>;

fn zeros(n: usize) -> Matrix {
    vec![vec![Complex64::new(0.0, 0.0); n]; n]
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Basis ordering: `2i` is `|i, r⟩`, `2i + 1` is `|i, l⟩`, `i = x + L`.
/// Shift is periodic: `r` from the last site goes to the first, `l` from the
/// first goes to the last.
fn one_step_matrix(layout: &CoinLayout) -> Matrix {
    let n = layout.len();
    let dim = 2 * n;
    let mut coin = zeros(dim);
    for (i, &label) in layout.labels().iter().enumerate() {
        let theta = layout.angle_of(label);
        let (c, s) = (theta.cos(), theta.sin());
        coin[2 * i][2 * i] = Complex64::new(c, 0.0);
        coin[2 * i][2 * i + 1] = Complex64::new(s, 0.0);
        coin[2 * i + 1][2 * i] = Complex64::new(s, 0.0);
        coin[2 * i + 1][2 * i + 1] = Complex64::new(-c, 0.0);
    }
    let mut shift = zeros(dim);
    for i in 0..n {
        shift[2 * ((i + 1) % n)][2 * i] = Complex64::new(1.0, 0.0);
        shift[2 * ((i + n - 1) % n) + 1][2 * i + 1] = Complex64::new(1.0, 0.0);
    }
    matmul(&shift, &coin)
}

fn random_state(rng: &mut StdRng, half_width: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = 2 * half_width + 1;
    let mut draw = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    let mut right: Vec<Complex64> = (0..n).map(|_| draw()).collect();
    let mut left: Vec<Complex64> = (0..n).map(|_| draw()).collect();
    let norm: f64 = right.iter().chain(&left).map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    right.iter_mut().chain(left.iter_mut()).for_each(|a| *a /= norm);
    (right, left)
}

fn layouts(half_width: usize) -> Vec<CoinLayout> {
    let mut out = vec![
        CoinLayout::homogeneous(half_width).with_angles(0.0, std::f64::consts::FRAC_PI_4),
        CoinLayout::homogeneous(half_width)
            .with_label(0, qwalk_core::CoinLabel::Type1)
            .unwrap()
            .with_angles(2.0 * std::f64::consts::PI / 5.0, 0.3),
    ];
    if half_width == 1 {
        out.push(CoinLayout::cantor(1).unwrap().with_angles(std::f64::consts::FRAC_PI_8, std::f64::consts::FRAC_PI_4));
    }
    if half_width == 4 {
        out.push(CoinLayout::cantor(2).unwrap().with_angles(8.0 * std::f64::consts::PI / 5.0, 1.1));
        out.push(CoinLayout::two_scatter(2).unwrap().with_angles(0.7, -0.4));
    }
    out
}

#[test]
fn assembled_matrix_is_unitary() {
    for half_width in 0..=6 {
        for layout in layouts(half_width) {
            let w = one_step_matrix(&layout);
            let dim = w.len();
            for i in 0..dim {
                for j in 0..dim {
                    let dot: Complex64 = (0..dim).map(|k| w[k][i].conj() * w[k][j]).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - want).norm() < 1e-12, "L={half_width} ({i},{j}) {dot}");
                }
            }
        }
    }
}

#[test]
fn step_matches_matrix_on_random_states() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    for half_width in 1..=6 {
        for layout in layouts(half_width) {
            let w = one_step_matrix(&layout);
            let coins = CoinField::new(&layout).unwrap();
            for _ in 0..20 {
                let (right, left) = random_state(&mut rng, half_width);
                let v: Vec<Complex64> = right.iter().zip(&left).flat_map(|(&r, &l)| [r, l]).collect();
                let expected: Vec<Complex64> =
                    w.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();

                let mut state = WalkerState::from_amplitudes(half_width, right, left).unwrap();
                state.step(&coins).unwrap();
                for i in 0..layout.len() {
                    assert!((state.right()[i] - expected[2 * i]).norm() < 1e-12);
                    assert!((state.left()[i] - expected[2 * i + 1]).norm() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn inverse_step_restores_random_states() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for half_width in 1..=6 {
        for layout in layouts(half_width) {
            let coins = CoinField::new(&layout).unwrap();
            let (right, left) = random_state(&mut rng, half_width);
            let mut state = WalkerState::from_amplitudes(half_width, right.clone(), left.clone()).unwrap();
            state.step(&coins).unwrap();
            state.step_inverse(&coins).unwrap();
            for i in 0..layout.len() {
                assert!((state.right()[i] - right[i]).norm() < 1e-12);
                assert!((state.left()[i] - left[i]).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn windowed_kernel_matches_matrix_from_origin() {
    // The origin-localized state goes through the support-window path; the
    // matrix has no notion of windows.
    let layout = CoinLayout::cantor(2).unwrap().with_angles(0.9, 0.2);
    let w = one_step_matrix(&layout);
    let coins = CoinField::new(&layout).unwrap();
    let mut state = WalkerState::initial(4);
    let mut v: Vec<Complex64> = state.right().iter().zip(state.left()).flat_map(|(&r, &l)| [r, l]).collect();
    for _ in 0..4 {
        state.step(&coins).unwrap();
        v = w.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
        for i in 0..layout.len() {
            assert!((state.right()[i] - v[2 * i]).norm() < 1e-14);
            assert!((state.left()[i] - v[2 * i + 1]).norm() < 1e-14);
        }
    }
}
