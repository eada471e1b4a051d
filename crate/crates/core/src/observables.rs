//! Measurements on a walker state: the position distribution and its
//! moments, and the entanglement between coin and position.
//!
//! The coin's reduced density operator is `[[A, B], [B*, C]]` with
//! `A = Σ|ψ_r|²`, `C = Σ|ψ_l|²`, `B = Σ ψ_r ψ_l*`. Its larger eigenvalue is
//! `p = (1 + √(1 − 4(AC − |B|²)))/2`, and the entanglement entropy is the
//! base-2 binary entropy of `p`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::WalkerState;
use crate::math;

/// Eigenvalues of the reduced coin density operator may stray this far
/// outside `[0, 1]` before the oracle reports an inconsistency.
pub const EIGENVALUE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinReducedState {
    pub a: f64,
    pub b: Complex64,
    pub c: f64,
    /// Dominant eigenvalue, in `[1/2, 1]`.
    pub p: f64,
}

impl SpinReducedState {
    pub fn from_sums(a: f64, b: Complex64, c: f64) -> Self {
        let det = a * c - b.norm_sqr();
        let disc = (1.0 - 4.0 * det).clamp(0.0, 1.0);
        let p = ((1.0 + math::sqrt(disc)) / 2.0).clamp(0.5, 1.0);
        Self { a, b, c, p }
    }

    pub fn entropy(&self) -> f64 {
        binary_entropy(self.p)
    }
}

/// `-p log2 p - (1-p) log2 (1-p)`, with `0 log 0 = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    math::entropy_term(p) + math::entropy_term(1.0 - p)
}

/// `P(x) = |ψ_r(x)|² + |ψ_l(x)|²` over the whole chain, index `x + L`.
pub fn probability_distribution(state: &WalkerState) -> Vec<f64> {
    state.right().iter().zip(state.left()).map(|(r, l)| r.norm_sqr() + l.norm_sqr()).collect()
}

pub fn norm(state: &WalkerState) -> f64 {
    state.support().map(|i| state.right()[i].norm_sqr() + state.left()[i].norm_sqr()).sum()
}

/// `⟨x^m⟩ = Σ x^m P(x)`
pub fn moment(state: &WalkerState, m: u32) -> f64 {
    state
        .support()
        .map(|i| {
            let x = state.position(i) as f64;
            let mut xm = 1.0;
            for _ in 0..m {
                xm *= x;
            }
            xm * (state.right()[i].norm_sqr() + state.left()[i].norm_sqr())
        })
        .sum()
}

/// `√(⟨x²⟩ − ⟨x⟩²)`, clamped at zero.
pub fn std_dev(state: &WalkerState) -> f64 {
    let m1 = moment(state, 1);
    let m2 = moment(state, 2);
    math::sqrt((m2 - m1 * m1).max(0.0))
}

pub fn spin_reduced(state: &WalkerState) -> SpinReducedState {
    let (a, b, c) = coin_sums(state);
    SpinReducedState::from_sums(a, b, c)
}

fn coin_sums(state: &WalkerState) -> (f64, Complex64, f64) {
    let mut a = 0.0;
    let mut c = 0.0;
    let mut b = Complex64::new(0.0, 0.0);
    for i in state.support() {
        let (r, l) = (state.right()[i], state.left()[i]);
        a += r.norm_sqr();
        c += l.norm_sqr();
        b += r * l.conj();
    }
    (a, b, c)
}

/// Closed-form coin/position entanglement entropy, in bits.
pub fn entanglement_entropy(state: &WalkerState) -> f64 {
    spin_reduced(state).entropy()
}

/// Entropy from the eigenvalues of the explicit 2×2 reduced density matrix.
pub fn entropy_oracle(state: &WalkerState) -> Result<f64> {
    let (a, b, c) = coin_sums(state);
    reduced_matrix_entropy([[Complex64::new(a, 0.0), b], [b.conj(), Complex64::new(c, 0.0)]])
}

/// Von Neumann entropy (bits) of a 2×2 Hermitian matrix via the roots of its
/// characteristic polynomial `λ² − tr λ + det = 0`.
pub fn reduced_matrix_entropy(rho: [[Complex64; 2]; 2]) -> Result<f64> {
    let trace = rho[0][0].re + rho[1][1].re;
    let det = (rho[0][0] * rho[1][1] - rho[0][1] * rho[1][0]).re;
    let disc = math::sqrt((trace * trace - 4.0 * det).max(0.0));
    let eigenvalues = [(trace + disc) / 2.0, (trace - disc) / 2.0];
    let mut entropy = 0.0;
    for lambda in eigenvalues {
        if !(-EIGENVALUE_SLACK..=1.0 + EIGENVALUE_SLACK).contains(&lambda) {
            return Err(Error::EigenvalueOutOfRange(lambda));
        }
        entropy += math::entropy_term(lambda);
    }
    Ok(entropy)
}

/// Everything recorded per step, gathered in a single pass over the support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation {
    pub t: usize,
    pub norm: f64,
    pub mean: f64,
    pub sigma: f64,
    pub reduced: SpinReducedState,
    pub entropy: f64,
}

pub fn observe(state: &WalkerState) -> Observation {
    let (mut a, mut c) = (0.0, 0.0);
    let mut b = Complex64::new(0.0, 0.0);
    let (mut m1, mut m2) = (0.0, 0.0);
    for i in state.support() {
        let (r, l) = (state.right()[i], state.left()[i]);
        let (pr, pl) = (r.norm_sqr(), l.norm_sqr());
        a += pr;
        c += pl;
        b += r * l.conj();
        let x = state.position(i) as f64;
        let px = (pr + pl) * x;
        m1 += px;
        m2 += px * x;
    }
    let reduced = SpinReducedState::from_sums(a, b, c);
    Observation {
        t: state.t(),
        norm: a + c,
        mean: m1,
        sigma: math::sqrt((m2 - m1 * m1).max(0.0)),
        reduced,
        entropy: reduced.entropy(),
    }
}
