//! Unitary evolution of the two-component walker.
//!
//! One step applies the site-local coin
//!
//! ```text
//! C(θ) = | cos θ   sin θ |
//!        | sin θ  -cos θ |
//! ```
//!
//! and then shifts the right-moving component to `x + 1` and the left-moving
//! component to `x - 1`. Amplitudes live in double buffers; a step writes the
//! back buffer and swaps, so the hot loop never allocates.
//!
//! Walks started at the origin only touch `|x| <= t`, so the state tracks the
//! index window that can hold non-zero amplitude and the kernel only sweeps
//! that window. The chain is closed periodically at its two ends, which keeps
//! the one-step map unitary for arbitrary states; walks from the origin never
//! get there because `t <= L` is enforced.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::layout::{CoinLabel, CoinLayout};
use crate::math;

/// The real 2×2 coin for one angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMatrix {
    theta: f64,
    cos: f64,
    sin: f64,
}

impl CoinMatrix {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFiniteAngle(theta));
        }
        let (sin, cos) = math::sin_cos(theta);
        Ok(Self { theta, cos, sin })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `[[cos θ, sin θ], [sin θ, -cos θ]]`
    pub fn entries(&self) -> [[f64; 2]; 2] {
        [[self.cos, self.sin], [self.sin, -self.cos]]
    }

    pub fn determinant(&self) -> f64 {
        -self.cos * self.cos - self.sin * self.sin
    }

    /// Coin applied to one site's `(ψ_r, ψ_l)`.
    #[inline]
    pub fn apply(&self, right: Complex64, left: Complex64) -> (Complex64, Complex64) {
        (right * self.cos + left * self.sin, right * self.sin - left * self.cos)
    }
}

/// Per-site `cos θ(x)` and `sin θ(x)`, precomputed once for a layout and its
/// angle pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinField {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl CoinField {
    pub fn new(layout: &CoinLayout) -> Result<Self> {
        let type1 = CoinMatrix::new(layout.theta1())?;
        let type2 = CoinMatrix::new(layout.theta2())?;
        let pick = |label: CoinLabel| match label {
            CoinLabel::Type1 => type1,
            CoinLabel::Type2 => type2,
        };
        let cos = layout.labels().iter().map(|&l| pick(l).cos).collect();
        let sin = layout.labels().iter().map(|&l| pick(l).sin).collect();
        Ok(Self { cos, sin })
    }

    pub fn half_width(&self) -> usize {
        self.cos.len() / 2
    }
}

/// Amplitudes `ψ_r(x)`, `ψ_l(x)` over `x ∈ [-L, L]` (index `x + L`) at step `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerState {
    right: Vec<Complex64>,
    left: Vec<Complex64>,
    back_right: Vec<Complex64>,
    back_left: Vec<Complex64>,
    t: usize,
    half_width: usize,
    // inclusive index window outside which every amplitude is zero
    lo: usize,
    hi: usize,
}

impl WalkerState {
    /// `|x = 0⟩ ⊗ (|r⟩ + i|l⟩)/√2`
    pub fn initial(half_width: usize) -> Self {
        let n = 2 * half_width + 1;
        let amp = core::f64::consts::FRAC_1_SQRT_2;
        let mut right = vec![Complex64::new(0.0, 0.0); n];
        let mut left = right.clone();
        right[half_width] = Complex64::new(amp, 0.0);
        left[half_width] = Complex64::new(0.0, amp);
        Self {
            back_right: vec![Complex64::new(0.0, 0.0); n],
            back_left: vec![Complex64::new(0.0, 0.0); n],
            right,
            left,
            t: 0,
            half_width,
            lo: half_width,
            hi: half_width,
        }
    }

    /// Arbitrary amplitudes at `t = 0`. No normalization is applied.
    pub fn from_amplitudes(half_width: usize, right: Vec<Complex64>, left: Vec<Complex64>) -> Result<Self> {
        let n = 2 * half_width + 1;
        if right.len() != n || left.len() != n {
            return Err(Error::AmplitudeLength { right: right.len(), left: left.len(), expected: n });
        }
        Ok(Self {
            back_right: vec![Complex64::new(0.0, 0.0); n],
            back_left: vec![Complex64::new(0.0, 0.0); n],
            right,
            left,
            t: 0,
            half_width,
            lo: 0,
            hi: n - 1,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.right.is_empty()
    }

    pub fn right(&self) -> &[Complex64] {
        &self.right
    }

    pub fn left(&self) -> &[Complex64] {
        &self.left
    }

    /// Index window that may hold non-zero amplitude.
    pub fn support(&self) -> RangeInclusive<usize> {
        self.lo..=self.hi
    }

    /// Position `x` of array index `idx`.
    #[inline]
    pub fn position(&self, idx: usize) -> i64 {
        idx as i64 - self.half_width as i64
    }

    pub fn amplitude(&self, x: i64) -> Option<(Complex64, Complex64)> {
        let idx = usize::try_from(x + self.half_width as i64).ok()?;
        Some((*self.right.get(idx)?, *self.left.get(idx)?))
    }

    /// `|ψ(-L)|² + |ψ(L)|²`
    pub fn edge_weight(&self) -> f64 {
        let last = self.len() - 1;
        let mut w = self.right[0].norm_sqr() + self.left[0].norm_sqr();
        if last > 0 {
            w += self.right[last].norm_sqr() + self.left[last].norm_sqr();
        }
        w
    }

    fn check_coins(&self, coins: &CoinField) -> Result<()> {
        if coins.half_width() != self.half_width || coins.cos.len() != self.len() {
            return Err(Error::HalfWidthMismatch { state: self.half_width, coins: coins.half_width() });
        }
        Ok(())
    }

    /// Advances one step: coin on every site, then the conditional shift.
    pub fn step(&mut self, coins: &CoinField) -> Result<()> {
        self.check_coins(coins)?;
        let next = self.t + 1;
        if next > self.half_width {
            return Err(Error::BoundaryViolation { next, half_width: self.half_width });
        }
        let n = self.len();
        if self.lo == 0 || self.hi + 1 == n {
            self.advance_ring(coins);
            self.lo = 0;
            self.hi = n - 1;
        } else {
            self.advance_window(coins);
            self.lo -= 1;
            self.hi += 1;
        }
        core::mem::swap(&mut self.right, &mut self.back_right);
        core::mem::swap(&mut self.left, &mut self.back_left);
        self.t = next;
        Ok(())
    }

    /// Applies `steps` steps, calling `recorder` after each one.
    pub fn evolve<F>(&mut self, coins: &CoinField, steps: usize, mut recorder: F) -> Result<()>
    where
        F: FnMut(&WalkerState),
    {
        self.check_coins(coins)?;
        let end = self.t + steps;
        if end > self.half_width {
            return Err(Error::BoundaryViolation { next: end, half_width: self.half_width });
        }
        for _ in 0..steps {
            self.step(coins)?;
            recorder(self);
        }
        Ok(())
    }

    // Window [lo, hi] strictly inside the chain: writes [lo-1, hi+1].
    fn advance_window(&mut self, coins: &CoinField) {
        let (lo, hi) = (self.lo, self.hi);
        let zero = Complex64::new(0.0, 0.0);
        let cos = &coins.cos[lo..=hi];
        let sin = &coins.sin[lo..=hi];
        let right = &self.right[lo..=hi];
        let left = &self.left[lo..=hi];

        let out_r = &mut self.back_right;
        out_r[lo - 1] = zero;
        out_r[lo] = zero;
        for ((((out, &c), &s), &r), &l) in out_r[lo + 1..=hi + 1].iter_mut().zip(cos).zip(sin).zip(right).zip(left) {
            *out = r * c + l * s;
        }

        let out_l = &mut self.back_left;
        out_l[hi] = zero;
        out_l[hi + 1] = zero;
        for ((((out, &c), &s), &r), &l) in out_l[lo - 1..=hi - 1].iter_mut().zip(cos).zip(sin).zip(right).zip(left) {
            *out = r * s - l * c;
        }
    }

    fn advance_ring(&mut self, coins: &CoinField) {
        let n = self.len();
        for i in 0..n {
            let (c, s) = (coins.cos[i], coins.sin[i]);
            let (r, l) = (self.right[i], self.left[i]);
            self.back_right[(i + 1) % n] = r * c + l * s;
            self.back_left[(i + n - 1) % n] = r * s - l * c;
        }
    }

    /// Undoes one step: inverse shift, then the coin (which is its own
    /// inverse). The support window widens to the full chain.
    pub fn step_inverse(&mut self, coins: &CoinField) -> Result<()> {
        self.check_coins(coins)?;
        if self.t == 0 {
            return Err(Error::NothingToUndo);
        }
        let n = self.len();
        for i in 0..n {
            let r = self.right[(i + 1) % n];
            let l = self.left[(i + n - 1) % n];
            let (c, s) = (coins.cos[i], coins.sin[i]);
            self.back_right[i] = r * c + l * s;
            self.back_left[i] = r * s - l * c;
        }
        core::mem::swap(&mut self.right, &mut self.back_right);
        core::mem::swap(&mut self.left, &mut self.back_left);
        self.lo = 0;
        self.hi = n - 1;
        self.t -= 1;
        Ok(())
    }
}
