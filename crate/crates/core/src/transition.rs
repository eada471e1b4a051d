//! Critical-time analysis.
//!
//! Starting from the origin the walker only sees `theta2` coins until its
//! front, moving at `cos θ₂` sites per step, reaches the innermost `theta1`
//! coins near `±L/3`, so `t_c = L / (3 cos θ₂)`. Numerically, `t_c` is the
//! first step at which σ(t) departs from the homogeneous (`θ₁ = θ₂`) run by a
//! relative `1e-4`. A second, larger change in the entropy fluctuations shows
//! up near `2 t_c`; it is located with a rolling-standard-deviation rule.

use crate::error::{Error, Result, ValidationErrors};
use crate::experiment::ObservableSeries;
use crate::math;

/// Relative σ deviation that marks `t_c`.
pub const TC_THRESHOLD: f64 = 1e-4;
/// Window (in recorded entries) of the rolling entropy standard deviation.
pub const SECOND_TRANSITION_WINDOW: usize = 50;
/// Growth factor of the rolling standard deviation over its post-`t_c`
/// baseline that marks the second transition.
pub const SECOND_TRANSITION_FACTOR: f64 = 3.0;

/// `L / (3 cos θ₂)`
pub fn predicted_tc(theta2: f64, half_width: usize) -> Result<f64> {
    let cos = math::cos(theta2);
    if cos.is_nan() || cos <= 0.0 {
        return Err(Error::UndefinedPrediction(cos));
    }
    Ok(half_width as f64 / (3.0 * cos))
}

/// First `t` with `|σ_test − σ_ref| / σ_ref >= threshold`, skipping entries
/// where `σ_ref = 0`. `None` when the series never deviate.
pub fn detect_tc(test: &ObservableSeries, reference: &ObservableSeries, threshold: f64) -> Result<Option<usize>> {
    if test.entries.len() != reference.entries.len() || test.times().ne(reference.times()) {
        return Err(Error::GridMismatch);
    }
    Ok(test
        .entries
        .iter()
        .zip(&reference.entries)
        .find(|(a, r)| r.sigma != 0.0 && math::abs(a.sigma - r.sigma) / r.sigma >= threshold)
        .map(|(a, _)| a.t))
}

/// Population standard deviation of `values`.
fn std_dev(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    math::sqrt(var)
}

/// First recorded `t > t_c` where the rolling standard deviation of `S_E`
/// over `window` entries exceeds three times its value on the window ending
/// `window` entries after `t_c`. `None` if that never happens within the
/// series.
pub fn detect_second_transition(series: &ObservableSeries, t_c: usize, window: usize) -> Result<Option<usize>> {
    if window == 0 {
        return Err(Error::Validation(ValidationErrors(alloc::vec!["window must be positive".into()])));
    }
    let last = series.last().map_or(0, |e| e.t);
    let needed = t_c + window;
    let tc_idx = series.entries.partition_point(|e| e.t < t_c);
    let base_end = tc_idx + window;
    if tc_idx >= series.entries.len() || base_end >= series.entries.len() {
        return Err(Error::InsufficientData { last, needed });
    }
    let entropy: alloc::vec::Vec<f64> = series.entropies().collect();
    let rolling = |end: usize| std_dev(&entropy[end + 1 - window..=end]);
    let baseline = rolling(base_end);
    let limit = SECOND_TRANSITION_FACTOR * baseline;
    Ok((tc_idx + 1..entropy.len())
        .filter(|&j| j + 1 >= window)
        .find(|&j| rolling(j) > limit)
        .map(|j| series.entries[j].t))
}

/// Critical-time summary of one inhomogeneous run against its homogeneous
/// companion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionReport {
    pub theta2: f64,
    pub half_width: usize,
    pub tc_detected: Option<usize>,
    /// `None` when `cos θ₂ <= 0`.
    pub tc_predicted: Option<f64>,
    pub second_detected: Option<usize>,
}

impl TransitionReport {
    pub fn analyze(
        test: &ObservableSeries,
        reference: &ObservableSeries,
        threshold: f64,
        window: usize,
    ) -> Result<Self> {
        let tc_detected = detect_tc(test, reference, threshold)?;
        let second_detected = match tc_detected {
            Some(tc) => match detect_second_transition(test, tc, window) {
                Ok(t2) => t2,
                Err(Error::InsufficientData { .. }) => None,
                Err(e) => return Err(e),
            },
            None => None,
        };
        Ok(Self {
            theta2: test.theta2,
            half_width: test.half_width,
            tc_detected,
            tc_predicted: predicted_tc(test.theta2, test.half_width).ok(),
            second_detected,
        })
    }
}
