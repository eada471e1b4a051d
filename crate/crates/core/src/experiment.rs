//! Declarative experiment description and the single-run driver.
//!
//! A config names a layout, two coin angles and a step budget, optionally a
//! sweep over one of the angles. Each sweep value is an independent job; the
//! `qwalk` crate farms jobs out to a worker pool, [`ExperimentConfig::run`]
//! here runs them in order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result, ValidationErrors};
use crate::evolution::{CoinField, WalkerState};
use crate::layout::{cantor_len, CoinLayout};
use crate::observables::{self, observe};

/// Largest tolerated `|Σ P − 1|` at any recorded step.
pub const NORM_TOLERANCE: f64 = 1e-9;
/// Largest tolerated disagreement between the closed-form entropy and the
/// eigenvalue route at any recorded step.
pub const ENTROPY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayoutChoice {
    Cantor,
    Homogeneous,
    TwoScatter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Theta1,
    Theta2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

impl Sweep {
    /// `intervals + 1` uniformly spaced values over `[start, end]`.
    pub fn uniform(parameter: SweepParameter, start: f64, end: f64, intervals: usize) -> Self {
        let n = intervals.max(1);
        let values = (0..=n).map(|i| start + (end - start) * i as f64 / n as f64).collect();
        Self { parameter, values }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OutputSink {
    /// `t,sigma,entropy` per job.
    Series,
    /// `x,p` per job and snapshot time.
    Snapshots,
    /// `theta1,sigma_over_L,entropy`, one row per job.
    Sweep,
    /// `theta2,L,tc_detected,tc_predicted,t2_detected`; triggers the
    /// homogeneous companion run for every job.
    Transition,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub layout: LayoutChoice,
    /// Required for Cantor and two-scatter layouts; a homogeneous layout may
    /// give either this or `half_width`.
    pub generation: Option<u32>,
    pub half_width: Option<usize>,
    pub theta1: f64,
    pub theta2: f64,
    /// Defaults to `L`.
    pub steps: Option<usize>,
    pub record_every: usize,
    /// Defaults to `[steps]`.
    pub snapshot_times: Option<Vec<usize>>,
    pub sweep: Option<Sweep>,
    pub outputs: Vec<OutputSink>,
    pub two_scatter_swap: bool,
}

impl ExperimentConfig {
    fn base(layout: LayoutChoice, theta1: f64, theta2: f64) -> Self {
        Self {
            layout,
            generation: None,
            half_width: None,
            theta1,
            theta2,
            steps: None,
            record_every: 1,
            snapshot_times: None,
            sweep: None,
            outputs: vec![OutputSink::Series, OutputSink::Snapshots],
            two_scatter_swap: false,
        }
    }

    pub fn cantor(generation: u32, theta1: f64, theta2: f64) -> Self {
        Self { generation: Some(generation), ..Self::base(LayoutChoice::Cantor, theta1, theta2) }
    }

    pub fn homogeneous(half_width: usize, theta: f64) -> Self {
        Self { half_width: Some(half_width), ..Self::base(LayoutChoice::Homogeneous, theta, theta) }
    }

    pub fn two_scatter(generation: u32, theta1: f64, theta2: f64) -> Self {
        Self { generation: Some(generation), ..Self::base(LayoutChoice::TwoScatter, theta1, theta2) }
    }

    /// Checks every field and reports all violations at once.
    pub fn validate(&self) -> Result<()> {
        let mut errs = ValidationErrors::default();
        let half_width = match self.resolve_half_width() {
            Ok(l) => Some(l),
            Err(msg) => {
                errs.push(msg);
                None
            }
        };
        if self.layout == LayoutChoice::TwoScatter && self.generation == Some(0) {
            errs.push("two_scatter layout needs generation >= 1");
        }
        for (name, v) in [("theta1", self.theta1), ("theta2", self.theta2)] {
            if !v.is_finite() {
                errs.push(format!("{name} = {v} is not finite"));
            }
        }
        if self.record_every == 0 {
            errs.push("record_every must be positive");
        }
        if let Some(l) = half_width {
            let steps = self.steps.unwrap_or(l);
            if steps > l {
                errs.push(format!("steps = {steps} exceeds L = {l}"));
            }
            for &t in self.snapshot_times.iter().flatten() {
                if t > steps {
                    errs.push(format!("snapshot time {t} is outside [0, {steps}]"));
                }
            }
        }
        if let Some(sweep) = &self.sweep {
            if sweep.values.is_empty() {
                errs.push("sweep has no values");
            }
            for &v in &sweep.values {
                if !v.is_finite() {
                    errs.push(format!("sweep value {v} is not finite"));
                }
            }
        }
        if self.outputs.contains(&OutputSink::Sweep) {
            match &self.sweep {
                Some(s) if s.parameter == SweepParameter::Theta1 => {}
                _ => errs.push("the sweep output needs a sweep over theta1"),
            }
        }
        errs.into_result()
    }

    fn resolve_half_width(&self) -> core::result::Result<usize, alloc::string::String> {
        let from_generation = |g: u32| cantor_len(g).map(|n| n / 2).map_err(|_| format!("generation {g} is too large"));
        match (self.layout, self.generation, self.half_width) {
            (LayoutChoice::Homogeneous, _, Some(l)) => Ok(l),
            (LayoutChoice::Homogeneous, Some(g), None) => from_generation(g),
            (LayoutChoice::Homogeneous, None, None) => Err("homogeneous layout needs L or generation".into()),
            (_, Some(g), _) => from_generation(g),
            (_, None, _) => Err("cantor and two_scatter layouts need a generation".into()),
        }
    }

    /// Chain half-width `L`.
    pub fn half_width(&self) -> Result<usize> {
        self.resolve_half_width().map_err(|msg| Error::Validation(ValidationErrors(vec![msg])))
    }

    pub fn steps(&self) -> Result<usize> {
        Ok(self.steps.unwrap_or(self.half_width()?))
    }

    pub fn snapshot_times(&self) -> Result<Vec<usize>> {
        match &self.snapshot_times {
            Some(times) => Ok(times.clone()),
            None => Ok(vec![self.steps()?]),
        }
    }

    pub fn wants(&self, sink: OutputSink) -> bool {
        self.outputs.contains(&sink)
    }

    /// The label array, with angles still at their defaults.
    pub fn build_layout(&self) -> Result<CoinLayout> {
        match self.layout {
            LayoutChoice::Homogeneous => Ok(CoinLayout::homogeneous(self.half_width()?)),
            LayoutChoice::Cantor => CoinLayout::cantor(self.required_generation()?),
            LayoutChoice::TwoScatter if self.two_scatter_swap => {
                CoinLayout::two_scatter_swapped(self.required_generation()?)
            }
            LayoutChoice::TwoScatter => CoinLayout::two_scatter(self.required_generation()?),
        }
    }

    fn required_generation(&self) -> Result<u32> {
        self.generation.ok_or_else(|| Error::Validation(ValidationErrors(vec!["missing generation".into()])))
    }

    /// `(theta1, theta2)` for each job, in sweep order.
    pub fn jobs(&self) -> Vec<(f64, f64)> {
        match &self.sweep {
            None => vec![(self.theta1, self.theta2)],
            Some(Sweep { parameter: SweepParameter::Theta1, values }) => {
                values.iter().map(|&v| (v, self.theta2)).collect()
            }
            Some(Sweep { parameter: SweepParameter::Theta2, values }) => {
                values.iter().map(|&v| (self.theta1, v)).collect()
            }
        }
    }

    /// Runs one job on `layout` (typically from [`build_layout`](Self::build_layout)).
    pub fn run_job(&self, layout: &CoinLayout, theta1: f64, theta2: f64) -> Result<ObservableSeries> {
        simulate(&layout.with_angles(theta1, theta2), self.steps()?, self.record_every, &self.snapshot_times()?)
    }

    /// The homogeneous companion of a job: same chain and grid, every site
    /// at `theta2`.
    pub fn run_reference(&self, layout: &CoinLayout, theta2: f64) -> Result<ObservableSeries> {
        simulate(&layout.with_angles(theta2, theta2), self.steps()?, self.record_every, &[])
    }

    /// All jobs, sequentially.
    pub fn run(&self) -> Result<Vec<ObservableSeries>> {
        self.validate()?;
        let layout = self.build_layout()?;
        self.jobs().into_iter().map(|(t1, t2)| self.run_job(&layout, t1, t2)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesRecord {
    pub t: usize,
    pub sigma: f64,
    pub entropy: f64,
}

/// Recorded `(t, σ, S_E)` and optional `P(x, t)` snapshots of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSeries {
    pub half_width: usize,
    pub theta1: f64,
    pub theta2: f64,
    pub entries: Vec<SeriesRecord>,
    /// `t → P(x, t)` indexed by `x + L`.
    pub snapshots: BTreeMap<usize, Vec<f64>>,
}

impl ObservableSeries {
    pub fn times(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.t)
    }

    pub fn record_at(&self, t: usize) -> Option<&SeriesRecord> {
        self.entries.binary_search_by_key(&t, |e| e.t).ok().map(|i| &self.entries[i])
    }

    pub fn last(&self) -> Option<&SeriesRecord> {
        self.entries.last()
    }

    pub fn sigmas(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|e| e.sigma)
    }

    pub fn entropies(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|e| e.entropy)
    }
}

/// Evolves the origin-localized initial state on `layout` for `steps` steps,
/// recording every `record_every`-th step (and `t = 0`) plus `P(x, t)` at the
/// requested times. Norm and the two entropy routes are checked at each
/// recorded step.
pub fn simulate(
    layout: &CoinLayout,
    steps: usize,
    record_every: usize,
    snapshot_times: &[usize],
) -> Result<ObservableSeries> {
    let half_width = layout.half_width();
    let coins = CoinField::new(layout)?;
    if steps > half_width {
        return Err(Error::BoundaryViolation { next: steps, half_width });
    }
    let record_every = record_every.max(1);
    let mut state = WalkerState::initial(half_width);
    let mut series = ObservableSeries {
        half_width,
        theta1: layout.theta1(),
        theta2: layout.theta2(),
        entries: Vec::with_capacity(steps / record_every + 1),
        snapshots: BTreeMap::new(),
    };

    let record = |state: &WalkerState, series: &mut ObservableSeries| -> Result<()> {
        let t = state.t();
        if snapshot_times.contains(&t) {
            series.snapshots.insert(t, observables::probability_distribution(state));
        }
        if t % record_every != 0 {
            return Ok(());
        }
        let obs = observe(state);
        let drift = (obs.norm - 1.0).abs();
        if drift.is_nan() || drift > NORM_TOLERANCE {
            return Err(Error::NormDrift { t, norm: obs.norm });
        }
        let r = obs.reduced;
        let oracle = observables::reduced_matrix_entropy([
            [num_complex::Complex64::new(r.a, 0.0), r.b],
            [r.b.conj(), num_complex::Complex64::new(r.c, 0.0)],
        ])?;
        let gap = (oracle - obs.entropy).abs();
        if gap.is_nan() || gap > ENTROPY_TOLERANCE {
            return Err(Error::EntropyMismatch { t, closed: obs.entropy, oracle });
        }
        series.entries.push(SeriesRecord { t, sigma: obs.sigma, entropy: obs.entropy });
        Ok(())
    };

    record(&state, &mut series)?;
    for _ in 0..steps {
        state.step(&coins)?;
        record(&state, &mut series)?;
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    #[test]
    fn zero_steps_records_only_origin() {
        let cfg = ExperimentConfig { steps: Some(0), ..ExperimentConfig::cantor(3, FRAC_PI_8, FRAC_PI_4) };
        let runs = cfg.run().unwrap();
        assert_eq!(runs.len(), 1);
        assert_eq!(runs[0].entries, vec![SeriesRecord { t: 0, sigma: 0.0, entropy: 0.0 }]);
        assert_eq!(runs[0].snapshots.keys().copied().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn default_steps_and_snapshots() {
        let cfg = ExperimentConfig::cantor(3, FRAC_PI_8, FRAC_PI_4);
        assert_eq!(cfg.half_width().unwrap(), 13);
        assert_eq!(cfg.steps().unwrap(), 13);
        let run = &cfg.run().unwrap()[0];
        assert_eq!(run.entries.len(), 14);
        assert_eq!(run.times().collect::<Vec<_>>(), (0..=13).collect::<Vec<_>>());
        let snap = &run.snapshots[&13];
        assert_eq!(snap.len(), 27);
        assert!((snap.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn record_every_thins_the_grid() {
        let cfg = ExperimentConfig { record_every: 5, ..ExperimentConfig::homogeneous(12, FRAC_PI_4) };
        let run = &cfg.run().unwrap()[0];
        assert_eq!(run.times().collect::<Vec<_>>(), vec![0, 5, 10]);
    }

    #[test]
    fn sweep_jobs_follow_input_order() {
        let cfg = ExperimentConfig {
            sweep: Some(Sweep { parameter: SweepParameter::Theta2, values: vec![0.3, 0.1, 0.2] }),
            ..ExperimentConfig::cantor(2, 0.5, 0.0)
        };
        assert_eq!(cfg.jobs(), vec![(0.5, 0.3), (0.5, 0.1), (0.5, 0.2)]);
        let runs = cfg.run().unwrap();
        assert_eq!(runs.iter().map(|r| r.theta2).collect::<Vec<_>>(), vec![0.3, 0.1, 0.2]);
    }

    #[test]
    fn uniform_sweep_grid() {
        let s = Sweep::uniform(SweepParameter::Theta1, 0.0, core::f64::consts::FRAC_PI_2, 64);
        assert_eq!(s.values.len(), 65);
        assert_eq!(s.values[32], FRAC_PI_4);
        assert_eq!(s.values[64], core::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn validation_lists_every_problem() {
        let cfg = ExperimentConfig {
            steps: Some(50),
            record_every: 0,
            theta1: f64::NAN,
            snapshot_times: Some(vec![60]),
            sweep: Some(Sweep { parameter: SweepParameter::Theta1, values: vec![f64::INFINITY] }),
            ..ExperimentConfig::cantor(3, 0.0, 0.0)
        };
        match cfg.validate() {
            Err(Error::Validation(errs)) => assert_eq!(errs.0.len(), 5, "{errs}"),
            other => panic!("{other:?}"),
        }

        let missing = ExperimentConfig { generation: None, ..ExperimentConfig::two_scatter(2, 0.1, 0.2) };
        assert!(missing.validate().is_err());
        assert!(ExperimentConfig::two_scatter(0, 0.1, 0.2).validate().is_err());

        let sweep_sink = ExperimentConfig { outputs: vec![OutputSink::Sweep], ..ExperimentConfig::cantor(2, 0.1, 0.2) };
        assert!(sweep_sink.validate().is_err());
    }

    #[test]
    fn homogeneous_accepts_generation() {
        let cfg = ExperimentConfig { half_width: None, generation: Some(4), ..ExperimentConfig::homogeneous(0, 0.3) };
        assert_eq!(cfg.half_width().unwrap(), 40);
    }

    #[test]
    fn two_scatter_swap_selects_literal_layout() {
        let cfg = ExperimentConfig { two_scatter_swap: true, ..ExperimentConfig::two_scatter(2, 0.1, 0.2) };
        assert_eq!(cfg.build_layout().unwrap().to_text(), "112111211\n");
        assert_eq!(ExperimentConfig::two_scatter(2, 0.1, 0.2).build_layout().unwrap().to_text(), "221222122\n");
    }

    #[test]
    fn simulate_rejects_too_many_steps() {
        let layout = CoinLayout::homogeneous(3);
        assert!(matches!(simulate(&layout, 4, 1, &[]), Err(Error::BoundaryViolation { .. })));
    }
}
