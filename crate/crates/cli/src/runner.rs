//! Runs the jobs of a config on a bounded worker pool. Results come back in
//! job order regardless of which worker finishes first.

use qwalk_core::transition::{SECOND_TRANSITION_WINDOW, TC_THRESHOLD};
use qwalk_core::{ExperimentConfig, ObservableSeries, OutputSink, SweepParameter, TransitionReport};
use rayon::prelude::*;

use crate::error::{AppError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct JobResult {
    pub theta1: f64,
    pub theta2: f64,
    pub series: ObservableSeries,
    /// Present when the config asks for the transition output.
    pub transition: Option<TransitionReport>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub half_width: usize,
    pub jobs: Vec<JobResult>,
}

/// One row of an angle sweep evaluated at the final step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub theta1: f64,
    pub sigma_over_l: f64,
    pub entropy: f64,
}

impl SweepRow {
    pub fn from_series(series: &ObservableSeries) -> Self {
        let last = series.last().expect("a run always records t = 0");
        Self {
            theta1: series.theta1,
            sigma_over_l: if series.half_width == 0 { 0.0 } else { last.sigma / series.half_width as f64 },
            entropy: last.entropy,
        }
    }
}

pub struct Runner {
    pool: rayon::ThreadPool,
}

impl Runner {
    /// `threads = None` uses one worker per available core.
    pub fn new(threads: Option<usize>) -> Result<Self> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            builder = builder.num_threads(n.max(1));
        }
        Ok(Self { pool: builder.build()? })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    pub fn run(&self, config: &ExperimentConfig) -> Result<RunOutput> {
        config.validate()?;
        let layout = config.build_layout()?;
        let with_transition = config.wants(OutputSink::Transition);
        let jobs = config.jobs();
        let results = self.pool.install(|| {
            jobs.par_iter()
                .map(|&(theta1, theta2)| -> Result<JobResult> {
                    let series = config.run_job(&layout, theta1, theta2)?;
                    let transition = if with_transition {
                        let reference = config.run_reference(&layout, theta2)?;
                        Some(TransitionReport::analyze(&series, &reference, TC_THRESHOLD, SECOND_TRANSITION_WINDOW)?)
                    } else {
                        None
                    };
                    Ok(JobResult { theta1, theta2, series, transition })
                })
                .collect::<Result<Vec<_>>>()
        })?;
        Ok(RunOutput { half_width: config.half_width()?, jobs: results })
    }

    /// `(theta1, σ(steps)/L, S_E(steps))` for every theta1 of the sweep, each
    /// from an independent full run.
    pub fn angle_sweep_at_l(&self, config: &ExperimentConfig) -> Result<Vec<SweepRow>> {
        match &config.sweep {
            Some(s) if s.parameter == SweepParameter::Theta1 => {}
            _ => return Err(AppError::Config("angle sweep needs a sweep over theta1".into())),
        }
        let lean =
            ExperimentConfig { snapshot_times: Some(Vec::new()), outputs: vec![OutputSink::Sweep], ..config.clone() };
        let out = self.run(&lean)?;
        Ok(out.jobs.iter().map(|j| SweepRow::from_series(&j.series)).collect())
    }

    /// Transition reports, one per job; the homogeneous companions are run
    /// automatically.
    pub fn transitions(&self, config: &ExperimentConfig) -> Result<Vec<TransitionReport>> {
        let mut with = config.clone();
        if !with.wants(OutputSink::Transition) {
            with.outputs.push(OutputSink::Transition);
        }
        with.snapshot_times = Some(Vec::new());
        let out = self.run(&with)?;
        Ok(out.jobs.into_iter().filter_map(|j| j.transition).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qwalk_core::Sweep;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn parallel_matches_sequential() {
        let cfg = ExperimentConfig {
            sweep: Some(Sweep::uniform(SweepParameter::Theta1, 0.0, 1.5, 7)),
            ..ExperimentConfig::cantor(4, 0.0, FRAC_PI_4)
        };
        let sequential = cfg.run().unwrap();
        let parallel = Runner::new(Some(4)).unwrap().run(&cfg).unwrap();
        assert_eq!(parallel.jobs.len(), 8);
        for (p, s) in parallel.jobs.iter().zip(&sequential) {
            assert_eq!(&p.series, s);
        }
    }

    #[test]
    fn sweep_row_at_equal_angles_matches_homogeneous() {
        let cfg = ExperimentConfig {
            sweep: Some(Sweep { parameter: SweepParameter::Theta1, values: vec![0.3, FRAC_PI_4] }),
            ..ExperimentConfig::cantor(5, 0.0, FRAC_PI_4)
        };
        let rows = Runner::new(Some(2)).unwrap().angle_sweep_at_l(&cfg).unwrap();
        let hom = ExperimentConfig::homogeneous(121, FRAC_PI_4).run().unwrap();
        let hom_row = SweepRow::from_series(&hom[0]);
        assert_eq!(rows[1].sigma_over_l, hom_row.sigma_over_l);
        assert_eq!(rows[1].entropy, hom_row.entropy);
        assert_ne!(rows[0].sigma_over_l, hom_row.sigma_over_l);
    }

    #[test]
    fn sweep_requires_theta1() {
        let cfg = ExperimentConfig::cantor(3, 0.1, 0.2);
        assert!(Runner::new(Some(1)).unwrap().angle_sweep_at_l(&cfg).is_err());
    }
}
