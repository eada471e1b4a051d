//! CSV tables.
//!
//! | file            | header                                           |
//! |-----------------|--------------------------------------------------|
//! | series          | `t,sigma,entropy`                                |
//! | snapshot        | `x,p`                                            |
//! | sweep           | `theta1,sigma_over_L,entropy`                    |
//! | transition      | `theta2,L,tc_detected,tc_predicted,t2_detected`  |
//!
//! Reals carry 15 significant digits in scientific notation; absent optional
//! values are empty fields.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use qwalk_core::{ObservableSeries, OutputSink, TransitionReport};

use crate::error::{AppError, Result};
use crate::runner::{RunOutput, SweepRow};

pub const SERIES_HEADER: [&str; 3] = ["t", "sigma", "entropy"];
pub const SNAPSHOT_HEADER: [&str; 2] = ["x", "p"];
pub const SWEEP_HEADER: [&str; 3] = ["theta1", "sigma_over_L", "entropy"];
pub const TRANSITION_HEADER: [&str; 5] = ["theta2", "L", "tc_detected", "tc_predicted", "t2_detected"];

pub fn real(v: f64) -> String {
    format!("{v:.14e}")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_series<W: Write>(w: W, series: &ObservableSeries) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SERIES_HEADER)?;
    for e in &series.entries {
        out.write_record([e.t.to_string(), real(e.sigma), real(e.entropy)])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_snapshot<W: Write>(w: W, half_width: usize, probabilities: &[f64]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SNAPSHOT_HEADER)?;
    for (i, &p) in probabilities.iter().enumerate() {
        let x = i as i64 - half_width as i64;
        out.write_record([x.to_string(), real(p)])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_sweep<W: Write>(w: W, rows: &[SweepRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SWEEP_HEADER)?;
    for r in rows {
        out.write_record([real(r.theta1), real(r.sigma_over_l), real(r.entropy)])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_transitions<W: Write>(w: W, reports: &[TransitionReport]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(TRANSITION_HEADER)?;
    for r in reports {
        out.write_record([
            real(r.theta2),
            r.half_width.to_string(),
            opt(r.tc_detected),
            r.tc_predicted.map(real).unwrap_or_default(),
            opt(r.second_detected),
        ])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| AppError::io(path, e))
}

pub fn write_file<F>(path: &Path, f: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> Result<()>,
{
    let mut w = create(path)?;
    f(&mut w)?;
    w.flush().map_err(|e| AppError::io(path, e))
}

fn job_suffix(index: usize, jobs: usize) -> String {
    if jobs == 1 {
        String::new()
    } else {
        format!("_{index:03}")
    }
}

/// Writes every requested table of a run into `dir` and returns the paths in
/// the order written.
pub fn write_run(dir: &Path, sinks: &[OutputSink], run: &RunOutput) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| AppError::io(dir, e))?;
    let mut written = Vec::new();
    let n = run.jobs.len();
    for (i, job) in run.jobs.iter().enumerate() {
        let suffix = job_suffix(i, n);
        if sinks.contains(&OutputSink::Series) {
            let path = dir.join(format!("series{suffix}.csv"));
            write_file(&path, |w| write_series(w, &job.series))?;
            written.push(path);
        }
        if sinks.contains(&OutputSink::Snapshots) {
            for (t, p) in &job.series.snapshots {
                let path = dir.join(format!("snapshot{suffix}_t{t}.csv"));
                write_file(&path, |w| write_snapshot(w, run.half_width, p))?;
                written.push(path);
            }
        }
    }
    if sinks.contains(&OutputSink::Sweep) {
        let rows: Vec<SweepRow> = run.jobs.iter().map(|j| SweepRow::from_series(&j.series)).collect();
        let path = dir.join("sweep.csv");
        write_file(&path, |w| write_sweep(w, &rows))?;
        written.push(path);
    }
    if sinks.contains(&OutputSink::Transition) {
        let reports: Vec<TransitionReport> = run.jobs.iter().filter_map(|j| j.transition).collect();
        let path = dir.join("transition.csv");
        write_file(&path, |w| write_transitions(w, &reports))?;
        written.push(path);
    }
    Ok(written)
}
