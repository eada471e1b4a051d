//! One-dimensional discrete-time quantum walks with position-dependent coins
//! laid out by a Cantor substitution sequence.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the numerical
//! parts: coin layouts, the unitary walk kernel, the coin/position
//! entanglement and spreading observables, a single-run driver, and the
//! critical-time detectors. File formats, the sweep worker pool and the CLI
//! live in the `qwalk` crate.
//!
//! ```
//! use qwalk_core::{observables, CoinField, CoinLayout, WalkerState};
//!
//! let layout = CoinLayout::cantor(3).unwrap().with_angles(core::f64::consts::FRAC_PI_8, core::f64::consts::FRAC_PI_4);
//! let coins = CoinField::new(&layout).unwrap();
//! let mut state = WalkerState::initial(layout.half_width());
//! state.evolve(&coins, layout.half_width(), |_| {}).unwrap();
//! assert!((observables::norm(&state) - 1.0).abs() < 1e-12);
//! ```
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
pub mod evolution;
pub mod experiment;
pub mod layout;
mod math;
pub mod observables;
pub mod transition;

pub use error::{Error, Result, ValidationErrors};
pub use evolution::{CoinField, CoinMatrix, WalkerState};
pub use experiment::{
    ExperimentConfig, LayoutChoice, ObservableSeries, OutputSink, SeriesRecord, Sweep, SweepParameter,
};
pub use layout::{CoinLabel, CoinLayout, LayoutKind};
pub use num_complex::Complex64;
pub use observables::{Observation, SpinReducedState};
pub use transition::TransitionReport;
