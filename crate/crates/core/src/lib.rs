//! Wavelet-based periodic models of binary smart-home sensors.
//!
//! The crate covers the whole detection chain:
//!
//! * [`wavelet`]: periodized filter-bank DWT/IDWT and a catalog of
//!   Haar, Daubechies and (reverse) biorthogonal families.
//! * [`model`]: thresholded wavelet models that forecast a binary sensor at
//!   any future timestamp.
//! * [`fremen`]: a Fourier (FreMEn-style) baseline model.
//! * [`activity`]: per-window activity probabilities and normalized entropy.
//! * [`inference`]: the per-timestep grounded Markov logic network with exact
//!   inference, plus Gaussian and LOF baseline detectors.
//! * [`ingest`]: JSON-lines ingestion, grid resampling and a synthetic corpus
//!   generator.
//! * [`metrics`]: classification and similarity metrics.

pub mod activity;
pub mod error;
pub mod fremen;
pub mod inference;
pub mod ingest;
pub mod metrics;
pub mod model;
pub mod series;
pub mod wavelet;

pub use error::{Error, Result};
pub use series::SensorSeries;
