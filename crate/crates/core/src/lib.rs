//! Piecewise-linear probability densities: validation, normalization,
//! evaluation, exact moments, median and quantile sets, mode sets, the
//! triangular and tetragonal families, and interpolating fits.
//!
//! The crate is `no_std` and only needs an allocator.
//!
//! ```
//! use pwl_density::{triangular, ModeConvention};
//!
//! let d = triangular(0.0, 0.3, 1.0).unwrap().promote();
//! assert!((d.mean().unwrap() - 13.0 / 30.0).abs() < 1e-15);
//! let m = d.median_set().unwrap();
//! assert!((m.v_min - (1.0 - 0.35f64.sqrt())).abs() < 1e-12);
//! assert_eq!(d.f_sup(ModeConvention::LimitsOnly), 2.0);
//! ```

#![no_std]

extern crate alloc;

pub mod approximation;
pub mod error;
pub mod evaluate;
pub mod families;
pub mod model;
pub mod modes;
pub mod moments;
pub mod order_stats;

pub use approximation::{fit, fit_error, FitRequest};
pub use error::{Error, Result};
pub use evaluate::{piece_index, CdfTable};
pub use families::{
    tetragonal, tetragonal_from_weight, tetragonal_stats, triangular, triangular_stats,
    TetragonalParams, TetragonalStats, TriangularParams, TriangularStats,
};
pub use model::{
    Grid, NormalizationReport, PiecewiseLinearDensity, PointValues, PolygonalDensity, RawDensity,
    NORMALIZATION_TOLERANCE,
};
pub use modes::{ModeConvention, ModeLocus, ModeSet, UnknownConvention, MODE_TOLERANCE};
pub use moments::{MomentSummary, MAX_MOMENT_ORDER};
pub use order_stats::{MedianSet, QuantilePreimage, QuantileRule};
