//! Interpolating polygonal fits of arbitrary target densities.
//!
//! The target is sampled at the grid abscissae, the samples become vertex
//! heights, and the result is rescaled to unit mass.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::PolygonalDensity;

/// Target samples `(x_i, y_i)` to be interpolated.
#[derive(Debug, Clone, PartialEq)]
pub struct FitRequest {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Force the heights at both ends to zero (default). When off, nonzero
    /// end samples are kept as vertical jumps at the support ends.
    pub clamp_endpoints: bool,
}

impl FitRequest {
    pub fn from_samples(points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::TooFewPoints {
                found: points.len(),
            });
        }
        for (index, &(x, y)) in points.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFinite { field: "x", index });
            }
            if !y.is_finite() {
                return Err(Error::NonFinite { field: "y", index });
            }
            if y < 0.0 {
                return Err(Error::NegativeValue { field: "y", index });
            }
            if index > 0 && x <= points[index - 1].0 {
                return Err(Error::NotIncreasing { index });
            }
        }
        Ok(FitRequest {
            xs: points.iter().map(|p| p.0).collect(),
            ys: points.iter().map(|p| p.1).collect(),
            clamp_endpoints: true,
        })
    }

    /// Samples `f` at `pieces + 1` equispaced points of `[lo, hi]`.
    pub fn from_function(lo: f64, hi: f64, pieces: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if pieces < 2 {
            return Err(Error::TooFewPoints { found: pieces + 1 });
        }
        let width = hi - lo;
        let points: Vec<(f64, f64)> = (0..=pieces)
            .map(|i| {
                let x = if i == pieces {
                    hi
                } else {
                    lo + width * i as f64 / pieces as f64
                };
                (x, f(x))
            })
            .collect();
        FitRequest::from_samples(&points)
    }

    pub fn with_clamped_endpoints(mut self, clamp: bool) -> Self {
        self.clamp_endpoints = clamp;
        self
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }
}

/// Normalized polygonal density through the request's samples.
pub fn fit(req: &FitRequest) -> Result<PolygonalDensity> {
    let last = req.ys.len() - 1;
    let mut xs = Vec::with_capacity(req.xs.len() + 2);
    let mut ys = Vec::with_capacity(req.ys.len() + 2);
    if !req.clamp_endpoints && req.ys[0] != 0.0 {
        xs.push(req.xs[0]);
        ys.push(0.0);
    }
    xs.extend_from_slice(&req.xs);
    ys.extend_from_slice(&req.ys);
    if req.clamp_endpoints {
        ys[0] = 0.0;
        let end = ys.len() - 1;
        ys[end] = 0.0;
    } else if req.ys[last] != 0.0 {
        xs.push(req.xs[last]);
        ys.push(0.0);
    }
    let (density, _) = PolygonalDensity::new(xs, ys)?.normalize()?;
    Ok(density)
}

/// Largest `|pdf - target|` over `max(resolution, 10 * pieces) + 1`
/// equispaced points of the support.
pub fn fit_error(p: &PolygonalDensity, target: impl Fn(f64) -> f64, resolution: usize) -> f64 {
    let d = p.promote();
    let (a, b) = d.support();
    let steps = resolution.max(10 * p.grid().pieces()).max(1);
    (0..=steps)
        .map(|i| {
            let x = if i == steps {
                b
            } else {
                a + (b - a) * i as f64 / steps as f64
            };
            (d.pdf(x) - target(x)).abs()
        })
        .fold(0.0, f64::max)
}
