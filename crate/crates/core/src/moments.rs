//! Closed-form mean and variance, plus exact moments of any small order.
//!
//! Mean and variance use the trapezoid-weighted sums over pieces (and the
//! vertex-weighted sums for polygonal densities). Higher moments integrate
//! each piece exactly after translating it so its midpoint sits at the
//! origin, which keeps supports far from zero from cancelling digits.

use crate::error::{Error, Result};
use crate::model::{PiecewiseLinearDensity, PolygonalDensity};

/// Largest order accepted by [`PiecewiseLinearDensity::raw_moment`].
pub const MAX_MOMENT_ORDER: u32 = 12;

/// Mass, location, spread and shape of a density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSummary {
    pub mass: f64,
    pub mean: f64,
    pub variance: f64,
    pub std_dev: f64,
    /// `E[(X - mu)^3] / sigma^3`; NaN when `sigma = 0`.
    pub skewness: f64,
    /// `E[(X - mu)^4] / sigma^4 - 3`; NaN when `sigma = 0`.
    pub excess: f64,
}

fn powi(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, _| acc * x)
}

/// `int_{-h}^{h} u^k du`.
fn symmetric_power_integral(h: f64, k: u32) -> f64 {
    if k % 2 == 1 {
        0.0
    } else {
        2.0 * powi(h, k + 1) / f64::from(k + 1)
    }
}

impl PiecewiseLinearDensity {
    /// `mu = sum (c_{i+1} - c_i)[R_i(2c_i + c_{i+1}) + L_{i+1}(c_i + 2c_{i+1})] / 6`.
    pub fn mean(&self) -> Result<f64> {
        self.require_normalized()?;
        Ok(self.mean_sum())
    }

    fn mean_sum(&self) -> f64 {
        let c = self.breakpoints();
        let (r, l) = (self.right_limits(), self.left_limits());
        (0..self.pieces())
            .map(|i| {
                let (c0, c1) = (c[i], c[i + 1]);
                (c1 - c0) * (r[i] * (2.0 * c0 + c1) + l[i] * (c0 + 2.0 * c1))
            })
            .sum::<f64>()
            / 6.0
    }

    /// Second central moment via the per-piece quadratic-in-`mu` sum.
    ///
    /// The sum is invariant under translation, so it is evaluated on
    /// breakpoints shifted by `mu`, where its `mu` terms vanish and nothing
    /// cancels.
    pub fn variance(&self) -> Result<f64> {
        self.require_normalized()?;
        let mu = self.mean_sum();
        let c = self.breakpoints();
        let (r, l) = (self.right_limits(), self.left_limits());
        let sum: f64 = (0..self.pieces())
            .map(|i| {
                let (c0, c1) = (c[i] - mu, c[i + 1] - mu);
                let right_term = c1 * c1 + 2.0 * c1 * c0 + 3.0 * c0 * c0;
                let left_term = 3.0 * c1 * c1 + 2.0 * c1 * c0 + c0 * c0;
                (c1 - c0) * (r[i] * right_term + l[i] * left_term)
            })
            .sum();
        Ok((sum / 12.0).max(0.0))
    }

    /// `int (x - center)^order f(x) dx`, exact up to rounding.
    pub fn moment_about(&self, order: u32, center: f64) -> Result<f64> {
        if order > MAX_MOMENT_ORDER {
            return Err(Error::OrderTooLarge { order });
        }
        let c = self.breakpoints();
        let (r, l) = (self.right_limits(), self.left_limits());
        let mut total = 0.0;
        for i in 0..self.pieces() {
            let half = (c[i + 1] - c[i]) / 2.0;
            let shift = (c[i] + c[i + 1]) / 2.0 - center;
            // f = level + slope * u on u in [-half, half]
            let level = (r[i] + l[i]) / 2.0;
            let slope = (l[i] - r[i]) / (2.0 * half);
            let mut binom = 1.0;
            let mut piece = 0.0;
            for j in 0..=order {
                let inner = level * symmetric_power_integral(half, j)
                    + slope * symmetric_power_integral(half, j + 1);
                piece += binom * powi(shift, order - j) * inner;
                binom = binom * f64::from(order - j) / f64::from(j + 1);
            }
            total += piece;
        }
        Ok(total)
    }

    /// `E[X^order]`.
    pub fn raw_moment(&self, order: u32) -> Result<f64> {
        self.require_normalized()?;
        self.moment_about(order, 0.0)
    }

    /// `E[(X - mu)^order]`.
    pub fn central_moment(&self, order: u32) -> Result<f64> {
        let mu = self.mean()?;
        self.moment_about(order, mu)
    }

    pub fn summary(&self) -> Result<MomentSummary> {
        let mean = self.mean()?;
        let variance = self.variance()?;
        let std_dev = libm::sqrt(variance);
        let (skewness, excess) = if std_dev > 0.0 {
            let m3 = self.moment_about(3, mean)?;
            let m4 = self.moment_about(4, mean)?;
            (
                m3 / (variance * std_dev),
                m4 / (variance * variance) - 3.0,
            )
        } else {
            (f64::NAN, f64::NAN)
        };
        Ok(MomentSummary {
            mass: self.raw_mass(),
            mean,
            variance,
            std_dev,
            skewness,
            excess,
        })
    }
}

impl PolygonalDensity {
    /// `mu = sum_{i=1}^{n} H_i (c_{i+1} - c_{i-1})(c_{i+1} + c_i + c_{i-1}) / 6`.
    pub fn mean(&self) -> Result<f64> {
        self.require_normalized()?;
        Ok(self.mean_sum())
    }

    fn mean_sum(&self) -> f64 {
        let (c, h) = (self.breakpoints(), self.heights());
        (1..c.len() - 1)
            .map(|i| h[i] * (c[i + 1] - c[i - 1]) * (c[i + 1] + c[i] + c[i - 1]))
            .sum::<f64>()
            / 6.0
    }

    /// Vertex-weighted variance sum, evaluated about `mu` like
    /// [`PiecewiseLinearDensity::variance`].
    pub fn variance(&self) -> Result<f64> {
        self.require_normalized()?;
        let mu = self.mean_sum();
        let (c, h) = (self.breakpoints(), self.heights());
        let sum: f64 = (1..c.len() - 1)
            .map(|i| {
                let (p, q, s) = (c[i - 1] - mu, c[i] - mu, c[i + 1] - mu);
                h[i] * (s - p) * (s * s + q * q + p * p + s * q + s * p + q * p)
            })
            .sum();
        Ok((sum / 12.0).max(0.0))
    }
}
