//! Point evaluation of the density and its distribution function.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{Grid, PiecewiseLinearDensity};

/// Index of the piece holding `x`: the largest `j` with `c_j <= x`,
/// clamped to `n` at the right end of the support.
///
/// Pieces are half-open `[c_j, c_{j+1})`. On coincident breakpoints the
/// largest index wins.
pub fn piece_index(grid: &Grid, x: f64) -> Result<usize> {
    if !grid.contains(x) {
        return Err(Error::OutOfSupport { x });
    }
    let c = grid.as_slice();
    let j = c.partition_point(|&ci| ci <= x) - 1;
    Ok(j.min(grid.pieces() - 1))
}

/// `F(c_0) ..= F(c_{n+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfTable {
    pub cumulative: Vec<f64>,
}

/// Mass of `[c_j, c_j + t]` inside a piece of width `width` with end limits
/// `right` (at `c_j`) and `left` (at `c_{j+1}`).
#[inline]
pub(crate) fn partial_mass(right: f64, left: f64, width: f64, t: f64) -> f64 {
    t * (right + (left - right) * t / (2.0 * width))
}

impl PiecewiseLinearDensity {
    /// Density at `x`. Zero outside the support; the point-value rule at breakpoints.
    pub fn pdf(&self, x: f64) -> f64 {
        let c = self.breakpoints();
        let (a, b) = self.support();
        if !(a <= x && x <= b) {
            return 0.0;
        }
        let j = c.partition_point(|&ci| ci <= x) - 1;
        if c[j] == x {
            return self.point_value(j);
        }
        let (r, l) = (self.right_limits()[j], self.left_limits()[j]);
        r + (l - r) * (x - c[j]) / (c[j + 1] - c[j])
    }

    /// `F(x) = P(X <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        let (a, b) = self.support();
        let m = self.cumulative();
        if x.is_nan() {
            return f64::NAN;
        }
        if x <= a {
            return 0.0;
        }
        if x >= b {
            return m[m.len() - 1];
        }
        let c = self.breakpoints();
        let j = c.partition_point(|&ci| ci <= x) - 1;
        let (r, l) = (self.right_limits()[j], self.left_limits()[j]);
        m[j] + partial_mass(r, l, c[j + 1] - c[j], x - c[j])
    }

    pub fn cdf_table(&self) -> CdfTable {
        CdfTable {
            cumulative: self.cumulative().to_vec(),
        }
    }
}
