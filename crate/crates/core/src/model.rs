//! Density data types, validation, canonicalization and normalization.
//!
//! A piecewise-linear density on `[c_0, c_{n+1}]` is described by its
//! breakpoints `c_0 <= c_1 <= ... <= c_{n+1}`, the right-hand limits
//! `R_0 ..= R_n` at the left end of each piece and the left-hand limits
//! `L_1 ..= L_{n+1}` at the right end of each piece. Outside the support
//! the density is zero, so `L_0 = R_{n+1} = 0` are implicit and never stored.
//!
//! Coincident breakpoints are accepted on input and removed by
//! [`RawDensity::canonicalize`]; every [`PiecewiseLinearDensity`] holds a
//! strictly increasing grid.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A density is treated as normalized when `|raw_mass - 1| <= NORMALIZATION_TOLERANCE`.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

fn check_values(field: &'static str, values: &[f64]) -> Result<()> {
    for (index, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite { field, index });
        }
        if v < 0.0 {
            return Err(Error::NegativeValue { field, index });
        }
    }
    Ok(())
}

fn check_len(field: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::LengthMismatch {
            field,
            expected,
            found,
        });
    }
    Ok(())
}

/// Trapezoid area of one piece.
#[inline]
pub(crate) fn piece_mass(right: f64, left: f64, width: f64) -> f64 {
    (right + left) * width / 2.0
}

/// Nondecreasing breakpoints `c_0 ..= c_{n+1}` with `c_0 < c_{n+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(Vec<f64>);

impl Grid {
    pub fn new(breakpoints: Vec<f64>) -> Result<Self> {
        for (index, c) in breakpoints.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFinite {
                    field: "breakpoints",
                    index,
                });
            }
        }
        if breakpoints.len() < 2 {
            return Err(Error::EmptySupport);
        }
        for index in 1..breakpoints.len() {
            if breakpoints[index] < breakpoints[index - 1] {
                return Err(Error::NotNondecreasing { index });
            }
        }
        if breakpoints[0] == breakpoints[breakpoints.len() - 1] {
            return Err(Error::EmptySupport);
        }
        Ok(Grid(breakpoints))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Number of intermediate points `n`.
    pub fn intermediate_count(&self) -> usize {
        self.0.len() - 2
    }

    /// Number of pieces `n + 1`.
    pub fn pieces(&self) -> usize {
        self.0.len() - 1
    }

    pub fn start(&self) -> f64 {
        self.0[0]
    }

    pub fn end(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    pub fn contains(&self, x: f64) -> bool {
        self.start() <= x && x <= self.end()
    }
}

/// How `f(c_i)` is defined at a breakpoint, where the density may jump.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum PointValues {
    /// `f(c_i) = max{L_i, R_i}`.
    #[default]
    MaxOfLimits,
    /// `f(c_i) = (L_i + R_i) / 2`.
    MeanOfLimits,
    /// Explicit values, one per breakpoint.
    Given(Vec<f64>),
}

/// Scaling factor produced by normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationReport {
    /// Integral of the input function over its support.
    pub raw_mass: f64,
    /// `k = 2 / sum (R'_i + L'_{i+1})(c_{i+1} - c_i) = 1 / raw_mass`.
    pub factor_k: f64,
}

/// Unchecked density description, as read from a file or built by hand.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawDensity {
    pub breakpoints: Vec<f64>,
    /// `R_0 ..= R_n`.
    pub right_limits: Vec<f64>,
    /// `L_1 ..= L_{n+1}`.
    pub left_limits: Vec<f64>,
    /// Optional `f(c_0) ..= f(c_{n+1})`.
    pub point_values: Option<Vec<f64>>,
}

impl RawDensity {
    pub fn new(breakpoints: Vec<f64>, right_limits: Vec<f64>, left_limits: Vec<f64>) -> Self {
        RawDensity {
            breakpoints,
            right_limits,
            left_limits,
            point_values: None,
        }
    }

    pub fn with_point_values(mut self, values: Vec<f64>) -> Self {
        self.point_values = Some(values);
        self
    }

    fn check(&self) -> Result<Grid> {
        let grid = Grid::new(self.breakpoints.clone())?;
        let pieces = grid.pieces();
        check_len("right_limits", pieces, self.right_limits.len())?;
        check_len("left_limits", pieces, self.left_limits.len())?;
        check_values("right_limits", &self.right_limits)?;
        check_values("left_limits", &self.left_limits)?;
        if let Some(points) = &self.point_values {
            check_len("point_values", pieces + 1, points.len())?;
            check_values("point_values", points)?;
        }
        Ok(grid)
    }

    /// Trapezoid-area sum `sum (R_i + L_{i+1})(c_{i+1} - c_i) / 2`.
    pub fn raw_mass(&self) -> Result<f64> {
        self.check()?;
        Ok(self
            .breakpoints
            .windows(2)
            .zip(self.right_limits.iter().zip(&self.left_limits))
            .map(|(c, (&r, &l))| piece_mass(r, l, c[1] - c[0]))
            .sum())
    }

    /// Drops zero-length pieces.
    ///
    /// At a run of coincident breakpoints the surviving left limit is the
    /// one at the first point of the run and the surviving right limit is
    /// the one at the last point. Explicit point values in the run merge
    /// to their maximum.
    pub fn canonicalize(&self) -> Result<RawDensity> {
        self.check()?;
        Ok(canonical_parts(
            &self.breakpoints,
            &self.right_limits,
            &self.left_limits,
            self.point_values.as_deref(),
        ))
    }

    /// Checks the description and returns the canonical density.
    pub fn validate(&self) -> Result<PiecewiseLinearDensity> {
        let canon = self.canonicalize()?;
        let points = match canon.point_values {
            Some(v) => PointValues::Given(v),
            None => PointValues::MaxOfLimits,
        };
        Ok(PiecewiseLinearDensity::from_canonical(
            Grid(canon.breakpoints),
            canon.right_limits,
            canon.left_limits,
            points,
        ))
    }
}

fn canonical_parts(
    breakpoints: &[f64],
    right: &[f64],
    left: &[f64],
    points: Option<&[f64]>,
) -> RawDensity {
    // Runs of equal breakpoints as inclusive (first, last) index pairs.
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for (i, &c) in breakpoints.iter().enumerate() {
        match runs.last_mut() {
            Some(run) if breakpoints[run.1] == c => run.1 = i,
            _ => runs.push((i, i)),
        }
    }

    let mut out = RawDensity {
        breakpoints: Vec::with_capacity(runs.len()),
        right_limits: Vec::with_capacity(runs.len() - 1),
        left_limits: Vec::with_capacity(runs.len() - 1),
        point_values: points.map(|_| Vec::with_capacity(runs.len())),
    };
    let last = runs.len() - 1;
    for (k, &(first, end)) in runs.iter().enumerate() {
        out.breakpoints.push(breakpoints[first]);
        if k < last {
            out.right_limits.push(right[end]);
        }
        if k > 0 {
            // left[i - 1] stores L_i
            out.left_limits.push(left[first - 1]);
        }
        if let (Some(src), Some(dst)) = (points, out.point_values.as_mut()) {
            let merged = src[first..=end].iter().copied().fold(0.0, f64::max);
            dst.push(merged);
        }
    }
    out
}

/// A validated piecewise-linear density on a strictly increasing grid.
///
/// The value need not have unit mass; statistical queries check for that
/// and fail with [`Error::NotNormalized`] otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearDensity {
    grid: Grid,
    right: Vec<f64>,
    left: Vec<f64>,
    points: PointValues,
    /// `M_i = F(c_i)`, prefix sums of piece masses.
    cumulative: Vec<f64>,
}

impl PiecewiseLinearDensity {
    /// Builds a density from breakpoints and one-sided limits.
    pub fn new(breakpoints: Vec<f64>, right_limits: Vec<f64>, left_limits: Vec<f64>) -> Result<Self> {
        RawDensity::new(breakpoints, right_limits, left_limits).validate()
    }

    fn from_canonical(grid: Grid, right: Vec<f64>, left: Vec<f64>, points: PointValues) -> Self {
        let c = grid.as_slice();
        let mut cumulative = Vec::with_capacity(c.len());
        let mut acc = 0.0;
        cumulative.push(acc);
        for i in 0..right.len() {
            acc += piece_mass(right[i], left[i], c[i + 1] - c[i]);
            cumulative.push(acc);
        }
        PiecewiseLinearDensity {
            grid,
            right,
            left,
            points,
            cumulative,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn breakpoints(&self) -> &[f64] {
        self.grid.as_slice()
    }

    /// `R_0 ..= R_n`.
    pub fn right_limits(&self) -> &[f64] {
        &self.right
    }

    /// `L_1 ..= L_{n+1}`.
    pub fn left_limits(&self) -> &[f64] {
        &self.left
    }

    pub fn pieces(&self) -> usize {
        self.right.len()
    }

    pub fn support(&self) -> (f64, f64) {
        (self.grid.start(), self.grid.end())
    }

    /// `L_i` for `i` in `0 ..= n+1`; `L_0 = 0`.
    pub fn left_limit(&self, i: usize) -> f64 {
        if i == 0 {
            0.0
        } else {
            self.left[i - 1]
        }
    }

    /// `R_i` for `i` in `0 ..= n+1`; `R_{n+1} = 0`.
    pub fn right_limit(&self, i: usize) -> f64 {
        self.right.get(i).copied().unwrap_or(0.0)
    }

    /// `f(c_i)` under the density's point-value rule.
    pub fn point_value(&self, i: usize) -> f64 {
        match &self.points {
            PointValues::MaxOfLimits => self.left_limit(i).max(self.right_limit(i)),
            PointValues::MeanOfLimits => (self.left_limit(i) + self.right_limit(i)) / 2.0,
            PointValues::Given(v) => v[i],
        }
    }

    pub fn point_values(&self) -> &PointValues {
        &self.points
    }

    /// Replaces the point-value rule. Given values must match the canonical grid.
    pub fn with_point_values(mut self, points: PointValues) -> Result<Self> {
        if let PointValues::Given(v) = &points {
            check_len("point_values", self.grid.as_slice().len(), v.len())?;
            check_values("point_values", v)?;
        }
        self.points = points;
        Ok(self)
    }

    /// Prefix masses `M_0 ..= M_{n+1}`.
    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    /// `sum (R_i + L_{i+1})(c_{i+1} - c_i) / 2`.
    pub fn raw_mass(&self) -> f64 {
        self.cumulative[self.cumulative.len() - 1]
    }

    pub fn is_normalized(&self) -> bool {
        (self.raw_mass() - 1.0).abs() <= NORMALIZATION_TOLERANCE
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized {
                mass: self.raw_mass(),
            })
        }
    }

    /// Multiplies every limit and point value by `factor > 0`.
    pub fn scale(&self, factor: f64) -> Result<Self> {
        if !factor.is_finite() {
            return Err(Error::NonFinite {
                field: "factor",
                index: 0,
            });
        }
        if factor <= 0.0 {
            return Err(Error::NegativeValue {
                field: "factor",
                index: 0,
            });
        }
        let points = match &self.points {
            PointValues::Given(v) => PointValues::Given(v.iter().map(|p| p * factor).collect()),
            other => other.clone(),
        };
        Ok(Self::from_canonical(
            self.grid.clone(),
            self.right.iter().map(|r| r * factor).collect(),
            self.left.iter().map(|l| l * factor).collect(),
            points,
        ))
    }

    /// Rescales by `k = 2 / sum (R'_i + L'_{i+1})(c_{i+1} - c_i)`.
    pub fn normalize(&self) -> Result<(Self, NormalizationReport)> {
        let raw_mass = self.raw_mass();
        if raw_mass <= 0.0 || !raw_mass.is_finite() {
            return Err(Error::ZeroMass);
        }
        let factor_k = 2.0 / (2.0 * raw_mass);
        let scaled = self.scale(factor_k)?;
        Ok((scaled, NormalizationReport { raw_mass, factor_k }))
    }
}

/// Continuous piecewise-linear density given by vertex heights `H_0 ..= H_{n+1}`.
///
/// `H_0 = H_{n+1} = 0`. Coincident breakpoints are allowed here; they turn
/// into jumps once the density is promoted.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonalDensity {
    grid: Grid,
    heights: Vec<f64>,
}

impl PolygonalDensity {
    pub fn new(breakpoints: Vec<f64>, heights: Vec<f64>) -> Result<Self> {
        let grid = Grid::new(breakpoints)?;
        check_len("heights", grid.as_slice().len(), heights.len())?;
        check_values("heights", &heights)?;
        if heights[0] != 0.0 {
            return Err(Error::NonZeroEndpoint { index: 0 });
        }
        let last = heights.len() - 1;
        if heights[last] != 0.0 {
            return Err(Error::NonZeroEndpoint { index: last });
        }
        Ok(PolygonalDensity { grid, heights })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn breakpoints(&self) -> &[f64] {
        self.grid.as_slice()
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    /// Vertex-form mass `sum_{i=1}^{n} H_i (c_{i+1} - c_{i-1}) / 2`.
    pub fn raw_mass(&self) -> f64 {
        self.vertex_sum() / 2.0
    }

    fn vertex_sum(&self) -> f64 {
        let c = self.breakpoints();
        (1..c.len() - 1)
            .map(|i| self.heights[i] * (c[i + 1] - c[i - 1]))
            .sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.raw_mass() - 1.0).abs() <= NORMALIZATION_TOLERANCE
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized {
                mass: self.raw_mass(),
            })
        }
    }

    /// Rescales the heights by `k = 2 / sum H'_i (c_{i+1} - c_{i-1})`.
    pub fn normalize(&self) -> Result<(Self, NormalizationReport)> {
        let sum = self.vertex_sum();
        if sum <= 0.0 || !sum.is_finite() {
            return Err(Error::ZeroMass);
        }
        let factor_k = 2.0 / sum;
        let heights = self.heights.iter().map(|h| h * factor_k).collect();
        Ok((
            PolygonalDensity {
                grid: self.grid.clone(),
                heights,
            },
            NormalizationReport {
                raw_mass: sum / 2.0,
                factor_k,
            },
        ))
    }

    /// The same density with `R_i = L_i = f(c_i) = H_i`.
    pub fn promote(&self) -> PiecewiseLinearDensity {
        let h = &self.heights;
        let last = h.len() - 1;
        let canon = canonical_parts(self.breakpoints(), &h[..last], &h[1..], Some(h));
        PiecewiseLinearDensity::from_canonical(
            Grid(canon.breakpoints),
            canon.right_limits,
            canon.left_limits,
            PointValues::Given(canon.point_values.unwrap_or_default()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn uniform_is_valid_with_unit_mass() {
        let d = PiecewiseLinearDensity::new(vec![0.0, 1.0], vec![1.0], vec![1.0]).unwrap();
        assert_eq!(d.raw_mass(), 1.0);
        assert!(d.is_normalized());
    }

    #[test]
    fn triangle_has_unit_mass() {
        let d = PiecewiseLinearDensity::new(vec![0.0, 0.5, 1.0], vec![0.0, 2.0], vec![2.0, 0.0])
            .unwrap();
        assert_eq!(d.raw_mass(), 1.0);
    }

    #[test]
    fn validation_errors() {
        let neg = PiecewiseLinearDensity::new(vec![0.0, 1.0], vec![-1.0], vec![1.0]);
        assert_eq!(
            neg,
            Err(Error::NegativeValue {
                field: "right_limits",
                index: 0
            })
        );
        let short = PiecewiseLinearDensity::new(vec![0.0, 1.0, 2.0], vec![1.0], vec![1.0, 1.0]);
        assert!(matches!(short, Err(Error::LengthMismatch { field: "right_limits", .. })));
        assert_eq!(
            PiecewiseLinearDensity::new(vec![1.0, 1.0], vec![1.0], vec![1.0]),
            Err(Error::EmptySupport)
        );
        assert_eq!(
            PiecewiseLinearDensity::new(vec![1.0], vec![], vec![]),
            Err(Error::EmptySupport)
        );
        assert_eq!(
            PiecewiseLinearDensity::new(vec![0.0, 2.0, 1.0], vec![1.0, 1.0], vec![1.0, 1.0]),
            Err(Error::NotNondecreasing { index: 2 })
        );
        assert!(matches!(
            PiecewiseLinearDensity::new(vec![0.0, f64::NAN], vec![1.0], vec![1.0]),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn raw_mass_of_two_rectangles() {
        let d = PiecewiseLinearDensity::new(vec![0.0, 1.0, 2.0], vec![1.5, 0.5], vec![1.5, 0.5])
            .unwrap();
        assert_eq!(d.raw_mass(), 2.0);
    }

    #[test]
    fn normalize_halves_two_rectangles() {
        let d = PiecewiseLinearDensity::new(vec![0.0, 1.0, 2.0], vec![1.5, 0.5], vec![1.5, 0.5])
            .unwrap();
        let (n, report) = d.normalize().unwrap();
        assert_eq!(report.factor_k, 0.5);
        assert_eq!(report.raw_mass, 2.0);
        assert_eq!(n.right_limits(), &[0.75, 0.25]);
        assert_eq!(n.left_limits(), &[0.75, 0.25]);
        assert_eq!(n.breakpoints(), d.breakpoints());
    }

    #[test]
    fn normalize_identity_and_zero_mass() {
        let u = PiecewiseLinearDensity::new(vec![0.0, 1.0], vec![1.0], vec![1.0]).unwrap();
        let (n, report) = u.normalize().unwrap();
        assert_eq!(report.factor_k, 1.0);
        assert_eq!(n, u);
        let z = PiecewiseLinearDensity::new(vec![0.0, 1.0], vec![0.0], vec![0.0]).unwrap();
        assert_eq!(z.normalize().unwrap_err(), Error::ZeroMass);
    }

    #[test]
    fn polygonal_normalization_scales_apex() {
        let p = PolygonalDensity::new(vec![0.0, 0.5, 1.0], vec![0.0, 1.0, 0.0]).unwrap();
        let (n, report) = p.normalize().unwrap();
        assert_eq!(report.factor_k, 2.0);
        assert_eq!(n.heights(), &[0.0, 2.0, 0.0]);
    }

    #[test]
    fn polygonal_rejects_nonzero_ends() {
        assert_eq!(
            PolygonalDensity::new(vec![0.0, 1.0], vec![1.0, 0.0]),
            Err(Error::NonZeroEndpoint { index: 0 })
        );
        assert_eq!(
            PolygonalDensity::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 1.0]),
            Err(Error::NonZeroEndpoint { index: 2 })
        );
    }

    #[test]
    fn promote_copies_heights() {
        let p = PolygonalDensity::new(vec![0.0, 0.5, 1.0], vec![0.0, 2.0, 0.0]).unwrap();
        let d = p.promote();
        assert_eq!(d.right_limits(), &[0.0, 2.0]);
        assert_eq!(d.left_limits(), &[2.0, 0.0]);
        assert_eq!(d.point_values(), &PointValues::Given(vec![0.0, 2.0, 0.0]));
    }

    #[test]
    fn promote_two_triangles_keeps_zero_plateau() {
        let p = PolygonalDensity::new(
            vec![0.0, 0.5, 1.0, 2.0, 2.5, 3.0],
            vec![0.0, 1.0, 0.0, 0.0, 1.0, 0.0],
        )
        .unwrap();
        let d = p.promote();
        assert_eq!(d.right_limits(), &[0.0, 1.0, 0.0, 0.0, 1.0]);
        assert_eq!(d.left_limits(), &[1.0, 0.0, 0.0, 1.0, 0.0]);
        assert_eq!(d.raw_mass(), 1.0);
    }

    #[test]
    fn promote_zero_heights_fails_on_normalize() {
        let p = PolygonalDensity::new(vec![0.0, 1.0], vec![0.0, 0.0]).unwrap();
        assert_eq!(p.promote().normalize().unwrap_err(), Error::ZeroMass);
        assert_eq!(p.normalize().unwrap_err(), Error::ZeroMass);
    }

    #[test]
    fn canonicalize_drops_interior_empty_piece() {
        let raw = RawDensity::new(
            vec![0.0, 1.0, 1.0, 2.0],
            vec![0.6, 0.0, 0.4],
            vec![0.6, 0.0, 0.4],
        );
        let c = raw.canonicalize().unwrap();
        assert_eq!(c.breakpoints, vec![0.0, 1.0, 2.0]);
        assert_eq!(c.right_limits, vec![0.6, 0.4]);
        assert_eq!(c.left_limits, vec![0.6, 0.4]);
        assert_eq!(c.raw_mass().unwrap(), 1.0);
    }

    #[test]
    fn canonicalize_drops_leading_empty_piece() {
        let raw = RawDensity::new(vec![0.0, 0.0, 1.0], vec![5.0, 1.0], vec![5.0, 1.0]);
        let c = raw.canonicalize().unwrap();
        assert_eq!(c.breakpoints, vec![0.0, 1.0]);
        assert_eq!(c.right_limits, vec![1.0]);
        assert_eq!(c.left_limits, vec![1.0]);
    }

    #[test]
    fn canonicalize_is_identity_on_strict_grid() {
        let raw = RawDensity::new(vec![0.0, 0.5, 1.0], vec![0.0, 2.0], vec![2.0, 0.0])
            .with_point_values(vec![0.0, 3.0, 0.0]);
        assert_eq!(raw.canonicalize().unwrap(), raw);
    }

    #[test]
    fn canonicalize_merges_point_values_by_max() {
        let raw = RawDensity::new(
            vec![0.0, 1.0, 1.0, 1.0, 2.0],
            vec![1.0, 9.0, 8.0, 0.5],
            vec![1.0, 9.0, 8.0, 0.5],
        )
        .with_point_values(vec![0.0, 0.2, 0.7, 0.1, 0.0]);
        let c = raw.canonicalize().unwrap();
        assert_eq!(c.breakpoints, vec![0.0, 1.0, 2.0]);
        assert_eq!(c.right_limits, vec![1.0, 0.5]);
        assert_eq!(c.left_limits, vec![1.0, 0.5]);
        assert_eq!(c.point_values, Some(vec![0.0, 0.7, 0.0]));
    }

    #[test]
    fn point_value_rules() {
        let d = PiecewiseLinearDensity::new(vec![0.0, 1.0, 2.0], vec![0.75, 0.25], vec![0.75, 0.25])
            .unwrap();
        assert_eq!(d.point_value(1), 0.75);
        assert_eq!(d.point_value(0), 0.75);
        assert_eq!(d.point_value(2), 0.25);
        let d = d.with_point_values(PointValues::MeanOfLimits).unwrap();
        assert_eq!(d.point_value(1), 0.5);
        assert_eq!(d.point_value(0), 0.375);
        assert!(d
            .clone()
            .with_point_values(PointValues::Given(vec![0.0, 1.0]))
            .is_err());
    }
}
