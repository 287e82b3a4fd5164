//! Mode sets for densities that may jump at breakpoints.
//!
//! A discontinuous density need not attain its supremum, so modes are
//! allowed to sit at one-sided limits `c_i - 0` / `c_i + 0`, at a
//! half-weighted pair of both, at a breakpoint itself, or on a whole piece
//! where the density is flat at the supremum. Which breakpoint values take
//! part is fixed by a [`ModeConvention`].

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::model::{PiecewiseLinearDensity, PolygonalDensity};

/// Relative tolerance for "equals the supremum".
pub const MODE_TOLERANCE: f64 = 1e-12;

/// Which breakpoint values compete for the supremum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModeConvention {
    /// `f(c_i)`, `L_i` and `R_i`.
    PointAndLimits,
    /// `f(c_i)` and `(L_i + R_i) / 2`.
    PointAndMeanLimits,
    /// `L_i` and `R_i` only; point values are ignored.
    #[default]
    LimitsOnly,
    /// `(L_i + R_i) / 2` only.
    MeanLimitsOnly,
}

impl ModeConvention {
    pub const ALL: [ModeConvention; 4] = [
        ModeConvention::PointAndLimits,
        ModeConvention::PointAndMeanLimits,
        ModeConvention::LimitsOnly,
        ModeConvention::MeanLimitsOnly,
    ];

    fn uses_points(self) -> bool {
        matches!(
            self,
            ModeConvention::PointAndLimits | ModeConvention::PointAndMeanLimits
        )
    }

    fn uses_limits(self) -> bool {
        matches!(
            self,
            ModeConvention::PointAndLimits | ModeConvention::LimitsOnly
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModeConvention::PointAndLimits => "point_and_limits",
            ModeConvention::PointAndMeanLimits => "point_and_mean_limits",
            ModeConvention::LimitsOnly => "limits_only",
            ModeConvention::MeanLimitsOnly => "mean_limits_only",
        }
    }
}

impl fmt::Display for ModeConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Returned when a convention name is not recognised.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownConvention;

impl fmt::Display for UnknownConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown mode convention")
    }
}

impl FromStr for ModeConvention {
    type Err = UnknownConvention;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModeConvention::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or(UnknownConvention)
    }
}

/// Where a mode sits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeLocus {
    /// The breakpoint or vertex itself.
    Point(f64),
    /// `c_i - 0`: approached from the left.
    LeftLimit(f64),
    /// `c_i + 0`: approached from the right.
    RightLimit(f64),
    /// `c_i - 0` and `c_i + 0`, each carrying weight one half.
    HalfHalfPair(f64),
    /// A piece on which the density equals the supremum.
    OpenInterval(f64, f64),
    /// A plateau of a continuous density, endpoints included.
    ClosedInterval(f64, f64),
}

impl ModeLocus {
    /// Closed hull of the locus.
    pub fn span(&self) -> (f64, f64) {
        match *self {
            ModeLocus::Point(x)
            | ModeLocus::LeftLimit(x)
            | ModeLocus::RightLimit(x)
            | ModeLocus::HalfHalfPair(x) => (x, x),
            ModeLocus::OpenInterval(a, b) | ModeLocus::ClosedInterval(a, b) => (a, b),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeSet {
    pub f_sup: f64,
    pub convention: ModeConvention,
    pub loci: Vec<ModeLocus>,
}

impl ModeSet {
    /// Loci merged into disjoint closed intervals, sorted.
    pub fn closure(&self) -> Vec<(f64, f64)> {
        let mut spans: Vec<(f64, f64)> = self.loci.iter().map(ModeLocus::span).collect();
        spans.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(spans.len());
        for (a, b) in spans {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        merged
    }
}

fn attains(value: f64, sup: f64) -> bool {
    (value - sup).abs() <= MODE_TOLERANCE * sup.abs()
}

impl PiecewiseLinearDensity {
    fn breakpoint_candidates(&self, i: usize, convention: ModeConvention) -> f64 {
        let (l, r) = (self.left_limit(i), self.right_limit(i));
        let mut best = f64::NEG_INFINITY;
        if convention.uses_points() {
            best = best.max(self.point_value(i));
        }
        if convention.uses_limits() {
            best = best.max(l).max(r);
        } else {
            best = best.max((l + r) / 2.0);
        }
        best
    }

    /// Supremum value under `convention`. Inside a piece the density is
    /// linear, so scanning breakpoints is enough.
    pub fn f_sup(&self, convention: ModeConvention) -> f64 {
        (0..self.breakpoints().len())
            .map(|i| self.breakpoint_candidates(i, convention))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mode_set(&self, convention: ModeConvention) -> ModeSet {
        let sup = self.f_sup(convention);
        let c = self.breakpoints();
        let mut loci = Vec::new();
        for (i, &x) in c.iter().enumerate() {
            let (l, r) = (self.left_limit(i), self.right_limit(i));
            let at_point = convention.uses_points() && attains(self.point_value(i), sup);
            if convention.uses_limits() {
                let (at_left, at_right) = (attains(l, sup), attains(r, sup));
                if at_left && at_right {
                    loci.push(ModeLocus::Point(x));
                } else {
                    if at_point {
                        loci.push(ModeLocus::Point(x));
                    }
                    if at_left {
                        loci.push(ModeLocus::LeftLimit(x));
                    }
                    if at_right {
                        loci.push(ModeLocus::RightLimit(x));
                    }
                }
            } else {
                if at_point {
                    loci.push(ModeLocus::Point(x));
                }
                if attains((l + r) / 2.0, sup) {
                    loci.push(ModeLocus::HalfHalfPair(x));
                }
            }
            if i + 1 < c.len() && attains(r, sup) && attains(self.left_limit(i + 1), sup) {
                loci.push(ModeLocus::OpenInterval(x, c[i + 1]));
            }
        }
        ModeSet {
            f_sup: sup,
            convention,
            loci,
        }
    }
}

impl PolygonalDensity {
    /// Modes of the continuous density: argmax vertices, with runs of
    /// adjacent argmax vertices merged into closed plateaus.
    pub fn mode_set_continuous(&self) -> ModeSet {
        let (c, h) = (self.breakpoints(), self.heights());
        let sup = h.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut loci = Vec::new();
        let mut i = 0;
        while i < h.len() {
            if !attains(h[i], sup) {
                i += 1;
                continue;
            }
            let start = i;
            while i + 1 < h.len() && attains(h[i + 1], sup) {
                i += 1;
            }
            if c[start] == c[i] {
                loci.push(ModeLocus::Point(c[start]));
            } else {
                loci.push(ModeLocus::ClosedInterval(c[start], c[i]));
            }
            i += 1;
        }
        ModeSet {
            f_sup: sup,
            convention: ModeConvention::LimitsOnly,
            loci,
        }
    }
}
