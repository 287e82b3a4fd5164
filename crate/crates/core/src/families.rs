//! Triangular and tetragonal (trapezoid-like) densities with closed-form
//! statistics.
//!
//! A tetragonal density rises linearly from `a` to height `C` at `c`, runs
//! linearly to height `D` at `d`, then falls to zero at `b`. With `c = d`
//! and `C = D` it is the triangular density.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{PolygonalDensity, NORMALIZATION_TOLERANCE};

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn check_finite(values: &[f64], field: &'static str) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { field, index }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangularParams {
    pub a: f64,
    /// Apex.
    pub c: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangularStats {
    pub mean: f64,
    pub variance: f64,
    pub median: f64,
    pub mode: f64,
}

impl TriangularParams {
    pub fn new(a: f64, c: f64, b: f64) -> Result<Self> {
        check_finite(&[a, c, b], "triangular")?;
        if !(a <= c && c <= b && a < b) {
            return Err(Error::BadOrder);
        }
        Ok(TriangularParams { a, c, b })
    }

    /// `C = 2 / (b - a)`.
    pub fn apex_height(&self) -> f64 {
        2.0 / (self.b - self.a)
    }

    pub fn density(&self) -> PolygonalDensity {
        PolygonalDensity::new(
            vec![self.a, self.c, self.b],
            vec![0.0, self.apex_height(), 0.0],
        )
        .expect("validated triangular parameters")
    }

    pub fn mean(&self) -> f64 {
        (self.a + self.b + self.c) / 3.0
    }

    pub fn variance(&self) -> f64 {
        let TriangularParams { a, c, b } = *self;
        (a * a + b * b + c * c - a * b - a * c - b * c) / 18.0
    }

    /// Single expression covering apex left of, at, and right of the midpoint.
    pub fn median(&self) -> f64 {
        let TriangularParams { a, c, b } = *self;
        let skew = 2.0 * c - a - b;
        let root = libm::sqrt((b - a) * (b - a + skew.abs()));
        (a + b) / 2.0 + (root + a - b) / 2.0 * sign(skew)
    }

    pub fn stats(&self) -> TriangularStats {
        TriangularStats {
            mean: self.mean(),
            variance: self.variance(),
            median: self.median(),
            mode: self.c,
        }
    }
}

pub fn triangular(a: f64, c: f64, b: f64) -> Result<PolygonalDensity> {
    Ok(TriangularParams::new(a, c, b)?.density())
}

pub fn triangular_stats(params: &TriangularParams) -> Result<TriangularStats> {
    let checked = TriangularParams::new(params.a, params.c, params.b)?;
    Ok(checked.stats())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TetragonalParams {
    pub a: f64,
    pub c: f64,
    pub d: f64,
    pub b: f64,
    /// Height at `c`.
    pub c_height: f64,
    /// Height at `d`.
    pub d_height: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TetragonalStats {
    pub mean: f64,
    pub variance: f64,
    pub median: f64,
    pub modes: Vec<f64>,
}

fn check_tetragonal_order(a: f64, c: f64, d: f64, b: f64) -> Result<()> {
    check_finite(&[a, c, d, b], "tetragonal")?;
    if !(a <= c && c <= d && d <= b && a < b) {
        return Err(Error::BadOrder);
    }
    Ok(())
}

impl TetragonalParams {
    /// Heights taken as given; see [`TetragonalParams::normalized`].
    pub fn new(a: f64, c: f64, d: f64, b: f64, c_height: f64, d_height: f64) -> Result<Self> {
        check_tetragonal_order(a, c, d, b)?;
        check_finite(&[c_height, d_height], "heights")?;
        for (index, h) in [c_height, d_height].into_iter().enumerate() {
            if h < 0.0 {
                return Err(Error::NegativeValue {
                    field: "heights",
                    index,
                });
            }
        }
        Ok(TetragonalParams {
            a,
            c,
            d,
            b,
            c_height,
            d_height,
        })
    }

    /// Rescales `C'`, `D'` by `k = 2 / [C'(d - a) + D'(b - c)]`.
    pub fn normalized(a: f64, c: f64, d: f64, b: f64, c_raw: f64, d_raw: f64) -> Result<Self> {
        let raw = TetragonalParams::new(a, c, d, b, c_raw, d_raw)?;
        let den = c_raw * (d - a) + d_raw * (b - c);
        if den.is_nan() || den <= 0.0 {
            return Err(Error::ZeroMass);
        }
        let k = 2.0 / den;
        Ok(TetragonalParams {
            c_height: k * raw.c_height,
            d_height: k * raw.d_height,
            ..raw
        })
    }

    /// `C = 2w / den`, `D = 2(1 - w) / den` with `den = w(d - a) + (1 - w)(b - c)`.
    pub fn from_weight(a: f64, c: f64, d: f64, b: f64, w: f64) -> Result<Self> {
        check_tetragonal_order(a, c, d, b)?;
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::BadWeight { w });
        }
        let den = w * (d - a) + (1.0 - w) * (b - c);
        if den.is_nan() || den <= 0.0 {
            return Err(Error::ZeroMass);
        }
        TetragonalParams::new(a, c, d, b, 2.0 * w / den, 2.0 * (1.0 - w) / den)
    }

    /// `w = C / (C + D)`.
    pub fn weight(&self) -> f64 {
        self.c_height / (self.c_height + self.d_height)
    }

    /// `alpha = w / (1 - w)`; undefined at `w = 1`.
    pub fn alpha(&self) -> Option<f64> {
        let w = self.weight();
        (w < 1.0).then(|| w / (1.0 - w))
    }

    /// `C(d - a) + D(b - c)`, which is 2 for a normalized density.
    pub fn normalization_sum(&self) -> f64 {
        self.c_height * (self.d - self.a) + self.d_height * (self.b - self.c)
    }

    pub fn is_normalized(&self) -> bool {
        (self.normalization_sum() - 2.0).abs() <= 2.0 * NORMALIZATION_TOLERANCE
    }

    fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized {
                mass: self.normalization_sum() / 2.0,
            })
        }
    }

    pub fn density(&self) -> PolygonalDensity {
        PolygonalDensity::new(
            vec![self.a, self.c, self.d, self.b],
            vec![0.0, self.c_height, self.d_height, 0.0],
        )
        .expect("validated tetragonal parameters")
    }

    /// `[C(d - a)(a + c + d) + D(b - c)(b + c + d)] / 6`.
    pub fn mean(&self) -> f64 {
        let TetragonalParams { a, c, d, b, .. } = *self;
        (self.c_height * (d - a) * (a + c + d) + self.d_height * (b - c) * (b + c + d)) / 6.0
    }

    /// Mean written through `alpha`; `None` when `w = 1`.
    pub fn mean_alpha_form(&self) -> Option<f64> {
        let TetragonalParams { a, c, d, b, .. } = *self;
        let alpha = self.alpha()?;
        Some(
            (alpha * (d - a) * (a + c + d) + (b - c) * (b + c + d))
                / (3.0 * (alpha * (d - a) + b - c)),
        )
    }

    /// Mean written through the weight `w`; defined for every `w` in `[0, 1]`.
    pub fn mean_weight_form(&self) -> f64 {
        let TetragonalParams { a, c, d, b, .. } = *self;
        let w = self.weight();
        (w * (d - a) * (a + c + d) + (1.0 - w) * (b - c) * (b + c + d))
            / (3.0 * (w * (d - a) + (1.0 - w) * (b - c)))
    }

    /// Evaluated on corners shifted by the mean, where the `mu` terms vanish.
    pub fn variance(&self) -> f64 {
        let mu = self.mean();
        let (a, c, d, b) = (self.a - mu, self.c - mu, self.d - mu, self.b - mu);
        let left = a * a + c * c + d * d + a * c + a * d + c * d;
        let right = b * b + c * c + d * d + b * c + b * d + c * d;
        ((self.c_height * (d - a) * left + self.d_height * (b - c) * right) / 12.0).max(0.0)
    }

    /// `F(v)` for `v` in `[c, d]`.
    fn middle_cdf(&self, v: f64) -> f64 {
        let TetragonalParams { a, c, d, .. } = *self;
        let (ch, dh) = (self.c_height, self.d_height);
        ch * (c - a) / 2.0
            + ((ch * d - dh * c) * (v - c) + (dh - ch) * (v * v - c * c) / 2.0) / (d - c)
    }

    pub fn median(&self) -> f64 {
        let TetragonalParams { a, c, d, b, .. } = *self;
        let (ch, dh) = (self.c_height, self.d_height);
        let left_mass = ch * (c - a);
        let right_mass = dh * (b - d);
        if left_mass > 1.0 {
            return a + libm::sqrt((c - a) / ch);
        }
        if left_mass == 1.0 {
            return c;
        }
        if right_mass > 1.0 {
            return b - libm::sqrt((b - d) / dh);
        }
        if right_mass == 1.0 {
            return d;
        }
        if c == d {
            return c;
        }
        if ch == dh {
            return 1.0 / (2.0 * ch) + (a + c) / 2.0;
        }
        let qa = dh - ch;
        let qb = 2.0 * (ch * d - dh * c);
        let qc = ch * (c - a) * (d - c) - 2.0 * (ch * d - dh * c) * c - (dh - ch) * c * c + c - d;
        let disc = (qb * qb - 4.0 * qa * qc).max(0.0);
        let q = -(qb + sign_or_one(qb) * libm::sqrt(disc)) / 2.0;
        let roots = [q / qa, qc / q];
        let residual = |v: f64| (self.middle_cdf(v) - 0.5).abs();
        let inside: Vec<f64> = roots
            .iter()
            .copied()
            .filter(|v| v.is_finite() && c <= *v && *v <= d)
            .collect();
        let pool: Vec<f64> = if inside.is_empty() {
            roots
                .iter()
                .filter(|v| v.is_finite())
                .map(|v| v.clamp(c, d))
                .collect()
        } else {
            inside
        };
        pool.into_iter()
            .min_by(|x, y| residual(*x).total_cmp(&residual(*y)))
            .unwrap_or((c + d) / 2.0)
    }

    /// The equal-heights median derived from each end:
    /// `(1/(2C) + (a + c)/2, (b + d)/2 - 1/(2C))`. `None` unless `C = D`.
    pub fn equal_height_medians(&self) -> Option<(f64, f64)> {
        if self.c_height != self.d_height || self.c_height <= 0.0 {
            return None;
        }
        let inv = 1.0 / (2.0 * self.c_height);
        Some((inv + (self.a + self.c) / 2.0, (self.b + self.d) / 2.0 - inv))
    }

    pub fn modes(&self) -> Vec<f64> {
        let (ch, dh) = (self.c_height, self.d_height);
        if (ch - dh).abs() <= 1e-12 * ch.max(dh) {
            if self.c == self.d {
                vec![self.c]
            } else {
                vec![self.c, self.d]
            }
        } else if ch > dh {
            vec![self.c]
        } else {
            vec![self.d]
        }
    }

    pub fn stats(&self) -> Result<TetragonalStats> {
        self.require_normalized()?;
        Ok(TetragonalStats {
            mean: self.mean(),
            variance: self.variance(),
            median: self.median(),
            modes: self.modes(),
        })
    }
}

fn sign_or_one(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

pub fn tetragonal(
    a: f64,
    c: f64,
    d: f64,
    b: f64,
    c_raw: f64,
    d_raw: f64,
) -> Result<PolygonalDensity> {
    Ok(TetragonalParams::normalized(a, c, d, b, c_raw, d_raw)?.density())
}

pub fn tetragonal_from_weight(a: f64, c: f64, d: f64, b: f64, w: f64) -> Result<PolygonalDensity> {
    Ok(TetragonalParams::from_weight(a, c, d, b, w)?.density())
}

pub fn tetragonal_stats(params: &TetragonalParams) -> Result<TetragonalStats> {
    let TetragonalParams {
        a,
        c,
        d,
        b,
        c_height,
        d_height,
    } = *params;
    TetragonalParams::new(a, c, d, b, c_height, d_height)?.stats()
}
