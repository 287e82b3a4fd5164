//! Median sets, quantile preimages and inverse-transform sampling.
//!
//! `F` is continuous for every piecewise-linear density but may be flat on
//! pieces where the density vanishes, so a level `p` generally has an
//! interval of preimages. Both ends of that interval are reported.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{piece_mass, PiecewiseLinearDensity};

/// All `v` with `P(X <= v) >= 1/2` and `P(X >= v) >= 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MedianSet {
    pub v_min: f64,
    pub v_max: f64,
    pub min_attained: bool,
    pub max_attained: bool,
}

impl MedianSet {
    pub fn is_single(&self) -> bool {
        self.v_min == self.v_max
    }

    pub fn midpoint(&self) -> f64 {
        (self.v_min + self.v_max) / 2.0
    }
}

/// `[lower, upper]`: the infimum and supremum of `{x : F(x) = p}`, clipped
/// to the support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantilePreimage {
    pub lower: f64,
    pub upper: f64,
    pub probability: f64,
}

/// Which point of a preimage interval a quantile reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuantileRule {
    #[default]
    Inf,
    Sup,
    Mid,
}

impl QuantilePreimage {
    pub fn select(&self, rule: QuantileRule) -> f64 {
        match rule {
            QuantileRule::Inf => self.lower,
            QuantileRule::Sup => self.upper,
            QuantileRule::Mid => (self.lower + self.upper) / 2.0,
        }
    }
}

/// Smallest `t` in `[0, width]` with
/// `base + near * t + (far - near) * t^2 / (2 * width) = target`.
///
/// `near` is the density at the end `t` is measured from, `far` at the
/// other end.
fn solve_piece(base: f64, near: f64, far: f64, width: f64, target: f64) -> f64 {
    let a = (far - near) / (2.0 * width);
    let b = near;
    let c = base - target;
    if c >= 0.0 {
        return 0.0;
    }
    let residual = |t: f64| (c + t * (b + a * t)).abs();
    let mut roots = [f64::NAN; 2];
    if a.abs() <= 1e-14 * b.abs() {
        roots[0] = -c / b;
    } else {
        let disc = (b * b - 4.0 * a * c).max(0.0);
        let q = -(b + libm::sqrt(disc)) / 2.0;
        roots[0] = q / a;
        if q != 0.0 {
            roots[1] = c / q;
        }
    }
    roots
        .iter()
        .filter(|t| t.is_finite())
        .map(|t| t.clamp(0.0, width))
        .min_by(|x, y| residual(*x).total_cmp(&residual(*y)))
        .unwrap_or(width)
}

impl PiecewiseLinearDensity {
    fn piece_masses(&self) -> impl DoubleEndedIterator<Item = f64> + '_ {
        let c = self.breakpoints();
        (0..self.pieces())
            .map(move |i| piece_mass(self.right_limits()[i], self.left_limits()[i], c[i + 1] - c[i]))
    }

    /// Least `x` with `F(x) >= p`.
    fn lower_inverse(&self, p: f64) -> f64 {
        let m = self.cumulative();
        let c = self.breakpoints();
        let target = p.min(self.raw_mass());
        let j = m[1..].partition_point(|&v| v < target);
        if j >= self.pieces() {
            return c[c.len() - 1];
        }
        let (r, l) = (self.right_limits()[j], self.left_limits()[j]);
        let t = solve_piece(m[j], r, l, c[j + 1] - c[j], target);
        (c[j] + t).min(c[j + 1])
    }

    /// Greatest `x` with `F(x) <= p`.
    fn upper_inverse(&self, p: f64) -> f64 {
        let m = self.cumulative();
        let c = self.breakpoints();
        if p >= self.raw_mass() {
            return c[c.len() - 1];
        }
        let j = m.partition_point(|&v| v <= p) - 1;
        let (r, l) = (self.right_limits()[j], self.left_limits()[j]);
        let t = solve_piece(m[j], r, l, c[j + 1] - c[j], p);
        (c[j] + t).min(c[j + 1])
    }

    pub fn quantile_preimage(&self, p: f64) -> Result<QuantilePreimage> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadProbability { p });
        }
        self.require_normalized()?;
        Ok(QuantilePreimage {
            lower: self.lower_inverse(p),
            upper: self.upper_inverse(p),
            probability: p,
        })
    }

    pub fn quantile(&self, p: f64, rule: QuantileRule) -> Result<f64> {
        Ok(self.quantile_preimage(p)?.select(rule))
    }

    /// Density from the one-sided limits only; `max(L_i, R_i)` at a breakpoint.
    fn limit_density(&self, x: f64) -> f64 {
        let c = self.breakpoints();
        let j = c.partition_point(|&ci| ci <= x).saturating_sub(1).min(self.pieces() - 1);
        if c[j] == x {
            return self.left_limit(j).max(self.right_limit(j));
        }
        let (r, l) = (self.right_limits()[j], self.left_limits()[j]);
        r + (l - r) * (x - c[j]) / (c[j + 1] - c[j])
    }

    /// Median interval, located from both tails.
    ///
    /// `v_min` is solved on the piece after the last breakpoint whose left
    /// mass is below 1/2; `v_max` on the piece before the first breakpoint
    /// whose right mass is below 1/2, measuring from the right.
    pub fn median_set(&self) -> Result<MedianSet> {
        self.require_normalized()?;
        let c = self.breakpoints();
        let m = self.cumulative();

        let lo = m.iter().rposition(|&v| v < 0.5).unwrap_or(0).min(self.pieces() - 1);
        let (r, l) = (self.right_limits()[lo], self.left_limits()[lo]);
        let v_min = (c[lo] + solve_piece(m[lo], r, l, c[lo + 1] - c[lo], 0.5)).min(c[lo + 1]);

        let mut tail = Vec::with_capacity(c.len());
        tail.push(0.0);
        for mass in self.piece_masses().rev() {
            let next = tail[tail.len() - 1] + mass;
            tail.push(next);
        }
        tail.reverse();
        let hi = tail.iter().position(|&s| s < 0.5).unwrap_or(c.len() - 1).max(1);
        let piece = hi - 1;
        let (r, l) = (self.right_limits()[piece], self.left_limits()[piece]);
        let s = solve_piece(tail[hi], l, r, c[hi] - c[piece], 0.5);
        let v_max = (c[hi] - s).max(c[piece]);

        // a genuine median interval is a zero-density stretch; anything
        // else between the two solves is rounding
        let (v_min, v_max) = if v_max < v_min || self.limit_density((v_min + v_max) / 2.0) > 0.0 {
            let v = (v_min + v_max) / 2.0;
            (v, v)
        } else {
            (v_min, v_max)
        };
        Ok(MedianSet {
            v_min,
            v_max,
            min_attained: (self.cdf(v_min) - 0.5).abs() <= 1e-9,
            max_attained: (self.cdf(v_max) - 0.5).abs() <= 1e-9,
        })
    }

    /// Inverse-transform samples: `quantile(u, Inf)` for each `u` in `[0, 1)`.
    pub fn sample(&self, uniforms: &[f64]) -> Result<Vec<f64>> {
        self.require_normalized()?;
        uniforms
            .iter()
            .map(|&u| {
                if !(0.0..1.0).contains(&u) {
                    Err(Error::BadProbability { p: u })
                } else {
                    Ok(self.lower_inverse(u))
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PolygonalDensity;
    use alloc::vec;

    fn uniform() -> PiecewiseLinearDensity {
        PiecewiseLinearDensity::new(vec![0.0, 1.0], vec![1.0], vec![1.0]).unwrap()
    }

    fn step() -> PiecewiseLinearDensity {
        PiecewiseLinearDensity::new(vec![0.0, 1.0, 2.0], vec![0.75, 0.25], vec![0.75, 0.25])
            .unwrap()
    }

    fn two_triangles() -> PiecewiseLinearDensity {
        PolygonalDensity::new(
            vec![0.0, 0.5, 1.0, 2.0, 2.5, 3.0],
            vec![0.0, 1.0, 0.0, 0.0, 1.0, 0.0],
        )
        .unwrap()
        .promote()
    }

    fn tri(a: f64, c: f64, b: f64) -> PiecewiseLinearDensity {
        PolygonalDensity::new(vec![a, c, b], vec![0.0, 2.0 / (b - a), 0.0])
            .unwrap()
            .promote()
    }

    #[test]
    fn medians() {
        let m = step().median_set().unwrap();
        assert!(m.is_single());
        assert!((m.v_min - 2.0 / 3.0).abs() < 1e-15);
        assert!((m.v_max - 2.0 / 3.0).abs() < 1e-15);
        let m = two_triangles().median_set().unwrap();
        assert_eq!((m.v_min, m.v_max), (1.0, 2.0));
        assert!(m.min_attained && m.max_attained);
        let tet = PolygonalDensity::new(vec![0.0, 1.0, 2.0, 3.0], vec![0.0, 0.5, 0.5, 0.0])
            .unwrap()
            .promote();
        let m = tet.median_set().unwrap();
        assert!(m.is_single());
        assert!((m.v_min - 1.5).abs() < 1e-15);
    }

    #[test]
    fn preimages() {
        let q = uniform().quantile_preimage(0.25).unwrap();
        assert_eq!((q.lower, q.upper), (0.25, 0.25));
        let q = two_triangles().quantile_preimage(0.5).unwrap();
        assert_eq!((q.lower, q.upper), (1.0, 2.0));
        let q = tri(0.0, 0.3, 1.0).quantile_preimage(0.5).unwrap();
        let v = 1.0 - libm::sqrt(0.35);
        assert!((q.lower - v).abs() < 1e-15 && (q.upper - v).abs() < 1e-15);
    }

    #[test]
    fn preimage_extremes_clip_to_support() {
        let q = uniform().quantile_preimage(0.0).unwrap();
        assert_eq!((q.lower, q.upper), (0.0, 0.0));
        let q = uniform().quantile_preimage(1.0).unwrap();
        assert_eq!((q.lower, q.upper), (1.0, 1.0));
        // leading and trailing zero pieces
        let d = PiecewiseLinearDensity::new(
            vec![0.0, 1.0, 2.0, 3.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 1.0, 0.0],
        )
        .unwrap();
        let q = d.quantile_preimage(0.0).unwrap();
        assert_eq!((q.lower, q.upper), (0.0, 1.0));
        let q = d.quantile_preimage(1.0).unwrap();
        assert_eq!((q.lower, q.upper), (2.0, 3.0));
    }

    #[test]
    fn quantile_rules() {
        assert_eq!(two_triangles().quantile(0.5, QuantileRule::Mid).unwrap(), 1.5);
        assert_eq!(uniform().quantile(0.0, QuantileRule::Sup).unwrap(), 0.0);
        for rule in [QuantileRule::Inf, QuantileRule::Sup, QuantileRule::Mid] {
            assert!((tri(0.0, 0.5, 1.0).quantile(0.5, rule).unwrap() - 0.5).abs() < 1e-15);
        }
        assert_eq!(
            uniform().quantile(1.5, QuantileRule::Inf),
            Err(Error::BadProbability { p: 1.5 })
        );
        assert!(uniform().quantile(f64::NAN, QuantileRule::Inf).is_err());
    }

    #[test]
    fn samples() {
        assert_eq!(step().sample(&[0.0, 0.375, 0.75]).unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(tri(0.0, 0.5, 1.0).sample(&[0.5]).unwrap(), vec![0.5]);
        assert_eq!(step().sample(&[]).unwrap(), Vec::<f64>::new());
        assert_eq!(
            step().sample(&[0.2, 1.0]),
            Err(Error::BadProbability { p: 1.0 })
        );
        assert!(step().sample(&[-0.1]).is_err());
    }

    #[test]
    fn unnormalized_is_refused() {
        let d = PiecewiseLinearDensity::new(vec![0.0, 1.0], vec![3.0], vec![3.0]).unwrap();
        assert!(d.median_set().is_err());
        assert!(d.quantile_preimage(0.5).is_err());
        assert!(d.sample(&[0.5]).is_err());
    }

    #[test]
    fn solver_handles_decreasing_and_flat_pieces() {
        // density 2 -> 0 on [0, 1]: F(t) = 2t - t^2
        let t = solve_piece(0.0, 2.0, 0.0, 1.0, 0.75);
        assert!((t - 0.5).abs() < 1e-15);
        assert_eq!(solve_piece(0.0, 2.0, 0.0, 1.0, 1.0), 1.0);
        // density 0 -> 2: F(t) = t^2
        assert!((solve_piece(0.0, 0.0, 2.0, 1.0, 0.25) - 0.5).abs() < 1e-15);
        assert_eq!(solve_piece(0.3, 1.0, 1.0, 1.0, 0.3), 0.0);
    }
}
