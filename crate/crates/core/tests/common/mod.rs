#![allow(dead_code)]

use proptest::prelude::*;
use pwl_density::{PiecewiseLinearDensity, PolygonalDensity, RawDensity};

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn spaced(mut c: Vec<f64>) -> Option<Vec<f64>> {
    c.sort_by(f64::total_cmp);
    let ok = c.windows(2).all(|w| w[1] - w[0] > 1e-2);
    ok.then_some(c)
}

/// Strictly increasing grid of `count` points in `[-10, 10]`.
pub fn grid(count: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0f64, count).prop_filter_map("crowded grid", spaced)
}

fn height() -> impl Strategy<Value = f64> {
    prop_oneof![1 => Just(0.0), 5 => 0.0..3.0f64]
}

/// Unnormalized density with strictly increasing breakpoints.
pub fn raw_pl(max_n: usize) -> impl Strategy<Value = PiecewiseLinearDensity> {
    (0..=max_n)
        .prop_flat_map(|n| {
            (
                grid(n + 2),
                prop::collection::vec(height(), n + 1),
                prop::collection::vec(height(), n + 1),
            )
        })
        .prop_filter_map("zero mass", |(c, r, l)| {
            let d = PiecewiseLinearDensity::new(c, r, l).ok()?;
            (d.raw_mass() > 1e-6).then_some(d)
        })
}

pub fn pl(max_n: usize) -> impl Strategy<Value = PiecewiseLinearDensity> {
    raw_pl(max_n).prop_map(|d| d.normalize().unwrap().0)
}

/// Normalized density whose limits are all at least 0.1 before scaling.
pub fn positive_pl(max_n: usize) -> impl Strategy<Value = PiecewiseLinearDensity> {
    (0..=max_n)
        .prop_flat_map(|n| {
            (
                grid(n + 2),
                prop::collection::vec(0.1..3.0f64, n + 1),
                prop::collection::vec(0.1..3.0f64, n + 1),
            )
        })
        .prop_map(|(c, r, l)| {
            PiecewiseLinearDensity::new(c, r, l)
                .unwrap()
                .normalize()
                .unwrap()
                .0
        })
}

/// Raw input with coincident breakpoints drawn from a coarse lattice.
pub fn raw_with_ties(max_n: usize) -> impl Strategy<Value = RawDensity> {
    (0..=max_n)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(0..6i32, n + 2),
                prop::collection::vec(height(), n + 1),
                prop::collection::vec(height(), n + 1),
            )
        })
        .prop_filter_map("degenerate", |(mut c, r, l)| {
            c.sort();
            if c[0] == c[c.len() - 1] {
                return None;
            }
            let c = c.into_iter().map(f64::from).collect();
            Some(RawDensity::new(c, r, l))
        })
}

pub fn raw_polygonal(max_n: usize) -> impl Strategy<Value = PolygonalDensity> {
    (1..=max_n.max(1))
        .prop_flat_map(|n| (grid(n + 2), prop::collection::vec(height(), n)))
        .prop_filter_map("zero mass", |(c, inner)| {
            let mut h = vec![0.0];
            h.extend(inner);
            h.push(0.0);
            let p = PolygonalDensity::new(c, h).ok()?;
            (p.raw_mass() > 1e-6).then_some(p)
        })
}

pub fn polygonal(max_n: usize) -> impl Strategy<Value = PolygonalDensity> {
    raw_polygonal(max_n).prop_map(|p| p.normalize().unwrap().0)
}
