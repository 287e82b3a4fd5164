mod common;

use common::*;
use proptest::prelude::*;
use pwl_density::{Error, PointValues, RawDensity};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn raw_mass_is_the_trapezoid_sum(d in raw_pl(8)) {
        let c = d.breakpoints();
        let expected: f64 = (0..d.pieces())
            .map(|i| (d.right_limits()[i] + d.left_limits()[i]) * (c[i + 1] - c[i]) / 2.0)
            .sum();
        prop_assert_eq!(d.raw_mass(), expected);
    }

    #[test]
    fn normalize_reaches_unit_mass(d in raw_pl(8)) {
        let (n, report) = d.normalize().unwrap();
        prop_assert!(rel_close(n.raw_mass(), 1.0, 1e-12));
        prop_assert!(rel_close(report.factor_k, 1.0 / d.raw_mass(), 1e-12));
        prop_assert_eq!(report.raw_mass, d.raw_mass());
    }

    #[test]
    fn scaling_scales_mass(d in raw_pl(8), s in 1e-3..1e3f64) {
        let scaled = d.scale(s).unwrap();
        prop_assert!(rel_close(scaled.raw_mass(), s * d.raw_mass(), 1e-12));
    }

    #[test]
    fn canonicalize_is_idempotent_and_keeps_mass(raw in raw_with_ties(8)) {
        let once = raw.canonicalize().unwrap();
        let twice = once.canonicalize().unwrap();
        prop_assert_eq!(&once, &twice);
        let (m0, m1) = (raw.raw_mass().unwrap(), once.raw_mass().unwrap());
        prop_assert!((m0 - m1).abs() <= 1e-15 * m0.max(1.0));
        prop_assert!(once.breakpoints.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn validated_density_matches_raw_mass(raw in raw_with_ties(8)) {
        let m = raw.raw_mass().unwrap();
        match raw.validate() {
            Ok(d) => prop_assert!((d.raw_mass() - m).abs() <= 1e-15 * m.max(1.0)),
            Err(e) => prop_assert_eq!(e, Error::ZeroMass),
        }
    }

    #[test]
    fn promote_keeps_vertex_mass(p in raw_polygonal(8)) {
        let c = p.breakpoints();
        let h = p.heights();
        let vertex: f64 = (1..c.len() - 1).map(|i| h[i] * (c[i + 1] - c[i - 1])).sum::<f64>() / 2.0;
        prop_assert!(rel_close(p.promote().raw_mass(), vertex, 1e-12));
        prop_assert!(rel_close(p.raw_mass(), vertex, 1e-12));
    }

    #[test]
    fn polygonal_normalization_condition(p in raw_polygonal(8)) {
        let (n, report) = p.normalize().unwrap();
        let c = n.breakpoints();
        let h = n.heights();
        let sum: f64 = (1..c.len() - 1).map(|i| h[i] * (c[i + 1] - c[i - 1])).sum();
        prop_assert!(close(sum, 2.0, 1e-12));
        prop_assert!(rel_close(report.factor_k, 1.0 / p.raw_mass(), 1e-12));
    }

    #[test]
    fn point_value_rules(d in pl(6)) {
        let mean_rule = d.clone().with_point_values(PointValues::MeanOfLimits).unwrap();
        for i in 0..d.breakpoints().len() {
            let (l, r) = (d.left_limit(i), d.right_limit(i));
            prop_assert_eq!(d.point_value(i), l.max(r));
            prop_assert_eq!(mean_rule.point_value(i), (l + r) / 2.0);
        }
    }
}

#[test]
fn rejects_malformed_inputs() {
    let bad = RawDensity::new(vec![0.0, 1.0], vec![-1.0], vec![1.0]);
    assert_eq!(
        bad.validate(),
        Err(Error::NegativeValue {
            field: "right_limits",
            index: 0
        })
    );
    let short = RawDensity::new(vec![0.0, 1.0, 2.0], vec![1.0], vec![1.0, 1.0]);
    assert!(matches!(
        short.validate(),
        Err(Error::LengthMismatch { .. })
    ));
    let back = RawDensity::new(vec![0.0, 2.0, 1.0], vec![1.0, 1.0], vec![1.0, 1.0]);
    assert_eq!(back.validate(), Err(Error::NotNondecreasing { index: 2 }));
}
