mod common;

use common::*;
use proptest::prelude::*;
use pwl_density::piece_index;
use pwl_testkit::integrate_piecewise;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cdf_is_nondecreasing(d in pl(8), u in 0.0..1.0f64, v in 0.0..1.0f64) {
        let (a, b) = d.support();
        let (lo, hi) = (u.min(v), u.max(v));
        let span = b - a + 2.0;
        let (x1, x2) = (a - 1.0 + lo * span, a - 1.0 + hi * span);
        prop_assert!(d.cdf(x1) <= d.cdf(x2) + 1e-12);
    }

    #[test]
    fn cdf_differentiates_to_pdf(d in pl(8), piece in 0usize..9, t in 0.05..0.95f64) {
        let c = d.breakpoints();
        let j = piece % d.pieces();
        let x = c[j] + t * (c[j + 1] - c[j]);
        let (a, b) = d.support();
        let h = 1e-6 * (b - a);
        prop_assume!(x - h > c[j] && x + h < c[j + 1]);
        let slope = (d.cdf(x + h) - d.cdf(x - h)) / (2.0 * h);
        let f = d.pdf(x);
        prop_assert!((slope - f).abs() <= (1e-6f64).max(1e-4 * f), "{} vs {}", slope, f);
    }

    #[test]
    fn cdf_at_breakpoints_is_the_table(d in pl(8)) {
        let table = d.cdf_table();
        for (i, &c) in d.breakpoints().iter().enumerate() {
            prop_assert_eq!(d.cdf(c), table.cumulative[i]);
        }
    }

    #[test]
    fn cdf_matches_quadrature(d in pl(8), u in 0.0..1.0f64) {
        let (a, b) = d.support();
        let x = a + u * (b - a);
        let oracle = integrate_piecewise(|t| d.pdf(t), d.breakpoints(), a, x, 1e-12);
        prop_assert!(close(d.cdf(x), oracle, 1e-9), "{} vs {}", d.cdf(x), oracle);
    }

    #[test]
    fn piece_index_brackets_x(d in pl(8), u in 0.0..=1.0f64) {
        let (a, b) = d.support();
        let x = (a + u * (b - a)).min(b);
        let c = d.breakpoints();
        let j = piece_index(d.grid(), x).unwrap();
        prop_assert!(c[j] <= x);
        prop_assert!(x < c[j + 1] || (x == b && j == d.pieces() - 1));
    }

    #[test]
    fn pdf_interpolates_limits(d in pl(8), piece in 0usize..9) {
        let c = d.breakpoints();
        let j = piece % d.pieces();
        let (r, l) = (d.right_limits()[j], d.left_limits()[j]);
        let mid = (c[j] + c[j + 1]) / 2.0;
        prop_assert!(close(d.pdf(mid), (r + l) / 2.0, 1e-12 * (r + l).max(1.0)));
    }
}
