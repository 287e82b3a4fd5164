//! Independent oracles and random inputs for the density test suites.
//!
//! Nothing here uses the closed forms under test: integrals come from
//! adaptive Simpson quadrature and distribution checks from the
//! Kolmogorov-Smirnov statistic.

use rand::Rng;

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let m = (a + b) / 2.0;
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    refine(&f, a, b, fa, fm, fb, whole, tol, 40)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = (a + b) / 2.0;
    let (lm, rm) = ((a + m) / 2.0, (m + b) / 2.0);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    let noise = 64.0 * f64::EPSILON * (left.abs() + right.abs());
    if depth == 0 || delta.abs() <= (15.0 * tol).max(noise) {
        return left + right + delta / 15.0;
    }
    refine(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + refine(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Quadrature over `[a, b]` split at every knot inside it, so that kinks
/// and jumps of `f` sit on panel boundaries. Panel ends are sampled a
/// relative `1e-12` inside the panel, so each side of a jump is used only
/// by its own panel.
pub fn integrate_piecewise<F: Fn(f64) -> f64>(f: F, knots: &[f64], a: f64, b: f64, tol: f64) -> f64 {
    let mut cuts: Vec<f64> = vec![a];
    cuts.extend(knots.iter().copied().filter(|&k| a < k && k < b));
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let panels = cuts.len().saturating_sub(1).max(1) as f64;
    cuts.windows(2)
        .map(|w| {
            let (lo, hi) = (w[0], w[1]);
            let inner = |x: f64| {
                let eps = (hi - lo) * 1e-12;
                f(x.clamp(lo + eps, hi - eps))
            };
            simpson(inner, lo, hi, tol / panels)
        })
        .sum()
}

/// `sup |F_n - F|` for a sample and a continuous CDF.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let fx = cdf(x);
            let above = (i + 1) as f64 / n - fx;
            let below = fx - i as f64 / n;
            above.max(below)
        })
        .fold(0.0, f64::max)
}

/// Large-sample critical value `sqrt(-ln(alpha / 2) / 2) / sqrt(n)`.
pub fn ks_critical(n: usize, alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt() / (n as f64).sqrt()
}

/// Raw ingredients of a piecewise-linear density.
#[derive(Debug, Clone, PartialEq)]
pub struct PlData {
    pub breakpoints: Vec<f64>,
    pub right: Vec<f64>,
    pub left: Vec<f64>,
}

/// Raw ingredients of a polygonal density.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyData {
    pub breakpoints: Vec<f64>,
    pub heights: Vec<f64>,
}

/// `count` sorted points in `[lo, hi]`, neighbours more than
/// `1e-3 * (hi - lo)` apart.
pub fn random_grid<R: Rng>(rng: &mut R, count: usize, lo: f64, hi: f64) -> Vec<f64> {
    loop {
        let mut c: Vec<f64> = (0..count).map(|_| rng.gen_range(lo..hi)).collect();
        c.sort_by(f64::total_cmp);
        let min_gap = c.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        if min_gap > 1e-3 * (hi - lo) {
            return c;
        }
    }
}

/// Height in `[0, 3)`, exactly zero about one time in six.
fn random_height<R: Rng>(rng: &mut R) -> f64 {
    if rng.gen_range(0..6) == 0 {
        0.0
    } else {
        rng.gen_range(0.0..3.0)
    }
}

/// Unnormalized density with `0..=max_n` intermediate points and support in
/// `[-10, 10]`. Jumps are independent at every breakpoint.
pub fn random_pl<R: Rng>(rng: &mut R, max_n: usize) -> PlData {
    loop {
        let n = rng.gen_range(0..=max_n);
        let breakpoints = random_grid(rng, n + 2, -10.0, 10.0);
        let right: Vec<f64> = (0..=n).map(|_| random_height(rng)).collect();
        let left: Vec<f64> = (0..=n).map(|_| random_height(rng)).collect();
        if right.iter().zip(&left).any(|(r, l)| r + l > 0.0) {
            return PlData {
                breakpoints,
                right,
                left,
            };
        }
    }
}

/// Like [`random_pl`] but every limit lies in `[0.1, 3)`.
pub fn random_positive_pl<R: Rng>(rng: &mut R, max_n: usize) -> PlData {
    let n = rng.gen_range(0..=max_n);
    PlData {
        breakpoints: random_grid(rng, n + 2, -10.0, 10.0),
        right: (0..=n).map(|_| rng.gen_range(0.1..3.0)).collect(),
        left: (0..=n).map(|_| rng.gen_range(0.1..3.0)).collect(),
    }
}

/// Unnormalized polygonal density with `1..=max_n` interior vertices.
pub fn random_polygonal<R: Rng>(rng: &mut R, max_n: usize) -> PolyData {
    loop {
        let n = rng.gen_range(1..=max_n.max(1));
        let breakpoints = random_grid(rng, n + 2, -10.0, 10.0);
        let mut heights = vec![0.0; n + 2];
        for h in &mut heights[1..=n] {
            *h = random_height(rng);
        }
        if heights.iter().any(|&h| h > 0.0) {
            return PolyData {
                breakpoints,
                heights,
            };
        }
    }
}

/// `x^(p-1) (1-x)^(q-1) / B(p, q)` on `[0, 1]` for integer `p, q >= 1`.
pub fn beta_pdf(p: u32, q: u32, x: f64) -> f64 {
    if !(0.0..=1.0).contains(&x) {
        return 0.0;
    }
    // 1 / B(p, q) = (p + q - 1)! / ((p - 1)! (q - 1)!)
    let mut inv_beta = 1.0;
    for k in 1..p + q {
        inv_beta *= k as f64;
    }
    for k in 1..p {
        inv_beta /= k as f64;
    }
    for k in 1..q {
        inv_beta /= k as f64;
    }
    inv_beta * x.powi(p as i32 - 1) * (1.0 - x).powi(q as i32 - 1)
}
