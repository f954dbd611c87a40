//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the library's detection or metric code.

#![allow(dead_code)]

use msrs_deploy::metrics::FrontPoint;

fn ln_factorial(n: u32) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// ln I_nu(z) by its power series, summed in log space.
pub fn ln_bessel_series(nu: u32, z: f64) -> f64 {
    assert!(z > 0.0);
    let half = (z / 2.0).ln();
    let mut term = nu as f64 * half - ln_factorial(nu);
    let mut terms = vec![term];
    let mut max = term;
    let mut k = 0u32;
    loop {
        k += 1;
        let next = term + 2.0 * half - (k as f64).ln() - ((k + nu) as f64).ln();
        let falling = next < term;
        term = next;
        terms.push(term);
        max = max.max(term);
        if falling && term < max - 50.0 {
            break;
        }
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Density of the generalized Marcum integrand at `x`.
fn marcum_integrand(order: u32, a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let nu = order - 1;
    let ln = if a == 0.0 {
        (2 * nu + 1) as f64 * x.ln() - x * x / 2.0 - nu as f64 * 2f64.ln() - ln_factorial(nu)
    } else {
        x.ln() + nu as f64 * (x / a).ln() - (x * x + a * a) / 2.0 + ln_bessel_series(nu, a * x)
    };
    ln.exp()
}

fn integrate(order: u32, a: f64, lo: f64, hi: f64) -> f64 {
    let rule = gauss_legendre(20);
    let steps = ((hi - lo) / 0.5).ceil().max(1.0) as usize;
    let h = (hi - lo) / steps as f64;
    let mut total = 0.0;
    for s in 0..steps {
        let mid = lo + (s as f64 + 0.5) * h;
        for &(t, w) in &rule {
            total += w * h / 2.0 * marcum_integrand(order, a, mid + t * h / 2.0);
        }
    }
    total
}

/// Q_N(a, b) by composite Gauss-Legendre quadrature of the noncentral chi
/// density: over `[b, upper]` when `b >= a`, otherwise as one minus the
/// integral over `[0, b]`.
pub fn marcum_q_quadrature(order: u32, a: f64, b: f64) -> f64 {
    if b < a {
        1.0 - integrate(order, a, 0.0, b)
    } else {
        let upper = b.max(a + (2.0 * order as f64).sqrt() + 15.0);
        integrate(order, a, b, upper)
    }
}

/// Probability of at least one and at most `max(N - 1, 1)` Poisson events.
pub fn pfa_literal(gamma: f64, order: u32) -> f64 {
    let top = order.saturating_sub(1).max(1);
    (1..=top)
        .map(|i| (-gamma + i as f64 * gamma.ln() - ln_factorial(i)).exp())
        .sum()
}

/// Threshold on the decreasing branch of [`pfa_literal`], by bisection.
pub fn threshold_literal(p_fa: f64, order: u32) -> f64 {
    let top = order.saturating_sub(1).max(1);
    let mut lo = (ln_factorial(top) / top as f64).exp();
    let mut hi = lo + 10.0;
    while pfa_literal(hi, order) > p_fa {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if pfa_literal(mid, order) > p_fa {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Maximization dominance, written out independently of the library.
pub fn dominates2(a: (f64, f64), b: (f64, f64)) -> bool {
    a.0 >= b.0 && a.1 >= b.1 && (a.0 > b.0 || a.1 > b.1)
}

/// Monte-Carlo estimate of the area dominated by `front` above `reference`.
pub fn dominated_space_mc(front: &[FrontPoint], reference: FrontPoint, samples: usize, seed: u64) -> f64 {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let x_max = front.iter().map(|p| p.coverage_ratio).fold(reference.coverage_ratio, f64::max);
    let y_max = front.iter().map(|p| p.lowest_rtsn_db).fold(reference.lowest_rtsn_db, f64::max);
    let box_area = (x_max - reference.coverage_ratio) * (y_max - reference.lowest_rtsn_db);
    if box_area == 0.0 {
        return 0.0;
    }
    let mut hits = 0usize;
    for _ in 0..samples {
        let x = rng.gen_range(reference.coverage_ratio..x_max);
        let y = rng.gen_range(reference.lowest_rtsn_db..y_max);
        if front.iter().any(|p| p.coverage_ratio >= x && p.lowest_rtsn_db >= y) {
            hits += 1;
        }
    }
    box_area * hits as f64 / samples as f64
}
