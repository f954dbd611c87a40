//! Square-law detection: generalized Marcum Q, threshold inversion and
//! detection probability for the two working modes.
//!
//! The Marcum function is evaluated through its Poisson mixture form
//!
//! ```text
//! Q_N(a, b) = sum_k Pois(k; a^2/2) * P[Pois(b^2/2) <= N + k - 1]
//! ```
//!
//! and, when `b < a`, through the complementary mixture of the upper
//! Poisson tails, so that no result is ever obtained by subtracting two
//! numbers close to one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the nodes' echoes are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WorkingMode {
    /// Every receiver separates every transmitter: J x J pairs summed.
    Cooperative,
    /// Each node only processes its own echo; the best node decides.
    NonCooperative,
}

impl WorkingMode {
    /// Number of squared samples summed by the detector.
    pub fn detector_order(self, num_nodes: usize) -> u32 {
        match self {
            WorkingMode::Cooperative => (num_nodes * num_nodes) as u32,
            WorkingMode::NonCooperative => 1,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            WorkingMode::Cooperative => "coop",
            WorkingMode::NonCooperative => "noncoop",
        }
    }
}

/// Which false-alarm expression ties the threshold to `p_fa`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PfaConvention {
    /// `e^-g * sum_{i=1}^{N-1} g^i / i!` for `N > 1` and `e^-g * g` for a
    /// single sample.
    #[default]
    Literal,
    /// Textbook square-law detector: `e^-g * sum_{i=0}^{N-1} g^i / i!`.
    Standard,
}

const SERIES_EPS: f64 = 1e-16;

/// `ln k!` for every `k` in `0..=n`.
fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

fn ln_factorial(k: usize) -> f64 {
    (1..=k).map(|i| (i as f64).ln()).sum()
}

/// Poisson probability mass `e^-mean mean^k / k!`, with `ln k!` supplied.
#[inline]
fn poisson_pmf(k: usize, mean: f64, ln_mean: f64, ln_k_fact: f64) -> f64 {
    if mean == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    (-mean + k as f64 * ln_mean - ln_k_fact).exp()
}

/// `P[Pois(mean) <= n - 1]`, the regularized upper incomplete gamma
/// function at integer order `n`.
pub fn poisson_cdf_below(n: u32, mean: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if mean == 0.0 {
        return 1.0;
    }
    let ln_mean = mean.ln();
    let mut ln_fact = 0.0;
    let mut sum = 0.0;
    for i in 0..n as usize {
        if i > 0 {
            ln_fact += (i as f64).ln();
        }
        sum += poisson_pmf(i, mean, ln_mean, ln_fact);
    }
    sum.min(1.0)
}

fn check_arg(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::Domain(format!(
            "{name} must be finite and nonnegative, got {v}"
        )));
    }
    Ok(())
}

/// Generalized Marcum Q function `Q_N(a, b)`.
pub fn marcum_q(order: u32, a: f64, b: f64) -> Result<f64> {
    if order == 0 {
        return Err(Error::Domain("Marcum Q order must be at least 1".into()));
    }
    check_arg("a", a)?;
    check_arg("b", b)?;
    let x = 0.5 * a * a;
    let y = 0.5 * b * b;
    if y == 0.0 {
        return Ok(1.0);
    }
    let q = if b < a {
        1.0 - marcum_complement(order, x, y)
    } else {
        marcum_direct(order, x, y)
    };
    Ok(q.clamp(0.0, 1.0))
}

/// `sum_k Pois(k; x) * P[Pois(y) <= N + k - 1]`.
fn marcum_direct(order: u32, x: f64, y: f64) -> f64 {
    let mut lower = poisson_cdf_below(order, y);
    if x == 0.0 {
        return lower;
    }
    let ln_x = x.ln();
    let ln_y = y.ln();
    let mut ln_n_fact = ln_factorial(order as usize);
    let mut ln_k_fact = 0.0;
    let mut sum = 0.0;
    let mut k = 0usize;
    loop {
        if k > 0 {
            ln_k_fact += (k as f64).ln();
        }
        let weight = poisson_pmf(k, x, ln_x, ln_k_fact);
        sum += weight * lower;

        // Once past the Poisson mode the weights fall geometrically and the
        // cdf factor is bounded by one.
        let ratio = x / (k + 1) as f64;
        if ratio < 1.0 {
            let tail = weight * ratio / (1.0 - ratio);
            if tail <= SERIES_EPS * sum || tail < f64::MIN_POSITIVE {
                break;
            }
        }

        // ln_n_fact holds ln (N + k)!
        let n = order as usize + k;
        lower +=poisson_pmf(n, y, ln_y, ln_n_fact);
        ln_n_fact += ((n + 1) as f64).ln();
        k += 1;
    }
    sum.min(1.0)
}

/// `sum_k Pois(k; x) * P[Pois(y) >= N + k]`, which equals `1 - Q_N`.
fn marcum_complement(order: u32, x: f64, y: f64) -> f64 {
    let n0 = order as usize;
    // Beyond `last` the upper tail of Pois(y) is far below double precision.
    let last = n0.max((y + 40.0 * y.sqrt() + 50.0).ceil() as usize);
    let ln_fact = ln_factorials(last + 1);
    let ln_y = y.ln();
    let mut upper = vec![0.0; last - n0 + 2];
    for n in (n0..=last).rev() {
        upper[n - n0] = upper[n - n0 + 1] + poisson_pmf(n, y, ln_y, ln_fact[n]);
    }
    let ln_x = x.ln();
    let mut ln_k_fact = 0.0;
    let mut sum = 0.0;
    for (k, &tail) in upper.iter().enumerate().take(last - n0 + 1) {
        if k > 0 {
            ln_k_fact += (k as f64).ln();
        }
        sum += poisson_pmf(k, x, ln_x, ln_k_fact) * tail;
        let next = upper[k + 1];
        if next <= SERIES_EPS * sum || next < f64::MIN_POSITIVE {
            break;
        }
    }
    sum.min(1.0)
}

/// Natural log of the modified Bessel function `I_n(z)` from its power
/// series. Returns `-inf` where `I_n(z) = 0`.
pub fn ln_bessel_i(n: u32, z: f64) -> Result<f64> {
    check_arg("z", z)?;
    if z == 0.0 {
        return Ok(if n == 0 { 0.0 } else { f64::NEG_INFINITY });
    }
    let ln_half_z = (0.5 * z).ln();
    let n_us = n as usize;
    let mut ln_k_fact = 0.0;
    let mut ln_kn_fact = ln_factorial(n_us);
    let mut terms = Vec::new();
    let mut max_term = f64::NEG_INFINITY;
    let mut k = 0usize;
    loop {
        if k > 0 {
            ln_k_fact += (k as f64).ln();
            ln_kn_fact += ((k + n_us) as f64).ln();
        }
        let t = (2 * k + n_us) as f64 * ln_half_z - ln_k_fact - ln_kn_fact;
        terms.push(t);
        max_term = max_term.max(t);
        // Term ratio (z/2)^2 / ((k+1)(k+n+1)) below one and the term has
        // become negligible against the largest one.
        let ratio = 0.25 * z * z / (((k + 1) * (k + n_us + 1)) as f64);
        if ratio < 0.5 && t < max_term - 40.0 {
            break;
        }
        k += 1;
    }
    let s: f64 = terms.iter().map(|t| (t - max_term).exp()).sum();
    Ok(max_term + s.ln())
}

/// False-alarm probability produced by threshold `gamma` on `order` squared
/// samples.
pub fn pfa_of_threshold(gamma: f64, order: u32, convention: PfaConvention) -> Result<f64> {
    check_arg("gamma", gamma)?;
    if order == 0 {
        return Err(Error::Domain("detector order must be at least 1".into()));
    }
    Ok(match convention {
        PfaConvention::Standard => poisson_cdf_below(order, gamma),
        PfaConvention::Literal => {
            if gamma == 0.0 {
                return Ok(0.0);
            }
            let upper = order.saturating_sub(1).max(1) as usize;
            let ln_g = gamma.ln();
            let mut ln_fact = 0.0;
            let mut sum = 0.0;
            for i in 1..=upper {
                ln_fact += (i as f64).ln();
                sum += poisson_pmf(i, gamma, ln_g, ln_fact);
            }
            sum
        }
    })
}

/// Smallest threshold on the strictly decreasing branch of the false-alarm
/// curve, and the false-alarm value there.
fn decreasing_branch(order: u32, convention: PfaConvention) -> (f64, f64) {
    match convention {
        PfaConvention::Standard => (0.0, 1.0),
        PfaConvention::Literal => {
            // d/dg sum_{i=1}^{M} Pois(i; g) = Pois(0; g) - Pois(M; g), which
            // vanishes where g^M = M!.
            let m = order.saturating_sub(1).max(1) as usize;
            let peak = (ln_factorial(m) / m as f64).exp();
            let p = pfa_of_threshold(peak, order, convention).unwrap_or(0.0);
            (peak, p)
        }
    }
}

/// Solve `pfa_of_threshold(gamma) = p_fa` for `gamma` on the decreasing
/// branch.
pub fn solve_threshold(p_fa: f64, order: u32, convention: PfaConvention) -> Result<f64> {
    if !(p_fa > 0.0 && p_fa < 1.0) {
        return Err(Error::Domain(format!(
            "false-alarm probability must lie in (0, 1), got {p_fa}"
        )));
    }
    if order == 0 {
        return Err(Error::Domain("detector order must be at least 1".into()));
    }
    let (mut lo, max_attainable) = decreasing_branch(order, convention);
    if p_fa > max_attainable {
        return Err(Error::UnattainablePfa {
            requested: p_fa,
            max_attainable,
        });
    }
    let pfa = |g: f64| pfa_of_threshold(g, order, convention).unwrap_or(0.0);
    let mut hi = lo.max(1.0);
    while pfa(hi) > p_fa {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Domain("threshold search diverged".into()));
        }
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pfa(mid) > p_fa {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Of the two bracketing doubles take the one reproducing p_fa best.
    let best = if (pfa(lo) - p_fa).abs() <= (pfa(hi) - p_fa).abs() {
        lo
    } else {
        hi
    };
    Ok(best)
}

/// Detector for one working mode with its threshold solved once.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorConfig {
    mode: WorkingMode,
    order: u32,
    p_fa: f64,
    convention: PfaConvention,
    threshold: f64,
}

impl DetectorConfig {
    pub fn new(
        mode: WorkingMode,
        num_nodes: usize,
        p_fa: f64,
        convention: PfaConvention,
    ) -> Result<Self> {
        if num_nodes == 0 {
            return Err(Error::Domain("at least one radar node is required".into()));
        }
        let order = mode.detector_order(num_nodes);
        let threshold = solve_threshold(p_fa, order, convention)?;
        Ok(Self {
            mode,
            order,
            p_fa,
            convention,
            threshold,
        })
    }

    pub fn mode(&self) -> WorkingMode {
        self.mode
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn p_fa(&self) -> f64 {
        self.p_fa
    }

    pub fn convention(&self) -> PfaConvention {
        self.convention
    }

    /// The solved threshold `gamma_T`.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Smallest RTSN whose detection probability reaches `p_dt`.
    ///
    /// Returns 0 when even a zero-signal cell already meets `p_dt`.
    pub fn min_rtsn_for(&self, p_dt: f64) -> Result<f64> {
        if !(p_dt > 0.0 && p_dt < 1.0) {
            return Err(Error::Domain(format!(
                "detection threshold must lie in (0, 1), got {p_dt}"
            )));
        }
        if detection_probability(0.0, self)? >= p_dt {
            return Ok(0.0);
        }
        let mut lo = 0.0;
        let mut hi = 1.0;
        while detection_probability(hi, self)? < p_dt {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if detection_probability(mid, self)? < p_dt {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(hi)
    }
}

/// Detection probability of a cell whose (mode-combined) RTSN is `rtsn`.
pub fn detection_probability(rtsn: f64, detector: &DetectorConfig) -> Result<f64> {
    check_arg("rtsn", rtsn)?;
    marcum_q(
        detector.order,
        (2.0 * rtsn).sqrt(),
        (2.0 * detector.threshold).sqrt(),
    )
}
