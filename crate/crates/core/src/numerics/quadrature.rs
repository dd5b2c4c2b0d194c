//! `∫₀^∞ cos(x³/6) dx` by integration between consecutive zeros of the
//! integrand, with Wynn-ε extrapolation of the alternating partial sums.

use crate::scalar::Real;

/// Where to stop summing half-period contributions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Only `[0, x₀]`, up to the first zero of the integrand.
    FirstZero,
    /// Plain partial sum over the first `n` intervals.
    Intervals(usize),
    /// Wynn-ε extrapolation of the first `n` partial sums.
    Accelerated(usize),
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::Accelerated(48)
    }
}

/// Gauss-Legendre panels per interval.
pub const DEFAULT_PANELS: usize = 2;
const GAUSS_ORDER: usize = 16;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre<T: Real>(n: usize) -> Vec<(T, T)> {
    let mut rule = Vec::with_capacity(n);
    let nf = T::count(n);
    for i in 0..n {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (T::PI() * (T::count(i) + T::lit(0.75)) / (nf + T::lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= T::epsilon() * T::lit(4.0) {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if !d.is_zero() {
            dp = d;
        }
        let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
        rule.push((x, w));
    }
    rule
}

/// `(P_n(x), P_n'(x))`.
fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let kf = T::count(k);
        let p2 = ((T::lit(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = T::count(n);
    (p1, nf * (x * p1 - p0) / (x * x - T::one()))
}

fn integrand<T: Real>(x: T) -> T {
    (x * x * x / T::lit(6.0)).cos()
}

/// `m`-th zero of `cos(x³/6)`: `x_m = (6(π/2 + mπ))^{1/3}`.
pub fn cos_cubic_zero<T: Real>(m: usize) -> T {
    (T::lit(6.0) * (T::FRAC_PI_2() + T::count(m) * T::PI())).cbrt()
}

/// Contributions of the first `n` intervals `[0, x₀], [x₀, x₁], …`.
pub fn cos_cubic_interval_terms<T: Real>(n: usize, panels: usize) -> Vec<T> {
    let rule = gauss_legendre::<T>(GAUSS_ORDER);
    let panels = panels.max(1);
    let half = T::lit(0.5);
    let mut terms = Vec::with_capacity(n);
    let mut left = T::zero();
    for m in 0..n {
        let right = cos_cubic_zero::<T>(m);
        let width = (right - left) / T::count(panels);
        let mut sum = T::zero();
        for p in 0..panels {
            let a = left + width * T::count(p);
            let mid = a + width * half;
            let panel: T = rule.iter().fold(T::zero(), |s, &(x, w)| s + w * integrand(mid + width * half * x));
            sum += panel * width * half;
        }
        terms.push(sum);
        left = right;
    }
    terms
}

/// Wynn's ε-algorithm applied to a sequence of partial sums; returns the
/// highest even-column estimate.
pub fn wynn_epsilon<T: Real>(partial: &[T]) -> T {
    let n = partial.len();
    if n < 3 {
        return *partial.last().expect("at least one partial sum");
    }
    // eps[j] holds column k−1, prev holds column k−2
    let mut prev = vec![T::zero(); n + 1];
    let mut cur: Vec<T> = partial.to_vec();
    let mut best = cur[cur.len() - 1];
    let mut col = 0usize;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for j in 0..cur.len() - 1 {
            let diff = cur[j + 1] - cur[j];
            if diff.is_zero() {
                // converged to working precision; odd columns are auxiliary
                return if col % 2 == 0 { cur[j + 1] } else { best };
            }
            next.push(prev[j + 1] + T::one() / diff);
        }
        prev = cur;
        cur = next;
        col += 1;
        if col % 2 == 0 {
            best = cur[cur.len() - 1];
        }
    }
    best
}

/// `∫₀^∞ cos(x³/6) dx` under the given truncation.
pub fn oscillatory_integral_cos_cubic<T: Real>(mode: Truncation) -> T {
    oscillatory_integral_cos_cubic_with(mode, DEFAULT_PANELS)
}

pub fn oscillatory_integral_cos_cubic_with<T: Real>(mode: Truncation, panels: usize) -> T {
    match mode {
        Truncation::FirstZero => cos_cubic_interval_terms::<T>(1, panels)[0],
        Truncation::Intervals(n) => {
            cos_cubic_interval_terms::<T>(n.max(1), panels).into_iter().fold(T::zero(), |a, b| a + b)
        }
        Truncation::Accelerated(n) => {
            let terms = cos_cubic_interval_terms::<T>(n.max(3), panels);
            let partial: Vec<T> = terms
                .iter()
                .scan(T::zero(), |acc, &t| {
                    *acc += t;
                    Some(*acc)
                })
                .collect();
            wynn_epsilon(&partial)
        }
    }
}

/// Alternating-series envelope: after summing `n` intervals the remaining
/// tail is bounded by the magnitude of the next contribution.
pub fn tail_envelope<T: Real>(n: usize, panels: usize) -> T {
    cos_cubic_interval_terms::<T>(n + 1, panels)[n].abs()
}
