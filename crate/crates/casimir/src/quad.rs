//! Quadrature building blocks: Gauss–Legendre rules, the rational map for
//! the semi-infinite radial axis, and compensated summation.
//!
//! All rules here are open (no endpoint nodes), which is what keeps the
//! degenerate spectral point xi = k_perp = 0 and the p = 0 regularization
//! boundary off every grid by construction.

/// Gauss–Legendre nodes and weights on (-1, 1).
///
/// Newton iteration on the Legendre recurrence; converges to machine
/// precision in < 10 iterations from the Chebyshev-like initial guess.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    // symmetric rule: compute one half, mirror the other
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_pair(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() <= 1e-15 * x.abs().max(1.0) {
                let (p2, d2) = legendre_pair(n, x);
                x -= p2 / d2;
                dp = d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// (P_n(x), P_n'(x)) via the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped affinely to (a, b).
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    (
        x.iter().map(|&t| mid + half * t).collect(),
        w.iter().map(|&wi| half * wi).collect(),
    )
}

/// Nodes/weights for ∫₀^∞ f(u) du under u = s·t/(1−t), t ∈ (0,1).
///
/// The rational map concentrates nodes near u ≈ s and stretches the tail,
/// matching integrands with algebraic prefactors and exponential decay.
pub fn radial_rule(n: usize, scale: f64) -> (Vec<f64>, Vec<f64>) {
    let (t, w) = gauss_legendre_on(n, 0.0, 1.0);
    let mut u = Vec::with_capacity(n);
    let mut wu = Vec::with_capacity(n);
    for i in 0..n {
        let one_m = 1.0 - t[i];
        u.push(scale * t[i] / one_m);
        wu.push(w[i] * scale / (one_m * one_m));
    }
    (u, wu)
}

/// Neumaier compensated accumulator. Summation order is fixed by the caller,
/// which is what makes results bit-reproducible across thread counts.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_integrates_polynomials_exactly() {
        // degree 2n-1 exactness
        let (x, w) = gauss_legendre(6);
        let int: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi.powi(10)).sum();
        assert!((int - 2.0 / 11.0).abs() < 1e-14, "{int}");
        let odd: f64 = x.iter().zip(&w).map(|(&xi, &wi)| wi * xi.powi(7)).sum();
        assert!(odd.abs() < 1e-15);
    }

    #[test]
    fn gl_weights_sum_to_interval_length() {
        for n in [2, 3, 8, 33, 128] {
            let (_, w) = gauss_legendre(n);
            let s: f64 = w.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n}: {s}");
        }
    }

    #[test]
    fn radial_rule_gamma_integral() {
        // ∫₀^∞ u² e^{-2u} du = 1/4
        let (u, w) = radial_rule(64, 1.0);
        let int: f64 = u
            .iter()
            .zip(&w)
            .map(|(&ui, &wi)| wi * ui * ui * (-2.0 * ui).exp())
            .sum();
        assert!((int - 0.25).abs() < 1e-12, "{int}");
    }

    #[test]
    fn neumaier_recovers_cancellation() {
        let mut acc = Neumaier::new();
        acc.add(1e16);
        acc.add(1.0);
        acc.add(-1e16);
        assert_eq!(acc.total(), 1.0);
    }
}
