#![allow(dead_code)]
//! Shared test oracles, independent of the library's computational paths.

use num_complex::Complex64;

/// Adaptive Simpson quadrature for complex-valued integrands on [a, b].
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    fn simpson<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Complex64 {
        let mid = 0.5 * (a + b);
        (b - a) / 6.0 * (f(a) + 4.0 * f(mid) + f(b))
    }
    fn recurse<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let mid = 0.5 * (a + b);
        let left = simpson(f, a, mid);
        let right = simpson(f, mid, b);
        let delta = left + right - whole;
        if depth == 0 || delta.norm() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, mid, left, tol / 2.0, depth - 1)
            + recurse(f, mid, b, right, tol / 2.0, depth - 1)
    }
    recurse(f, a, b, simpson(f, a, b), tol, 40)
}

/// Boundary-line inner product (1/2pi) * integral over the imaginary axis
/// of f(iy) conj(g(iy)) dy, evaluated by adaptive panels out to |y| = 1e4
/// plus the analytic tail of the 1/(1+y^2) envelope. For unit-scale
/// integrands of the basis-product form the result is accurate to about
/// 1e-7, comfortably below the 1e-6 orthonormality target.
pub fn boundary_inner_product<F, G>(f: F, g: G) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
    G: Fn(Complex64) -> Complex64,
{
    const CUTOFF: f64 = 1e4;
    let integrand = |y: f64| {
        let w = Complex64::new(0.0, y);
        f(w) * g(w).conj() / std::f64::consts::TAU
    };
    let mut total = Complex64::ZERO;
    // log-spaced panels: fine near the origin where the phase turns fastest
    let mut edges = vec![0.0f64, 0.5, 1.0];
    let mut edge = 1.0;
    while edge < CUTOFF {
        edge = (edge * 2.0).min(CUTOFF);
        edges.push(edge);
    }
    for pair in edges.windows(2) {
        total += adaptive_simpson(&integrand, pair[0], pair[1], 1e-11);
        total += adaptive_simpson(&integrand, -pair[1], -pair[0], 1e-11);
    }
    // analytic tail: the integrand behaves like (1/pi)/(1+y^2) with a
    // unimodular factor that tends to 1 at both ends
    let tail = (2.0 / std::f64::consts::PI) * (std::f64::consts::FRAC_PI_2 - CUTOFF.atan());
    total + Complex64::new(tail, 0.0)
}

/// Deterministic pseudo-random generator for test sweeps (splitmix64).
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }
}
