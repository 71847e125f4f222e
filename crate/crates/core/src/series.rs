//! Truncated complex power series on the unit disk.
//!
//! This is the computational substrate for the matrix model: every matrix
//! column is the coefficient list of a rational function of degree one, so
//! plain O(N^2) Cauchy products and the reciprocal recurrence are exact up
//! to round-off and fast enough at the truncation sizes used here (N <= 512).

use std::cmp::min;
use std::f64::consts::TAU;
use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Taylor coefficients c_0..c_{N-1} of an analytic function at the origin.
///
/// Binary operations between series of different orders truncate to the
/// smaller order.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    /// The constant series c + 0*z + ... of the given order.
    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; order];
        if order > 0 {
            coeffs[0] = c;
        }
        Self { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::ONE, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of z^k, zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Horner evaluation of the truncated polynomial at z.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Coefficient-wise sum, truncated to the smaller order.
    pub fn series_add(&self, rhs: &Self) -> Self {
        let n = min(self.order(), rhs.order());
        Self {
            coeffs: (0..n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect(),
        }
    }

    /// Cauchy product, truncated to the smaller order.
    pub fn series_mul(&self, rhs: &Self) -> Self {
        let n = min(self.order(), rhs.order());
        let mut coeffs = vec![Complex64::ZERO; n];
        for (m, c) in coeffs.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for k in 0..=m {
                acc += self.coeffs[k] * rhs.coeffs[m - k];
            }
            *c = acc;
        }
        Self { coeffs }
    }

    /// Multiplicative inverse modulo z^N via the standard linear recurrence
    /// q_0 = 1/c_0, q_m = -(1/c_0) * sum_{k=1..m} c_k q_{m-k}.
    ///
    /// ```
    /// use compop_core::{PowerSeries, C64};
    /// // 1/(2 - z) = 1/2 + z/4 + z^2/8 + ...
    /// let p = PowerSeries::new(vec![C64::new(2.0, 0.0), C64::new(-1.0, 0.0), C64::ZERO]);
    /// let q = p.recip()?;
    /// assert!((q.coeff(2) - C64::new(0.125, 0.0)).norm() < 1e-15);
    /// # Ok::<(), compop_core::Error>(())
    /// ```
    pub fn recip(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0 == Complex64::ZERO {
            return Err(Error::DivisionBySingularSeries);
        }
        let n = self.order();
        let inv0 = c0.inv();
        let mut q = vec![Complex64::ZERO; n];
        q[0] = inv0;
        for m in 1..n {
            let mut acc = Complex64::ZERO;
            for k in 1..=m {
                acc += self.coeffs[k] * q[m - k];
            }
            q[m] = -inv0 * acc;
        }
        Ok(Self { coeffs: q })
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        self.series_add(rhs)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        self.series_mul(rhs)
    }
}

/// Taylor series of (alpha*z + beta) / (gamma*z + delta) to the given order.
///
/// The pole -delta/gamma must lie strictly outside the closed unit disk,
/// otherwise the Taylor series does not converge on the disk and the
/// expansion is refused.
pub fn lft_series(
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    delta: Complex64,
    order: usize,
) -> Result<PowerSeries> {
    if gamma == Complex64::ZERO && delta == Complex64::ZERO {
        return Err(Error::DivisionBySingularSeries);
    }
    if gamma != Complex64::ZERO {
        let modulus = (delta / gamma).norm();
        if modulus <= 1.0 {
            return Err(Error::PoleInsideDisk { modulus });
        }
    }
    let mut den = vec![Complex64::ZERO; order];
    if order > 0 {
        den[0] = delta;
    }
    if order > 1 {
        den[1] = gamma;
    }
    let inv_den = PowerSeries::new(den).recip()?;
    let mut num = vec![Complex64::ZERO; order];
    if order > 0 {
        num[0] = beta;
    }
    if order > 1 {
        num[1] = alpha;
    }
    Ok(PowerSeries::new(num).series_mul(&inv_den))
}

/// Parameters for coefficient extraction by sampling on a circle.
#[derive(Debug, Clone, Copy)]
pub struct SamplingParams {
    /// Radius of the sampling circle, 0 < radius < 1.
    pub radius: f64,
    /// Number of samples per requested coefficient; at least 4.
    pub oversample: usize,
}

impl Default for SamplingParams {
    fn default() -> Self {
        Self {
            radius: 0.95,
            oversample: 8,
        }
    }
}

/// Extracts Taylor coefficients of `f` (analytic on |z| <= radius) by
/// discrete Fourier inversion on M = oversample * order equispaced samples:
/// c_m ~ (1/M) sum_j f(r w^j) w^{-jm} / r^m with w = exp(2 pi i / M).
///
/// Exact recurrences are preferred wherever the function is rational; this
/// is for pullbacks such as the eigenfunction candidates, which are not.
/// Accuracy degrades for coefficients whose index approaches `order` when
/// the coefficient sequence decays slowly; the default oversampling keeps
/// the aliasing error at the r^M scale.
pub fn taylor_via_sampling<F>(f: F, order: usize, params: SamplingParams) -> PowerSeries
where
    F: Fn(Complex64) -> Complex64,
{
    assert!(
        params.radius > 0.0 && params.radius < 1.0,
        "sampling radius must lie in (0, 1)"
    );
    assert!(params.oversample >= 4, "need at least 4x oversampling");
    if order == 0 {
        return PowerSeries::new(Vec::new());
    }
    let m_samples = params.oversample * order;
    let r = params.radius;

    // Roots of unity table: w^k for k < M.
    let omega: Vec<Complex64> = (0..m_samples)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / m_samples as f64))
        .collect();
    let values: Vec<Complex64> = (0..m_samples).map(|j| f(r * omega[j])).collect();

    let mut coeffs = vec![Complex64::ZERO; order];
    let mut r_pow = 1.0;
    for (m, c) in coeffs.iter_mut().enumerate() {
        let mut acc = Complex64::ZERO;
        for (j, &v) in values.iter().enumerate() {
            // w^{-jm} = conj(w^{jm})
            acc += v * omega[(j * m) % m_samples].conj();
        }
        *c = acc / (m_samples as f64 * r_pow);
        r_pow *= r;
    }
    PowerSeries::new(coeffs)
}
