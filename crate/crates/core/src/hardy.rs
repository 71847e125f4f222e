//! The Hardy-space engine: orthonormal basis of the half-plane Hardy space,
//! reproducing kernels, coefficient expansions and truncated operator
//! matrices.
//!
//! The basis is the Cayley image of the disk monomials,
//!
//!   e_n(w) = sqrt(2) * (w - 1)^n / (w + 1)^{n+1},
//!
//! orthonormal for the inner product (1/2pi) * integral of f(iy) conj(g(iy))
//! over the boundary line. That pairing is the one for which the kernels
//! k_alpha(w) = 1/(w + conj(alpha)) reproduce point evaluations, so
//! ||k_alpha||^2 = 1/(2 Re alpha) and the basis expansion of k_alpha has
//! coefficients conj(e_n(alpha)). All matrix truncations below are taken
//! against this basis.
//!
//! Matrix convention: columns index the input basis vector, rows the output
//! coefficients, entries A[m][n] = <C_phi e_n, e_m>. A coefficient vector v
//! of a function f therefore transforms as v -> A v, and the matrix of the
//! adjoint operator at every truncation size is exactly the conjugate
//! transpose of A.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::series::{taylor_via_sampling, SamplingParams};
use crate::symbol::{cayley, AffineSymbol};

/// Normalization of the Cayley-image basis.
pub const BASIS_NORMALIZATION: f64 = std::f64::consts::SQRT_2;

/// Evaluates e_n(w) = sqrt(2) (w-1)^n / (w+1)^{n+1} by repeated
/// multiplication of the ratio (w-1)/(w+1).
pub fn eval_basis(n: usize, w: Complex64) -> Complex64 {
    let one = Complex64::ONE;
    let ratio = (w - one) / (w + one);
    let mut value = Complex64::new(BASIS_NORMALIZATION, 0.0) / (w + one);
    for _ in 0..n {
        value *= ratio;
    }
    value
}

/// Squared norm of the reproducing kernel at alpha: 1/(2 Re alpha).
pub fn kernel_norm_squared(alpha: Complex64) -> f64 {
    1.0 / (2.0 * alpha.re)
}

/// Evaluates the reproducing kernel k_alpha(w) = 1/(w + conj(alpha)).
pub fn eval_kernel(alpha: Complex64, w: Complex64) -> Complex64 {
    (w + alpha.conj()).inv()
}

/// Inner product of coefficient vectors, linear in the first argument:
/// sum_n u_n conj(v_n).
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter()
        .zip(v.iter())
        .map(|(x, y)| x * y.conj())
        .sum()
}

/// The first N basis coefficients of the reproducing kernel at alpha:
/// c_n = conj(e_n(alpha)).
#[derive(Debug, Clone, PartialEq)]
pub struct KernelVector {
    alpha: Complex64,
    coeffs: Vec<Complex64>,
}

impl KernelVector {
    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Partial sums of sum |c_n|^2; they increase to 1/(2 Re alpha).
    pub fn partial_norm_squared(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.coeffs
            .iter()
            .map(|c| {
                acc += c.norm_sqr();
                acc
            })
            .collect()
    }
}

/// Expansion coefficients of k_alpha, requiring Re(alpha) > 0.
pub fn kernel_vector(alpha: Complex64, n: usize) -> Result<KernelVector> {
    if alpha.re.is_nan() || alpha.re <= 0.0 {
        return Err(Error::PointNotInHalfPlane(alpha));
    }
    let one = Complex64::ONE;
    let ratio = ((alpha - one) / (alpha + one)).conj();
    let mut coeffs = Vec::with_capacity(n);
    let mut value = (Complex64::new(BASIS_NORMALIZATION, 0.0) / (alpha + one)).conj();
    for _ in 0..n {
        coeffs.push(value);
        value *= ratio;
    }
    Ok(KernelVector { alpha, coeffs })
}

/// Basis coefficients of an arbitrary analytic function on the half-plane,
/// computed by pulling back through the Cayley transform and sampling:
/// the expansion of f in (e_n) equals the Taylor expansion of
/// sqrt(2)/(1 - z) * f(gamma(z)) at the origin.
pub fn expand_in_basis<F>(f: F, order: usize, params: SamplingParams) -> Vec<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let pullback = |z: Complex64| {
        Complex64::new(BASIS_NORMALIZATION, 0.0) / (Complex64::ONE - z) * f(cayley(z))
    };
    taylor_via_sampling(pullback, order, params).into_coeffs()
}

/// The N x N compression of a composition operator against the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    symbol: AffineSymbol,
    size: usize,
    /// Row-major entries, A[m][n] = entries[m * size + n].
    entries: Vec<Complex64>,
}

impl TruncatedOperator {
    /// Assembles the matrix of C_phi at truncation size N >= 1.
    ///
    /// Column n holds the Taylor coefficients of h * Phi^n from the disk
    /// model, built iteratively from column n-1 by one series product. The
    /// disk-model pole lies strictly outside the closed disk for every
    /// admissible symbol, so the expansion cannot fail.
    pub fn assemble(symbol: &AffineSymbol, size: usize) -> Self {
        assert!(size >= 1, "truncation size must be at least 1");
        let model = symbol.disk_model();
        let phi = model
            .phi_series(size)
            .expect("admissible symbols keep the disk-model pole outside the closed disk");
        let weight = model
            .weight_series(size)
            .expect("admissible symbols keep the disk-model pole outside the closed disk");

        let mut entries = vec![Complex64::ZERO; size * size];
        let mut column = weight;
        for n in 0..size {
            if n > 0 {
                column = column.series_mul(&phi);
            }
            for m in 0..size {
                entries[m * size + n] = column.coeff(m);
            }
        }
        Self {
            symbol: *symbol,
            size,
            entries,
        }
    }

    /// Reconstructs an operator from parts, checking the shape.
    pub fn from_parts(symbol: AffineSymbol, size: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::DimensionMismatch {
                expected: size * size,
                got: entries.len(),
            });
        }
        Ok(Self {
            symbol,
            size,
            entries,
        })
    }

    pub fn symbol(&self) -> &AffineSymbol {
        &self.symbol
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.size + col]
    }

    /// Matrix-vector product under the documented convention: v holds
    /// coefficients of the input function, the result holds coefficients of
    /// its image under the operator.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                got: v.len(),
            });
        }
        let mut out = vec![Complex64::ZERO; self.size];
        for (m, slot) in out.iter_mut().enumerate() {
            let row = &self.entries[m * self.size..(m + 1) * self.size];
            let mut acc = Complex64::ZERO;
            for (x, y) in row.iter().zip(v.iter()) {
                acc += x * y;
            }
            *slot = acc;
        }
        Ok(out)
    }

    /// Largest singular value of the truncation. Nondecreasing in the size
    /// and bounded by the operator norm sqrt(1/a).
    pub fn operator_norm(&self) -> f64 {
        linalg::sigma_max(&self.to_mat())
    }

    /// ell^2 norm of column n (the truncated coefficient vector of
    /// C_phi e_n).
    pub fn column_norm(&self, n: usize) -> f64 {
        (0..self.size)
            .map(|m| self.entry(m, n).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn to_mat(&self) -> faer::Mat<Complex64> {
        linalg::mat_from_row_major(self.size, self.size, &self.entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::AffineSymbol;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sym(a: f64, re_b: f64, im_b: f64) -> AffineSymbol {
        AffineSymbol::new(a, c(re_b, im_b)).unwrap()
    }

    #[test]
    fn basis_at_one() {
        // e_0(1) = sqrt(2)/2, e_n(1) = 0 for n >= 1
        let v = eval_basis(0, c(1.0, 0.0));
        assert!((v - c(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        for n in 1..5 {
            assert_eq!(eval_basis(n, c(1.0, 0.0)), Complex64::ZERO);
        }
    }

    #[test]
    fn kernel_series_reconstructs_kernel() {
        let alpha = c(1.0, 1.0);
        let w = c(2.0, 0.0);
        let sum: Complex64 = (0..200)
            .map(|n| eval_basis(n, alpha).conj() * eval_basis(n, w))
            .sum();
        assert!((sum - eval_kernel(alpha, w)).norm() < 1e-8);
    }

    #[test]
    fn kernel_vector_at_one_is_proportional_to_e0() {
        let kv = kernel_vector(c(1.0, 0.0), 8).unwrap();
        assert!((kv.coeffs()[0] - c(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        for n in 1..8 {
            assert_eq!(kv.coeffs()[n], Complex64::ZERO);
        }
        let partial = kv.partial_norm_squared();
        assert!((partial.last().unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn kernel_vector_partial_norms_increase_to_closed_form() {
        let alpha = c(0.7, -1.3);
        let kv = kernel_vector(alpha, 400).unwrap();
        let partial = kv.partial_norm_squared();
        for pair in partial.windows(2) {
            assert!(pair[1] >= pair[0]);
        }
        assert!((partial.last().unwrap() - kernel_norm_squared(alpha)).abs() < 1e-10);
    }

    #[test]
    fn kernel_inner_products_match_closed_form() {
        // <k_beta, k_alpha> = 1/(alpha + conj(beta)) = value of k_beta at alpha;
        // with alpha = 1, beta = 2 + i the expansion converges to 1/(3 + i)
        let alpha = c(1.0, 0.0);
        let beta = c(2.0, 1.0);
        let ka = kernel_vector(alpha, 300).unwrap();
        let kb = kernel_vector(beta, 300).unwrap();
        let got = inner(ka.coeffs(), kb.coeffs());
        assert!((got - c(3.0, 1.0).inv()).norm() < 1e-12);
    }

    #[test]
    fn kernel_vector_requires_half_plane_point() {
        assert!(matches!(
            kernel_vector(c(-0.1, 2.0), 4),
            Err(Error::PointNotInHalfPlane(_))
        ));
        assert!(matches!(
            kernel_vector(c(0.0, 1.0), 4),
            Err(Error::PointNotInHalfPlane(_))
        ));
    }

    #[test]
    fn sampling_expansion_matches_exact_kernel_coefficients() {
        let alpha = c(1.3, 0.4);
        let exact = kernel_vector(alpha, 32).unwrap();
        let sampled = expand_in_basis(
            |w| eval_kernel(alpha, w),
            32,
            SamplingParams::default(),
        );
        for (e, s) in exact.coeffs().iter().zip(sampled.iter()) {
            assert!((e - s).norm() < 1e-10);
        }
    }

    #[test]
    fn identity_symbol_assembles_to_identity_matrix() {
        let t = TruncatedOperator::assemble(&AffineSymbol::identity(), 16);
        for m in 0..16 {
            for n in 0..16 {
                let expected = if m == n { Complex64::ONE } else { Complex64::ZERO };
                assert_eq!(t.entry(m, n), expected);
            }
        }
        assert_eq!(t.operator_norm(), 1.0);
    }

    #[test]
    fn self_adjoint_symbol_gives_real_symmetric_matrix() {
        let t = TruncatedOperator::assemble(&sym(1.0, 2.0, 0.0), 64);
        for m in 0..64 {
            for n in 0..64 {
                assert!(t.entry(m, n).im.abs() < 1e-12);
                assert!((t.entry(m, n) - t.entry(n, m)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn kernel_at_one_is_an_eigenvector_for_two_w_plus_one() {
        let t = TruncatedOperator::assemble(&sym(2.0, 1.0, 0.0), 64);
        let v = kernel_vector(c(1.0, 0.0), 64).unwrap().into_coeffs();
        let av = t.apply(&v).unwrap();
        for (x, y) in av.iter().zip(v.iter()) {
            assert!((x - 0.5 * y).norm() < 1e-10);
        }
    }

    #[test]
    fn apply_is_linear_and_checks_dimensions() {
        let t = TruncatedOperator::assemble(&sym(1.0, 1.0, 1.0), 24);
        let u: Vec<Complex64> = (0..24).map(|k| c(1.0 / (k + 1) as f64, 0.3 * k as f64)).collect();
        let v: Vec<Complex64> = (0..24).map(|k| c(0.1 * k as f64, -1.0 / (k + 2) as f64)).collect();
        let sum: Vec<Complex64> = u.iter().zip(v.iter()).map(|(x, y)| x + y).collect();
        let lhs = t.apply(&sum).unwrap();
        let au = t.apply(&u).unwrap();
        let av = t.apply(&v).unwrap();
        for k in 0..24 {
            assert!((lhs[k] - (au[k] + av[k])).norm() < 1e-13);
        }
        assert!(matches!(
            t.apply(&u[..10]),
            Err(Error::DimensionMismatch { expected: 24, got: 10 })
        ));
    }

    #[test]
    fn column_norms_respect_operator_norm_bound() {
        for s in [sym(2.0, 1.0, 1.0), sym(0.5, 0.3, -0.7), sym(1.0, 2.0, 3.0)] {
            let t = TruncatedOperator::assemble(&s, 48);
            let bound = (1.0 / s.a()).sqrt() + 1e-9;
            for n in 0..48 {
                assert!(t.column_norm(n) <= bound);
            }
        }
    }
}
