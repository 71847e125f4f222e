//! Thin dense linear algebra helpers over faer: singular values and
//! eigenvalues of complex matrices in the row-major layout used by the
//! truncated operators.

use faer::Mat;
use num_complex::Complex64;

/// Builds a faer matrix from a row-major slice.
pub fn mat_from_row_major(rows: usize, cols: usize, data: &[Complex64]) -> Mat<Complex64> {
    assert_eq!(data.len(), rows * cols);
    Mat::from_fn(rows, cols, |i, j| data[i * cols + j])
}

/// Singular values in descending order.
pub fn singular_values(m: &Mat<Complex64>) -> Vec<f64> {
    let svd = m.svd().expect("SVD of a finite matrix should converge");
    let s = svd.S();
    (0..m.nrows().min(m.ncols())).map(|k| s[k].re).collect()
}

pub fn sigma_max(m: &Mat<Complex64>) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Eigenvalues of a square complex matrix, in no particular order.
pub fn eigenvalues(m: &Mat<Complex64>) -> Vec<Complex64> {
    m.eigenvalues()
        .expect("eigendecomposition of a finite matrix should converge")
}

/// Largest entrywise modulus over the leading `block` x `block` corner.
pub fn corner_max_abs(m: &Mat<Complex64>, block: usize) -> f64 {
    let k = block.min(m.nrows()).min(m.ncols());
    let mut best: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            best = best.max(m[(i, j)].norm());
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_values_of_diagonal() {
        let m = Mat::from_fn(3, 3, |i, j| {
            if i == j {
                Complex64::new((i + 1) as f64, 0.0)
            } else {
                Complex64::ZERO
            }
        });
        let s = singular_values(&m);
        assert!((s[0] - 3.0).abs() < 1e-14);
        assert!((s[2] - 1.0).abs() < 1e-14);
        assert!((sigma_max(&m) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_of_upper_triangular() {
        let m = mat_from_row_major(
            2,
            2,
            &[
                Complex64::new(2.0, 1.0),
                Complex64::new(5.0, -3.0),
                Complex64::ZERO,
                Complex64::new(-1.0, 0.5),
            ],
        );
        let mut ev = eigenvalues(&m);
        ev.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap());
        assert!((ev[0] - Complex64::new(-1.0, 0.5)).norm() < 1e-12);
        assert!((ev[1] - Complex64::new(2.0, 1.0)).norm() < 1e-12);
    }
}
