//! Small shared linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

/// Column means of a samples-by-features matrix.
pub(crate) fn column_means(x: &DMatrix<f64>) -> DVector<f64> {
    x.row_mean().transpose()
}

/// Center rows around their column means; returns (mean, centered).
pub(crate) fn center_rows(x: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let mean = column_means(x);
    let mut centered = x.clone();
    for mut row in centered.row_iter_mut() {
        for (j, v) in row.iter_mut().enumerate() {
            *v -= mean[j];
        }
    }
    (mean, centered)
}

/// Sample covariance (n-1 denominator) of rows. Requires n >= 2.
pub(crate) fn sample_covariance(x: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let n = x.nrows();
    debug_assert!(n >= 2);
    let (mean, centered) = center_rows(x);
    let cov = centered.transpose() * &centered / (n as f64 - 1.0);
    (mean, cov)
}

/// Eigen-decomposition of a symmetric matrix with eigenvalues sorted in
/// non-increasing order. The input is symmetrized as (A + A^T)/2 to guard
/// against round-off asymmetry. Eigenvector columns are sign-fixed.
pub(crate) fn sym_eigen_desc(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let sym = (a + a.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let m = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(eig.eigenvectors.nrows(), m);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
        fix_column_sign(&mut vectors, dst);
    }
    (values, vectors)
}

/// Orient a column so that its largest-magnitude entry is positive.
/// Ties go to the earliest index, which makes the orientation stable.
pub(crate) fn fix_column_sign(m: &mut DMatrix<f64>, col: usize) {
    let column = m.column(col);
    let mut lead = 0usize;
    let mut best = f64::NEG_INFINITY;
    for (i, v) in column.iter().enumerate() {
        if v.abs() > best {
            best = v.abs();
            lead = i;
        }
    }
    if m[(lead, col)] < 0.0 {
        for i in 0..m.nrows() {
            m[(i, col)] = -m[(i, col)];
        }
    }
}

/// FNV-1a over a byte stream; used for cheap content checksums.
pub(crate) struct Fnv1a(u64);

impl Fnv1a {
    pub(crate) fn new() -> Self {
        Fnv1a(0xcbf2_9ce4_8422_2325)
    }

    pub(crate) fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }

    pub(crate) fn write_f64(&mut self, v: f64) {
        self.write(&v.to_bits().to_le_bytes());
    }

    pub(crate) fn finish(&self) -> u64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_sorted_and_sign_fixed() {
        // diag(1, 3, 2) has eigenpairs on the canonical axes.
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 3.0, 2.0]));
        let (vals, vecs) = sym_eigen_desc(&a);
        assert!((vals[0] - 3.0).abs() < 1e-12);
        assert!((vals[1] - 2.0).abs() < 1e-12);
        assert!((vals[2] - 1.0).abs() < 1e-12);
        assert!((vecs[(1, 0)] - 1.0).abs() < 1e-12);
        assert!((vecs[(2, 1)] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn covariance_of_two_points() {
        let x = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 2.0, 2.0]);
        let (mean, cov) = sample_covariance(&x);
        assert_eq!(mean.as_slice(), &[1.0, 1.0]);
        // each entry is (1*1 + 1*1) / 1 = 2
        assert!((cov[(0, 0)] - 2.0).abs() < 1e-12);
        assert!((cov[(0, 1)] - 2.0).abs() < 1e-12);
    }
}
