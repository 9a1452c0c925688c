//! Dense and compressed-row sparse matrices plus the product kernels one
//! solver iteration needs.
//!
//! Every kernel keeps intermediates no larger than `max(rows, k) x k`, so a
//! full update costs `O((w + m) k^2 + nnz k)`.

mod dense;
mod kernels;
mod sparse;

pub use dense::DenseMatrix;
pub use kernels::{gram, grouped_tri_products, spmm, spmm_t, TriProducts};
pub use sparse::SparseMatrix;

/// Squared Frobenius norm, `sum_ij x_ij^2`.
pub trait FrobeniusNormSq {
    fn frobenius_norm_sq(&self) -> f64;
}

pub fn frobenius_norm_sq<M: FrobeniusNormSq + ?Sized>(matrix: &M) -> f64 {
    matrix.frobenius_norm_sq()
}

impl FrobeniusNormSq for DenseMatrix {
    fn frobenius_norm_sq(&self) -> f64 {
        self.as_slice().iter().map(|v| v * v).sum()
    }
}

impl FrobeniusNormSq for SparseMatrix {
    fn frobenius_norm_sq(&self) -> f64 {
        self.values().iter().map(|v| v * v).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_of_row_vector() {
        let m = DenseMatrix::from_rows(&[vec![3.0, 4.0]]).unwrap();
        assert_eq!(frobenius_norm_sq(&m), 25.0);
    }

    #[test]
    fn frobenius_of_zero() {
        assert_eq!(frobenius_norm_sq(&DenseMatrix::zeros(4, 3)), 0.0);
        assert_eq!(frobenius_norm_sq(&SparseMatrix::empty(4, 3)), 0.0);
    }

    #[test]
    fn sparse_and_dense_norms_agree() {
        let s = SparseMatrix::from_triplets(2, 3, vec![(0, 1, 2.0), (1, 2, 0.5)]).unwrap();
        assert_eq!(s.frobenius_norm_sq(), s.to_dense().frobenius_norm_sq());
    }
}
