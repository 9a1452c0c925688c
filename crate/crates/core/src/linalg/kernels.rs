use crate::error::{ensure, Result};
use crate::linalg::{DenseMatrix, SparseMatrix};

/// `A * B` for sparse `A`; cost `O(nnz(A) * B.cols)`.
pub fn spmm(a: &SparseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    ensure!(
        a.cols() == b.rows(),
        Contract,
        "spmm shape mismatch: {:?} x {:?}",
        a.shape(),
        b.shape()
    );
    let mut out = DenseMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        let (cols, vals) = a.row(i);
        let out_row = out.row_mut(i);
        for (&j, &v) in cols.iter().zip(vals) {
            for (o, &x) in out_row.iter_mut().zip(b.row(j)) {
                *o += v * x;
            }
        }
    }
    Ok(out)
}

/// `A^T * B` for sparse `A`, scattering rows so `A^T` is never built.
pub fn spmm_t(a: &SparseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    ensure!(
        a.rows() == b.rows(),
        Contract,
        "spmm_t shape mismatch: {:?}^T x {:?}",
        a.shape(),
        b.shape()
    );
    let mut out = DenseMatrix::zeros(a.cols(), b.cols());
    for i in 0..a.rows() {
        let (cols, vals) = a.row(i);
        let b_row = b.row(i);
        for (&j, &v) in cols.iter().zip(vals) {
            for (o, &x) in out.row_mut(j).iter_mut().zip(b_row) {
                *o += v * x;
            }
        }
    }
    Ok(out)
}

/// `X^T X`. Only the upper triangle is accumulated and then mirrored, so the
/// result is exactly symmetric.
pub fn gram(x: &DenseMatrix) -> DenseMatrix {
    let k = x.cols();
    let mut out = DenseMatrix::zeros(k, k);
    for r in 0..x.rows() {
        let row = x.row(r);
        for a in 0..k {
            let xa = row[a];
            if xa == 0.0 {
                continue;
            }
            let out_row = out.row_mut(a);
            for b in a..k {
                out_row[b] += xa * row[b];
            }
        }
    }
    for a in 0..k {
        for b in 0..a {
            let v = out.get(b, a);
            out.set(a, b, v);
        }
    }
    out
}

/// The six network-side products of one update, each bracketed so that no
/// intermediate is larger than `max(n, k) x k`.
#[derive(Debug, Clone)]
pub struct TriProducts {
    /// `N^T U V`
    pub nt_u_v: DenseMatrix,
    /// `N U V^T`
    pub n_u_vt: DenseMatrix,
    /// `U^T N U`
    pub ut_n_u: DenseMatrix,
    /// `U (V (U^T U) V^T)`
    pub u_v_g_vt: DenseMatrix,
    /// `U (V^T (U^T U) V)`
    pub u_vt_g_v: DenseMatrix,
    /// `(U^T U) V (U^T U)`
    pub g_v_g: DenseMatrix,
    /// `U^T U`, shared by callers that need it again.
    pub gram_u: DenseMatrix,
}

pub fn grouped_tri_products(
    n: &SparseMatrix,
    u: &DenseMatrix,
    v: &DenseMatrix,
) -> Result<TriProducts> {
    let size = u.rows();
    let k = u.cols();
    ensure!(
        n.shape() == (size, size),
        Contract,
        "network is {:?} but U has {size} rows",
        n.shape()
    );
    v.check_shape(k, k, "V")?;

    let g = gram(u);
    let vt = v.transpose();
    let uv = u.matmul(v)?;
    let uvt = u.matmul(&vt)?;

    let nt_u_v = spmm_t(n, &uv)?;
    let n_u_vt = spmm(n, &uvt)?;
    let ut_n_u = u.matmul_tn(&spmm(n, u)?)?;

    let gv = g.matmul(v)?;
    let v_g_vt = v.matmul(&g)?.matmul(&vt)?;
    let vt_g_v = vt.matmul(&gv)?;
    let u_v_g_vt = u.matmul(&v_g_vt)?;
    let u_vt_g_v = u.matmul(&vt_g_v)?;
    let g_v_g = gv.matmul(&g)?;

    Ok(TriProducts {
        nt_u_v,
        n_u_vt,
        ut_n_u,
        u_v_g_vt,
        u_vt_g_v,
        g_v_g,
        gram_u: g,
    })
}
