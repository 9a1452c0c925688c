use crate::data::{EgoNetwork, UserWordMatrix};
use crate::error::{Error, Result};
use crate::linalg::{gram, grouped_tri_products, spmm, spmm_t, DenseMatrix};
use crate::solver::{check_dims, FactorSet, HyperParams};

/// `x_ij * sqrt(num_ij / (den_ij + eps))` for every entry.
fn sqrt_multiplicative(x: &DenseMatrix, num: &DenseMatrix, den: &DenseMatrix, eps: f64) -> DenseMatrix {
    let mut out = x.clone();
    for ((o, &n), &d) in out.as_mut_slice().iter_mut().zip(num.as_slice()).zip(den.as_slice()) {
        if *o != 0.0 {
            *o *= (n / (d + eps)).sqrt();
        }
    }
    out
}

/// `sum c_i * M_i` over terms with non-zero weight.
fn weighted_sum(rows: usize, cols: usize, terms: &[(f64, &DenseMatrix)]) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(rows, cols);
    for &(c, m) in terms {
        if c == 0.0 {
            continue;
        }
        for (o, x) in out.as_mut_slice().iter_mut().zip(m.as_slice()) {
            *o += c * x;
        }
    }
    out
}

/// One square-root multiplicative sweep over `U`, then `V`, then `P`. Each
/// block is updated against the latest values of the others, which keeps
/// every block update (and so the whole sweep) non-increasing in the
/// objective. `V` is returned as is when `beta == 0`, and `P` when
/// `alpha == 0`.
pub fn update_step(
    s: &UserWordMatrix,
    n: &EgoNetwork,
    f: &FactorSet,
    h: &HyperParams,
) -> Result<FactorSet> {
    check_dims(s, n, f)?;
    if !f.is_nonnegative() {
        return Err(Error::Contract(
            "multiplicative update needs non-negative factors".into(),
        ));
    }
    let (a, b, g) = (h.alpha, h.beta, h.gamma);
    let (users, k, words) = (f.num_users(), f.k(), f.num_words());

    let u = {
        let tri = grouped_tri_products(n.matrix(), &f.u, &f.v)?;
        let (sp, u_ptp) = if a != 0.0 {
            (spmm(s.matrix(), &f.p)?, f.u.matmul(&gram(&f.p))?)
        } else {
            (DenseMatrix::zeros(users, k), DenseMatrix::zeros(users, k))
        };
        let num = weighted_sum(users, k, &[(a, &sp), (b, &tri.nt_u_v), (b, &tri.n_u_vt)]);
        let den = weighted_sum(
            users,
            k,
            &[(a, &u_ptp), (b, &tri.u_v_g_vt), (b, &tri.u_vt_g_v), (g, &f.u)],
        );
        sqrt_multiplicative(&f.u, &num, &den, h.eps)
    };
    let gram_u = gram(&u);

    let v = if b != 0.0 {
        let ut_n_u = u.matmul_tn(&spmm(n.matrix(), &u)?)?;
        let g_v_g = gram_u.matmul(&f.v)?.matmul(&gram_u)?;
        let num = ut_n_u.scale(b);
        let den = weighted_sum(k, k, &[(b, &g_v_g), (g, &f.v)]);
        sqrt_multiplicative(&f.v, &num, &den, h.eps)
    } else {
        f.v.clone()
    };

    let p = if a != 0.0 {
        let num = spmm_t(s.matrix(), &u)?.scale(a);
        let p_utu = f.p.matmul(&gram_u)?;
        let den = weighted_sum(words, k, &[(a, &p_utu), (g, &f.p)]);
        sqrt_multiplicative(&f.p, &num, &den, h.eps)
    } else {
        f.p.clone()
    };

    Ok(FactorSet { u, v, p })
}
