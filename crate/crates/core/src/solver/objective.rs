use crate::data::{EgoNetwork, UserWordMatrix};
use crate::error::Result;
use crate::linalg::{gram, grouped_tri_products, spmm, spmm_t, DenseMatrix, FrobeniusNormSq};
use crate::solver::{check_dims, FactorSet, HyperParams};

/// The three unweighted terms of the objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveParts {
    /// `||S - U P^T||^2`
    pub content: f64,
    /// `||N - U V U^T||^2`
    pub network: f64,
    /// `||U||^2 + ||V||^2 + ||P||^2`
    pub regularizer: f64,
}

impl ObjectiveParts {
    pub fn total(&self, h: &HyperParams) -> f64 {
        h.alpha * self.content + h.beta * self.network + h.gamma * self.regularizer
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `||S - U P^T||^2` expanded around the stored entries of `S`:
/// `||S||^2 - 2 sum_S s_ij <U_i, P_j> + <U^T U, P^T P>`.
fn content_residual(s: &UserWordMatrix, f: &FactorSet, gram_u: &DenseMatrix) -> Result<f64> {
    let s = s.matrix();
    let mut cross = 0.0;
    for (i, j, v) in s.iter() {
        cross += v * dot(f.u.row(i), f.p.row(j));
    }
    let fit = gram_u.dot(&gram(&f.p))?;
    Ok((s.frobenius_norm_sq() - 2.0 * cross + fit).max(0.0))
}

/// `||N - U V U^T||^2 = ||N||^2 - 2 sum_N <U_i V, U_j> + <V, G V G>`
/// with `G = U^T U`.
fn network_residual(n: &EgoNetwork, f: &FactorSet, gram_u: &DenseMatrix) -> Result<f64> {
    let n = n.matrix();
    let uv = f.u.matmul(&f.v)?;
    let mut cross = 0.0;
    for (i, j, v) in n.iter() {
        cross += v * dot(uv.row(i), f.u.row(j));
    }
    let gvg = gram_u.matmul(&f.v)?.matmul(gram_u)?;
    let fit = f.v.dot(&gvg)?;
    Ok((n.frobenius_norm_sq() - 2.0 * cross + fit).max(0.0))
}

pub fn objective_parts(
    s: &UserWordMatrix,
    n: &EgoNetwork,
    f: &FactorSet,
) -> Result<ObjectiveParts> {
    check_dims(s, n, f)?;
    let g = gram(&f.u);
    Ok(ObjectiveParts {
        content: content_residual(s, f, &g)?,
        network: network_residual(n, f, &g)?,
        regularizer: f.u.frobenius_norm_sq() + f.v.frobenius_norm_sq() + f.p.frobenius_norm_sq(),
    })
}

/// `alpha ||S - U P^T||^2 + beta ||N - U V U^T||^2 + gamma (||U||^2 + ||V||^2 + ||P||^2)`,
/// without densifying `S` or `N`. Terms with zero weight are not evaluated.
pub fn objective(
    s: &UserWordMatrix,
    n: &EgoNetwork,
    f: &FactorSet,
    h: &HyperParams,
) -> Result<f64> {
    check_dims(s, n, f)?;
    let g = gram(&f.u);
    let mut total = h.gamma
        * (f.u.frobenius_norm_sq() + f.v.frobenius_norm_sq() + f.p.frobenius_norm_sq());
    if h.alpha != 0.0 {
        total += h.alpha * content_residual(s, f, &g)?;
    }
    if h.beta != 0.0 {
        total += h.beta * network_residual(n, f, &g)?;
    }
    Ok(total)
}

#[derive(Debug, Clone)]
pub struct Gradients {
    pub du: DenseMatrix,
    pub dv: DenseMatrix,
    pub dp: DenseMatrix,
}

/// Accumulates `sum c_i * M_i` into a fresh matrix, skipping zero weights.
fn combine(rows: usize, cols: usize, terms: &[(f64, &DenseMatrix)]) -> DenseMatrix {
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

/// Gradients of the objective with respect to `U`, `V`, and `P`.
pub fn gradients(
    s: &UserWordMatrix,
    n: &EgoNetwork,
    f: &FactorSet,
    h: &HyperParams,
) -> Result<Gradients> {
    check_dims(s, n, f)?;
    let (a, b, g) = (h.alpha, h.beta, h.gamma);
    let k = f.k();
    let tri = grouped_tri_products(n.matrix(), &f.u, &f.v)?;
    let sp = spmm(s.matrix(), &f.p)?;
    let st_u = spmm_t(s.matrix(), &f.u)?;
    let u_ptp = f.u.matmul(&gram(&f.p))?;
    let p_utu = f.p.matmul(&tri.gram_u)?;

    let du = combine(
        f.u.rows(),
        k,
        &[
            (-2.0 * a, &sp),
            (2.0 * a, &u_ptp),
            (-2.0 * b, &tri.nt_u_v),
            (-2.0 * b, &tri.n_u_vt),
            (2.0 * b, &tri.u_v_g_vt),
            (2.0 * b, &tri.u_vt_g_v),
            (2.0 * g, &f.u),
        ],
    );
    let dv = combine(
        k,
        k,
        &[(-2.0 * b, &tri.ut_n_u), (2.0 * b, &tri.g_v_g), (2.0 * g, &f.v)],
    );
    let dp = combine(
        f.p.rows(),
        k,
        &[(-2.0 * a, &st_u), (2.0 * a, &p_utu), (2.0 * g, &f.p)],
    );
    Ok(Gradients { du, dv, dp })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{load_ego_network, UserId};
    use crate::linalg::SparseMatrix;

    fn scalar_case(u: f64, v: f64) -> (UserWordMatrix, EgoNetwork, FactorSet) {
        let s = UserWordMatrix::from_sparse(SparseMatrix::from_triplets(1, 1, vec![(0, 0, 1.0)]).unwrap());
        let n = load_ego_network(1, &[]).unwrap();
        let one = |x: f64| DenseMatrix::from_vec(1, 1, vec![x]).unwrap();
        let f = FactorSet::new(one(u), one(v), one(1.0)).unwrap();
        (s, n, f)
    }

    fn unweighted() -> HyperParams {
        HyperParams {
            alpha: 1.0,
            beta: 1.0,
            gamma: 0.0,
            ..HyperParams::default()
        }
    }

    #[test]
    fn exact_factorization_is_zero() {
        let (s, n, f) = scalar_case(1.0, 0.0);
        assert_eq!(objective(&s, &n, &f, &unweighted()).unwrap(), 0.0);
        let grads = gradients(&s, &n, &f, &unweighted()).unwrap();
        for m in [&grads.du, &grads.dv, &grads.dp] {
            assert!(m.as_slice().iter().all(|&x| x == 0.0), "{m:?}");
        }
    }

    #[test]
    fn scalar_objective_by_direct_summation() {
        // (1 - 2*1)^2 + (0 - 2*1*2)^2 = 1 + 16
        let (s, n, f) = scalar_case(2.0, 1.0);
        assert_eq!(objective(&s, &n, &f, &unweighted()).unwrap(), 17.0);
    }

    #[test]
    fn zero_data_leaves_only_regularizer() {
        // with S = N = 0 the residuals are ||U P^T||^2 and ||U V U^T||^2, which
        // vanish when U = 0 or when both data weights are zero
        let s = UserWordMatrix::from_sparse(SparseMatrix::empty(3, 2));
        let n = load_ego_network(3, &[]).unwrap();
        let mut f = FactorSet::random(3, 2, 2, 4);
        let reg = |f: &FactorSet| {
            f.u.frobenius_norm_sq() + f.v.frobenius_norm_sq() + f.p.frobenius_norm_sq()
        };
        let weights_off = HyperParams {
            alpha: 0.0,
            beta: 0.0,
            gamma: 0.3,
            ..HyperParams::default()
        };
        assert_eq!(objective(&s, &n, &f, &weights_off).unwrap(), 0.3 * reg(&f));

        f.u = DenseMatrix::zeros(3, 2);
        let h = HyperParams {
            gamma: 0.3,
            ..HyperParams::default()
        };
        assert_eq!(objective(&s, &n, &f, &h).unwrap(), 0.3 * reg(&f));
    }

    #[test]
    fn content_disabled_gives_pure_regularizer_gradient_on_p() {
        let s = UserWordMatrix::from_sparse(
            SparseMatrix::from_triplets(3, 2, vec![(0, 1, 2.0), (2, 0, 1.5)]).unwrap(),
        );
        let n = load_ego_network(3, &[(UserId(1), UserId(0))]).unwrap();
        let f = FactorSet::random(3, 2, 2, 5);
        let h = HyperParams {
            alpha: 0.0,
            gamma: 0.25,
            ..HyperParams::default()
        };
        let g = gradients(&s, &n, &f, &h).unwrap();
        assert_eq!(g.dp, f.p.scale(2.0 * 0.25));
    }

    #[test]
    fn shape_mismatch_is_contract_error() {
        let (s, _, f) = scalar_case(1.0, 1.0);
        let n = load_ego_network(2, &[]).unwrap();
        assert!(objective(&s, &n, &f, &unweighted()).is_err());
        assert!(gradients(&s, &n, &f, &unweighted()).is_err());
    }
}
