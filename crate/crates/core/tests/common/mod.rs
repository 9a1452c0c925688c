//! Naive reference implementations and random instance builders shared by
//! the integration tests. The oracles work on plain nested vectors so they
//! share no code with the library kernels.

#![allow(dead_code)]

use foci::data::{load_ego_network, EgoNetwork, UserId, UserWordMatrix};
use foci::linalg::{DenseMatrix, SparseMatrix};
use foci::solver::FactorSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Mat = Vec<Vec<f64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn dense_rows(m: &DenseMatrix) -> Mat {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect()
}

pub fn sparse_rows(m: &SparseMatrix) -> Mat {
    let mut out = vec![vec![0.0; m.cols()]; m.rows()];
    for (i, j, v) in m.iter() {
        out[i][j] = v;
    }
    out
}

pub fn transpose(a: &Mat) -> Mat {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Triple-loop product; `inner` is passed explicitly so empty operands work.
pub fn mul(a: &Mat, b: &Mat, inner: usize, cols: usize) -> Mat {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|t| row[t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn frob_sq(a: &Mat) -> f64 {
    a.iter().flatten().map(|x| x * x).sum()
}

/// `||a - b||_F / ||b||_F`, or the absolute error when `b` is zero.
pub fn rel_frob_err(a: &DenseMatrix, b: &Mat) -> f64 {
    let a = dense_rows(a);
    assert_eq!(a.len(), b.len(), "row count");
    let mut diff = 0.0;
    for (ra, rb) in a.iter().zip(b) {
        assert_eq!(ra.len(), rb.len(), "column count");
        for (x, y) in ra.iter().zip(rb) {
            diff += (x - y) * (x - y);
        }
    }
    let norm = frob_sq(b).sqrt();
    if norm == 0.0 {
        diff.sqrt()
    } else {
        diff.sqrt() / norm
    }
}

pub fn random_dense(rng: &mut impl Rng, rows: usize, cols: usize) -> DenseMatrix {
    DenseMatrix::from_fn(rows, cols, |_, _| rng.random::<f64>())
}

pub fn random_sparse(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> SparseMatrix {
    let mut t = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if rng.random_bool(density) {
                t.push((i, j, rng.random_range(0.1..3.0)));
            }
        }
    }
    SparseMatrix::from_triplets(rows, cols, t).unwrap()
}

pub fn random_network(rng: &mut impl Rng, size: usize, density: f64) -> EgoNetwork {
    let mut edges = Vec::new();
    for from in 0..size {
        for to in 0..size {
            if from != to && rng.random_bool(density) {
                edges.push((UserId(from), UserId(to)));
            }
        }
    }
    load_ego_network(size, &edges).unwrap()
}

/// Random content, network, and factors for `size` users and `words` words.
pub fn random_problem(
    rng: &mut impl Rng,
    size: usize,
    words: usize,
    k: usize,
) -> (UserWordMatrix, EgoNetwork, FactorSet) {
    let s = UserWordMatrix::from_sparse(random_sparse(rng, size, words, 0.3));
    let n = random_network(rng, size, 0.3);
    let f = FactorSet::new(
        random_dense(rng, size, k),
        random_dense(rng, k, k),
        random_dense(rng, words, k),
    )
    .unwrap();
    (s, n, f)
}

/// Objective by direct summation over every entry of the dense residuals.
pub fn naive_objective(
    s: &UserWordMatrix,
    n: &EgoNetwork,
    f: &FactorSet,
    alpha: f64,
    beta: f64,
    gamma: f64,
) -> f64 {
    let (u, v, p) = (dense_rows(&f.u), dense_rows(&f.v), dense_rows(&f.p));
    let (size, k, words) = (u.len(), v.len(), p.len());
    let s = sparse_rows(s.matrix());
    let n = sparse_rows(n.matrix());
    let upt = mul(&u, &transpose(&p), k, words);
    let uvut = mul(&mul(&u, &v, k, k), &transpose(&u), k, size);
    let mut content = 0.0;
    for i in 0..size {
        for j in 0..words {
            content += (s[i][j] - upt[i][j]).powi(2);
        }
    }
    let mut network = 0.0;
    for i in 0..size {
        for j in 0..size {
            network += (n[i][j] - uvut[i][j]).powi(2);
        }
    }
    alpha * content + beta * network + gamma * (frob_sq(&u) + frob_sq(&v) + frob_sq(&p))
}

/// Harmonic number `H_n`.
pub fn harmonic(n: usize) -> f64 {
    (1..=n).map(|i| 1.0 / i as f64).sum()
}
