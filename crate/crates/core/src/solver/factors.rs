use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{ensure, Error, Result};
use crate::linalg::DenseMatrix;

/// Latent memberships: users `U` (`(m+1) x k`), foci correlations `V`
/// (`k x k`), and words `P` (`w x k`).
#[derive(Debug, Clone, PartialEq)]
pub struct FactorSet {
    pub u: DenseMatrix,
    pub v: DenseMatrix,
    pub p: DenseMatrix,
}

impl FactorSet {
    pub fn new(u: DenseMatrix, v: DenseMatrix, p: DenseMatrix) -> Result<Self> {
        let k = u.cols();
        v.check_shape(k, k, "V")?;
        ensure!(p.cols() == k, Contract, "P has {} columns, expected {k}", p.cols());
        Ok(FactorSet { u, v, p })
    }

    /// Entries i.i.d. uniform on `(0.01, 1.01)`, filled `U`, then `V`, then `P`.
    pub fn random(users: usize, words: usize, k: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |rows, cols| {
            DenseMatrix::from_fn(rows, cols, |_, _| 0.01 + rng.random::<f64>())
        };
        let u = draw(users, k);
        let v = draw(k, k);
        let p = draw(words, k);
        FactorSet { u, v, p }
    }

    pub fn k(&self) -> usize {
        self.u.cols()
    }

    pub fn num_users(&self) -> usize {
        self.u.rows()
    }

    pub fn num_words(&self) -> usize {
        self.p.rows()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.u.is_nonnegative() && self.v.is_nonnegative() && self.p.is_nonnegative()
    }

    /// Header `k m w`, then one line per row of `U`, `V`, `P`. Values use
    /// shortest round-trip formatting.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let m = self.num_users().saturating_sub(1);
        writeln!(out, "{} {} {}", self.k(), m, self.num_words()).unwrap();
        for mat in [&self.u, &self.v, &self.p] {
            for r in 0..mat.rows() {
                let line: Vec<String> = mat.row(r).iter().map(|v| format!("{v:?}")).collect();
                writeln!(out, "{}", line.join(" ")).unwrap();
            }
        }
        out
    }

    pub fn from_text(text: &str, origin: &Path) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(origin, 1, "missing `k m w` header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(origin, hline + 1, "header must be `k m w`"))?;
        let [k, m, w] = dims[..] else {
            return Err(Error::parse(origin, hline + 1, "header must be `k m w`"));
        };

        let mut read = |rows: usize, name: &str| -> Result<DenseMatrix> {
            let mut data = Vec::with_capacity(rows * k);
            for r in 0..rows {
                let (n, line) = lines.next().ok_or_else(|| {
                    Error::parse(origin, 0, format!("{name} ends after {r} of {rows} rows"))
                })?;
                let before = data.len();
                for tok in line.split_whitespace() {
                    let v: f64 = tok
                        .parse()
                        .map_err(|_| Error::parse(origin, n + 1, format!("bad value {tok:?}")))?;
                    data.push(v);
                }
                if data.len() - before != k {
                    return Err(Error::parse(
                        origin,
                        n + 1,
                        format!("{name} row has {} values, expected {k}", data.len() - before),
                    ));
                }
            }
            DenseMatrix::from_vec(rows, k, data)
        };
        let u = read(m + 1, "U")?;
        let v = read(k, "V")?;
        let p = read(w, "P")?;
        if let Some((n, _)) = lines.next() {
            return Err(Error::parse(origin, n + 1, "trailing data after P"));
        }
        FactorSet::new(u, v, p)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text, path)
    }
}
