use crate::error::{ensure, Result};
use crate::linalg::DenseMatrix;

/// Compressed-row sparse matrix with strictly positive stored values.
///
/// Column ids are strictly increasing within each row; explicit zeros are
/// never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_offsets: Vec<usize>,
    col_ids: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    pub fn empty(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            row_offsets: vec![0; rows + 1],
            col_ids: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            row_offsets: (0..=n).collect(),
            col_ids: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    /// Builds from `(row, col, value)` triplets in any order. Duplicate
    /// coordinates are summed and zero values dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        mut triplets: Vec<(usize, usize, f64)>,
    ) -> Result<Self> {
        for &(i, j, v) in &triplets {
            ensure!(
                i < rows && j < cols,
                Contract,
                "entry ({i}, {j}) outside a {rows}x{cols} matrix"
            );
            ensure!(
                v.is_finite() && v >= 0.0,
                Contract,
                "entry ({i}, {j}) = {v} is not a finite non-negative value"
            );
        }
        // non-negative values sum to zero only when every term is zero
        triplets.retain(|t| t.2 > 0.0);
        triplets.sort_by_key(|t| (t.0, t.1));

        let mut row_offsets = vec![0usize; rows + 1];
        let mut col_ids = Vec::with_capacity(triplets.len());
        let mut values: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in triplets {
            if last == Some((i, j)) {
                *values.last_mut().expect("previous entry") += v;
                continue;
            }
            col_ids.push(j);
            values.push(v);
            row_offsets[i + 1] += 1;
            last = Some((i, j));
        }
        for r in 0..rows {
            row_offsets[r + 1] += row_offsets[r];
        }
        Ok(SparseMatrix {
            rows,
            cols,
            row_offsets,
            col_ids,
            values,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Column ids and values stored in row `i`.
    #[inline]
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let span = self.row_offsets[i]..self.row_offsets[i + 1];
        (&self.col_ids[span.clone()], &self.values[span])
    }

    /// Stored entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.rows).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&j, &v)| (i, j, v))
        })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row(i);
        cols.binary_search(&j).map_or(0.0, |p| vals[p])
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.iter() {
            out.set(i, j, v);
        }
        out
    }

    /// Relabels rows by `row_perm` and columns by `col_perm`: entry `(i, j)`
    /// moves to `(row_perm[i], col_perm[j])`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        ensure!(
            row_perm.len() == self.rows && col_perm.len() == self.cols,
            Contract,
            "permutation lengths do not match matrix shape"
        );
        let triplets = self
            .iter()
            .map(|(i, j, v)| (row_perm[i], col_perm[j], v))
            .collect();
        SparseMatrix::from_triplets(self.rows, self.cols, triplets)
    }
}
