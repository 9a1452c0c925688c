use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;

/// Position of a user inside one ego instance. `0` is the asker; `1..=m`
/// are the asker's connections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UserId(pub usize);

impl UserId {
    pub const ASKER: UserId = UserId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0
    }

    pub fn is_asker(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for UserId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Binary directed adjacency of an ego network. An edge from `j` to `i`
/// is stored at `(i, j)`; there are no diagonal entries.
#[derive(Debug, Clone, PartialEq)]
pub struct EgoNetwork {
    matrix: SparseMatrix,
}

impl EgoNetwork {
    /// Number of users including the asker (`m + 1`).
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of connections `m`.
    pub fn num_connections(&self) -> usize {
        self.size().saturating_sub(1)
    }

    pub fn num_edges(&self) -> usize {
        self.matrix.nnz()
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn has_edge(&self, from: UserId, to: UserId) -> bool {
        self.matrix.get(to.0, from.0) != 0.0
    }

    /// Edges as `(from, to)` pairs, ordered by `(to, from)`.
    pub fn edges(&self) -> impl Iterator<Item = (UserId, UserId)> + '_ {
        self.matrix.iter().map(|(i, j, _)| (UserId(j), UserId(i)))
    }
}

/// Builds the adjacency from `(from, to)` records over `size` users.
/// Duplicates collapse and self-loops are dropped.
pub fn load_ego_network(size: usize, records: &[(UserId, UserId)]) -> Result<EgoNetwork> {
    let mut triplets = Vec::with_capacity(records.len());
    for (n, &(from, to)) in records.iter().enumerate() {
        if from.0 >= size || to.0 >= size {
            return Err(Error::Input(format!(
                "edge record {n} ({from} -> {to}) references a user outside 0..{size}"
            )));
        }
        if from != to {
            triplets.push((to.0, from.0, 1.0));
        }
    }
    triplets.sort_by_key(|t| (t.0, t.1));
    triplets.dedup_by(|a, b| (a.0, a.1) == (b.0, b.1));
    let matrix = SparseMatrix::from_triplets(size, size, triplets)?;
    Ok(EgoNetwork { matrix })
}
