use serde::{Deserialize, Serialize};

use super::{GramMatrix, LatticeEmbedding};
use crate::matrix::{self, IntMatrix};

/// A basis of the orthogonal complement of an embedded lattice inside `Z^m`.
/// Rows of `basis` are vectors of `Z^m`; `gram` is their Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementBasis {
    pub basis: IntMatrix,
    pub gram: GramMatrix,
}

impl ComplementBasis {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The ambient vector with coordinates `coords` in this basis.
    pub fn ambient(&self, coords: &[i64]) -> Vec<i64> {
        let m = self.basis.first().map_or(0, |r| r.len());
        let mut v = vec![0; m];
        for (c, row) in coords.iter().zip(&self.basis) {
            for (x, y) in v.iter_mut().zip(row) {
                *x += c * y;
            }
        }
        v
    }
}

/// `{ v in Z^m : v . e = 0 for every row e }`, saturated and LLL reduced.
pub fn orthogonal_complement(e: &LatticeEmbedding) -> ComplementBasis {
    let m = e.ambient_rank();
    let kernel = matrix::integer_kernel(&e.rows, m);
    let basis = if kernel.is_empty() {
        kernel
    } else {
        matrix::lll_reduce(&kernel, &matrix::identity(m))
    };
    let gram = GramMatrix::new(matrix::gram(&basis)).expect("Gram of a basis is symmetric");
    ComplementBasis { basis, gram }
}
