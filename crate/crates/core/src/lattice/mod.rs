//! Lattice side of the diagonalization obstruction: embeddings of a definite
//! integral form into the standard lattice `Z^m`, their orthogonal complements,
//! and the search for half-integer-surgery-type sublattices inside them.

pub mod complement;
pub mod embed;
pub mod his;
pub mod scan;
pub mod short;

use std::cell::Cell;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{self, IntMatrix};

pub use complement::{orthogonal_complement, ComplementBasis};
pub use embed::{canonical_form, enumerate_embeddings, LatticeEmbedding};
pub use his::{his_in_gram, his_sublattice_exists, HISCertificate};
pub use scan::{
    donaldson_scan, embedding_rigidity_check, family_gram, scan_gram, ObstructionReport, RankEntry,
    Verdict, Witness,
};
pub use short::short_vectors;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A symmetric integer matrix, read as the Gram matrix of a lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct GramMatrix(IntMatrix);

impl GramMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !matrix::is_symmetric(&m) {
            return Err(Error::InvalidParams("Gram matrix must be square and symmetric".into()));
        }
        Ok(GramMatrix(m))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self) -> &IntMatrix {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn is_positive_definite(&self) -> bool {
        matrix::is_positive_definite(&self.0)
    }

    pub fn pair(&self, u: &[i64], v: &[i64]) -> i64 {
        matrix::bilinear(&self.0, u, v)
    }
}

impl TryFrom<IntMatrix> for GramMatrix {
    type Error = Error;
    fn try_from(m: IntMatrix) -> Result<Self> {
        GramMatrix::new(m)
    }
}

impl From<GramMatrix> for IntMatrix {
    fn from(g: GramMatrix) -> IntMatrix {
        g.0
    }
}

/// Node counter shared by one search; running past the limit is an error, never
/// a negative answer.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: Cell<u64>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: Cell::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn tick(&self) -> Result<()> {
        let used = self.used.get() + 1;
        self.used.set(used);
        if used > self.limit {
            Err(Error::SearchBudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }
}
