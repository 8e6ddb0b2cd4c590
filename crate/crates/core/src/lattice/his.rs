use serde::{Deserialize, Serialize};

use super::{short_vectors, Budget, ComplementBasis, GramMatrix};
use crate::error::{Error, Result};
use crate::matrix::{self, IntMatrix};

/// Vectors `x_1..x_t, y_1..y_t` of a lattice with `x_i.x_j = 2 delta_ij` and
/// `x_i.y_j = delta_ij`, given in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HISCertificate {
    pub x: IntMatrix,
    pub y: IntMatrix,
}

impl HISCertificate {
    pub fn t(&self) -> usize {
        self.x.len()
    }

    /// The `2t x 2t` Gram matrix of `(x, y)` under `g`.
    pub fn gram(&self, g: &GramMatrix) -> IntMatrix {
        let vs: Vec<&Vec<i64>> = self.x.iter().chain(&self.y).collect();
        vs.iter()
            .map(|u| vs.iter().map(|v| g.pair(u, v)).collect())
            .collect()
    }

    /// Re-checks the block shape `[[2I, I], [I, *]]`, nonsingularity, and that the
    /// vectors span a sublattice of full rank.
    pub fn verify(&self, g: &GramMatrix) -> Result<()> {
        let t = self.t();
        if self.y.len() != t || 2 * t != g.rank() {
            return Err(Error::CertificationFailed(format!(
                "certificate has {} x and {} y vectors for a rank {} lattice",
                t,
                self.y.len(),
                g.rank()
            )));
        }
        let q = self.gram(g);
        for i in 0..t {
            for j in 0..t {
                let d = i64::from(i == j);
                if q[i][j] != 2 * d || q[i][t + j] != d {
                    return Err(Error::CertificationFailed(format!(
                        "Gram entry ({i},{j}) breaks the [[2I, I], [I, *]] shape"
                    )));
                }
            }
        }
        if matrix::determinant(&q) == 0.into() {
            return Err(Error::CertificationFailed("certificate Gram is singular".into()));
        }
        Ok(())
    }

    /// The same certificate as vectors of the ambient `Z^m`.
    pub fn ambient(&self, c: &ComplementBasis) -> (IntMatrix, IntMatrix) {
        (
            self.x.iter().map(|v| c.ambient(v)).collect(),
            self.y.iter().map(|v| c.ambient(v)).collect(),
        )
    }
}

/// Searches the complement for a finite-index sublattice of half-integer surgery
/// type. `None` means no such sublattice exists.
pub fn his_sublattice_exists(c: &ComplementBasis, budget: &Budget) -> Result<Option<HISCertificate>> {
    his_in_gram(&c.gram, budget)
}

/// As [`his_sublattice_exists`] for a bare Gram matrix.
pub fn his_in_gram(g: &GramMatrix, budget: &Budget) -> Result<Option<HISCertificate>> {
    let rank = g.rank();
    if rank % 2 == 1 {
        return Ok(None);
    }
    let t = rank / 2;
    if t == 0 {
        return Ok(Some(HISCertificate { x: vec![], y: vec![] }));
    }
    let roots = short_vectors(g, 2, budget)?;
    let mut chosen = Vec::with_capacity(t);
    choose(g, &roots, t, 0, &mut chosen, budget)
}

fn choose(
    g: &GramMatrix,
    roots: &[Vec<i64>],
    t: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    budget: &Budget,
) -> Result<Option<HISCertificate>> {
    budget.tick()?;
    if chosen.len() == t {
        return Ok(certify(g, roots, chosen));
    }
    for i in from..roots.len() {
        if chosen.iter().all(|&j| g.pair(&roots[i], &roots[j]) == 0) {
            chosen.push(i);
            if let Some(cert) = choose(g, roots, t, i + 1, chosen, budget)? {
                return Ok(Some(cert));
            }
            chosen.pop();
        }
    }
    Ok(None)
}

/// Builds the `y_j` when the pairing map `v -> (x_i . v)` is onto `Z^t`.
fn certify(g: &GramMatrix, roots: &[Vec<i64>], chosen: &[usize]) -> Option<HISCertificate> {
    let x: IntMatrix = chosen.iter().map(|&i| roots[i].clone()).collect();
    let pairing = matrix::mat_mul(&x, g.rows());
    let divisors = matrix::elementary_divisors(&pairing);
    if divisors.len() != x.len() || divisors.iter().any(|&d| d != 1) {
        return None;
    }
    let pt = matrix::transpose(&pairing);
    let y = (0..x.len())
        .map(|j| {
            let e: Vec<i64> = (0..x.len()).map(|i| i64::from(i == j)).collect();
            matrix::solve_left(&pt, &e).expect("surjective pairing has preimages")
        })
        .collect();
    Some(HISCertificate { x, y })
}
