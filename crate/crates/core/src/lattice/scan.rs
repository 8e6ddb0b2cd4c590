use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    canonical_form, enumerate_embeddings, his_sublattice_exists, orthogonal_complement, Budget,
    GramMatrix, HISCertificate, LatticeEmbedding,
};
use crate::error::{Error, Result};
use crate::invariants::goeritz_matrix;
use crate::matrix::IntMatrix;

/// An embedding whose complement carries a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub embedding: LatticeEmbedding,
    pub complement: IntMatrix,
    pub complement_gram: GramMatrix,
    pub certificate: HISCertificate,
    pub x_ambient: IntMatrix,
    pub y_ambient: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankEntry {
    pub delta: usize,
    pub m: usize,
    pub embedding_count: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// No embedding at any scanned rank admits a certificate.
    Obstructed { up_to_rank: usize },
    NotObstructed { witness_m: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub family: Option<(i64, i64, i64)>,
    pub gram: GramMatrix,
    pub budget: u64,
    pub entries: Vec<RankEntry>,
    pub verdict: Verdict,
}

impl ObstructionReport {
    pub fn obstructed(&self) -> bool {
        matches!(self.verdict, Verdict::Obstructed { .. })
    }
}

/// Negated Goeritz form of the family `(a, 1^r, b)`.
pub fn family_gram(a: i64, r: i64, b: i64) -> Result<GramMatrix> {
    GramMatrix::new(goeritz_matrix(a, r, b)?.negated())
}

/// Runs the diagonalization obstruction for the family `(a, 1^r, b)` at ambient
/// ranks `m = k + delta`. Exceeding `budget` nodes at any rank is an error.
pub fn donaldson_scan(a: i64, r: i64, b: i64, deltas: &[usize], budget: u64) -> Result<ObstructionReport> {
    let g = family_gram(a, r, b)?;
    let mut report = scan_gram(&g, deltas, budget)?;
    report.family = Some((a, r, b));
    Ok(report)
}

/// As [`donaldson_scan`] for an arbitrary positive definite form.
pub fn scan_gram(g: &GramMatrix, deltas: &[usize], budget: u64) -> Result<ObstructionReport> {
    if deltas.is_empty() {
        return Err(Error::InvalidParams("no extra ranks to scan".into()));
    }
    if let Some(d) = deltas.iter().find(|&&d| d % 2 == 1) {
        return Err(Error::InvalidParams(format!("extra rank {d} must be even")));
    }
    let mut deltas = deltas.to_vec();
    deltas.sort_unstable();
    deltas.dedup();
    // ranks are independent; each gets its own node budget so results are deterministic
    let entries = deltas
        .par_iter()
        .map(|&delta| scan_rank(g, delta, budget))
        .collect::<Result<Vec<_>>>()?;
    let verdict = match entries.iter().find(|e| e.witness.is_some()) {
        Some(e) => Verdict::NotObstructed { witness_m: e.m },
        None => Verdict::Obstructed {
            up_to_rank: *deltas.last().unwrap(),
        },
    };
    Ok(ObstructionReport {
        family: None,
        gram: g.clone(),
        budget,
        entries,
        verdict,
    })
}

fn scan_rank(g: &GramMatrix, delta: usize, budget: u64) -> Result<RankEntry> {
    let m = g.rank() + delta;
    let nodes = Budget::new(budget);
    let embeddings = enumerate_embeddings(g, m, &nodes)?;
    let mut witness = None;
    for e in &embeddings {
        let c = orthogonal_complement(e);
        debug_assert_eq!(c.rank(), delta);
        if let Some(cert) = his_sublattice_exists(&c, &nodes)? {
            cert.verify(&c.gram)?;
            let (x_ambient, y_ambient) = cert.ambient(&c);
            witness = Some(Witness {
                embedding: e.clone(),
                complement: c.basis.clone(),
                complement_gram: c.gram.clone(),
                certificate: cert,
                x_ambient,
                y_ambient,
            });
            break;
        }
    }
    Ok(RankEntry {
        delta,
        m,
        embedding_count: embeddings.len(),
        witness,
    })
}

/// True iff every embedding of the family form into `Z^m` sends the two chains to
/// `xi_i -> e_i + e_{i+1}`, `eta_j -> e_{a+j} + e_{a+j+1}` up to signed permutation.
pub fn embedding_rigidity_check(a: i64, r: i64, b: i64, m: usize, budget: u64) -> Result<bool> {
    let g = family_gram(a, r, b)?;
    let (na, nb) = ((a - 1) as usize, (b - 1) as usize);
    if m < g.rank() {
        return Err(Error::InvalidParams(format!("m = {m} is below the lattice rank {}", g.rank())));
    }
    let mut standard = vec![vec![0i64; m]; na + nb];
    for i in 0..na {
        standard[i][i] = 1;
        standard[i][i + 1] = 1;
    }
    for j in 0..nb {
        let c = a as usize + j;
        if c + 1 >= m {
            return Ok(false);
        }
        standard[na + j][c] = 1;
        standard[na + j][c + 1] = 1;
    }
    let standard = canonical_form(&standard);
    let embeddings = enumerate_embeddings(&g, m, &Budget::new(budget))?;
    Ok(embeddings
        .iter()
        .all(|e| canonical_form(&e.rows[..na + nb]) == standard))
}
