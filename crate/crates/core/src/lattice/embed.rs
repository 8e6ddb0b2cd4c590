use serde::{Deserialize, Serialize};

use super::{Budget, GramMatrix};
use crate::error::{Error, Result};
use crate::matrix::{self, IntMatrix};

/// Rows are the images of the basis vectors in `Z^m`, so `E E^T = G`.
///
/// Stored canonically: each column's first nonzero entry is positive and the
/// columns are sorted in decreasing lexicographic order (top row first). Two
/// embeddings differ by a signed permutation of `Z^m` exactly when their
/// canonical forms coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeEmbedding {
    pub rows: IntMatrix,
}

impl LatticeEmbedding {
    pub fn ambient_rank(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn gram(&self) -> IntMatrix {
        matrix::gram(&self.rows)
    }
}

/// Canonical representative of `rows` under signed column permutations.
pub fn canonical_form(rows: &[Vec<i64>]) -> IntMatrix {
    let mut cols = matrix::transpose(rows);
    for col in cols.iter_mut() {
        if col.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            col.iter_mut().for_each(|x| *x = -*x);
        }
    }
    cols.sort_by(|a, b| b.cmp(a));
    if cols.is_empty() {
        return rows.iter().map(|_| Vec::new()).collect();
    }
    matrix::transpose(&cols)
}

/// All embeddings of the lattice with Gram matrix `g` into `Z^m`, one per orbit of
/// the signed permutation group, by row-by-row depth-first search that only ever
/// builds canonical partial matrices.
pub fn enumerate_embeddings(
    g: &GramMatrix,
    m: usize,
    budget: &Budget,
) -> Result<Vec<LatticeEmbedding>> {
    if !g.is_positive_definite() {
        return Err(Error::InvalidParams("embedding search needs a positive definite form".into()));
    }
    let mut out = Vec::new();
    let mut rows: IntMatrix = Vec::new();
    // columns with equal prefixes form contiguous blocks [start, end)
    let blocks = vec![(0, m)];
    extend_rows(g, m, &mut rows, &blocks, budget, &mut out)?;
    Ok(out)
}

fn extend_rows(
    g: &GramMatrix,
    m: usize,
    rows: &mut IntMatrix,
    blocks: &[(usize, usize)],
    budget: &Budget,
    out: &mut Vec<LatticeEmbedding>,
) -> Result<()> {
    let i = rows.len();
    if i == g.rank() {
        out.push(LatticeEmbedding { rows: rows.clone() });
        return Ok(());
    }
    let targets: Vec<i64> = (0..i).map(|j| g.entry(j, i)).collect();
    // suffix sums of squares of each previous row, for Cauchy-Schwarz pruning
    let tails: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            let mut t = vec![0; m + 1];
            for c in (0..m).rev() {
                t[c] = t[c + 1] + r[c] * r[c];
            }
            t
        })
        .collect();
    let zero_block = blocks
        .last()
        .copied()
        .filter(|&(s, _)| rows.iter().all(|r| r[s] == 0));
    let mut ctx = RowSearch {
        rows,
        targets: &targets,
        tails: &tails,
        blocks,
        zero_block,
        budget,
        candidate: vec![0; m],
        found: Vec::new(),
    };
    ctx.search(0, g.entry(i, i), &vec![0; i])?;
    let found = std::mem::take(&mut ctx.found);
    for v in found {
        let mut next_blocks = Vec::new();
        for &(s, e) in blocks {
            let mut start = s;
            for c in s + 1..e {
                if v[c] != v[c - 1] {
                    next_blocks.push((start, c));
                    start = c;
                }
            }
            next_blocks.push((start, e));
        }
        rows.push(v);
        extend_rows(g, m, rows, &next_blocks, budget, out)?;
        rows.pop();
    }
    Ok(())
}

struct RowSearch<'a> {
    rows: &'a IntMatrix,
    targets: &'a [i64],
    tails: &'a [Vec<i64>],
    blocks: &'a [(usize, usize)],
    zero_block: Option<(usize, usize)>,
    budget: &'a Budget,
    candidate: Vec<i64>,
    found: Vec<Vec<i64>>,
}

impl RowSearch<'_> {
    fn search(&mut self, c: usize, remaining: i64, partial: &[i64]) -> Result<()> {
        self.budget.tick()?;
        let m = self.candidate.len();
        // prune on inner products: |target - partial| <= sqrt(remaining * tail)
        for (j, (&t, &p)) in self.targets.iter().zip(partial).enumerate() {
            let gap = (t - p).abs();
            let tail = self.tails[j][c];
            if gap * gap > remaining * tail {
                return Ok(());
            }
        }
        if c == m {
            if remaining == 0 {
                self.found.push(self.candidate.clone());
            }
            return Ok(());
        }
        if remaining == 0 {
            // the rest of the row is zero, which must not climb inside a block
            let climbs = self
                .blocks
                .iter()
                .any(|&(s, e)| s < c && c < e && self.candidate[c - 1] < 0);
            if partial == self.targets && !climbs {
                self.candidate[c..].iter_mut().for_each(|x| *x = 0);
                self.found.push(self.candidate.clone());
            }
            return Ok(());
        }
        let block_start = self
            .blocks
            .iter()
            .find(|&&(s, e)| s <= c && c < e)
            .map(|&(s, _)| s)
            .unwrap();
        let in_zero = self.zero_block.is_some_and(|(s, e)| s <= c && c < e);
        let bound = isqrt(remaining);
        let hi = if c > block_start {
            self.candidate[c - 1].min(bound)
        } else {
            bound
        };
        let lo = if in_zero { 0 } else { -bound };
        let mut x = hi;
        while x >= lo {
            self.candidate[c] = x;
            let next: Vec<i64> = partial
                .iter()
                .zip(self.rows.iter())
                .map(|(&p, r)| p + r[c] * x)
                .collect();
            self.search(c + 1, remaining - x * x, &next)?;
            x -= 1;
        }
        self.candidate[c] = 0;
        Ok(())
    }
}

fn isqrt(n: i64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::goeritz_matrix;
    use std::collections::BTreeSet;

    fn gm(m: IntMatrix) -> GramMatrix {
        GramMatrix::new(m).unwrap()
    }

    /// Every solution of `E E^T = G` by brute force over all rows of the right norm.
    fn naive_classes(g: &GramMatrix, m: usize) -> BTreeSet<IntMatrix> {
        let k = g.rank();
        let bound = (0..k).map(|i| g.entry(i, i)).max().unwrap();
        let b = isqrt(bound);
        let mut vecs_by_norm = std::collections::HashMap::new();
        let total = (2 * b + 1).pow(m as u32);
        for code in 0..total {
            let mut c = code;
            let v: Vec<i64> = (0..m)
                .map(|_| {
                    let x = c % (2 * b + 1) - b;
                    c /= 2 * b + 1;
                    x
                })
                .collect();
            let n = matrix::dot(&v, &v);
            vecs_by_norm.entry(n).or_insert_with(Vec::new).push(v);
        }
        let mut out = BTreeSet::new();
        let mut stack: Vec<IntMatrix> = vec![vec![]];
        while let Some(rows) = stack.pop() {
            let i = rows.len();
            if i == k {
                out.insert(canonical_form(&rows));
                continue;
            }
            for v in vecs_by_norm.get(&g.entry(i, i)).into_iter().flatten() {
                if (0..i).all(|j| matrix::dot(&rows[j], v) == g.entry(j, i)) {
                    let mut next = rows.clone();
                    next.push(v.clone());
                    stack.push(next);
                }
            }
        }
        out
    }

    #[test]
    fn norm_two() {
        let g = gm(vec![vec![2]]);
        let e = enumerate_embeddings(&g, 2, &Budget::unlimited()).unwrap();
        assert_eq!(e, vec![LatticeEmbedding { rows: vec![vec![1, 1]] }]);
        let e = enumerate_embeddings(&g, 3, &Budget::unlimited()).unwrap();
        assert_eq!(e, vec![LatticeEmbedding { rows: vec![vec![1, 1, 0]] }]);
        assert!(enumerate_embeddings(&g, 1, &Budget::unlimited()).unwrap().is_empty());
    }

    #[test]
    fn matches_naive_enumeration() {
        let forms = vec![
            vec![vec![2]],
            vec![vec![3]],
            vec![vec![2, 1], vec![1, 2]],
            vec![vec![2, 0], vec![0, 2]],
            vec![vec![2, 1], vec![1, 3]],
            vec![vec![2, 1, 1], vec![1, 2, 0], vec![1, 0, 3]],
            vec![vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]],
            vec![vec![3, 1, -1], vec![1, 3, 1], vec![-1, 1, 4]],
        ];
        for f in forms {
            let g = gm(f);
            for m in g.rank()..=5 {
                let fast: BTreeSet<IntMatrix> = enumerate_embeddings(&g, m, &Budget::unlimited())
                    .unwrap()
                    .into_iter()
                    .map(|e| e.rows)
                    .collect();
                let slow = naive_classes(&g, m);
                assert_eq!(fast, slow, "G = {:?}, m = {m}", g.rows());
            }
        }
    }

    #[test]
    fn outputs_are_canonical_and_exact() {
        let g = gm(goeritz_matrix(3, 1, 3).unwrap().negated());
        let embs = enumerate_embeddings(&g, 7, &Budget::unlimited()).unwrap();
        assert!(!embs.is_empty());
        for e in &embs {
            assert_eq!(e.gram(), *g.rows());
            assert_eq!(canonical_form(&e.rows), e.rows);
        }
        let distinct: BTreeSet<_> = embs.iter().collect();
        assert_eq!(distinct.len(), embs.len());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let g = gm(goeritz_matrix(3, 1, 3).unwrap().negated());
        assert_eq!(
            enumerate_embeddings(&g, 9, &Budget::new(10)),
            Err(Error::SearchBudgetExceeded { budget: 10 })
        );
    }
}
