use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Budget, GramMatrix};
use crate::error::{Error, Result};

/// Every `v` with `v^T G v = norm`, one of each `±v` pair (first nonzero
/// coordinate positive), by exact Fincke-Pohst enumeration.
pub fn short_vectors(g: &GramMatrix, norm: i64, budget: &Budget) -> Result<Vec<Vec<i64>>> {
    let n = g.rank();
    if n == 0 || norm <= 0 {
        return Ok(Vec::new());
    }
    if !g.is_positive_definite() {
        return Err(Error::InvalidParams("short vectors need a positive definite form".into()));
    }
    let q = completion(g);
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    descend(g, &q, norm, n, BigRational::from_integer(norm.into()), &mut x, budget, &mut out)?;
    out.sort();
    Ok(out)
}

/// Quadratic completion: `q(x) = sum_i Q_ii (x_i + sum_{j>i} Q_ij x_j)^2`.
fn completion(g: &GramMatrix) -> Vec<Vec<BigRational>> {
    let n = g.rank();
    let mut q: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(g.entry(i, j).into())).collect())
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let d = &q[k][i] * &q[i][l];
                q[k][l] -= d;
            }
        }
    }
    q
}

#[allow(clippy::too_many_arguments)]
fn descend(
    g: &GramMatrix,
    q: &[Vec<BigRational>],
    norm: i64,
    level: usize,
    remaining: BigRational,
    x: &mut Vec<i64>,
    budget: &Budget,
    out: &mut Vec<Vec<i64>>,
) -> Result<()> {
    budget.tick()?;
    if level == 0 {
        let nonzero = x.iter().find(|&&v| v != 0);
        if nonzero.is_some_and(|&v| v > 0) && g.pair(x, x) == norm {
            out.push(x.clone());
        }
        return Ok(());
    }
    let i = level - 1;
    let n = x.len();
    let mut center = BigRational::zero();
    for j in i + 1..n {
        center += &q[i][j] * BigRational::from_integer(x[j].into());
    }
    // need q_ii (x_i + center)^2 <= remaining
    let radius2 = &remaining / &q[i][i];
    let c = center.to_f64().unwrap_or(0.0);
    let r = radius2.to_f64().unwrap_or(0.0).max(0.0).sqrt();
    let lo = (-c - r).floor() as i64 - 1;
    let hi = (-c + r).ceil() as i64 + 1;
    for v in lo..=hi {
        let shifted = BigRational::from_integer(v.into()) + &center;
        let used = &q[i][i] * &shifted * &shifted;
        if used > remaining {
            continue;
        }
        x[i] = v;
        let rest = &remaining - used;
        if !rest.is_negative() {
            descend(g, q, norm, level - 1, rest, x, budget, out)?;
        }
    }
    x[i] = 0;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix;
    use proptest::prelude::*;

    fn brute(g: &GramMatrix, norm: i64, box_size: i64) -> Vec<Vec<i64>> {
        let n = g.rank();
        let side = 2 * box_size + 1;
        let mut out = Vec::new();
        for code in 0..side.pow(n as u32) {
            let mut c = code;
            let v: Vec<i64> = (0..n)
                .map(|_| {
                    let x = c % side - box_size;
                    c /= side;
                    x
                })
                .collect();
            if v.iter().find(|&&t| t != 0).is_some_and(|&t| t > 0) && g.pair(&v, &v) == norm {
                out.push(v);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn a2_roots() {
        let g = GramMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let v = short_vectors(&g, 2, &Budget::unlimited()).unwrap();
        assert_eq!(v, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn matches_brute_force(entries in proptest::collection::vec(-2i64..=2, 9), norm in 1i64..=4) {
            // B^T B + I is positive definite with small entries
            let b: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
            let mut m = matrix::mat_mul(&matrix::transpose(&b), &b);
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += 1;
            }
            let g = GramMatrix::new(m).unwrap();
            // minimum eigenvalue >= 1, so |x|^2 <= norm and a box of radius 2 suffices
            let fast = short_vectors(&g, norm, &Budget::unlimited()).unwrap();
            prop_assert_eq!(fast, brute(&g, norm, 2));
        }
    }
}
