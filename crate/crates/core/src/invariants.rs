//! Symmetrized Seifert form, Goeritz form of the `P(a, 1^r, b)` family, signature,
//! mod-3 nullity and determinant.

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{self, IntMatrix};
use crate::pretzel::PretzelParams;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    pub matrix: IntMatrix,
    pub mod3: IntMatrix,
    pub nullity3: usize,
    pub determinant: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureData {
    /// Positive for pretzels with all bands positive and odd.
    pub sigma: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoeritzData {
    pub a: i64,
    pub r: i64,
    pub b: i64,
    pub matrix: IntMatrix,
}

impl GoeritzData {
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    /// The negated form, which is positive definite and is what embeds into `Z^m`.
    pub fn negated(&self) -> IntMatrix {
        matrix::negate(&self.matrix)
    }
}

fn require_odd(p: &PretzelParams) -> Result<()> {
    match p.first_even() {
        Some((index, value)) => Err(Error::EvenParameter { index: index + 1, value }),
        None => Ok(()),
    }
}

/// The tridiagonal form `S_ii = a_i + a_{i+1}`, `S_{i,i+1} = -a_{i+1}` for all-odd bands.
pub fn symmetrized_seifert(p: &PretzelParams) -> Result<SeifertData> {
    require_odd(p)?;
    let a = p.as_slice();
    let k = a.len() - 1;
    let mut m = vec![vec![0i64; k]; k];
    for i in 0..k {
        m[i][i] = a[i] + a[i + 1];
        if i + 1 < k {
            m[i][i + 1] = -a[i + 1];
            m[i + 1][i] = -a[i + 1];
        }
    }
    let mod3: IntMatrix = m
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(3)).collect())
        .collect();
    let nullity3 = k - matrix::rank_mod_p(&m, 3);
    let determinant = matrix::determinant(&m)
        .to_i64()
        .expect("determinant fits i64");
    Ok(SeifertData {
        matrix: m,
        mod3,
        nullity3,
        determinant,
    })
}

pub fn signature(m: &[Vec<i64>]) -> SignatureData {
    SignatureData {
        sigma: matrix::signature(m),
    }
}

/// Signature of the pretzel from its symmetrized Seifert form.
pub fn pretzel_signature(p: &PretzelParams) -> Result<SignatureData> {
    Ok(signature(&symmetrized_seifert(p)?.matrix))
}

pub fn determinant_of_knot(p: &PretzelParams) -> Result<u64> {
    let s = symmetrized_seifert(p)?;
    Ok(s.determinant.unsigned_abs())
}

/// The Goeritz matrix of `P(a, 1^r, b)`: chain blocks of size `a-1` and `b-1` with
/// `-2` on the diagonal and `-1` beside it, bordered by a last row meeting the first
/// vertex of each chain with `-1`, corner `-r-2`.
pub fn goeritz_matrix(a: i64, r: i64, b: i64) -> Result<GoeritzData> {
    if a < 3 || a % 2 == 0 {
        return Err(Error::BadFamily(format!("a = {a} must be odd and at least 3")));
    }
    if b < 1 || b % 2 == 0 {
        return Err(Error::BadFamily(format!("b = {b} must be odd and positive")));
    }
    if r < 1 || r % 2 == 0 {
        return Err(Error::BadFamily(format!("r = {r} must be odd and positive")));
    }
    let (na, nb) = ((a - 1) as usize, (b - 1) as usize);
    let n = na + nb + 1;
    let mut m = vec![vec![0i64; n]; n];
    for (start, len) in [(0, na), (na, nb)] {
        for i in 0..len {
            m[start + i][start + i] = -2;
            if i + 1 < len {
                m[start + i][start + i + 1] = -1;
                m[start + i + 1][start + i] = -1;
            }
        }
        if len > 0 {
            m[start][n - 1] = -1;
            m[n - 1][start] = -1;
        }
    }
    m[n - 1][n - 1] = -r - 2;
    Ok(GoeritzData { a, r, b, matrix: m })
}

/// Sylvester's criterion on the Goeritz matrix.
pub fn goeritz_is_negative_definite(g: &GoeritzData) -> bool {
    matrix::leading_minors(&g.matrix)
        .iter()
        .enumerate()
        .all(|(k, d)| if k % 2 == 0 { d.is_negative() } else { d.is_positive() })
}
