use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The band parameters `(a_1, ..., a_n)` of the pretzel link `P(a_1, ..., a_n)`.
///
/// Each `a_i` counts signed half-twists in band `i`; positive bands are drawn
/// so that, in a pretzel knot with all bands odd, their crossings are negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct PretzelParams(Vec<i64>);

impl PretzelParams {
    pub fn new(params: Vec<i64>) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::InvalidParams("at least one band is required".into()));
        }
        if let Some(i) = params.iter().position(|&a| a == 0) {
            return Err(Error::InvalidParams(format!("a_{} is zero", i + 1)));
        }
        Ok(PretzelParams(params))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn all_odd(&self) -> bool {
        self.0.iter().all(|a| a % 2 != 0)
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|&a| a > 0)
    }

    pub fn first_even(&self) -> Option<(usize, i64)> {
        self.0.iter().copied().enumerate().find(|(_, a)| a % 2 == 0)
    }

    pub fn crossing_count(&self) -> usize {
        self.0.iter().map(|a| a.unsigned_abs() as usize).sum()
    }

    /// `P(-a_1, ..., -a_n)`.
    pub fn mirror(&self) -> Self {
        PretzelParams(self.0.iter().map(|a| -a).collect())
    }

    pub fn with_band(&self, index: usize, value: i64) -> Result<Self> {
        let mut v = self.0.clone();
        *v.get_mut(index).ok_or(Error::BadBand {
            index,
            bands: self.len(),
        })? = value;
        PretzelParams::new(v)
    }

    /// All rotations and reflections of the band sequence, starting with `self`.
    pub fn dihedral_images(&self) -> impl Iterator<Item = PretzelParams> + '_ {
        let n = self.len();
        (0..2 * n).map(move |k| {
            let (rev, shift) = (k >= n, k % n);
            let mut v: Vec<i64> = (0..n).map(|i| self.0[(i + shift) % n]).collect();
            if rev {
                v.reverse();
            }
            PretzelParams(v)
        })
    }

    /// Lexicographically minimal representative under rotation and reversal.
    pub fn canonical_key(&self) -> PretzelParams {
        self.dihedral_images().min().expect("at least one band")
    }

    /// A knot exactly when all bands and the band count are odd, or exactly one band is even.
    pub fn is_knot(&self) -> bool {
        let evens = self.0.iter().filter(|a| *a % 2 == 0).count();
        evens == 1 || (evens == 0 && self.len() % 2 == 1)
    }
}

pub fn canonical_key(p: &PretzelParams) -> PretzelParams {
    p.canonical_key()
}

pub fn is_knot(p: &PretzelParams) -> bool {
    p.is_knot()
}

impl TryFrom<Vec<i64>> for PretzelParams {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        PretzelParams::new(v)
    }
}

impl From<PretzelParams> for Vec<i64> {
    fn from(p: PretzelParams) -> Vec<i64> {
        p.0
    }
}

impl fmt::Display for PretzelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[i64]) -> PretzelParams {
        PretzelParams::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_zero_and_empty() {
        assert!(PretzelParams::new(vec![3, 0, 3]).is_err());
        assert!(PretzelParams::new(vec![]).is_err());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(p(&[3, 1, 3]).canonical_key(), p(&[1, 3, 3]));
        assert_eq!(p(&[3, 3, 9]).canonical_key(), p(&[3, 3, 9]));
        assert_eq!(p(&[5, -1, 2, 7]).canonical_key(), p(&[-1, 2, 7, 5]));
    }

    #[test]
    fn knot_criterion() {
        assert!(p(&[3, 1, 3]).is_knot());
        assert!(!p(&[3, 3]).is_knot());
        assert!(p(&[2, 3]).is_knot());
        assert!(!p(&[2, 2, 3]).is_knot());
        assert!(!p(&[1, 1, 1, 1]).is_knot());
        assert!(p(&[1]).is_knot());
    }

    #[test]
    fn serde_validates() {
        let q: PretzelParams = serde_json::from_str("[3,1,3]").unwrap();
        assert_eq!(q, p(&[3, 1, 3]));
        assert!(serde_json::from_str::<PretzelParams>("[3,0]").is_err());
    }

    proptest! {
        #[test]
        fn key_is_dihedral_invariant(
            v in prop::collection::vec(prop_oneof![-7i64..0, 1i64..8], 1..6),
            shift in 0usize..6,
            rev in any::<bool>(),
        ) {
            let a = p(&v);
            let n = v.len();
            let mut w: Vec<i64> = (0..n).map(|i| v[(i + shift) % n]).collect();
            if rev { w.reverse(); }
            let b = p(&w);
            prop_assert_eq!(a.canonical_key(), b.canonical_key());
            prop_assert!(a.canonical_key() <= a);
        }
    }
}
