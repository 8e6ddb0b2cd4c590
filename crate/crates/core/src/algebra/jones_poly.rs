use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::cyc12::Cyc12;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// A Jones polynomial in `Z[q^{±1/2}]`. Exponents are stored in units of `q^{1/2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JonesPoly {
    pub components: usize,
    /// `(exponent in q^{1/2} units, coefficient)`, increasing exponent, no zeros.
    pub terms: Vec<(i64, i64)>,
}

/// Which square root of `ω` stands in for `q^{1/2}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum HalfRoot {
    /// `ζ = e^{iπ/6}`.
    #[default]
    Principal,
    /// `ζ^7 = e^{7iπ/6}`.
    Seventh,
}

impl JonesPoly {
    pub fn one() -> Self {
        JonesPoly {
            components: 1,
            terms: vec![(0, 1)],
        }
    }

    pub fn from_half_exponents<I: IntoIterator<Item = (i64, i64)>>(components: usize, terms: I) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert(0) += c;
        }
        JonesPoly {
            components,
            terms: map.into_iter().filter(|&(_, c)| c != 0).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(0, 1)]
    }

    pub fn coeff(&self, half_exp: i64) -> i64 {
        self.terms
            .iter()
            .find(|&&(e, _)| e == half_exp)
            .map_or(0, |&(_, c)| c)
    }

    /// Multiplies by `q^{k/2}`.
    pub fn shift_half(&self, k: i64) -> Self {
        JonesPoly {
            components: self.components,
            terms: self.terms.iter().map(|&(e, c)| (e + k, c)).collect(),
        }
    }

    /// `q -> q^-1`, the Jones polynomial of the mirror image.
    pub fn mirror(&self) -> Self {
        JonesPoly::from_half_exponents(self.components, self.terms.iter().map(|&(e, c)| (-e, c)))
    }

    /// Parity check: integral `q`-exponents for odd component count, strictly half-integral for even.
    pub fn has_expected_parity(&self) -> bool {
        let want = (self.components + 1) % 2;
        self.terms.iter().all(|&(e, _)| e.rem_euclid(2) as usize == want)
    }

    pub fn eval_at_omega(&self) -> Cyc12 {
        self.eval_at_omega_with(HalfRoot::Principal)
    }

    pub fn eval_at_omega_with(&self, root: HalfRoot) -> Cyc12 {
        let step = match root {
            HalfRoot::Principal => 1,
            HalfRoot::Seventh => 7,
        };
        self.terms
            .iter()
            .fold(Cyc12::ZERO, |acc, &(e, c)| acc + Cyc12::zeta_pow(step * e).scale(c))
    }
}

/// Converts a writhe-normalized bracket to `q^{1/2}` units via `q^{1/2} = A^{-2}`.
pub fn to_jones_units(p: &LaurentPoly, components: usize) -> Result<JonesPoly> {
    if let Some((exponent, _)) = p.terms().find(|&(e, _)| e % 2 != 0) {
        return Err(Error::MalformedNormalization { exponent });
    }
    Ok(JonesPoly::from_half_exponents(
        components,
        p.terms().map(|(e, c)| (-e / 2, c)),
    ))
}

impl fmt::Display for JonesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::laurent::write_poly(f, self.terms.iter().copied(), |e| {
            if e % 2 == 0 {
                match e / 2 {
                    1 => "q".to_string(),
                    k => format!("q^{k}"),
                }
            } else {
                format!("q^{e}/2")
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_conversion() {
        let v = to_jones_units(&LaurentPoly::one(), 1).unwrap();
        assert!(v.is_one());
        let v = to_jones_units(&LaurentPoly::monomial(1, -4), 1).unwrap();
        assert_eq!(v.terms, vec![(2, 1)]);
        assert_eq!(v.to_string(), "q");
        assert_eq!(
            to_jones_units(&LaurentPoly::monomial(1, 3), 1),
            Err(Error::MalformedNormalization { exponent: 3 })
        );
    }

    #[test]
    fn display_half_exponents() {
        let v = JonesPoly::from_half_exponents(1, [(-8, -1), (-6, 1), (-2, 1)]);
        assert_eq!(v.to_string(), "-q^-4 + q^-3 + q^-1");
        let w = JonesPoly::from_half_exponents(2, [(-9, 1), (-1, -1)]);
        assert_eq!(w.to_string(), "q^-9/2 - q^-1/2");
    }

    #[test]
    fn omega_of_one() {
        assert_eq!(JonesPoly::one().eval_at_omega(), Cyc12::ONE);
    }
}
