//! Sparse integer Laurent polynomials in the Kauffman variable `A`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An element of `Z[A, A^-1]`. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * A^exp`.
    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// The loop value `-A^2 - A^-2`.
    pub fn delta() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// Substitutes `A -> A^-1`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Powers with negative exponents are only defined for unit monomials `±A^e`.
    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            assert_eq!(self.len(), 1, "only monomials are invertible");
            let (e, c) = self.terms().next().unwrap();
            assert!(c == 1 || c == -1, "only unit monomials are invertible");
            let sign = if c == -1 && k % 2 != 0 { -1 } else { 1 };
            return Self::monomial(sign, e * k);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.terms(), |e| {
            if e == 1 {
                "A".to_string()
            } else {
                format!("A^{e}")
            }
        })
    }
}

/// Shared pretty-printer: `c_1 m_1 + c_2 m_2 - ...`, highest degree last.
pub(crate) fn write_poly<I, F>(f: &mut fmt::Formatter<'_>, terms: I, mono: F) -> fmt::Result
where
    I: Iterator<Item = (i64, i64)>,
    F: Fn(i64) -> String,
{
    let mut first = true;
    for (e, c) in terms {
        let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
        if first {
            if sign == "-" {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        if e == 0 {
            write!(f, "{mag}")?;
        } else if mag == 1 {
            write!(f, "{}", mono(e))?;
        } else {
            write!(f, "{mag}{}", mono(e))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-8i64..8, -5i64..5), 0..6).prop_map(LaurentPoly::from_terms)
    }

    #[test]
    fn inverse_monomial() {
        let a = LaurentPoly::monomial(1, 1);
        assert_eq!(&a * &a.pow(-1), LaurentPoly::one());
        let m = LaurentPoly::monomial(-1, 3);
        assert_eq!(&m.pow(3) * &m.pow(-3), LaurentPoly::one());
        assert_eq!(m.pow(-1), LaurentPoly::monomial(-1, -3));
    }

    #[test]
    fn delta_squared() {
        let d = LaurentPoly::delta();
        assert_eq!(d.pow(2), LaurentPoly::from_terms([(4, 1), (0, 2), (-4, 1)]));
    }

    #[test]
    fn no_zero_coefficients() {
        let p = LaurentPoly::from_terms([(1, 2), (1, -2), (0, 0)]);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_terms([(-3, -1), (0, 2), (4, 1)]);
        assert_eq!(p.to_string(), "-A^-3 + 2 + A^4");
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
            prop_assert!(a.terms().all(|(_, c)| c != 0));
        }
    }
}
