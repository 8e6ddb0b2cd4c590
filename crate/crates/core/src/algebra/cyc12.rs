//! Exact arithmetic in `Z[ζ]`, `ζ = e^{iπ/6}`, with minimal polynomial `x^4 - x^2 + 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `c0 + c1 ζ + c2 ζ^2 + c3 ζ^3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cyc12(pub [i64; 4]);

impl Cyc12 {
    pub const ZERO: Cyc12 = Cyc12([0, 0, 0, 0]);
    pub const ONE: Cyc12 = Cyc12([1, 0, 0, 0]);
    pub const ZETA: Cyc12 = Cyc12([0, 1, 0, 0]);
    /// `i = ζ^3`.
    pub const I: Cyc12 = Cyc12([0, 0, 0, 1]);
    /// `ω = ζ^2 = e^{iπ/3}`.
    pub const OMEGA: Cyc12 = Cyc12([0, 0, 1, 0]);
    /// `i√3 = 2ζ^2 - 1`.
    pub const I_SQRT3: Cyc12 = Cyc12([-1, 0, 2, 0]);
    /// `√3 = 2ζ - ζ^3`.
    pub const SQRT3: Cyc12 = Cyc12([0, 2, 0, -1]);

    pub fn from_int(n: i64) -> Self {
        Cyc12([n, 0, 0, 0])
    }

    pub fn coeffs(&self) -> [i64; 4] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    /// `ζ^e` for any integer `e`.
    pub fn zeta_pow(e: i64) -> Self {
        let e = e.rem_euclid(12);
        // ζ^6 = -1
        let (base, sign) = if e >= 6 { (e - 6, -1) } else { (e, 1) };
        let v = match base {
            0 => [1, 0, 0, 0],
            1 => [0, 1, 0, 0],
            2 => [0, 0, 1, 0],
            3 => [0, 0, 0, 1],
            4 => [-1, 0, 1, 0],
            5 => [0, -1, 0, 1],
            _ => unreachable!(),
        };
        Cyc12(v).scale(sign)
    }

    pub fn scale(&self, k: i64) -> Self {
        Cyc12(self.0.map(|c| c * k))
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Cyc12::ONE;
        let mut base = *self;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            k >>= 1;
            if k > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// Complex conjugation, `ζ -> ζ^-1`.
    pub fn conj(&self) -> Self {
        let [c0, c1, c2, c3] = self.0;
        // ζ^-1 = ζ - ζ^3, ζ^-2 = 1 - ζ^2, ζ^-3 = -ζ^3
        Cyc12([c0 + c2, c1, -c2, -c1 - c3])
    }

    /// The Galois automorphism `ζ -> ζ^7 = -ζ`, i.e. the other square root of `ω`.
    pub fn galois7(&self) -> Self {
        let [c0, c1, c2, c3] = self.0;
        Cyc12([c0, -c1, c2, -c3])
    }

    /// `|v|^2 = v * conj(v)` as a rational integer.
    pub fn conj_norm(&self) -> Result<i64> {
        match (*self * self.conj()).0 {
            [n, 0, 0, 0] => Ok(n),
            _ => Err(Error::NonRealNorm),
        }
    }

    /// Numerical embedding into `C` using `ζ = e^{iπ/6}`.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &c) in self.0.iter().enumerate() {
            let theta = std::f64::consts::PI * k as f64 / 6.0;
            re += c as f64 * theta.cos();
            im += c as f64 * theta.sin();
        }
        (re, im)
    }
}

impl fmt::Display for Cyc12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "z", "z^2", "z^3"];
        let terms = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k as i64, c));
        crate::algebra::laurent::write_poly(f, terms, |k| names[k as usize].to_string())
    }
}

impl Add for Cyc12 {
    type Output = Cyc12;
    fn add(self, rhs: Cyc12) -> Cyc12 {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        Cyc12(out)
    }
}

impl Sub for Cyc12 {
    type Output = Cyc12;
    fn sub(self, rhs: Cyc12) -> Cyc12 {
        self + (-rhs)
    }
}

impl Neg for Cyc12 {
    type Output = Cyc12;
    fn neg(self) -> Cyc12 {
        self.scale(-1)
    }
}

impl Mul for Cyc12 {
    type Output = Cyc12;
    fn mul(self, rhs: Cyc12) -> Cyc12 {
        let mut prod = [0i64; 7];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in rhs.0.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        // ζ^k = ζ^{k-2} - ζ^{k-4}
        for k in (4..7).rev() {
            let c = prod[k];
            prod[k] = 0;
            prod[k - 2] += c;
            prod[k - 4] -= c;
        }
        Cyc12([prod[0], prod[1], prod[2], prod[3]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb() -> impl Strategy<Value = Cyc12> {
        prop::array::uniform4(-20i64..20).prop_map(Cyc12)
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(Cyc12::ZETA.pow(6), Cyc12::from_int(-1));
        assert_eq!(Cyc12::ZETA.pow(12), Cyc12::ONE);
        assert_eq!(Cyc12::ZETA.pow(3), Cyc12::I);
        for e in -30..30 {
            let expect = if e >= 0 {
                Cyc12::ZETA.pow(e as u32)
            } else {
                Cyc12::ZETA.pow((12 - (-e) % 12) as u32)
            };
            assert_eq!(Cyc12::zeta_pow(e), expect, "e = {e}");
        }
    }

    #[test]
    fn square_roots_of_three() {
        assert_eq!(Cyc12::I_SQRT3 * Cyc12::I_SQRT3, Cyc12::from_int(-3));
        assert_eq!(Cyc12::SQRT3 * Cyc12::SQRT3, Cyc12::from_int(3));
        assert_eq!(Cyc12::I * Cyc12::SQRT3, Cyc12::I_SQRT3);
    }

    #[test]
    fn norms() {
        assert_eq!((-Cyc12::SQRT3).conj_norm(), Ok(3));
        assert_eq!(Cyc12::from_int(3).conj_norm(), Ok(9));
        for d in 0..=6 {
            assert_eq!(Cyc12::I_SQRT3.pow(d).conj_norm(), Ok(3i64.pow(d)));
        }
        // |1 + ζ|^2 = 2 + √3 is real but irrational
        assert_eq!((Cyc12::ONE + Cyc12::ZETA).conj_norm(), Err(Error::NonRealNorm));
    }

    #[test]
    fn conj_is_inverse_on_roots() {
        for e in 0..12 {
            assert_eq!(Cyc12::zeta_pow(e).conj(), Cyc12::zeta_pow(-e));
            assert_eq!(Cyc12::zeta_pow(e).galois7(), Cyc12::zeta_pow(7 * e));
        }
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
        }

        #[test]
        fn complex_embedding_is_a_homomorphism(a in arb(), b in arb()) {
            let (ar, ai) = a.to_complex();
            let (br, bi) = b.to_complex();
            let (pr, pi) = (a * b).to_complex();
            prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-9);
            prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-9);
            let (cr, ci) = a.conj().to_complex();
            prop_assert!((cr - ar).abs() < 1e-9 && (ci + ai).abs() < 1e-9);
        }
    }
}
