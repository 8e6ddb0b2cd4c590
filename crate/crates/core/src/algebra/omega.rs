//! Normal form of Jones values at `ω = e^{iπ/3}`: every link satisfies
//! `V(L; ω) = (-1)^s i^{r-1} (i√3)^d` with `d` the mod-3 nullity of its
//! symmetrized Seifert form.

use serde::{Deserialize, Serialize};

use super::cyc12::Cyc12;
use crate::error::{Error, Result};

pub const DEFAULT_D_CAP: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OmegaClass {
    /// Number of components.
    pub r: usize,
    /// Sign parity, 0 or 1.
    pub s: u8,
    pub d: u32,
}

impl OmegaClass {
    pub fn realize(&self) -> Cyc12 {
        realize(self.r, self.s, self.d)
    }
}

/// `(-1)^s (ζ^3)^{r-1} (2ζ^2 - 1)^d`.
pub fn realize(r: usize, s: u8, d: u32) -> Cyc12 {
    let v = Cyc12::zeta_pow(3 * (r as i64 - 1)) * Cyc12::I_SQRT3.pow(d);
    if s % 2 == 1 {
        -v
    } else {
        v
    }
}

pub fn classify_omega(v: Cyc12, r: usize) -> Result<OmegaClass> {
    classify_omega_capped(v, r, DEFAULT_D_CAP)
}

pub fn classify_omega_capped(v: Cyc12, r: usize, cap: u32) -> Result<OmegaClass> {
    if r == 0 || v.is_zero() {
        return Err(Error::NotLMForm { cap });
    }
    let mut base = Cyc12::zeta_pow(3 * (r as i64 - 1));
    for d in 0..=cap {
        if v == base {
            return Ok(OmegaClass { r, s: 0, d });
        }
        if v == -base {
            return Ok(OmegaClass { r, s: 1, d });
        }
        base = base * Cyc12::I_SQRT3;
    }
    Err(Error::NotLMForm { cap })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(
            classify_omega(Cyc12::from_int(3), 1),
            Ok(OmegaClass { r: 1, s: 1, d: 2 })
        );
        assert_eq!(
            classify_omega(Cyc12::ONE, 1),
            Ok(OmegaClass { r: 1, s: 0, d: 0 })
        );
        assert_eq!(
            classify_omega(-Cyc12::SQRT3, 2),
            Ok(OmegaClass { r: 2, s: 0, d: 1 })
        );
        assert_eq!(-Cyc12::SQRT3, Cyc12([0, -2, 0, 1]));
    }

    #[test]
    fn realize_round_trips() {
        for r in 1..5 {
            for s in 0..2 {
                for d in 0..10 {
                    let c = OmegaClass { r, s, d };
                    assert_eq!(classify_omega(c.realize(), r), Ok(c));
                    assert_eq!(c.realize().conj_norm(), Ok(3i64.pow(d)));
                }
            }
        }
    }

    #[test]
    fn rejects_other_values() {
        assert_eq!(
            classify_omega(Cyc12::from_int(2), 1),
            Err(Error::NotLMForm { cap: DEFAULT_D_CAP })
        );
        // correct magnitude, wrong phase for a knot
        assert!(classify_omega(Cyc12::SQRT3, 1).is_err());
        assert!(classify_omega(Cyc12::ZERO, 1).is_err());
        assert!(classify_omega_capped(Cyc12::from_int(9), 1, 4).is_ok());
        assert!(classify_omega_capped(Cyc12::from_int(9), 1, 3).is_err());
    }
}
