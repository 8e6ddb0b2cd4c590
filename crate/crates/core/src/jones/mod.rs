//! Jones polynomials of pretzel diagrams.
//!
//! The production path composes Temperley-Lieb twist elements band by band
//! ([`tangle`]); [`statesum`] enumerates every Kauffman state of the PD code and
//! exists to cross-check it.

pub mod skein;
pub mod statesum;
pub mod tangle;

pub use skein::{skein_identity_holds, skein_triple, skein_triple_oriented, verify_skein, SkeinTriple};
pub use statesum::{bracket_statesum, DEFAULT_ORACLE_CAP};
pub use tangle::{close_bands, diagram_bracket, pretzel_bracket, twist_tangle, TLPair};

use crate::algebra::{classify_omega, to_jones_units, Cyc12, JonesPoly, LaurentPoly, OmegaClass};
use crate::diagram::OrientedDiagram;
use crate::error::Result;
use crate::pretzel::PretzelParams;

/// `(-A)^{-3w}` times the bracket.
pub fn normalize(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    &LaurentPoly::monomial(sign, -3 * writhe) * bracket
}

pub fn jones_of(d: &OrientedDiagram) -> Result<JonesPoly> {
    let bracket = diagram_bracket(&d.diagram);
    to_jones_units(&normalize(&bracket, d.writhe()), d.component_count())
}

/// Same as [`jones_of`], through the state-sum oracle.
pub fn jones_of_statesum(d: &OrientedDiagram, cap: usize) -> Result<JonesPoly> {
    let bracket = bracket_statesum(&d.pd_code(), cap)?;
    to_jones_units(&normalize(&bracket, d.writhe()), d.component_count())
}

/// Jones polynomial of `P(a_1, ..., a_n)` under the standard orientation.
pub fn jones(p: &PretzelParams) -> Result<JonesPoly> {
    jones_of(&OrientedDiagram::standard(p))
}

pub fn omega_of(d: &OrientedDiagram) -> Result<(Cyc12, OmegaClass)> {
    let v = jones_of(d)?;
    let value = v.eval_at_omega();
    Ok((value, classify_omega(value, v.components)?))
}

/// `V(P; ω)` and its normal form, standard orientation.
pub fn jones_at_omega(p: &PretzelParams) -> Result<(Cyc12, OmegaClass)> {
    omega_of(&OrientedDiagram::standard(p))
}
