use serde::{Deserialize, Serialize};

use super::jones_of;
use crate::algebra::{JonesPoly, LaurentPoly};
use crate::diagram::{OrientedDiagram, StrandRelation};
use crate::error::{Error, Result};
use crate::pretzel::PretzelParams;

/// Three oriented diagrams that agree except at the top crossing of one band,
/// which is positive in `plus`, negative in `minus` and smoothed in `zero`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SkeinTriple {
    pub band: usize,
    pub plus: OrientedDiagram,
    pub minus: OrientedDiagram,
    pub zero: OrientedDiagram,
    /// Pretzel parameters of `L_+` and `L_-`; `None` for the side whose changed band
    /// is left with no twists (`a = ±2`).
    pub plus_params: Option<PretzelParams>,
    pub minus_params: Option<PretzelParams>,
    /// Pretzel parameters of the smoothing, `None` when it is an unknot or unlink
    /// with no bands left.
    pub zero_params: Option<PretzelParams>,
    pub relation: StrandRelation,
}

/// Skein triple at band `band` (0-based) of `p` under the standard orientation.
pub fn skein_triple(p: &PretzelParams, band: usize) -> Result<SkeinTriple> {
    skein_triple_oriented(p, &OrientedDiagram::standard(p), band)
}

/// Skein triple at the top crossing of `band`, inheriting the orientation of `parent`.
pub fn skein_triple_oriented(
    p: &PretzelParams,
    parent: &OrientedDiagram,
    band: usize,
) -> Result<SkeinTriple> {
    if band >= p.len() {
        return Err(Error::BadBand {
            index: band,
            bands: p.len(),
        });
    }
    let a = p.as_slice()[band];
    let g = parent.diagram.global(band, 0);
    let changed = parent.change_crossing(g);
    // a crossing change in a band of twist `a` leaves `a - 2 sgn(a)` after cancellation
    let changed_params = p.with_band(band, a - 2 * a.signum()).ok();
    let relation = parent
        .orientation
        .band_relation(&parent.diagram, band)
        .expect("band has a crossing");
    let zero = parent.smooth(g);
    let zero_params = match relation {
        StrandRelation::Antiparallel => {
            let rest: Vec<i64> = p
                .as_slice()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != band)
                .map(|(_, &x)| x)
                .collect();
            PretzelParams::new(rest).ok()
        }
        StrandRelation::Parallel => p.with_band(band, a - a.signum()).ok(),
    };
    let (plus, minus, plus_params, minus_params) = if parent.crossing_sign(g) < 0 {
        (changed, parent.clone(), changed_params, Some(p.clone()))
    } else {
        (parent.clone(), changed, Some(p.clone()), changed_params)
    };
    Ok(SkeinTriple {
        band,
        plus,
        minus,
        zero,
        plus_params,
        minus_params,
        zero_params,
        relation,
    })
}

/// `(q^{1/2} - q^{-1/2}) V(L_0) = q^{-1} V(L_+) - q V(L_-)`, checked exactly.
pub fn skein_identity_holds(plus: &JonesPoly, minus: &JonesPoly, zero: &JonesPoly) -> bool {
    let to_poly = |v: &JonesPoly| LaurentPoly::from_terms(v.terms.iter().copied());
    // exponents in q^{1/2} units: q^{±1/2} -> ±1, q^{±1} -> ±2
    let (vp, vm, v0) = (to_poly(plus), to_poly(minus), to_poly(zero));
    let lhs = &v0.shift(1) - &v0.shift(-1);
    let rhs = &vp.shift(-2) - &vm.shift(2);
    lhs == rhs
}

pub fn verify_skein(t: &SkeinTriple) -> Result<bool> {
    let plus = jones_of(&t.plus)?;
    let minus = jones_of(&t.minus)?;
    let zero = jones_of(&t.zero)?;
    Ok(skein_identity_holds(&plus, &minus, &zero))
}
