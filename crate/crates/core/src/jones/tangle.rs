//! Kauffman bracket of pretzel diagrams through the two-strand Temperley-Lieb algebra.
//!
//! A band is a vertical stack of nodes; as an element of TL_2 it is
//! `identity * [two vertical strands] + cap_cup * [cap over cup]`, and stacking
//! uses `cap_cup^2 = delta * cap_cup`.

use serde::{Deserialize, Serialize};

use crate::algebra::LaurentPoly;
use crate::diagram::{Node, PretzelDiagram};
use crate::pretzel::PretzelParams;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TLPair {
    pub identity: LaurentPoly,
    pub cap_cup: LaurentPoly,
}

impl TLPair {
    pub fn identity() -> Self {
        TLPair {
            identity: LaurentPoly::one(),
            cap_cup: LaurentPoly::zero(),
        }
    }

    pub fn of_node(node: Node) -> Self {
        let a = |e| LaurentPoly::monomial(1, e);
        match node {
            // A-smoothing of a `/`-over crossing keeps the strands vertical
            Node::Slash => TLPair {
                identity: a(1),
                cap_cup: a(-1),
            },
            Node::Backslash => TLPair {
                identity: a(-1),
                cap_cup: a(1),
            },
            Node::Cap => TLPair {
                identity: LaurentPoly::zero(),
                cap_cup: LaurentPoly::one(),
            },
            Node::Straight => TLPair::identity(),
        }
    }

    /// Stacks `self` on top of `below`.
    pub fn compose(&self, below: &TLPair) -> TLPair {
        let delta = LaurentPoly::delta();
        TLPair {
            identity: &self.identity * &below.identity,
            cap_cup: &(&self.identity * &below.cap_cup)
                + &(&(&self.cap_cup * &below.identity)
                    + &(&delta * &(&self.cap_cup * &below.cap_cup))),
        }
    }

    pub fn of_band(nodes: &[Node]) -> TLPair {
        nodes
            .iter()
            .fold(TLPair::identity(), |acc, &n| acc.compose(&TLPair::of_node(n)))
    }
}

/// `k` half-twists; positive `k` uses the crossing type of positive bands.
pub fn twist_tangle(k: i64) -> TLPair {
    let node = if k >= 0 { Node::Slash } else { Node::Backslash };
    let single = TLPair::of_node(node);
    (0..k.unsigned_abs()).fold(TLPair::identity(), |acc, _| acc.compose(&single))
}

/// Pretzel closure of bands given as TL elements.
///
/// If `T` is the set of bands resolved to vertical strands, the closure has
/// `|T|` loops for nonempty `T` and two loops (top and bottom) for empty `T`.
/// Summing `prod_T identity * prod_rest cap_cup * delta^(loops - 1)` band by band
/// keeps two running sums: `empty` for `T` still empty and `rest` otherwise.
pub fn close_bands(bands: &[TLPair]) -> LaurentPoly {
    let delta = LaurentPoly::delta();
    let mut empty = LaurentPoly::one();
    let mut rest = LaurentPoly::zero();
    for band in bands {
        let open = &band.cap_cup + &(&delta * &band.identity);
        rest = &(&rest * &open) + &(&empty * &band.identity);
        empty = &empty * &band.cap_cup;
    }
    &(&delta * &empty) + &rest
}

pub fn pretzel_bracket(p: &PretzelParams) -> LaurentPoly {
    let bands: Vec<TLPair> = p.as_slice().iter().map(|&a| twist_tangle(a)).collect();
    close_bands(&bands)
}

pub fn diagram_bracket(d: &PretzelDiagram) -> LaurentPoly {
    let bands: Vec<TLPair> = d.bands().iter().map(|b| TLPair::of_band(b)).collect();
    close_bands(&bands)
}
