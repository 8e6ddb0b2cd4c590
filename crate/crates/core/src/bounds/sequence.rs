use serde::{Deserialize, Serialize};

use crate::algebra::{Cyc12, JonesPoly};
use crate::diagram::trace_diagram;
use crate::error::{Error, Result};
use crate::invariants::determinant_of_knot;
use crate::jones::jones;
use crate::pretzel::PretzelParams;

/// One crossing change: band `band` goes from `from` to `to = from - 2 sgn(from)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceStep {
    pub band: usize,
    pub from: i64,
    pub to: i64,
    /// Sign of the crossing before it is changed.
    pub crossing_sign: i8,
}

/// Determinant 1 and trivial Jones polynomial. Both are necessary for the unknot;
/// neither is a proof of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalCertificate {
    pub determinant: u64,
    pub jones: JonesPoly,
    pub label: String,
}

impl TerminalCertificate {
    pub fn passes(&self) -> bool {
        self.determinant == 1 && self.jones.is_one()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknottingSequence {
    pub start: PretzelParams,
    pub steps: Vec<SequenceStep>,
    pub terminal: PretzelParams,
    pub certificate: TerminalCertificate,
}

impl UnknottingSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies the steps to `start`, checking each is a single `±2` change of the
    /// named band, and that the end point is `terminal`.
    pub fn replay(&self) -> Result<PretzelParams> {
        let mut cur = self.start.as_slice().to_vec();
        for (i, st) in self.steps.iter().enumerate() {
            let bad = |why: &str| Error::CertificationFailed(format!("step {i}: {why}"));
            let Some(&v) = cur.get(st.band) else {
                return Err(bad("band out of range"));
            };
            if v != st.from || st.to != v - 2 * v.signum() {
                return Err(bad("not a single crossing change"));
            }
            cur[st.band] = st.to;
        }
        let end = PretzelParams::new(cur)?;
        if end != self.terminal {
            return Err(Error::CertificationFailed("replay does not reach the terminal".into()));
        }
        Ok(end)
    }
}

/// Determinant of a knot: from the Seifert form when every band is odd, else
/// `|V(-1)|`.
pub fn knot_determinant(p: &PretzelParams) -> Result<u64> {
    if p.all_odd() {
        return determinant_of_knot(p);
    }
    jones_determinant(&jones(p)?)
}

/// `|V(q = -1)|`, i.e. the Jones polynomial at `q^{1/2} = i`.
fn jones_determinant(v: &JonesPoly) -> Result<u64> {
    let mut z = Cyc12::ZERO;
    for &(e, c) in &v.terms {
        z = z + Cyc12::I.pow(e.rem_euclid(4) as u32).scale(c);
    }
    let n = z.conj_norm()?;
    Ok((n.abs() as f64).sqrt().round() as u64)
}

fn certify(terminal: &PretzelParams) -> Result<TerminalCertificate> {
    let cert = TerminalCertificate {
        determinant: knot_determinant(terminal)?,
        jones: jones(terminal)?,
        label: "determinant 1 and V = 1 (necessary for the unknot; the diagram moves assert it)"
            .into(),
    };
    if !cert.passes() {
        return Err(Error::CertificationFailed(format!(
            "terminal {terminal} has determinant {} and V = {}",
            cert.determinant, cert.jones
        )));
    }
    Ok(cert)
}

/// Walks every band of `start` to its entry in `targets`, one crossing change at a
/// time, recording crossing signs from the oriented diagram.
fn walk(start: &PretzelParams, order: &[usize], targets: &[i64]) -> Result<UnknottingSequence> {
    let mut cur = start.clone();
    let mut steps = Vec::new();
    for &band in order {
        while cur.as_slice()[band] != targets[band] {
            let from = cur.as_slice()[band];
            let to = from - 2 * from.signum();
            let crossing_sign = trace_diagram(&cur).bands[band].crossing_sign.unwrap_or(0);
            steps.push(SequenceStep {
                band,
                from,
                to,
                crossing_sign,
            });
            cur = cur.with_band(band, to)?;
        }
    }
    let certificate = certify(&cur)?;
    Ok(UnknottingSequence {
        start: start.clone(),
        steps,
        terminal: cur,
        certificate,
    })
}

/// For an odd number of positive odd bands: keep the largest band (the last one
/// on ties) and walk the others, in cyclic order after it, down to `+1, -1, +1, ...`.
/// Uses `(sum of the n-1 smallest)/2` changes.
pub fn upper_bound_sequence(p: &PretzelParams) -> Result<UnknottingSequence> {
    let a = p.as_slice();
    if a.len() % 2 == 0 || !p.all_odd() || !p.all_positive() {
        return Err(Error::InvalidParams(format!(
            "{p}: needs an odd number of positive odd bands"
        )));
    }
    let n = a.len();
    let keep = (0..n).max_by_key(|&i| a[i]).unwrap();
    let order: Vec<usize> = (1..n).map(|k| (keep + k) % n).collect();
    let mut targets = a.to_vec();
    for (k, &band) in order.iter().enumerate() {
        targets[band] = if k % 2 == 0 { 1 } else { -1 };
    }
    walk(p, &order, &targets)
}

const GENERIC_BAND_CAP: usize = 9;

/// The cheapest certified sequence for any knot diagram: the positive-band
/// construction, its mirror, or else a search over taking each odd band to `+1`,
/// `-1` or leaving it alone. `None` when nothing certifies.
pub fn certified_upper(p: &PretzelParams) -> Result<Option<UnknottingSequence>> {
    if !p.is_knot() {
        return Err(Error::NotAKnot(p.to_string()));
    }
    if p.len() % 2 == 1 && p.all_odd() {
        if p.all_positive() {
            return upper_bound_sequence(p).map(Some);
        }
        if p.as_slice().iter().all(|&x| x < 0) {
            return Ok(upper_bound_sequence(&p.mirror()).ok().map(|s| mirror_sequence(&s)));
        }
    }
    let a = p.as_slice();
    if a.len() > GENERIC_BAND_CAP {
        return Ok(None);
    }
    let choices: Vec<Vec<i64>> = a
        .iter()
        .map(|&x| {
            if x % 2 == 0 {
                vec![x]
            } else {
                let mut c = vec![x, 1, -1];
                c.sort_unstable();
                c.dedup();
                c
            }
        })
        .collect();
    let mut candidates: Vec<Vec<i64>> = vec![vec![]];
    for c in &choices {
        candidates = candidates
            .into_iter()
            .flat_map(|pre| {
                c.iter().map(move |&t| {
                    let mut v = pre.clone();
                    v.push(t);
                    v
                })
            })
            .collect();
    }
    let cost = |t: &[i64]| -> i64 { a.iter().zip(t).map(|(x, y)| (x - y).abs() / 2).sum() };
    candidates.sort_by_key(|t| (cost(t), t.clone()));
    let order: Vec<usize> = (0..a.len()).collect();
    for t in candidates {
        let terminal = PretzelParams::new(t.clone())?;
        if knot_determinant(&terminal)? != 1 || !jones(&terminal)?.is_one() {
            continue;
        }
        return walk(p, &order, &t).map(Some);
    }
    Ok(None)
}

fn mirror_sequence(s: &UnknottingSequence) -> UnknottingSequence {
    UnknottingSequence {
        start: s.start.mirror(),
        steps: s
            .steps
            .iter()
            .map(|st| SequenceStep {
                band: st.band,
                from: -st.from,
                to: -st.to,
                crossing_sign: -st.crossing_sign,
            })
            .collect(),
        terminal: s.terminal.mirror(),
        certificate: TerminalCertificate {
            jones: s.certificate.jones.mirror(),
            ..s.certificate.clone()
        },
    }
}
