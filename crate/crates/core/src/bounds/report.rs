use serde::{Deserialize, Serialize};

use super::rules::{family_shape, theorem1_verdict, theorem2_lower_bound, ObstructionMode};
use super::sequence::{certified_upper, knot_determinant, UnknottingSequence};
use super::{positive_reduction, traczyk_allowed, CrossingBudget};
use crate::algebra::{classify_omega, OmegaClass};
use crate::error::{Error, Result};
use crate::invariants::pretzel_signature;
use crate::jones::jones;
use crate::lattice::DEFAULT_BUDGET;
use crate::pretzel::PretzelParams;

pub const SIGNATURE_CONVENTION: &str =
    "σ is the signature of S + S^T for the Seifert matrix of the standard diagram; it is positive \
     for pretzels with positive parameters, whose crossings are all negative";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsOptions {
    /// Extra ranks for verified lattice scans; the largest one is the verified rank.
    pub deltas: Vec<usize>,
    pub budget: u64,
    /// Run the lattice scans (`verified`) or trust the published proof (`cited`).
    pub verify: bool,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        BoundsOptions {
            deltas: vec![2, 4, 6],
            budget: DEFAULT_BUDGET,
            verify: true,
        }
    }
}

impl BoundsOptions {
    pub fn mode(&self) -> ObstructionMode {
        match self.deltas.iter().max() {
            Some(&max_rank) if self.verify => ObstructionMode::Verified { max_rank },
            _ => ObstructionMode::Cited,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Premise {
    pub name: String,
    pub detail: String,
    pub passed: bool,
}

impl Premise {
    pub fn passed(name: &str, detail: &str) -> Self {
        Premise {
            name: name.to_string(),
            detail: detail.to_string(),
            passed: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleApplication {
    pub rule: String,
    pub citation: String,
    pub kind: BoundKind,
    pub value: i64,
    pub premises: Vec<Premise>,
    pub mode: Option<ObstructionMode>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub params: PretzelParams,
    pub signature: Option<i64>,
    pub omega: Option<OmegaClass>,
    pub lower: i64,
    pub upper: Option<i64>,
    pub exact: Option<i64>,
    pub rule_trace: Vec<RuleApplication>,
    pub sequence: Option<UnknottingSequence>,
    /// A lattice scan ran out of budget; its rule was skipped, not assumed.
    pub inconclusive: bool,
    pub notes: Vec<String>,
    pub convention: String,
}

pub fn bounds_report(p: &PretzelParams, opts: &BoundsOptions) -> Result<BoundsReport> {
    if !p.is_knot() {
        return Err(Error::NotAKnot(p.to_string()));
    }
    let mode = opts.mode();
    let mut trace = Vec::new();
    let mut notes = Vec::new();
    let mut inconclusive = false;

    let v = jones(p)?;
    let det = knot_determinant(p)?;
    if det != 1 || !v.is_one() {
        trace.push(RuleApplication {
            rule: "nontrivial".into(),
            citation: "the unknot has determinant 1 and Jones polynomial 1".into(),
            kind: BoundKind::Lower,
            value: 1,
            premises: vec![Premise::passed(
                "invariants",
                &format!("determinant {det}, V = {v}"),
            )],
            mode: None,
        });
    }

    let omega = classify_omega(v.eval_at_omega(), v.components).ok();
    let mut sigma = None;
    if p.all_odd() {
        let s = pretzel_signature(p)?.sigma;
        sigma = Some(s);
        let half = s.abs() / 2;
        if half > 0 {
            trace.push(RuleApplication {
                rule: "signature".into(),
                citation: "Murasugi: u(K) >= |σ(K)|/2".into(),
                kind: BoundKind::Lower,
                value: half,
                premises: vec![Premise::passed("signature", &format!("σ = {s}"))],
                mode: None,
            });
            if let Some(c) = omega {
                // u = |σ|/2 forces every change to lower |σ|: n = |σ|/2, p = 0 when σ > 0
                let forced = if s > 0 {
                    CrossingBudget { p: 0, n: half as u32 }
                } else {
                    CrossingBudget { p: half as u32, n: 0 }
                };
                let allowed = traczyk_allowed(c.d, c.s, half as u32);
                if allowed.constrained && !allowed.budgets.contains(&forced) {
                    trace.push(RuleApplication {
                        rule: "signature-parity".into(),
                        citation: "Murasugi signature bound; Lickorish-Millett value of V at ω; Traczyk's parity theorem".into(),
                        kind: BoundKind::Lower,
                        value: half + 1,
                        premises: vec![
                            Premise::passed(
                                "signature",
                                &format!("σ = {s}, so u = {half} forces p = {}, n = {}", forced.p, forced.n),
                            ),
                            Premise::passed("jones-at-omega", &format!("s = {}, d = {}", c.s, c.d)),
                            Premise::passed(
                                "traczyk-parity",
                                &format!("{half} changes allow only {:?}", allowed.budgets),
                            ),
                        ],
                        mode: None,
                    });
                }
            }
        }
    } else {
        notes.push("an even band: signature rules skipped".into());
    }

    // lattice rules, stated for positive bands; mirrors have the same unknotting number
    let positive = if p.all_positive() {
        Some(p.clone())
    } else if p.as_slice().iter().all(|&x| x < 0) {
        notes.push("negative bands: lattice rules applied to the mirror".into());
        Some(p.mirror())
    } else {
        None
    };
    if let Some(q) = positive.filter(|q| q.all_odd() && q.len() >= 3) {
        match family_rule(&q, mode, opts.budget) {
            Ok(Some(rule)) => trace.push(rule),
            Ok(None) => {}
            Err(Error::SearchBudgetExceeded { budget }) => {
                inconclusive = true;
                notes.push(format!("lattice scan exceeded {budget} nodes: inconclusive, rule skipped"));
            }
            Err(e) => return Err(e),
        }
        if q.len() == 3 && q.as_slice().iter().all(|&x| x % 3 == 0 && (x / 3) % 2 == 1) {
            match theorem2_lower_bound(&q, mode, opts.budget) {
                Ok(rule) => trace.push(rule),
                Err(Error::SearchBudgetExceeded { budget }) => {
                    inconclusive = true;
                    notes.push(format!("lattice scan exceeded {budget} nodes: inconclusive, rule skipped"));
                }
                Err(e) => return Err(e),
            }
        }
    }

    let sequence = certified_upper(p)?;
    if let Some(seq) = &sequence {
        trace.push(RuleApplication {
            rule: "unknotting-sequence".into(),
            citation: "explicit crossing changes, terminal diagram certified".into(),
            kind: BoundKind::Upper,
            value: seq.len() as i64,
            premises: vec![
                Premise::passed("replay", &format!("{} steps reach {}", seq.len(), seq.terminal)),
                Premise::passed("terminal", &seq.certificate.label),
            ],
            mode: None,
        });
    } else {
        notes.push("no certified unknotting sequence found".into());
    }

    let lower = trace
        .iter()
        .filter(|r| r.kind == BoundKind::Lower)
        .map(|r| r.value)
        .max()
        .unwrap_or(0);
    let upper = sequence.as_ref().map(|s| s.len() as i64);
    if upper.is_some_and(|u| u < lower) {
        return Err(Error::CertificationFailed(format!(
            "{p}: lower bound {lower} exceeds upper bound {}",
            upper.unwrap()
        )));
    }
    debug_assert!(trace.iter().all(|r| r.premises.iter().all(|x| x.passed)));
    Ok(BoundsReport {
        params: p.clone(),
        signature: sigma,
        omega,
        lower,
        upper,
        exact: upper.filter(|&u| u == lower),
        rule_trace: trace,
        sequence,
        inconclusive,
        notes,
        convention: SIGNATURE_CONVENTION.into(),
    })
}

/// `σ/2 + 1` for knots that are, or reduce by negative crossing changes to, a
/// member `P(a, 1^r, b)` of the obstructed family with the same band count.
fn family_rule(q: &PretzelParams, mode: ObstructionMode, budget: u64) -> Result<Option<RuleApplication>> {
    let n = q.len() as i64;
    let sigma = pretzel_signature(q)?.sigma;
    let citation = "Owens' half-integer surgery obstruction from Donaldson's diagonalization theorem";
    if let Some((a, r, b)) = family_shape(q) {
        let v = theorem1_verdict(a, r, b, mode, budget)?;
        if !v.holds || sigma != r + 1 {
            return Ok(None);
        }
        return Ok(Some(RuleApplication {
            rule: "donaldson-family".into(),
            citation: citation.into(),
            kind: BoundKind::Lower,
            value: sigma / 2 + 1,
            premises: vec![
                Premise::passed("shape", &format!("{q} is P({a},1^{r},{b})")),
                Premise::passed("signature", &format!("σ = {sigma}, so u = σ/2 forces n = σ/2 and p = 0")),
                Premise::passed("family-obstruction", &format!("{} [{mode}]", v.statement)),
            ],
            mode: Some(mode),
        }));
    }
    let target = PretzelParams::new([vec![3], vec![1; (n - 2) as usize], vec![3]].concat())?;
    let Some(k) = positive_reduction(q, &target) else {
        return Ok(None);
    };
    let target_sigma = pretzel_signature(&target)?.sigma;
    let v = theorem1_verdict(3, n - 2, 3, mode, budget)?;
    if !v.holds || target_sigma != sigma {
        return Ok(None);
    }
    Ok(Some(RuleApplication {
        rule: "donaldson-reduction".into(),
        citation: citation.into(),
        kind: BoundKind::Lower,
        value: sigma / 2 + 1,
        premises: vec![
            Premise::passed("reduction", &format!("{q} reaches {target} by changing {k} negative crossing{}", if k == 1 { "" } else { "s" })),
            Premise::passed(
                "signature",
                &format!("σ = {sigma} for both, so u = σ/2 needs n = σ/2, which would unknot {target} with n = σ/2"),
            ),
            Premise::passed("family-obstruction", &format!("{} [{mode}]", v.statement)),
        ],
        mode: Some(mode),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConjectureStatus {
    ProvedEqual,
    Consistent,
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRecord {
    pub params: PretzelParams,
    pub conjectured: i64,
    pub lower: i64,
    pub upper: i64,
    pub status: ConjectureStatus,
}

/// Compares `(sum of the n-1 smallest a_i)/2` with the computed bounds.
pub fn conjecture_check(p: &PretzelParams, opts: &BoundsOptions) -> Result<ConjectureRecord> {
    if p.len() % 2 == 0 || !p.all_odd() || !p.all_positive() {
        return Err(Error::InvalidParams(format!("{p}: needs an odd number of positive odd bands")));
    }
    let mut sorted = p.as_slice().to_vec();
    sorted.sort_unstable();
    let conjectured = sorted[..sorted.len() - 1].iter().sum::<i64>() / 2;
    let rep = bounds_report(p, opts)?;
    let upper = rep
        .upper
        .ok_or_else(|| Error::CertificationFailed(format!("{p}: no certified upper bound")))?;
    let status = if conjectured < rep.lower || conjectured > upper {
        ConjectureStatus::Violated
    } else if rep.lower == upper {
        ConjectureStatus::ProvedEqual
    } else {
        ConjectureStatus::Consistent
    };
    Ok(ConjectureRecord {
        params: p.clone(),
        conjectured,
        lower: rep.lower,
        upper,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> PretzelParams {
        PretzelParams::new(v.to_vec()).unwrap()
    }

    #[test]
    fn exact_values() {
        let o = BoundsOptions::default();
        for (v, u) in [
            (vec![3, 1, 3], 2),
            (vec![3, 3, 3], 3),
            (vec![3, 1, 1, 1, 5], 3),
            (vec![3, 1, 1, 1, 3], 3),
            (vec![3, 3, 9], 3),
            (vec![-3, -1, -3], 2),
        ] {
            let r = bounds_report(&p(&v), &o).unwrap();
            assert_eq!(r.exact, Some(u), "{v:?}: {r:?}");
        }
    }

    #[test]
    fn conjecture_examples() {
        let o = BoundsOptions::default();
        let c = conjecture_check(&p(&[3, 1, 3]), &o).unwrap();
        assert_eq!((c.conjectured, c.status), (2, ConjectureStatus::ProvedEqual));
        let c = conjecture_check(&p(&[3, 3, 3]), &o).unwrap();
        assert_eq!((c.conjectured, c.status), (3, ConjectureStatus::ProvedEqual));
        let c = conjecture_check(&p(&[5, 5, 5]), &o).unwrap();
        assert_eq!((c.conjectured, c.upper), (5, 5));
        assert_eq!(c.status, ConjectureStatus::Consistent);
    }

    #[test]
    fn cited_mode_matches() {
        let o = BoundsOptions {
            verify: false,
            ..Default::default()
        };
        let r = bounds_report(&p(&[3, 3, 3]), &o).unwrap();
        assert_eq!(r.exact, Some(3));
        assert!(r.rule_trace.iter().any(|x| x.mode == Some(ObstructionMode::Cited)));
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let o = BoundsOptions {
            budget: 20,
            ..Default::default()
        };
        let r = bounds_report(&p(&[3, 1, 1, 1, 3]), &o).unwrap();
        assert!(r.inconclusive);
        assert!(r.rule_trace.iter().all(|x| x.mode.is_none()));
        assert!(r.lower < 3);
    }

    #[test]
    fn links_rejected() {
        assert!(matches!(bounds_report(&p(&[3, 3]), &BoundsOptions::default()), Err(Error::NotAKnot(_))));
    }
}
