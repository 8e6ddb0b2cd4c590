use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::report::{BoundKind, Premise, RuleApplication};
use super::{positive_reduction, traczyk_allowed, CrossingBudget, TraczykSet};
use crate::algebra::OmegaClass;
use crate::error::{Error, Result};
use crate::jones::jones_at_omega;
use crate::lattice::{donaldson_scan, ObstructionReport};
use crate::pretzel::PretzelParams;

/// How the lattice obstruction behind a rule was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ObstructionMode {
    /// The finite scan was run at every even extra rank up to `max_rank`; the
    /// all-rank argument is cited for the rest.
    Verified { max_rank: usize },
    /// The published all-rank proof is trusted without running a scan.
    Cited,
}

impl std::fmt::Display for ObstructionMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ObstructionMode::Verified { max_rank } => write!(f, "verified({max_rank})"),
            ObstructionMode::Cited => write!(f, "cited"),
        }
    }
}

/// Whether `P(a, 1^r, b)` can be unknotted by changing `(r+1)/2 = σ/2` negative
/// and any number of positive crossings. `holds` means it cannot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Verdict {
    pub a: i64,
    pub r: i64,
    pub b: i64,
    pub mode: ObstructionMode,
    pub holds: bool,
    pub statement: String,
    pub report: Option<ObstructionReport>,
}

type VerdictKey = (i64, i64, i64, ObstructionMode, u64);

fn verdict_memo() -> &'static Mutex<HashMap<VerdictKey, Theorem1Verdict>> {
    static MEMO: OnceLock<Mutex<HashMap<VerdictKey, Theorem1Verdict>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

pub fn theorem1_verdict(a: i64, r: i64, b: i64, mode: ObstructionMode, budget: u64) -> Result<Theorem1Verdict> {
    if b < 3 {
        return Err(Error::BadFamily(format!("b = {b} must be odd and at least 3")));
    }
    // validates a and r as well
    crate::invariants::goeritz_matrix(a, r, b)?;
    let key = (a, r, b, mode, budget);
    if let Some(v) = verdict_memo().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let statement = format!(
        "P({a},1^{r},{b}) cannot be unknotted by changing {} negative and any number of positive crossings",
        (r + 1) / 2
    );
    let verdict = match mode {
        ObstructionMode::Verified { max_rank } => {
            let deltas: Vec<usize> = (1..=max_rank / 2).map(|k| 2 * k).collect();
            let report = donaldson_scan(a, r, b, &deltas, budget)?;
            Theorem1Verdict {
                a,
                r,
                b,
                mode,
                holds: report.obstructed(),
                statement,
                report: Some(report),
            }
        }
        ObstructionMode::Cited => Theorem1Verdict {
            a,
            r,
            b,
            mode,
            holds: true,
            statement,
            report: None,
        },
    };
    verdict_memo().lock().unwrap().insert(key, verdict.clone());
    Ok(verdict)
}

/// `(a, r, b)` when some dihedral image of `p` reads `(a, 1, ..., 1, b)` with `a, b`
/// odd and at least 3, preferring `a <= b`.
pub fn family_shape(p: &PretzelParams) -> Option<(i64, i64, i64)> {
    if p.len() < 3 || !p.all_odd() || !p.all_positive() {
        return None;
    }
    p.dihedral_images()
        .filter_map(|img| {
            let v = img.as_slice();
            let (a, b) = (v[0], v[v.len() - 1]);
            let ones = v[1..v.len() - 1].iter().all(|&x| x == 1);
            (ones && a >= 3 && b >= 3).then_some((a, v.len() as i64 - 2, b))
        })
        .min_by_key(|&(a, _, b)| (a > b, a, b))
}

/// The four facts the `P(3a,3b,3c)` bound rests on. Production code uses
/// [`Theorem2Steps`]; tests swap in faulty versions to show every check matters.
pub trait Theorem2Premises {
    fn omega_class(&self, p: &PretzelParams) -> Result<OmegaClass> {
        jones_at_omega(p).map(|(_, c)| c)
    }
    fn traczyk(&self, d: u32, s: u8, total: u32) -> TraczykSet {
        traczyk_allowed(d, s, total)
    }
    fn reduction(&self, src: &PretzelParams, dst: &PretzelParams) -> Option<i64> {
        positive_reduction(src, dst)
    }
    fn family_verdict(&self, a: i64, r: i64, b: i64, mode: ObstructionMode, budget: u64) -> Result<Theorem1Verdict> {
        theorem1_verdict(a, r, b, mode, budget)
    }
}

pub struct Theorem2Steps;

impl Theorem2Premises for Theorem2Steps {}

/// `u(P(3a,3b,3c)) >= 3` for positive odd `a, b, c`.
pub fn theorem2_lower_bound(p: &PretzelParams, mode: ObstructionMode, budget: u64) -> Result<RuleApplication> {
    theorem2_lower_bound_with(&Theorem2Steps, p, mode, budget)
}

pub fn theorem2_lower_bound_with(
    steps: &dyn Theorem2Premises,
    p: &PretzelParams,
    mode: ObstructionMode,
    budget: u64,
) -> Result<RuleApplication> {
    let shaped = p.len() == 3
        && p.as_slice().iter().all(|&x| x > 0 && x % 3 == 0 && (x / 3) % 2 == 1);
    if !shaped {
        return Err(Error::BadFamily(format!("{p} is not of the form P(3a,3b,3c) with a,b,c positive odd")));
    }
    let fail = |step: &str, reason: String| Error::PremiseFailed {
        step: step.to_string(),
        reason,
    };
    let mut premises = Vec::new();

    let class = steps.omega_class(p)?;
    if (class.s, class.d) != (1, 2) {
        return Err(fail("jones-at-omega", format!("expected s = 1, d = 2, got {class:?}")));
    }
    premises.push(Premise::passed("jones-at-omega", "V(K; ω) = 3, so s = 1 and d = 2"));

    let allowed = steps.traczyk(class.d, class.s, 2);
    let only = vec![CrossingBudget { p: 1, n: 1 }];
    if !allowed.constrained || allowed.budgets != only {
        return Err(fail("traczyk-parity", format!("two changes allow {:?}", allowed.budgets)));
    }
    premises.push(Premise::passed(
        "traczyk-parity",
        "two crossing changes must split as p = 1, n = 1, so n <= 1",
    ));

    let target = PretzelParams::new(vec![3, 1, 3])?;
    let Some(k) = steps.reduction(p, &target) else {
        return Err(fail("reduction", format!("{p} does not reduce to {target}")));
    };
    premises.push(Premise::passed(
        "reduction",
        &format!("{p} reaches {target} by changing {k} negative crossing{}", if k == 1 { "" } else { "s" }),
    ));

    let verdict = steps.family_verdict(3, 1, 3, mode, budget)?;
    if !verdict.holds {
        return Err(fail("family-obstruction", format!("{} was not established", verdict.statement)));
    }
    premises.push(Premise::passed("family-obstruction", &format!("{} [{}]", verdict.statement, mode)));
    premises.push(Premise::passed(
        "conclusion",
        "any unknotting with n <= 1 would give one for P(3,1,3) with the same n; u = 1 and u = 2 both force n <= 1",
    ));

    Ok(RuleApplication {
        rule: "jones-parity-reduction".into(),
        citation: "Lickorish-Millett value of V at ω; Traczyk's parity theorem; reduction to P(3,1,3) and the Donaldson obstruction for it".into(),
        kind: BoundKind::Lower,
        value: 3,
        premises,
        mode: Some(mode),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DEFAULT_BUDGET;

    fn p(v: &[i64]) -> PretzelParams {
        PretzelParams::new(v.to_vec()).unwrap()
    }

    const V6: ObstructionMode = ObstructionMode::Verified { max_rank: 6 };

    #[test]
    fn family_verdicts() {
        for (a, r, b, rank) in [(3, 1, 3, 6), (3, 3, 3, 4), (5, 1, 3, 4)] {
            let v = theorem1_verdict(a, r, b, ObstructionMode::Verified { max_rank: rank }, DEFAULT_BUDGET).unwrap();
            assert!(v.holds, "{a},{r},{b}");
        }
        assert!(theorem1_verdict(3, 1, 1, V6, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn shapes() {
        assert_eq!(family_shape(&p(&[3, 1, 3])), Some((3, 1, 3)));
        assert_eq!(family_shape(&p(&[1, 1, 5, 3, 1])), Some((3, 3, 5)));
        assert_eq!(family_shape(&p(&[3, 3, 3])), None);
        assert_eq!(family_shape(&p(&[3, 1, 1])), None);
    }

    #[test]
    fn theorem2_examples() {
        for v in [[3, 3, 3], [3, 3, 9], [9, 9, 9]] {
            let rule = theorem2_lower_bound(&p(&v), V6, DEFAULT_BUDGET).unwrap();
            assert_eq!(rule.value, 3);
            assert!(rule.premises.iter().all(|x| x.passed));
        }
        assert!(matches!(
            theorem2_lower_bound(&p(&[3, 3, 5]), V6, DEFAULT_BUDGET),
            Err(Error::BadFamily(_))
        ));
    }

    struct WrongOmega;
    impl Theorem2Premises for WrongOmega {
        fn omega_class(&self, _: &PretzelParams) -> Result<OmegaClass> {
            Ok(OmegaClass { r: 1, s: 0, d: 2 })
        }
    }
    struct LooseTraczyk;
    impl Theorem2Premises for LooseTraczyk {
        fn traczyk(&self, d: u32, s: u8, _: u32) -> TraczykSet {
            traczyk_allowed(d, s, 3)
        }
    }
    struct NoReduction;
    impl Theorem2Premises for NoReduction {
        fn reduction(&self, _: &PretzelParams, _: &PretzelParams) -> Option<i64> {
            None
        }
    }
    struct Unobstructed;
    impl Theorem2Premises for Unobstructed {
        fn family_verdict(&self, a: i64, r: i64, b: i64, mode: ObstructionMode, budget: u64) -> Result<Theorem1Verdict> {
            let mut v = theorem1_verdict(a, r, b, mode, budget)?;
            v.holds = false;
            Ok(v)
        }
    }

    #[test]
    fn every_premise_is_checked() {
        let k = p(&[3, 3, 3]);
        let cases: [(&dyn Theorem2Premises, &str); 4] = [
            (&WrongOmega, "jones-at-omega"),
            (&LooseTraczyk, "traczyk-parity"),
            (&NoReduction, "reduction"),
            (&Unobstructed, "family-obstruction"),
        ];
        for (steps, name) in cases {
            match theorem2_lower_bound_with(steps, &k, V6, DEFAULT_BUDGET) {
                Err(Error::PremiseFailed { step, .. }) => assert_eq!(step, name),
                other => panic!("{name}: {other:?}"),
            }
        }
    }
}
