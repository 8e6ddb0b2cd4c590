//! Lower and upper bounds on the unknotting number of a pretzel knot, each
//! lower bound carried by a rule whose premises are recomputed when it fires.

mod report;
mod rules;
mod sequence;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::pretzel_signature;
use crate::pretzel::PretzelParams;

pub use report::{
    bounds_report, conjecture_check, BoundKind, BoundsOptions, BoundsReport, ConjectureRecord,
    ConjectureStatus, Premise, RuleApplication, SIGNATURE_CONVENTION,
};
pub use rules::{
    family_shape, theorem1_verdict, theorem2_lower_bound, theorem2_lower_bound_with, ObstructionMode,
    Theorem1Verdict, Theorem2Premises, Theorem2Steps,
};
pub use sequence::{
    certified_upper, knot_determinant, upper_bound_sequence, SequenceStep, TerminalCertificate,
    UnknottingSequence,
};

/// Numbers of positive and negative crossings changed by an unknotting sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CrossingBudget {
    pub p: u32,
    pub n: u32,
}

/// Output of [`traczyk_allowed`]. `constrained` is false when the parity rule did
/// not apply and `budgets` lists every split of the total.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraczykSet {
    pub budgets: Vec<CrossingBudget>,
    pub constrained: bool,
}

/// `⌈|σ|/2⌉`.
pub fn signature_lower_bound(p: &PretzelParams) -> Result<i64> {
    if !p.is_knot() {
        return Err(Error::NotAKnot(p.to_string()));
    }
    let sigma = pretzel_signature(p)?.sigma;
    Ok((sigma.abs() + 1) / 2)
}

/// Splits `(p, n)` of `total` crossing changes allowed by Traczyk's parity rule for
/// a knot with `V(K; ω) = (-1)^s (i√3)^d`. The rule only speaks when `total = d`;
/// otherwise every split is returned, unconstrained.
///
/// With the skein convention used here the parity falls on the negative changes,
/// `n ≡ s`, i.e. `p ≡ s + d`: the right trefoil has `s = 0` and unknots with one
/// positive change. For even `d` this is the same as `p ≡ s`.
pub fn traczyk_allowed(d: u32, s: u8, total: u32) -> TraczykSet {
    let constrained = total == d;
    let budgets = (0..=total)
        .map(|p| CrossingBudget { p, n: total - p })
        .filter(|b| !constrained || b.n % 2 == u32::from(s % 2))
        .collect();
    TraczykSet { budgets, constrained }
}

/// Crossing changes taking `src` to `dst`, each flipping a crossing of a positive
/// band (so `a -> a - 2` while `a > 0`), under some dihedral alignment of `src`.
pub fn positive_reduction(src: &PretzelParams, dst: &PretzelParams) -> Option<i64> {
    if !src.all_odd() || !dst.all_odd() || src.len() != dst.len() {
        return None;
    }
    src.dihedral_images().find_map(|img| {
        let ok = img.as_slice().iter().zip(dst.as_slice()).all(|(&s, &d)| {
            d == s || (d < s && d >= -1 && (s - d) % 2 == 0)
        });
        ok.then(|| {
            img.as_slice()
                .iter()
                .zip(dst.as_slice())
                .map(|(s, d)| (s - d) / 2)
                .sum()
        })
    })
}
