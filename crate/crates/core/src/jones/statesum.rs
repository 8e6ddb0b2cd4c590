//! Brute-force Kauffman state sum over all `2^c` smoothings of a PD code.

use rayon::prelude::*;

use crate::algebra::LaurentPoly;
use crate::diagram::PdCode;
use crate::error::{Error, Result};

pub const DEFAULT_ORACLE_CAP: usize = 20;

/// `sum over states of A^(#A - #B) * delta^(loops - 1)`.
pub fn bracket_statesum(code: &PdCode, cap: usize) -> Result<LaurentPoly> {
    let c = code.crossings.len();
    if c > cap {
        return Err(Error::TooManyCrossings { crossings: c, cap });
    }
    let arcs = code.arc_count();
    let max_loops = 2 * c + code.free_loops + 1;
    let states: u64 = 1 << c;
    let chunk = 1u64 << c.saturating_sub(6).min(14);
    // counts[j][l]: states with #A = j and l loops
    let counts = (0..states.div_ceil(chunk))
        .into_par_iter()
        .map(|block| {
            let mut counts = vec![vec![0i64; max_loops + 1]; c + 1];
            let mut parent = vec![0usize; arcs + 1];
            for mask in block * chunk..((block + 1) * chunk).min(states) {
                for (i, p) in parent.iter_mut().enumerate() {
                    *p = i;
                }
                let mut merges = 0;
                for (i, x) in code.crossings.iter().enumerate() {
                    let [a, b, cc, d] = x.arcs;
                    // bit set: A-smoothing joins (a, b) and (c, d)
                    let pairs = if mask >> i & 1 == 1 {
                        [(a, b), (cc, d)]
                    } else {
                        [(a, d), (b, cc)]
                    };
                    for (u, v) in pairs {
                        if union(&mut parent, u, v) {
                            merges += 1;
                        }
                    }
                }
                let loops = arcs - merges + code.free_loops;
                counts[mask.count_ones() as usize][loops] += 1;
            }
            counts
        })
        .reduce(
            || vec![vec![0i64; max_loops + 1]; c + 1],
            |mut acc, part| {
                for (ra, rp) in acc.iter_mut().zip(part) {
                    for (x, y) in ra.iter_mut().zip(rp) {
                        *x += y;
                    }
                }
                acc
            },
        );
    let delta = LaurentPoly::delta();
    let mut delta_pows = vec![LaurentPoly::zero(), LaurentPoly::one()];
    for l in 2..=max_loops {
        let next = &delta_pows[l - 1] * &delta;
        delta_pows.push(next);
    }
    let mut out = LaurentPoly::zero();
    for (num_a, row) in counts.iter().enumerate() {
        let exp = 2 * num_a as i64 - c as i64;
        for (loops, &n) in row.iter().enumerate() {
            if n != 0 {
                let term = &delta_pows[loops] * &LaurentPoly::monomial(n, exp);
                out += &term;
            }
        }
    }
    Ok(out)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra == rb {
        return false;
    }
    parent[ra] = rb;
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::PretzelDiagram;
    use crate::pretzel::PretzelParams;

    fn bracket(v: &[i64]) -> LaurentPoly {
        let code = PretzelDiagram::from_params(&PretzelParams::new(v.to_vec()).unwrap()).pd_code(None);
        bracket_statesum(&code, DEFAULT_ORACLE_CAP).unwrap()
    }

    #[test]
    fn kinked_unknot() {
        assert_eq!(bracket(&[1]), LaurentPoly::monomial(-1, -3));
        assert_eq!(bracket(&[-1]), LaurentPoly::monomial(-1, 3));
    }

    #[test]
    fn hopf_link() {
        // four states by hand: AA -> 2 loops, AB/BA -> 1 loop, BB -> 2 loops
        // A^2 delta + 2 + A^-2 delta = -A^4 - A^-4
        assert_eq!(bracket(&[1, 1]), LaurentPoly::from_terms([(4, -1), (-4, -1)]));
    }

    #[test]
    fn cap_is_enforced() {
        let code = PretzelDiagram::from_twists(&[5, 5]).pd_code(None);
        assert_eq!(
            bracket_statesum(&code, 9),
            Err(Error::TooManyCrossings { crossings: 10, cap: 9 })
        );
    }

    #[test]
    fn free_loops_only() {
        let code = PretzelDiagram::from_twists(&[0, 0]).pd_code(None);
        assert_eq!(bracket_statesum(&code, 4).unwrap(), LaurentPoly::delta());
    }
}
