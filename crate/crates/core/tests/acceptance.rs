//! Runs each acceptance criterion and prints one PASS/FAIL line for it.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use pretzel_core::algebra::{classify_omega, Cyc12, HalfRoot};
use pretzel_core::bounds::{
    bounds_report, conjecture_check, upper_bound_sequence, BoundKind, BoundsOptions, ConjectureStatus,
};
use pretzel_core::diagram::{OrientedDiagram, PretzelDiagram};
use pretzel_core::invariants::{pretzel_signature, symmetrized_seifert};
use pretzel_core::jones::{
    bracket_statesum, jones_of, jones_of_statesum, omega_of, pretzel_bracket, skein_identity_holds,
    skein_triple, skein_triple_oriented, verify_skein, DEFAULT_ORACLE_CAP,
};
use pretzel_core::lattice::{
    donaldson_scan, embedding_rigidity_check, GramMatrix, HISCertificate, Verdict, DEFAULT_BUDGET,
};
use pretzel_core::PretzelParams;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn p(v: &[i64]) -> PretzelParams {
    PretzelParams::new(v.to_vec()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every tuple of length `n` over `values`.
fn tuples(values: &[i64], n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|pre| {
                values.iter().map(move |&x| {
                    let mut v = pre.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn odd_positive_grid(ns: &[usize], max: i64) -> Vec<PretzelParams> {
    let odd: Vec<i64> = (1..=max).step_by(2).collect();
    let keys: BTreeSet<PretzelParams> = ns
        .iter()
        .flat_map(|&n| tuples(&odd, n))
        .map(|v| p(&v).canonical_key())
        .collect();
    keys.into_iter().collect()
}

fn oracle_equivalence() -> Outcome {
    let values: Vec<i64> = (-5..=5).filter(|&x| x != 0).collect();
    let all: Vec<Vec<i64>> = (1..=4)
        .flat_map(|n| tuples(&values, n))
        .filter(|v| v.iter().map(|x| x.abs()).sum::<i64>() <= 14)
        .collect();
    let bad: Vec<String> = all
        .par_iter()
        .filter_map(|v| {
            let q = p(v);
            let code = PretzelDiagram::from_params(&q).pd_code(None);
            let oracle = bracket_statesum(&code, DEFAULT_ORACLE_CAP).ok()?;
            (pretzel_bracket(&q) != oracle).then(|| q.to_string())
        })
        .collect();
    ensure(bad.is_empty(), || format!("bracket mismatch on {:?}", &bad[..bad.len().min(5)]))?;
    Ok(format!("{} diagrams", all.len()))
}

fn skein_identity() -> Outcome {
    let values: Vec<i64> = (-5..=5).filter(|&x| x != 0).collect();
    let mut triples = Vec::new();
    for n in 2..=3 {
        for v in tuples(&values, n) {
            if v.iter().map(|x| x.abs()).sum::<i64>() > 11 {
                continue;
            }
            let q = p(&v);
            for band in 0..n {
                triples.push(skein_triple(&q, band).unwrap());
            }
        }
    }
    // the two triples behind the values at ω
    let link = p(&[3, 3]);
    let od = OrientedDiagram::antiparallel(&link).unwrap();
    triples.push(skein_triple_oriented(&link, &od, 1).unwrap());
    triples.push(skein_triple(&p(&[3, 3, 3]), 2).unwrap());
    let failures: Vec<String> = triples
        .par_iter()
        .filter_map(|t| {
            let fast = verify_skein(t).unwrap();
            // the state-sum oracle checks the same identity independently
            let slow = skein_identity_holds(
                &jones_of_statesum(&t.plus, DEFAULT_ORACLE_CAP).unwrap(),
                &jones_of_statesum(&t.minus, DEFAULT_ORACLE_CAP).unwrap(),
                &jones_of_statesum(&t.zero, DEFAULT_ORACLE_CAP).unwrap(),
            );
            (!(fast && slow)).then(|| format!("{:?} band {}", t.minus_params, t.band))
        })
        .collect();
    ensure(failures.is_empty(), || format!("identity fails for {failures:?}"))?;
    ensure(triples.len() >= 200, || format!("only {} triples", triples.len()))?;
    Ok(format!("{} triples, both engines", triples.len()))
}

fn omega_regressions() -> Outcome {
    for a in [1, 3] {
        for b in [1, 3] {
            for c in [1, 3] {
                let k = p(&[3 * a, 3 * b, 3 * c]);
                let v = jones_of(&OrientedDiagram::standard(&k)).unwrap();
                for root in [HalfRoot::Principal, HalfRoot::Seventh] {
                    let x = v.eval_at_omega_with(root);
                    ensure(x == Cyc12::from_int(3), || format!("V({k}; ω) = {x:?} with {root:?}"))?;
                }
            }
        }
    }
    let minus_sqrt3 = Cyc12([0, -2, 0, 1]);
    for a in [1, 3, 5] {
        for b in [1, 3, 5] {
            let link = p(&[3 * a, 3 * b]);
            let od = OrientedDiagram::antiparallel(&link).unwrap();
            let (x, class) = omega_of(&od).unwrap();
            ensure(x == minus_sqrt3, || format!("V({link}; ω) = {x:?}"))?;
            let v = jones_of(&od).unwrap();
            let other = classify_omega(v.eval_at_omega_with(HalfRoot::Seventh), 2).unwrap();
            ensure(other.d == class.d, || format!("{link}: d depends on the half root"))?;
            // every orientation: |V(ω)|^2 = 3
            for mask in 0..4u64 {
                let o = od.orientation.reversed_components(&od.diagram, mask);
                let ov = OrientedDiagram {
                    diagram: od.diagram.clone(),
                    orientation: o,
                };
                let n = omega_of(&ov).unwrap().0.conj_norm().unwrap();
                ensure(n == 3, || format!("{link} mask {mask}: norm {n}"))?;
            }
        }
    }
    Ok("8 knots = 3 under both half roots; 9 links = -√3, norm 3 in every orientation".into())
}

fn nullity_consistency() -> Outcome {
    let odd = [-7, -5, -3, -1, 1, 3, 5, 7];
    let mut count = 0;
    for n in 1..=4 {
        for v in tuples(&odd, n) {
            let q = p(&v);
            let od = if q.is_knot() {
                OrientedDiagram::standard(&q)
            } else {
                // the Seifert surface of the standard diagram orients bands antiparallel
                OrientedDiagram::antiparallel(&q).unwrap()
            };
            let (_, class) = omega_of(&od).unwrap();
            let s = symmetrized_seifert(&q).unwrap();
            ensure(class.d as usize == s.nullity3, || {
                format!("{q}: d = {} but nullity {}", class.d, s.nullity3)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} pretzels, n <= 4, |a_i| <= 7"))
}

fn signature_grid() -> Outcome {
    let mut count = 0;
    for n in [3, 5] {
        for v in tuples(&[1, 3, 5, 7], n) {
            let sigma = pretzel_signature(&p(&v)).unwrap().sigma;
            ensure(sigma == n as i64 - 1, || format!("σ{v:?} = {sigma}"))?;
            count += 1;
        }
    }
    Ok(format!("σ = n-1 on {count} knots"))
}

fn donaldson_obstruction() -> Outcome {
    let r = donaldson_scan(3, 1, 3, &[2, 4, 6], DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::Obstructed { up_to_rank: 6 }, || format!("(3,1,3): {:?}", r.verdict))?;
    let counts: Vec<usize> = r.entries.iter().map(|e| e.embedding_count).collect();
    let r2 = donaldson_scan(3, 3, 3, &[2, 4], DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(r2.verdict == Verdict::Obstructed { up_to_rank: 4 }, || format!("(3,3,3): {:?}", r2.verdict))?;
    let rigid = embedding_rigidity_check(3, 1, 3, 7, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(rigid, || "chains embed non-standardly at m = 7".into())?;
    Ok(format!("(3,1,3) classes per rank {counts:?}; (3,3,3) obstructed to 4; rigid"))
}

fn positive_control() -> Outcome {
    let r = donaldson_scan(3, 1, 1, &[2], DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let w = r.entries[0].witness.as_ref().ok_or("no certificate at Δ = 2")?;
    // serialize, read back, and re-verify from scratch
    let json = serde_json::to_string(&(&w.complement_gram, &w.certificate)).unwrap();
    let (g, cert): (GramMatrix, HISCertificate) = serde_json::from_str(&json).unwrap();
    cert.verify(&g).map_err(|e| e.to_string())?;
    let q = cert.gram(&g);
    let t = cert.t();
    for i in 0..t {
        for j in 0..t {
            let d = i64::from(i == j);
            ensure(q[i][j] == 2 * d && q[i][t + j] == d && q[t + i][j] == d, || format!("Gram {q:?}"))?;
        }
    }
    Ok(format!("witness at m = {}, Gram {q:?}", r.entries[0].m))
}

fn end_to_end_bounds() -> Outcome {
    let o = BoundsOptions::default();
    let mut cases: Vec<(Vec<i64>, i64)> = vec![
        (vec![3, 1, 3], 2),
        (vec![3, 1, 1, 1, 3], 3),
        (vec![3, 3, 3], 3),
        (vec![3, 3, 9], 3),
    ];
    for (r, b) in [(1, 5), (3, 5), (5, 3)] {
        let v = [vec![3], vec![1; r as usize], vec![b]].concat();
        cases.push((v, (r + 3) / 2));
    }
    let mut lines = Vec::new();
    for (v, u) in cases {
        let rep = bounds_report(&p(&v), &o).map_err(|e| e.to_string())?;
        ensure(rep.exact == Some(u), || format!("{:?}: {:?}..{:?}", v, rep.lower, rep.upper))?;
        ensure(!rep.inconclusive, || format!("{v:?}: inconclusive"))?;
        let lower_rules: Vec<&str> = rep
            .rule_trace
            .iter()
            .filter(|r| r.kind == BoundKind::Lower && r.value == u)
            .map(|r| r.rule.as_str())
            .collect();
        ensure(!lower_rules.is_empty(), || format!("{v:?}: no rule reaches {u}"))?;
        ensure(
            rep.rule_trace.iter().all(|r| !r.premises.is_empty() && r.premises.iter().all(|x| x.passed)),
            || format!("{v:?}: unchecked premise"),
        )?;
        // the lattice obstruction itself must be in the trace for these families
        ensure(rep.rule_trace.iter().any(|r| r.mode.is_some()), || format!("{v:?}: no lattice rule"))?;
        lines.push(format!("{}={u}", p(&v)));
    }
    Ok(lines.join(" "))
}

fn conjecture_scan() -> Outcome {
    let grid = odd_positive_grid(&[3, 5], 9);
    let o = BoundsOptions::default();
    let records: Vec<_> = grid
        .par_iter()
        .map(|k| conjecture_check(k, &o).map_err(|e| format!("{k}: {e}")))
        .collect::<Result<_, _>>()?;
    let violated: Vec<String> = records
        .iter()
        .filter(|r| r.status == ConjectureStatus::Violated)
        .map(|r| r.params.to_string())
        .collect();
    ensure(violated.is_empty(), || format!("VIOLATED: {violated:?}"))?;
    let proved = records.iter().filter(|r| r.status == ConjectureStatus::ProvedEqual).count();
    Ok(format!("{} knots: {proved} proved-equal, {} consistent", records.len(), records.len() - proved))
}

fn terminal_certificates() -> Outcome {
    let grid = odd_positive_grid(&[3, 5], 9);
    grid.par_iter().try_for_each(|k| -> Result<(), String> {
        let s = upper_bound_sequence(k).map_err(|e| format!("{k}: {e}"))?;
        ensure(s.certificate.determinant == 1 && s.certificate.jones.is_one(), || format!("{k}: terminal"))?;
        let end = s.replay().map_err(|e| format!("{k}: {e}"))?;
        ensure(end == s.terminal, || format!("{k}: replay"))?;
        let mut sorted = k.as_slice().to_vec();
        sorted.sort_unstable();
        let want = sorted[..sorted.len() - 1].iter().sum::<i64>() / 2;
        ensure(s.len() as i64 == want, || format!("{k}: {} steps, want {want}", s.len()))
    })?;
    Ok(format!("{} sequences replayed and certified", grid.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("bracket oracle equivalence", oracle_equivalence),
        ("skein identity", skein_identity),
        ("values at omega", omega_regressions),
        ("omega exponent equals mod-3 nullity", nullity_consistency),
        ("signature n-1", signature_grid),
        ("lattice obstruction", donaldson_obstruction),
        ("positive control", positive_control),
        ("end-to-end bounds", end_to_end_bounds),
        ("conjecture scan", conjecture_scan),
        ("terminal certificates", terminal_certificates),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
