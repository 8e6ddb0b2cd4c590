use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use pretzel_core::algebra::JonesPoly;
use pretzel_core::bounds::{
    bounds_report, conjecture_check, family_shape, BoundKind, BoundsOptions, BoundsReport,
    ConjectureRecord, ConjectureStatus,
};
use pretzel_core::diagram::OrientedDiagram;
use pretzel_core::invariants::{goeritz_is_negative_definite, goeritz_matrix, pretzel_signature, symmetrized_seifert};
use pretzel_core::jones::{jones_of, jones_of_statesum, omega_of};
use pretzel_core::lattice::{donaldson_scan, ObstructionReport, Verdict, DEFAULT_BUDGET};
use pretzel_core::{Error, PretzelParams};

use crate::cache::Cache;
use crate::output::{Format, Report};
use crate::parse::{parse_pretzel, parse_range, ParseError, Template};

#[derive(Parser, Debug)]
#[command(name = "pretzel", version, about = "Unknotting-number bounds for pretzel knots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON with full rule traces and certificates.
    #[arg(long, global = true)]
    pub json: bool,
    /// Emit CSV.
    #[arg(long, global = true, conflicts_with = "json")]
    pub csv: bool,
    /// Append-only result cache (JSON lines).
    #[arg(long, global = true, value_name = "PATH", env = "PRETZEL_CACHE")]
    pub cache: Option<PathBuf>,
    /// Even extra ranks for lattice scans.
    #[arg(long, global = true, value_delimiter = ',', default_value = "2,4,6")]
    pub delta: Vec<usize>,
    /// Search-node cap per scanned rank.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Largest crossing count the state-sum oracle accepts.
    #[arg(long, global = true, default_value_t = 20)]
    pub oracle_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Standard,
    Antiparallel,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Seifert form, signature, determinant, mod-3 nullity and Goeritz form.
    Invariants { knot: String },
    /// Jones polynomial.
    Jones {
        knot: String,
        #[arg(long, value_enum, default_value = "standard")]
        orientation: OrientationArg,
        /// Cross-check against the state-sum oracle.
        #[arg(long)]
        check: bool,
    },
    /// V(ω) for ω = e^{iπ/3} and its (r, s, d) normal form.
    Omega {
        knot: String,
        #[arg(long, value_enum, default_value = "standard")]
        orientation: OrientationArg,
    },
    /// Lattice obstruction scan for P(a,1^r,b).
    Obstruct { knot: String },
    /// Lower and upper bounds with the rule trace.
    Bounds {
        knot: String,
        /// Trust the published all-rank proof instead of running lattice scans.
        #[arg(long)]
        cited: bool,
    },
    /// Bounds over a family template or the conjecture grid.
    Scan {
        /// Template such as "P(3,1^r,b)" or "P(3a,3b,3c)".
        #[arg(long, conflicts_with = "grid")]
        family: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        r: Option<String>,
        /// Band counts for the conjecture grid, e.g. "3,5".
        #[arg(long)]
        grid: Option<String>,
        /// Largest band on the grid.
        #[arg(long, default_value_t = 9)]
        max: i64,
        #[arg(long)]
        cited: bool,
    },
    /// Built-in checks, including cache hits against recomputation.
    Selftest {
        #[arg(long, default_value_t = 6)]
        sample: usize,
    },
}

/// A command failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    pub report: Option<Report>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
            report: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SearchBudgetExceeded { .. } => 2,
            Error::InvalidParams(_)
            | Error::EvenParameter { .. }
            | Error::BadFamily(_)
            | Error::NotAKnot(_)
            | Error::BadBand { .. }
            | Error::TooManyCrossings { .. } => 1,
            _ => 3,
        };
        let message = match &e {
            Error::SearchBudgetExceeded { .. } => format!("inconclusive: {e}"),
            _ => e.to_string(),
        };
        Failure {
            code,
            message,
            report: None,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::usage(format!("parse error {e}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(format!("cache: {e}"))
    }
}

pub struct Context {
    pub cache: Cache,
    pub deltas: Vec<usize>,
    pub budget: u64,
    pub oracle_cap: usize,
}

impl Context {
    fn options(&self, cited: bool) -> BoundsOptions {
        BoundsOptions {
            deltas: self.deltas.clone(),
            budget: self.budget,
            verify: !cited,
        }
    }

    /// Computes through the cache. Values that fail to decode are recomputed.
    fn cached<T: Serialize + DeserializeOwned>(
        &self,
        key: &str,
        invariant: &str,
        compute: impl FnOnce() -> Result<T, Error>,
    ) -> Result<T, Failure> {
        if let Some(v) = self.cache.get(key, invariant) {
            if let Ok(t) = serde_json::from_value(v) {
                return Ok(t);
            }
        }
        let t = compute()?;
        self.cache
            .put(key, invariant, &serde_json::to_value(&t).expect("serializable"))?;
        Ok(t)
    }
}

/// Knots are computed on their canonical dihedral representative, links as given,
/// since a link's Jones polynomial depends on orientation.
fn working_params(p: &PretzelParams) -> PretzelParams {
    if p.is_knot() {
        p.canonical_key()
    } else {
        p.clone()
    }
}

fn oriented(p: &PretzelParams, o: OrientationArg) -> Result<OrientedDiagram, Failure> {
    match o {
        OrientationArg::Standard => Ok(OrientedDiagram::standard(p)),
        OrientationArg::Antiparallel => OrientedDiagram::antiparallel(p)
            .ok_or_else(|| Failure::usage(format!("{p} has no orientation with antiparallel bands"))),
    }
}

fn matrix_text(m: &[Vec<i64>]) -> String {
    serde_json::to_string(m).unwrap()
}

pub fn run(cmd: &Command, ctx: &Context) -> Result<Report, Failure> {
    match cmd {
        Command::Invariants { knot } => invariants(&parse_pretzel(knot)?, ctx),
        Command::Jones {
            knot,
            orientation,
            check,
        } => jones_cmd(&parse_pretzel(knot)?, *orientation, *check, ctx),
        Command::Omega { knot, orientation } => omega_cmd(&parse_pretzel(knot)?, *orientation, ctx),
        Command::Obstruct { knot } => obstruct(&parse_pretzel(knot)?, ctx),
        Command::Bounds { knot, cited } => bounds_cmd(&parse_pretzel(knot)?, *cited, ctx),
        Command::Scan {
            family,
            a,
            b,
            c,
            r,
            grid,
            max,
            cited,
        } => match (family, grid) {
            (Some(f), None) => {
                let ranges = [("a", a), ("b", b), ("c", c), ("r", r)]
                    .into_iter()
                    .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
                    .collect();
                scan_family(f, &ranges, *cited, ctx)
            }
            (None, Some(g)) => scan_grid(g, *max, *cited, ctx),
            _ => Err(Failure::usage("scan needs --family TEMPLATE or --grid COUNTS")),
        },
        Command::Selftest { sample } => selftest(*sample, ctx),
    }
}

fn invariants(p: &PretzelParams, ctx: &Context) -> Result<Report, Failure> {
    let w = working_params(p);
    let value: Value = ctx.cached(&w.to_string(), "invariants", || {
        let od = OrientedDiagram::standard(&w);
        let mut v = json!({
            "params": w,
            "input": p,
            "bands": w.len(),
            "crossings": w.crossing_count(),
            "components": od.component_count(),
            "is_knot": w.is_knot(),
        });
        if w.all_odd() {
            let s = symmetrized_seifert(&w)?;
            v["seifert"] = json!(s.matrix);
            v["signature"] = json!(pretzel_signature(&w)?.sigma);
            v["determinant"] = json!(s.determinant.abs());
            v["nullity_mod3"] = json!(s.nullity3);
        }
        if let Some((a, r, b)) = family_shape(&w) {
            let g = goeritz_matrix(a, r, b)?;
            v["goeritz"] = json!({
                "a": a, "r": r, "b": b,
                "matrix": g.matrix,
                "negative_definite": goeritz_is_negative_definite(&g),
            });
        }
        Ok(v)
    })?;
    let mut rep = Report::new(format!("invariants of {p}"));
    rep.field("canonical", &w);
    for key in ["bands", "crossings", "components", "is_knot", "signature", "determinant", "nullity_mod3"] {
        if let Some(x) = value.get(key) {
            rep.field(key, x);
        }
    }
    if let Some(s) = value.get("seifert") {
        rep.field("seifert", s);
    } else {
        rep.field("seifert", "not available: an even band");
    }
    if let Some(g) = value.get("goeritz") {
        rep.field("goeritz", &g["matrix"]);
        rep.field("goeritz_negative_definite", &g["negative_definite"]);
    }
    rep.lines.push(format!("convention: {}", pretzel_core::bounds::SIGNATURE_CONVENTION));
    rep.json = value;
    Ok(rep)
}

fn jones_cmd(p: &PretzelParams, o: OrientationArg, check: bool, ctx: &Context) -> Result<Report, Failure> {
    let w = working_params(p);
    let od = oriented(&w, o)?;
    let key = if w.is_knot() { w.to_string() } else { format!("{w}/{o:?}") };
    let v: JonesPoly = ctx.cached(&key, "jones", || jones_of(&od))?;
    let mut rep = Report::new(format!("Jones polynomial of {p}"));
    rep.field("canonical", &w);
    rep.field("orientation", format!("{o:?}").to_lowercase());
    rep.field("components", v.components);
    rep.field("writhe", od.writhe());
    rep.field("V", &v);
    let mut js = json!({ "params": w, "orientation": format!("{o:?}").to_lowercase(), "writhe": od.writhe(), "jones": v, "text": v.to_string() });
    if check {
        let oracle = jones_of_statesum(&od, ctx.oracle_cap)?;
        let agree = oracle == v;
        rep.field("state_sum_agrees", agree);
        js["state_sum_agrees"] = json!(agree);
        if !agree {
            return Err(Failure {
                code: 3,
                message: format!("state sum gives {oracle}"),
                report: Some(rep),
            });
        }
    }
    rep.json = js;
    Ok(rep)
}

fn omega_cmd(p: &PretzelParams, o: OrientationArg, ctx: &Context) -> Result<Report, Failure> {
    let w = working_params(p);
    let od = oriented(&w, o)?;
    let key = if w.is_knot() { w.to_string() } else { format!("{w}/{o:?}") };
    let value: Value = ctx.cached(&key, "omega", || {
        let (x, class) = omega_of(&od)?;
        Ok(json!({
            "params": w,
            "orientation": format!("{o:?}").to_lowercase(),
            "value": x.0,
            "complex": [x.to_complex().0, x.to_complex().1],
            "norm": x.conj_norm()?,
            "r": class.r, "s": class.s, "d": class.d,
        }))
    })?;
    let mut rep = Report::new(format!("V({p}; ω)"));
    rep.field("canonical", &w);
    rep.field("orientation", value["orientation"].as_str().unwrap_or(""));
    rep.field("value (ζ-basis)", &value["value"]);
    rep.field("|V|^2", &value["norm"]);
    rep.field("r, s, d", format!("{}, {}, {}", value["r"], value["s"], value["d"]));
    if w.all_odd() {
        let n = symmetrized_seifert(&w)?.nullity3;
        rep.field("nullity_mod3", n);
    }
    rep.lines.push("normal form (-1)^s i^(r-1) (i√3)^d, ζ = e^{iπ/6}".into());
    rep.json = value;
    Ok(rep)
}

/// `(a, r, b)` for a dihedral image `(a, 1^r, b)` with `a >= 3`; `b = 1` allowed.
fn family_of(p: &PretzelParams) -> Option<(i64, i64, i64)> {
    if let Some(f) = family_shape(p) {
        return Some(f);
    }
    if p.len() < 3 || !p.all_odd() || !p.all_positive() {
        return None;
    }
    p.dihedral_images()
        .filter_map(|img| {
            let v = img.as_slice();
            let ones = v[1..v.len() - 1].iter().all(|&x| x == 1);
            (ones && v[0] >= 3).then_some((v[0], v.len() as i64 - 2, v[v.len() - 1]))
        })
        .min()
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Obstructed { up_to_rank } => format!("obstructed up to rank {up_to_rank}"),
        Verdict::NotObstructed { witness_m } => format!("not obstructed (witness at m={witness_m})"),
    }
}

fn obstruct(p: &PretzelParams, ctx: &Context) -> Result<Report, Failure> {
    let (a, r, b) = family_of(p)
        .ok_or_else(|| Failure::usage(format!("{p} is not of the form P(a,1^r,b) with a >= 3 and all bands odd")))?;
    let mut deltas = ctx.deltas.clone();
    deltas.sort_unstable();
    let key = format!("P({a},1^{r},{b})");
    let inv = format!("obstruct{deltas:?}/{}", ctx.budget);
    let report: ObstructionReport = ctx.cached(&key, &inv, || donaldson_scan(a, r, b, &deltas, ctx.budget))?;
    let mut rep = Report::new(format!("lattice obstruction for {key}"));
    rep.field("verdict", verdict_text(&report.verdict));
    rep.field("lattice rank", report.gram.rank());
    rep.field("budget", report.budget);
    let rows = report
        .entries
        .iter()
        .map(|e| {
            vec![
                e.delta.to_string(),
                e.m.to_string(),
                e.embedding_count.to_string(),
                e.witness.as_ref().map_or("none".into(), |w| {
                    format!("x={} y={}", matrix_text(&w.x_ambient), matrix_text(&w.y_ambient))
                }),
            ]
        })
        .collect();
    rep.table = Some((
        vec!["delta".into(), "m".into(), "embeddings".into(), "certificate".into()],
        rows,
    ));
    rep.json = serde_json::to_value(&report).unwrap();
    rep.json["verdict_text"] = json!(verdict_text(&report.verdict));
    Ok(rep)
}

fn bounds_for(p: &PretzelParams, cited: bool, ctx: &Context) -> Result<BoundsReport, Failure> {
    let o = ctx.options(cited);
    let inv = format!("bounds{:?}/{}/{}", o.deltas, o.budget, o.mode());
    let key = p.to_string();
    if let Some(v) = ctx.cache.get(&key, &inv) {
        if let Ok(r) = serde_json::from_value(v) {
            return Ok(r);
        }
    }
    let r = bounds_report(p, &o)?;
    // an inconclusive report depends on the budget run, not on the knot alone
    if !r.inconclusive {
        ctx.cache.put(&key, &inv, &serde_json::to_value(&r).unwrap())?;
    }
    Ok(r)
}

fn bounds_cmd(p: &PretzelParams, cited: bool, ctx: &Context) -> Result<Report, Failure> {
    if !p.is_knot() {
        return Err(Error::NotAKnot(p.to_string()).into());
    }
    let w = working_params(p);
    let r = bounds_for(&w, cited, ctx)?;
    let mut rep = Report::new(format!("unknotting bounds for {p}"));
    rep.field("canonical", &w);
    if let Some(s) = r.signature {
        rep.field("signature", s);
    }
    if let Some(c) = r.omega {
        rep.field("omega (r,s,d)", format!("({}, {}, {})", c.r, c.s, c.d));
    }
    rep.field("lower", r.lower);
    rep.field("upper", r.upper.map_or("none".into(), |u| u.to_string()));
    match r.exact {
        Some(u) => rep.field("exact", format!("u={u}")),
        None => rep.field("exact", "no"),
    }
    rep.lines.push("rule trace:".into());
    for rule in &r.rule_trace {
        let kind = match rule.kind {
            BoundKind::Lower => "u >=",
            BoundKind::Upper => "u <=",
        };
        let mode = rule.mode.map_or(String::new(), |m| format!(" [{m}]"));
        rep.lines.push(format!("  {kind} {}  {}{mode}: {}", rule.value, rule.rule, rule.citation));
        for pr in &rule.premises {
            let mark = if pr.passed { "ok" } else { "FAILED" };
            rep.lines.push(format!("      {mark} {}: {}", pr.name, pr.detail));
        }
    }
    if let Some(seq) = &r.sequence {
        let steps: Vec<String> = seq
            .steps
            .iter()
            .map(|s| format!("band {}: {} -> {}", s.band + 1, s.from, s.to))
            .collect();
        rep.lines.push(format!("sequence: {}; terminal {}", steps.join(", "), seq.terminal));
    }
    for n in &r.notes {
        rep.lines.push(format!("note: {n}"));
    }
    rep.lines.push(format!("convention: {}", r.convention));
    rep.json = serde_json::to_value(&r).unwrap();
    if r.inconclusive {
        return Err(Failure {
            code: 2,
            message: "inconclusive: a lattice scan exceeded its budget".into(),
            report: Some(rep),
        });
    }
    Ok(rep)
}

fn conjectured(p: &PretzelParams) -> Option<i64> {
    if p.len() % 2 == 0 || !p.all_odd() || !p.all_positive() {
        return None;
    }
    let mut s = p.as_slice().to_vec();
    s.sort_unstable();
    Some(s[..s.len() - 1].iter().sum::<i64>() / 2)
}

fn status_text(s: ConjectureStatus) -> &'static str {
    match s {
        ConjectureStatus::ProvedEqual => "proved-equal",
        ConjectureStatus::Consistent => "consistent",
        ConjectureStatus::Violated => "violated",
    }
}

fn scan_family(
    template: &str,
    ranges: &BTreeMap<String, String>,
    cited: bool,
    ctx: &Context,
) -> Result<Report, Failure> {
    let t = Template::parse(template)?;
    let vars = t.variables();
    let mut axes = Vec::new();
    for v in &vars {
        let text = ranges
            .get(v)
            .ok_or_else(|| Failure::usage(format!("variable {v} needs a range, e.g. --{v} 1..5")))?;
        axes.push(parse_range(text)?);
    }
    if let Some(extra) = ranges.keys().find(|k| !vars.contains(k)) {
        return Err(Failure::usage(format!("--{extra} is not a variable of {template}")));
    }
    let mut points: Vec<Vec<i64>> = vec![vec![]];
    for axis in &axes {
        points = points
            .into_iter()
            .flat_map(|pre| {
                axis.iter().map(move |&x| {
                    let mut v = pre.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    let knots: Vec<(Vec<i64>, PretzelParams)> = points
        .into_iter()
        .filter_map(|pt| {
            let vals: BTreeMap<String, i64> = vars.iter().cloned().zip(pt.iter().copied()).collect();
            t.instantiate(&vals).filter(|k| k.is_knot()).map(|k| (pt, k))
        })
        .collect();
    let results: Vec<Result<BoundsReport, Failure>> = knots
        .par_iter()
        .map(|(_, k)| bounds_for(&working_params(k), cited, ctx))
        .collect();
    let with_r = vars.iter().position(|v| v == "r");
    let mut header: Vec<String> = vars.clone();
    header.extend(["knot", "signature", "lower", "upper", "exact"].map(String::from));
    if with_r.is_some() {
        header.push("(r+3)/2".into());
    }
    header.extend(["conjectured", "status"].map(String::from));
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    let mut inconclusive = false;
    let mut violated = false;
    for ((pt, k), res) in knots.iter().zip(results) {
        let r = res?;
        inconclusive |= r.inconclusive;
        let conj = conjectured(k);
        let status = conj.map(|c| {
            if r.upper.is_some_and(|u| c < r.lower || c > u) {
                ConjectureStatus::Violated
            } else if Some(r.lower) == r.upper {
                ConjectureStatus::ProvedEqual
            } else {
                ConjectureStatus::Consistent
            }
        });
        violated |= status == Some(ConjectureStatus::Violated);
        let mut row: Vec<String> = pt.iter().map(|x| x.to_string()).collect();
        row.push(k.to_string());
        row.push(r.signature.map_or(String::new(), |s| s.to_string()));
        row.push(r.lower.to_string());
        row.push(r.upper.map_or(String::new(), |u| u.to_string()));
        row.push(r.exact.map_or(String::new(), |u| u.to_string()));
        if let Some(i) = with_r {
            row.push(((pt[i] + 3) / 2).to_string());
        }
        row.push(conj.map_or(String::new(), |c| c.to_string()));
        row.push(status.map_or("", status_text).to_string());
        json_rows.push(json!({
            "values": vars.iter().zip(pt).map(|(v, x)| (v.clone(), *x)).collect::<BTreeMap<_, _>>(),
            "knot": k,
            "lower": r.lower,
            "upper": r.upper,
            "exact": r.exact,
            "conjectured": conj,
            "status": status.map(status_text),
            "report": r,
        }));
        rows.push(row);
    }
    let mut rep = Report::new(format!("scan of {template}"));
    rep.field("knots", rows.len());
    rep.table = Some((header, rows));
    rep.json = json!({ "template": template, "rows": json_rows });
    finish_scan(rep, inconclusive, violated)
}

fn finish_scan(rep: Report, inconclusive: bool, violated: bool) -> Result<Report, Failure> {
    if violated {
        return Err(Failure {
            code: 3,
            message: "CONJECTURE VIOLATED: a conjectured value lies outside the computed bounds".into(),
            report: Some(rep),
        });
    }
    if inconclusive {
        return Err(Failure {
            code: 2,
            message: "inconclusive: some lattice scans exceeded their budget".into(),
            report: Some(rep),
        });
    }
    Ok(rep)
}

fn scan_grid(counts: &str, max: i64, cited: bool, ctx: &Context) -> Result<Report, Failure> {
    let counts = parse_range(counts)?;
    if counts.iter().any(|&n| n < 1 || n % 2 == 0) || max < 1 {
        return Err(Failure::usage("grid band counts must be odd and positive"));
    }
    let odd: Vec<i64> = (1..=max).step_by(2).collect();
    let mut keys = std::collections::BTreeSet::new();
    for &n in &counts {
        let mut tuples: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..n {
            tuples = tuples
                .into_iter()
                .flat_map(|pre| {
                    odd.iter().map(move |&x| {
                        let mut v = pre.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        keys.extend(tuples.into_iter().map(|v| PretzelParams::new(v).unwrap().canonical_key()));
    }
    let keys: Vec<PretzelParams> = keys.into_iter().collect();
    let o = ctx.options(cited);
    let inv = format!("conjecture{:?}/{}/{}", o.deltas, o.budget, o.mode());
    let records: Vec<Result<ConjectureRecord, Failure>> = keys
        .par_iter()
        .map(|k| ctx.cached(&k.to_string(), &inv, || conjecture_check(k, &o)))
        .collect();
    let mut rows = Vec::new();
    let mut recs = Vec::new();
    let mut violated = false;
    for r in records {
        let r = r?;
        violated |= r.status == ConjectureStatus::Violated;
        rows.push(vec![
            r.params.to_string(),
            r.conjectured.to_string(),
            r.lower.to_string(),
            r.upper.to_string(),
            status_text(r.status).to_string(),
        ]);
        recs.push(r);
    }
    let proved = recs.iter().filter(|r| r.status == ConjectureStatus::ProvedEqual).count();
    let mut rep = Report::new(format!("conjecture grid: band counts {counts:?}, bands up to {max}"));
    rep.field("knots", recs.len());
    rep.field("proved-equal", proved);
    rep.field("consistent", recs.len() - proved);
    rep.table = Some((
        ["knot", "conjectured", "lower", "upper", "status"].map(String::from).to_vec(),
        rows,
    ));
    rep.json = json!({ "records": recs });
    finish_scan(rep, false, violated)
}

fn selftest(sample: usize, ctx: &Context) -> Result<Report, Failure> {
    let mut rows = Vec::new();
    let mut failed = 0;
    let mut check = |name: &str, ok: Result<bool, Failure>| {
        let (mark, detail) = match ok {
            Ok(true) => ("PASS", String::new()),
            Ok(false) => ("FAIL", String::new()),
            Err(f) => ("FAIL", f.message),
        };
        if mark == "FAIL" {
            failed += 1;
        }
        rows.push(vec![mark.to_string(), name.to_string(), detail]);
    };
    let p = |v: &[i64]| PretzelParams::new(v.to_vec()).unwrap();
    check(
        "left trefoil Jones",
        Ok(jones_of(&OrientedDiagram::standard(&p(&[1, 1, 1])))
            .map(|v| v.to_string() == "-q^-4 + q^-3 + q^-1")
            .unwrap_or(false)),
    );
    check(
        "V(P(3,3,3); ω) = 3",
        Ok(omega_of(&OrientedDiagram::standard(&p(&[3, 3, 3])))
            .map(|(x, _)| x.0 == [3, 0, 0, 0])
            .unwrap_or(false)),
    );
    check(
        "P(3,1,3) obstructed at rank 2",
        donaldson_scan(3, 1, 3, &[2], ctx.budget)
            .map(|r| r.obstructed())
            .map_err(Failure::from),
    );
    check(
        "P(3,1,1) has a certificate at rank 2",
        donaldson_scan(3, 1, 1, &[2], ctx.budget)
            .map(|r| !r.obstructed())
            .map_err(Failure::from),
    );
    // cache hits must equal recomputation byte for byte
    let knots = [
        p(&[3, 1, 3]),
        p(&[3, 3, 3]),
        p(&[1, 1, 1]),
        p(&[3, 1, 1, 1, 5]),
        p(&[5, 5, 5]),
        p(&[3, 3, 9]),
        p(&[1, 3, 5, 7, 9]),
        p(&[-3, 5, 7]),
    ];
    for k in knots.iter().take(sample) {
        let w = working_params(k);
        let fresh = bounds_report(&w, &ctx.options(false)).map_err(Failure::from);
        let through_cache = bounds_for(&w, false, ctx);
        let same = match (fresh, through_cache) {
            (Ok(a), Ok(b)) => Ok(serde_json::to_string(&a).unwrap() == serde_json::to_string(&b).unwrap()),
            (Err(e), _) | (_, Err(e)) => Err(e),
        };
        check(&format!("bounds {w} matches cache"), same);
    }
    let mut rep = Report::new("selftest");
    rep.field("cache", if ctx.cache.enabled() { "enabled" } else { "disabled" });
    rep.field("failed", failed);
    rep.json = json!({ "checks": rows.iter().map(|r| json!({"status": r[0], "name": r[1], "detail": r[2]})).collect::<Vec<_>>(), "failed": failed });
    rep.table = Some((vec!["status".into(), "check".into(), "detail".into()], rows));
    if failed > 0 {
        return Err(Failure {
            code: 3,
            message: format!("{failed} selftest checks failed"),
            report: Some(rep),
        });
    }
    Ok(rep)
}

/// Parses arguments, runs, prints, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(d) = cli.delta.iter().find(|&&d| d % 2 == 1) {
        eprintln!("error: --delta values must be even, got {d}");
        return 1;
    }
    let cache = match &cli.cache {
        Some(path) => match Cache::open(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: cache {}: {e}", path.display());
                return 1;
            }
        },
        None => Cache::disabled(),
    };
    let ctx = Context {
        cache,
        deltas: cli.delta.clone(),
        budget: cli.budget,
        oracle_cap: cli.oracle_cap,
    };
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Human
    };
    match run(&cli.command, &ctx) {
        Ok(rep) => {
            print!("{}", rep.render(format));
            0
        }
        Err(f) => {
            if let Some(rep) = &f.report {
                print!("{}", rep.render(format));
            }
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
