//! Rendering of profiles, verdicts and scans, and the reproduction report.
//!
//! All bodies are timestamp free: identical inputs give identical bytes.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::dcore::{Rational, RawProfile};
use crate::families::{lens_n1_profile, mp_profile, qm_profile, MpDescriptor};
use crate::knots::{v_from_values, v_trefoil, v_unknot, VSequence};
use crate::lattice::{chain_lattice, coset_values, IntLattice, LatticeError};
use crate::obstruct::{check_labeled, enumerate_labelings, verdict, CheckResult, Overall, Sign, SpineVerdict};
use crate::pi1::{
    abelianization_trivial, brieskorn_presentation, enumerate_cosets, normal_generation_check,
    seifert_data, NormalGeneration, Pi1Error,
};
use crate::surgery::niwu_profile;

pub const SCHEMA: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `x` rounded half away from zero to `digits` decimals.
pub fn decimal(x: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = x * Rational::from_integer(scale.clone());
    let rounded = if scaled.is_negative() {
        -((-scaled) + Rational::new(1.into(), 2.into())).floor()
    } else {
        (scaled + Rational::new(1.into(), 2.into())).floor()
    };
    let n = rounded.to_integer();
    let (q, r) = n.abs().div_rem(&scale);
    let sign = if n.is_negative() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{q}")
    } else {
        format!("{sign}{q}.{:0>width$}", r.to_string(), width = digits)
    }
}

/// Exact value, with an optional decimal rendering alongside.
pub fn show(x: &Rational, digits: Option<usize>) -> String {
    match digits {
        Some(k) => format!("{x} (~{})", decimal(x, k)),
        None => x.to_string(),
    }
}

pub fn show_vector(v: &[Rational], digits: Option<usize>) -> String {
    let parts: Vec<String> = v.iter().map(|x| show(x, digits)).collect();
    format!("({})", parts.join(", "))
}

/// Two-column table `i  d(s_i)`.
pub fn profile_table(values: &[Rational], digits: Option<usize>) -> String {
    let mut out = String::from("i\td(s_i)\n");
    for (i, v) in values.iter().enumerate() {
        writeln!(out, "{i}\t{}", show(v, digits)).unwrap();
    }
    out
}

pub fn raw_table(raw: &RawProfile, digits: Option<usize>) -> String {
    let mut out = String::from("id\td\tconj\n");
    for k in 0..raw.n() {
        writeln!(
            out,
            "{}\t{}\t{}",
            raw.ids()[k],
            show(raw.value(k), digits),
            raw.ids()[raw.conj(k)]
        )
        .unwrap();
    }
    out
}

fn result_text(r: &CheckResult) -> String {
    match r {
        CheckResult::Pass => "Pass".to_string(),
        CheckResult::Fail(v) => {
            let idx: Vec<String> = v.iter().map(usize::to_string).collect();
            format!("Fail at i = {}", idx.join(", "))
        }
    }
}

pub fn verdict_text(v: &SpineVerdict, digits: Option<usize>) -> String {
    let mut out = format!("n = {}\n", v.n);
    if v.overall == Overall::Inapplicable {
        out.push_str("obstruction needs n > 1\n");
    }
    for b in &v.branches {
        if b.congruence_excluded() {
            writeln!(out, "{}-definite filling: excluded by residues mod 2", b.sign).unwrap();
            continue;
        }
        writeln!(out, "{}-definite filling: {} labelling(s)", b.sign, b.labelings.len()).unwrap();
        for l in &b.labelings {
            writeln!(out, "  {}  {}", show_vector(l.profile.values(), digits), result_text(&l.result))
                .unwrap();
        }
    }
    writeln!(out, "overall: {}", v.overall).unwrap();
    out
}

#[derive(Serialize)]
struct LabelingJson {
    values: Vec<String>,
    result: &'static str,
    violations: Vec<usize>,
}

#[derive(Serialize)]
struct BranchJson {
    sign: &'static str,
    congruence_excluded: bool,
    labelings: Vec<LabelingJson>,
}

#[derive(Serialize)]
struct VerdictJson {
    schema: u32,
    version: &'static str,
    n: usize,
    branches: Vec<BranchJson>,
    overall: &'static str,
}

pub fn verdict_json(v: &SpineVerdict) -> String {
    let doc = VerdictJson {
        schema: SCHEMA,
        version: VERSION,
        n: v.n,
        branches: v
            .branches
            .iter()
            .map(|b| BranchJson {
                sign: b.sign.as_str(),
                congruence_excluded: b.congruence_excluded(),
                labelings: b
                    .labelings
                    .iter()
                    .map(|l| LabelingJson {
                        values: l.profile.values().iter().map(Rational::to_string).collect(),
                        result: if l.result.is_pass() { "Pass" } else { "Fail" },
                        violations: match &l.result {
                            CheckResult::Pass => vec![],
                            CheckResult::Fail(v) => v.clone(),
                        },
                    })
                    .collect(),
            })
            .collect(),
        overall: v.overall.as_str(),
    };
    serde_json::to_string_pretty(&doc).expect("verdict serialises") + "\n"
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub p: i64,
    pub d_yp: i64,
    #[serde(serialize_with = "overall_str")]
    pub overall: Overall,
}

fn overall_str<S: serde::Serializer>(o: &Overall, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(o.as_str())
}

/// Verdicts for `M_p` over `p in pmin..=pmax` and each `d(Y_p)`, rows in
/// input order (p outer, d(Y_p) inner).
pub fn scan_mp(pmin: i64, pmax: i64, d_yps: &[i64]) -> Result<Vec<ScanRow>, crate::families::FamilyError> {
    let params: Vec<MpDescriptor> = (pmin..=pmax)
        .flat_map(|p| d_yps.iter().map(move |&d| MpDescriptor::new(p, d)))
        .collect::<Result<_, _>>()?;
    Ok(params
        .par_iter()
        .map(|desc| ScanRow {
            p: desc.p(),
            d_yp: desc.d_yp(),
            overall: verdict(&RawProfile::from_labeled(&mp_profile(*desc))).overall,
        })
        .collect())
}

/// p values with any non-obstructed row, and whether the verdict for each
/// p is the same for every d(Y_p).
pub fn scan_summary(rows: &[ScanRow]) -> (Vec<i64>, bool) {
    let mut open: Vec<i64> = rows.iter().filter(|r| r.overall != Overall::Obstructed).map(|r| r.p).collect();
    open.dedup();
    let stable = rows.iter().all(|r| {
        rows.iter().filter(|s| s.p == r.p).all(|s| s.overall == r.overall)
    });
    (open, stable)
}

pub fn scan_text(rows: &[ScanRow]) -> String {
    let mut out = String::from("p\td(Y_p)\tverdict\n");
    for r in rows {
        writeln!(out, "{}\t{}\t{}", r.p, r.d_yp, r.overall).unwrap();
    }
    let (open, stable) = scan_summary(rows);
    let open: Vec<String> = open.iter().map(i64::to_string).collect();
    writeln!(out, "not obstructed: {{{}}}", open.join(", ")).unwrap();
    writeln!(out, "independent of d(Y_p): {}", if stable { "yes" } else { "no" }).unwrap();
    out
}

#[derive(Serialize)]
struct ScanJson<'a> {
    schema: u32,
    version: &'static str,
    rows: &'a [ScanRow],
    not_obstructed: Vec<i64>,
    independent_of_d_yp: bool,
}

pub fn scan_json(rows: &[ScanRow]) -> String {
    let (open, stable) = scan_summary(rows);
    let doc = ScanJson { schema: SCHEMA, version: VERSION, rows, not_obstructed: open, independent_of_d_yp: stable };
    serde_json::to_string_pretty(&doc).expect("scan serialises") + "\n"
}

#[derive(Serialize)]
pub struct Pi1Json {
    pub schema: u32,
    pub version: &'static str,
    pub triple: [i64; 3],
    pub leg: usize,
    pub fiber_word: String,
    pub outcome: &'static str,
    pub order: Option<usize>,
}

/// All valid V-sequences with `V_0 <= max_v0` and at most `max_len`
/// stored entries.
pub fn all_vsequences(max_v0: u64, max_len: usize) -> Vec<VSequence> {
    let mut out = vec![v_unknot()];
    let mut frontier: Vec<Vec<u64>> = (1..=max_v0).map(|v| vec![v]).collect();
    while let Some(seq) = frontier.pop() {
        if let Ok(v) = v_from_values(&seq) {
            out.push(v);
        }
        if seq.len() < max_len {
            let last = *seq.last().unwrap();
            for next in [last, last.saturating_sub(1)] {
                if next > 0 {
                    let mut s = seq.clone();
                    s.push(next);
                    frontier.push(s);
                }
            }
        }
    }
    out.sort_by(|a, b| a.values().cmp(b.values()));
    out.dedup();
    out
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "[ok]  "
    } else {
        "[FAIL]"
    }
}

/// The reproduction report: each conclusion recomputed and checked.
fn sorted_values(l: &IntLattice, budget: u64) -> Result<Vec<Rational>, LatticeError> {
    let mut v: Vec<Rational> = coset_values(l, budget)?.into_iter().map(|(_, v)| v).collect();
    v.sort();
    Ok(v)
}

pub fn full_report(lattice_budget: u64, coset_limit: usize) -> Result<String, ReportError> {
    let mut out = format!("hfspine {VERSION} reproduction report\n\n");

    out.push_str("== surgery on the unknot is L(n,1)\n");
    for n in 1..=16 {
        let ok = niwu_profile(&v_unknot(), n) == lens_n1_profile(n).expect("n >= 1");
        writeln!(out, "{} n = {n}", mark(ok)).unwrap();
    }

    out.push_str("\n== 4-surgery on the trefoil is Q_-3\n");
    let tref = niwu_profile(&v_trefoil(), 4);
    let q = qm_profile(-3);
    writeln!(out, "S^3_4(T) profile  {}", show_vector(tref.values(), None)).unwrap();
    writeln!(out, "Q_-3 multiset     {}", show_vector(&q.sorted_values(), None)).unwrap();
    writeln!(out, "{} multisets agree", mark(tref.sorted_values() == q.sorted_values())).unwrap();
    let labels = enumerate_labelings(&q, Sign::PositiveDefinite);
    writeln!(
        out,
        "{} Q_-3 has the unique positive labelling {}",
        mark(labels.len() == 1 && labels[0] == tref),
        labels.first().map_or("-".to_string(), |p| show_vector(p.values(), None))
    )
    .unwrap();

    out.push_str("\n== -2 chains reproduce L(n,1), rank-one (-n) reproduces -L(n,1)\n");
    for n in 2..=9 {
        let mut want: Vec<Rational> = lens_n1_profile(n).expect("n >= 2").values().to_vec();
        want.sort();
        let mut mirrored: Vec<Rational> = want.iter().map(|v| -v).collect();
        mirrored.sort();
        let chain = sorted_values(&chain_lattice(n)?, lattice_budget)?;
        let disc = sorted_values(&IntLattice::new(vec![vec![-(n as i64)]])?, lattice_budget)?;
        let ok = chain == want && disc == mirrored;
        writeln!(out, "{} n = {n}  {}", mark(ok), show_vector(&chain, None)).unwrap();
    }

    out.push_str("\n== V-sequences with V_0 <= 3, length <= 6: every S^3_n(K) passes, n = 2..12\n");
    let seqs = all_vsequences(3, 6);
    let failures = seqs
        .iter()
        .flat_map(|v| (2..=12).map(move |n| (v, n)))
        .filter(|(v, n)| check_labeled(&niwu_profile(v, *n)) != Ok(CheckResult::Pass))
        .count();
    writeln!(out, "{} {} sequences x 11 surgeries, {failures} failures", mark(failures == 0), seqs.len()).unwrap();

    out.push_str("\n== M_p = Q_(-4p-3) # -Y_p, p = -10..10, d(Y_p) in {-4,-2,0,2,4}\n");
    let rows = scan_mp(-10, 10, &[-4, -2, 0, 2, 4])?;
    let (open, stable) = scan_summary(&rows);
    for p in -10..=10 {
        let o = rows.iter().find(|r| r.p == p).expect("row present").overall;
        writeln!(out, "p = {p:>3}  {o}").unwrap();
    }
    writeln!(out, "{} not obstructed exactly for p in {{-2, -1, 0}}", mark(open == vec![-2, -1, 0])).unwrap();
    writeln!(out, "{} verdicts independent of d(Y_p)", mark(stable)).unwrap();
    let neg_empty = (-10..=10).all(|p| {
        let prof = mp_profile(MpDescriptor::new(p, 0).expect("0 is even"));
        enumerate_labelings(&RawProfile::from_labeled(&prof), Sign::NegativeDefinite).is_empty()
    });
    writeln!(out, "{} negative-definite fillings excluded by residues", mark(neg_empty)).unwrap();

    out.push_str("\n== singular fibres normally generate pi_1(Sigma(p,q,r)), 2 <= p < q < r <= 11\n");
    let triples = coprime_triples(11);
    let checks: Vec<(i64, i64, i64, [NormalGeneration; 3], bool)> = triples
        .par_iter()
        .map(|&(p, q, r)| -> Result<_, Pi1Error> {
            let [a, b, c] = [1, 2, 3].map(|leg| normal_generation_check(p, q, r, leg, coset_limit));
            let legs = [a?, b?, c?];
            let ab = abelianization_trivial(&brieskorn_presentation(&seifert_data(p, q, r)?));
            Ok((p, q, r, legs, ab))
        })
        .collect::<Result<_, _>>()?;
    for (p, q, r, legs, ab) in &checks {
        let ok = legs.iter().all(|g| *g == NormalGeneration::Yes) && *ab;
        writeln!(out, "{} ({p},{q},{r})", mark(ok)).unwrap();
    }
    let quotient = brieskorn_presentation(&seifert_data(2, 3, 5)?).quotient(&[vec![4]])?;
    let order = enumerate_cosets(&quotient, &[], coset_limit).map(|t| t.index()).ok();
    writeln!(out, "{} pi_1(Sigma(2,3,5)) / <<h>> has order 60", mark(order == Some(60))).unwrap();

    Ok(out)
}

pub fn coprime_triples(max: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for p in 2..=max {
        for q in p + 1..=max {
            for r in q + 1..=max {
                if p.gcd(&q) == 1 && q.gcd(&r) == 1 && p.gcd(&r) == 1 {
                    out.push((p, q, r));
                }
            }
        }
    }
    out
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Pi1(#[from] Pi1Error),
    #[error(transparent)]
    Family(#[from] crate::families::FamilyError),
}

/// True if every line of a report is marked ok.
pub fn report_all_ok(report: &str) -> bool {
    !report.contains("[FAIL]")
}
