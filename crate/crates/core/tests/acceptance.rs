use std::collections::{BTreeSet, VecDeque};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hfspine::dcore::{int, matches_residues, rat, Rational};
use hfspine::families::{lens_n1_profile, mp_profile, qm_profile, value_multiset, MpDescriptor};
use hfspine::knots::{v_trefoil, v_unknot, VSequence};
use hfspine::lattice::{chain_lattice, coset_values, IntLattice, DEFAULT_BUDGET};
use hfspine::obstruct::{check_labeled, enumerate_labelings, CheckResult, Sign};
use hfspine::pi1::{
    abelianization_trivial, brieskorn_presentation, enumerate_cosets, normal_generation_check,
    seifert_data, NormalGeneration, DEFAULT_LIMIT,
};
use hfspine::report::{all_vsequences, coprime_triples, report_all_ok, scan_mp, scan_summary};
use hfspine::surgery::niwu_profile;
use hfspine::Overall;

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when the literal criterion is false as a mathematical statement;
    /// holds whether the recorded replacement check passed.
    blocker: Option<bool>,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Outcome { pass, detail, blocker: None }
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    out.detail.push_str(&format!(" [{:.3}s", elapsed.as_secs_f64()));
    if let Some(limit) = limit {
        out.detail.push_str(&format!(" / limit {}s", limit.as_secs()));
        out.pass &= elapsed < limit;
    }
    out.detail.push(']');
    out
}

fn sorted(mut v: Vec<Rational>) -> Vec<Rational> {
    v.sort();
    v
}

fn lattice_values(l: &IntLattice) -> Vec<Rational> {
    sorted(coset_values(l, DEFAULT_BUDGET).unwrap().into_iter().map(|(_, v)| v).collect())
}

fn random_vsequence(rng: &mut ChaCha8Rng) -> VSequence {
    let mut v = vec![rng.gen_range(0..=8u64)];
    while *v.last().unwrap() > 0 {
        let last = *v.last().unwrap();
        v.push(if rng.gen_bool(0.5) { last } else { last - 1 });
    }
    VSequence::from_values(&v).unwrap()
}

fn permutation_group_order(gens: &[Vec<usize>]) -> usize {
    let id: Vec<usize> = (0..gens[0].len()).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for p in gens {
            let h: Vec<usize> = g.iter().map(|&k| p[k]).collect();
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.len()
}

fn c1_lens_vs_unknot() -> Outcome {
    let bad: Vec<usize> = (1..=16)
        .filter(|&n| niwu_profile(&v_unknot(), n) != lens_n1_profile(n).unwrap())
        .collect();
    Outcome::new(bad.is_empty(), format!("n = 1..16, mismatches {bad:?}"))
}

fn c2_trefoil_is_q_minus_3() -> Outcome {
    let p = niwu_profile(&v_trefoil(), 4);
    let multiset = sorted(p.values().to_vec()) == value_multiset(&qm_profile(-3))
        && value_multiset(&qm_profile(-3)) == vec![rat(-5, 4), rat(-1, 4), int(0), int(0)];
    let labeled = p.values() == [rat(-5, 4), int(0), rat(-1, 4), int(0)];
    Outcome::new(multiset && labeled, format!("multiset {multiset}, labelled {labeled}"))
}

fn c3_chain_oracle() -> Outcome {
    let mut literal = true;
    let mut corrected = true;
    for n in 2..=9 {
        let lens = sorted(lens_n1_profile(n).unwrap().values().to_vec());
        let negated = sorted(lens.iter().map(|v| -v).collect());
        let chain = lattice_values(&chain_lattice(n).unwrap());
        let disc = lattice_values(&IntLattice::new(vec![vec![-(n as i64)]]).unwrap());
        literal &= chain == negated;
        corrected &= chain == lens && disc == negated;
    }
    // c = 0 is characteristic on every -2 chain and already gives
    // rank/4 = (n-1)/4, above the largest negated lens value.
    Outcome {
        pass: literal,
        detail: format!(
            "chain values equal negated lens: {literal}; chain values equal lens and (-n) values equal negated lens: {corrected}"
        ),
        blocker: (!literal).then_some(corrected),
    }
}

fn c4_scan() -> Outcome {
    let rows = scan_mp(-10, 10, &[-4, -2, 0, 2, 4]).unwrap();
    let (open, stable) = scan_summary(&rows);
    let exact = rows
        .iter()
        .all(|r| (r.overall == Overall::NotObstructed) == (-2..=0).contains(&r.p));
    Outcome::new(
        open == vec![-2, -1, 0] && stable && exact && rows.len() == 105,
        format!("not obstructed {open:?}, independent of d(Y_p) {stable}"),
    )
}

fn c5_negative_branch() -> Outcome {
    let mut nonempty = Vec::new();
    for p in -10..=10 {
        for dyp in [-4, -2, 0, 2, 4] {
            let raw = hfspine::RawProfile::from_labeled(&mp_profile(MpDescriptor::new(p, dyp).unwrap()));
            if !enumerate_labelings(&raw, Sign::NegativeDefinite).is_empty() {
                nonempty.push((p, dyp));
            }
        }
    }
    Outcome::new(nonempty.is_empty(), format!("non-empty negative branches {nonempty:?}"))
}

fn c6_random_surgeries() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2023);
    let mut failures = 0usize;
    let mut checked = 0usize;
    for _ in 0..1000 {
        let v = random_vsequence(&mut rng);
        for n in 2..=12 {
            let p = niwu_profile(&v, n);
            let bound = rat(2 * n as i64 - 1, n as i64);
            let pass = check_labeled(&p) == Ok(CheckResult::Pass);
            let bounded = (0..n).all(|i| {
                let x = p.consecutive_difference(i);
                x <= bound && -x <= bound
            });
            failures += usize::from(!(pass && bounded));
            checked += 1;
        }
    }
    Outcome::new(failures == 0 && checked == 11_000, format!("{checked} profiles, {failures} failures"))
}

fn c7_residues() -> Outcome {
    let mut checked = 0usize;
    let mut bad = Vec::new();
    let mut check = |label: String, p: &hfspine::DProfile| {
        checked += 1;
        if !matches_residues(p) {
            bad.push(label);
        }
    };
    for n in 1..=16 {
        check(format!("L({n},1)"), &lens_n1_profile(n).unwrap());
        for v in all_vsequences(3, 5) {
            check(format!("S^3_{n}({v})"), &niwu_profile(&v, n));
        }
    }
    for p in -10..=10 {
        for dyp in [-4, -2, 0, 2, 4] {
            check(format!("M_{p}"), &mp_profile(MpDescriptor::new(p, dyp).unwrap()));
        }
    }
    for m in (-41..=41).step_by(2) {
        for sign in [Sign::PositiveDefinite, Sign::NegativeDefinite] {
            for l in enumerate_labelings(&qm_profile(m), sign) {
                check(format!("Q_{m} {}", sign.as_str()), &l);
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("{checked} profiles, mismatches {bad:?}"))
}

fn c8_pi1() -> Outcome {
    let triples = coprime_triples(11);
    let mut failing = Vec::new();
    for &(p, q, r) in &triples {
        let pres = brieskorn_presentation(&seifert_data(p, q, r).unwrap());
        let abelian = abelianization_trivial(&pres);
        let legs = (1..=3).all(|leg| {
            normal_generation_check(p, q, r, leg, DEFAULT_LIMIT) == Ok(NormalGeneration::Yes)
        });
        if !(abelian && legs) {
            failing.push((p, q, r));
        }
    }
    let pres = brieskorn_presentation(&seifert_data(2, 3, 5).unwrap()).quotient(&[vec![4]]).unwrap();
    let (order, cayley) = match enumerate_cosets(&pres, &[], DEFAULT_LIMIT) {
        Ok(table) => {
            let closed = pres.relators().iter().all(|w| (0..table.index()).all(|c| table.trace(c, w) == c));
            let perms: Vec<Vec<usize>> = (0..4).map(|g| table.permutation(g)).collect();
            (table.index(), closed && permutation_group_order(&perms) == table.index())
        }
        Err(_) => (0, false),
    };
    Outcome::new(
        failing.is_empty() && order == 60 && cayley && triples.len() == 42,
        format!(
            "{} triples x 3 legs, failing {failing:?}; Sigma(2,3,5)/<<h>> order {order}, Cayley closure {cayley}",
            triples.len()
        ),
    )
}

fn c9_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hfspine")).arg("report").output().expect("run hfspine report")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    let ok = a.status.success() && b.status.success();
    let all_ok = report_all_ok(&String::from_utf8_lossy(&a.stdout));
    Outcome::new(
        same && ok && all_ok,
        format!("{} bytes, identical {same}, every check marked ok {all_ok}", a.stdout.len()),
    )
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: Vec<(&str, Outcome)> = vec![
        ("1 unknot surgery equals L(n,1)", timed(Some(secs(1)), c1_lens_vs_unknot)),
        ("2 S^3_4(trefoil) equals Q_-3", timed(None, c2_trefoil_is_q_minus_3)),
        ("3 lattice oracle vs lens profiles", timed(Some(secs(10)), c3_chain_oracle)),
        ("4 M_p scan", timed(Some(secs(1)), c4_scan)),
        ("5 negative-definite exclusion", timed(None, c5_negative_branch)),
        ("6 random surgeries pass", timed(Some(secs(5)), c6_random_surgeries)),
        ("7 residues mod 2", timed(None, c7_residues)),
        ("8 normal generation suite", timed(Some(secs(60)), c8_pi1)),
        ("9 deterministic report", timed(None, c9_determinism)),
    ];
    let mut failed = 0;
    let mut unexpected = 0;
    for (name, outcome) in &criteria {
        let tag = match (outcome.pass, outcome.blocker) {
            (true, _) => "PASS",
            (false, Some(true)) => "FAIL (unattainable as stated; replacement check passes)",
            (false, _) => "FAIL",
        };
        println!("{tag}  {name}: {}", outcome.detail);
        failed += usize::from(!outcome.pass);
        unexpected += usize::from(!outcome.pass && outcome.blocker != Some(true));
    }
    println!("{} of {} criteria pass, {unexpected} unexpected failures", criteria.len() - failed, criteria.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
