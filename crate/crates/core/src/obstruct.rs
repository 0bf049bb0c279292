//! Decision procedure for the PL-sphere obstruction.
//!
//! Let `X` be a smooth compact oriented 4-manifold with the homology of
//! `S^2` whose generator has square `n > 1`, and `Y = dX`. If the generator
//! is carried by a PL sphere, then `Y` is homology cobordant to
//! `S^3_n(K)` for some knot `K`, so every consecutive difference
//! `d(s_i) - d(s_(i+1))` must lie in a two-element set (one element when
//! `n` is odd and `i = (n-1)/2`).
//!
//! Given unlabelled data for `Y`, [`verdict`] tries both signs of the
//! intersection form and every labelling compatible with conjugation and
//! the mod-2 residues. If no combination passes, no such `X` has a PL
//! sphere generator, and in particular no spine.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::dcore::{mod2, rat, residue_table, DProfile, RawProfile, Rational, SpinIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructError {
    #[error("obstruction needs n > 1 (got n = {0})")]
    Inapplicable(usize),
}

/// Admissible values of `d(s_i) - d(s_(i+1))` at one index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllowedDiffs {
    pub n: usize,
    pub i: SpinIndex,
    pub options: Vec<Rational>,
}

impl AllowedDiffs {
    pub fn contains(&self, x: &Rational) -> bool {
        self.options.contains(x)
    }
}

pub fn allowed_differences(n: usize, i: SpinIndex) -> Result<AllowedDiffs, ObstructError> {
    if n <= 1 {
        return Err(ObstructError::Inapplicable(n));
    }
    assert_eq!(i.modulus(), n, "index modulus must match n");
    let (n_, i_) = (n as i64, i.index() as i64);
    let first = rat(n_ - 2 * i_ - 1, n_);
    let options = if 2 * i_ <= n_ - 2 {
        vec![first, rat(-n_ - 2 * i_ - 1, n_)]
    } else if n_.is_odd() && 2 * i_ == n_ - 1 {
        vec![first]
    } else {
        vec![first, rat(3 * n_ - 2 * i_ - 1, n_)]
    };
    Ok(AllowedDiffs { n, i, options })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckResult {
    Pass,
    /// Indices `i` whose difference is not admissible.
    Fail(Vec<usize>),
}

impl CheckResult {
    pub fn is_pass(&self) -> bool {
        matches!(self, CheckResult::Pass)
    }
}

/// Tests every `i in 0..n` (the last one against `s_0`).
pub fn check_labeled(p: &DProfile) -> Result<CheckResult, ObstructError> {
    let n = p.n();
    if n <= 1 {
        return Err(ObstructError::Inapplicable(n));
    }
    let mut violations = Vec::new();
    for i in 0..n {
        let diff = p.consecutive_difference(i);
        if !allowed_differences(n, SpinIndex::new(i as i64, n))?.contains(&diff) {
            violations.push(i);
        }
    }
    if violations.is_empty() {
        debug_assert_eq!(
            (0..n).map(|i| p.consecutive_difference(i)).sum::<Rational>(),
            Rational::from_integer(0.into())
        );
        Ok(CheckResult::Pass)
    } else {
        Ok(CheckResult::Fail(violations))
    }
}

/// Sign of the intersection form of the hypothetical filling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    PositiveDefinite,
    NegativeDefinite,
}

impl Sign {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sign::PositiveDefinite => "positive",
            Sign::NegativeDefinite => "negative",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// All `Z/n` labellings of `raw` consistent with conjugation and the mod-2
/// residues, as distinct value vectors in lexicographic order.
///
/// The negative branch negates every value first (a negative-definite
/// filling of `Y` is a positive-definite filling of `-Y`).
pub fn enumerate_labelings(raw: &RawProfile, sign: Sign) -> Vec<DProfile> {
    let raw = match sign {
        Sign::PositiveDefinite => raw.clone(),
        Sign::NegativeDefinite => raw.negated(),
    };
    let n = raw.n();
    let residues = residue_table(n);
    let value_residues: Vec<Rational> = raw.values().iter().map(mod2).collect();

    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut emit = |labels: &[usize]| {
        found.insert(labels.iter().map(|&k| raw.value(k).clone()).collect());
    };
    if raw.is_cyclic() {
        affine_labelings(&raw, &residues, &value_residues, &mut emit);
    } else {
        let mut search = Search {
            raw: &raw,
            residues: &residues,
            value_residues: &value_residues,
            labels: vec![usize::MAX; n],
            used: vec![false; n],
        };
        search.run(0, &mut emit);
    }
    found
        .into_iter()
        .map(|v| DProfile::new(v).expect("conjugation-compatible labelling is symmetric"))
        .collect()
}

/// `l(i) = a + i g` over `a in Z/n` and units `g`.
fn affine_labelings(
    raw: &RawProfile,
    residues: &[Rational],
    value_residues: &[Rational],
    emit: &mut impl FnMut(&[usize]),
) {
    let n = raw.n();
    let mut labels = vec![0; n];
    for a in 0..n {
        for g in (1..=n).filter(|g| g.gcd(&n) == 1) {
            for (i, l) in labels.iter_mut().enumerate() {
                *l = (a + i * g) % n;
            }
            let conj_ok = (0..n).all(|i| labels[(n - i) % n] == raw.conj(labels[i]));
            let residue_ok = (0..n).all(|i| value_residues[labels[i]] == residues[i]);
            if conj_ok && residue_ok {
                emit(&labels);
            }
        }
    }
}

/// Backtracking over bijections with `l(-i) = conj(l(i))`.
struct Search<'a> {
    raw: &'a RawProfile,
    residues: &'a [Rational],
    value_residues: &'a [Rational],
    labels: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, i: usize, emit: &mut impl FnMut(&[usize])) {
        let n = self.raw.n();
        if 2 * i > n {
            emit(&self.labels);
            return;
        }
        let j = (n - i) % n;
        // Ids with equal (value, conjugate value, fixedness) give the same
        // value vectors, so one representative per class suffices.
        let mut tried: Vec<(&Rational, &Rational, bool)> = Vec::new();
        for k in 0..n {
            let c = self.raw.conj(k);
            let fixed = c == k;
            if self.used[k] || self.used[c] || fixed != (i == j) {
                continue;
            }
            if self.value_residues[k] != self.residues[i] || self.value_residues[c] != self.residues[j] {
                continue;
            }
            let key = (self.raw.value(k), self.raw.value(c), fixed);
            if tried.contains(&key) {
                continue;
            }
            tried.push(key);
            self.labels[i] = k;
            self.labels[j] = c;
            self.used[k] = true;
            self.used[c] = true;
            self.run(i + 1, emit);
            self.used[k] = false;
            self.used[c] = false;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelingCheck {
    pub profile: DProfile,
    pub result: CheckResult,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub sign: Sign,
    /// Empty when the residues exclude this sign outright.
    pub labelings: Vec<LabelingCheck>,
}

impl Branch {
    pub fn congruence_excluded(&self) -> bool {
        self.labelings.is_empty()
    }

    pub fn passes(&self) -> bool {
        self.labelings.iter().any(|l| l.result.is_pass())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Overall {
    /// No filling of this boundary has a PL-sphere generator.
    Obstructed,
    NotObstructed,
    /// `n <= 1`: the obstruction says nothing.
    Inapplicable,
}

impl Overall {
    pub fn as_str(&self) -> &'static str {
        match self {
            Overall::Obstructed => "Obstructed",
            Overall::NotObstructed => "NotObstructed",
            Overall::Inapplicable => "Inapplicable",
        }
    }
}

impl fmt::Display for Overall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpineVerdict {
    pub n: usize,
    /// Positive branch first; empty when inapplicable.
    pub branches: Vec<Branch>,
    pub overall: Overall,
}

fn run_branch(raw: &RawProfile, sign: Sign) -> Branch {
    let labelings = enumerate_labelings(raw, sign)
        .into_iter()
        .map(|profile| {
            let result = check_labeled(&profile).expect("n > 1 checked by caller");
            LabelingCheck { profile, result }
        })
        .collect();
    Branch { sign, labelings }
}

pub fn verdict(raw: &RawProfile) -> SpineVerdict {
    let n = raw.n();
    if n <= 1 {
        return SpineVerdict { n, branches: vec![], overall: Overall::Inapplicable };
    }
    let (pos, neg) = rayon::join(
        || run_branch(raw, Sign::PositiveDefinite),
        || run_branch(raw, Sign::NegativeDefinite),
    );
    let overall = if pos.passes() || neg.passes() {
        Overall::NotObstructed
    } else {
        Overall::Obstructed
    };
    SpineVerdict { n, branches: vec![pos, neg], overall }
}
