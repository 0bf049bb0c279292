//! Fundamental groups of Brieskorn spheres and normal generation by
//! singular fibres.
//!
//! `pi_1(Sigma(p,q,r))` for Seifert invariants `(e; (p,p'), (q,q'), (r,r'))`
//! is presented as
//!
//! ```text
//!     < x, y, z, h | h central, x^p h^p' = y^q h^q' = z^r h^r' = x y z h^e = 1 >
//! ```
//!
//! The singular fibre of order `p` is `x^a h^b` with `|b p - a p'| = 1`.
//! Killing it should trivialise the group; this is decided by coset
//! enumeration, with table overflow reported as indeterminate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub const DEFAULT_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Pi1Error {
    #[error("({0}, {1}, {2}) are not pairwise coprime positive integers")]
    NotCoprime(i64, i64, i64),
    #[error("Seifert invariants do not describe an integral homology sphere (|det| = {0})")]
    NotHomologySphere(i64),
    #[error("relator references undeclared generator {0}")]
    UnknownGenerator(i32),
    #[error("leg must be 1, 2 or 3, got {0}")]
    BadLeg(usize),
}

/// Generator `k` is `k + 1`, its inverse `-(k + 1)`.
pub type Word = Vec<i32>;

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|&g| -g).collect()
}

/// Cancels adjacent `g g^-1` pairs.
pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &g in w {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

/// `g^k` for generator index `gen` (0-based).
pub fn power(gen: usize, k: i64) -> Word {
    let g = gen as i32 + 1;
    let letter = if k >= 0 { g } else { -g };
    vec![letter; k.unsigned_abs() as usize]
}

fn commutator(a: usize, b: usize) -> Word {
    let (a, b) = (a as i32 + 1, b as i32 + 1);
    vec![a, b, -a, -b]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, Pi1Error> {
        let n = generators.len() as i32;
        for w in &relators {
            if let Some(&g) = w.iter().find(|&&g| g == 0 || g.abs() > n) {
                return Err(Pi1Error::UnknownGenerator(g));
            }
        }
        let relators = relators.iter().map(|w| free_reduce(w)).filter(|w| !w.is_empty()).collect();
        Ok(Presentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// The same presentation with `extra` adjoined as relators.
    pub fn quotient(&self, extra: &[Word]) -> Result<Self, Pi1Error> {
        let mut relators = self.relators.clone();
        relators.extend(extra.iter().cloned());
        Presentation::new(self.generators.clone(), relators)
    }

    pub fn format_word(&self, w: &[i32]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut k = 0;
        while k < w.len() {
            let g = w[k];
            let run = w[k..].iter().take_while(|&&x| x == g).count();
            let name = &self.generators[g.unsigned_abs() as usize - 1];
            let exp = if g > 0 { run as i64 } else { -(run as i64) };
            parts.push(if exp == 1 { name.clone() } else { format!("{name}^{exp}") });
            k += run;
        }
        parts.join(" ")
    }
}

/// Seifert invariants `(e; (p,p'), (q,q'), (r,r'))` of a Brieskorn sphere,
/// normalised so that `e pqr - (p'qr + pq'r + pqr') = +-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeifertData {
    pub e: i64,
    pub legs: [(i64, i64); 3],
}

impl SeifertData {
    pub fn new(e: i64, legs: [(i64, i64); 3]) -> Result<Self, Pi1Error> {
        let [(p, _), (q, _), (r, _)] = legs;
        check_coprime(p, q, r)?;
        let s = SeifertData { e, legs };
        let det = s.determinant();
        if det.abs() != 1 {
            return Err(Pi1Error::NotHomologySphere(det));
        }
        Ok(s)
    }

    /// `e pqr - (p'qr + pq'r + pqr')`, the determinant of the abelianised
    /// relations.
    pub fn determinant(&self) -> i64 {
        let [(p, p1), (q, q1), (r, r1)] = self.legs;
        self.e * p * q * r - (p1 * q * r + p * q1 * r + p * q * r1)
    }

    pub fn orders(&self) -> (i64, i64, i64) {
        (self.legs[0].0, self.legs[1].0, self.legs[2].0)
    }
}

fn check_coprime(p: i64, q: i64, r: i64) -> Result<(), Pi1Error> {
    let ok = p >= 1 && q >= 1 && r >= 1 && p.gcd(&q) == 1 && q.gcd(&r) == 1 && p.gcd(&r) == 1;
    if ok {
        Ok(())
    } else {
        Err(Pi1Error::NotCoprime(p, q, r))
    }
}

/// Inverse of `a` modulo `m`, in `[0, m)`; `0` when `m == 1`.
fn inv_mod(a: i64, m: i64) -> i64 {
    let e = a.rem_euclid(m).extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

/// Seifert invariants with `0 <= p' < p` etc. Each `p'` inverts `qr`
/// modulo `p`, so `p'qr + pq'r + pqr' = 1 mod pqr` and `e` closes the gap
/// (the determinant is then `-1`).
pub fn seifert_data(p: i64, q: i64, r: i64) -> Result<SeifertData, Pi1Error> {
    check_coprime(p, q, r)?;
    let p1 = inv_mod(q * r, p);
    let q1 = inv_mod(p * r, q);
    let r1 = inv_mod(p * q, r);
    let s = p1 * q * r + p * q1 * r + p * q * r1;
    let n = p * q * r;
    debug_assert_eq!((s - 1).rem_euclid(n), 0);
    SeifertData::new((s - 1) / n, [(p, p1), (q, q1), (r, r1)])
}

const H: usize = 3;

pub fn brieskorn_presentation(s: &SeifertData) -> Presentation {
    let gens = ["x", "y", "z", "h"].map(String::from).to_vec();
    let mut relators: Vec<Word> = (0..3).map(|g| commutator(g, H)).collect();
    for (g, &(a, b)) in s.legs.iter().enumerate() {
        let mut w = power(g, a);
        w.extend(power(H, b));
        relators.push(w);
    }
    let mut w = vec![1, 2, 3];
    w.extend(power(H, s.e));
    relators.push(w);
    Presentation::new(gens, relators).expect("generators 1..=4 are declared")
}

/// The fibre `x_leg^a h^b` with `b p - a p' = +-1` and `a >= 0` minimal
/// (ties go to `+1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberWord {
    pub leg: usize,
    pub a: i64,
    pub b: i64,
    pub word: Word,
}

pub fn fiber_word(s: &SeifertData, leg: usize) -> Result<FiberWord, Pi1Error> {
    if !(1..=3).contains(&leg) {
        return Err(Pi1Error::BadLeg(leg));
    }
    let (p, p1) = s.legs[leg - 1];
    // b p - a p' = sign  <=>  a p' = -sign (mod p)
    let solve = |sign: i64| {
        let a = (-sign * inv_mod(p1, p)).rem_euclid(p);
        (a, (sign + a * p1) / p)
    };
    let (a_pos, b_pos) = solve(1);
    let (a_neg, b_neg) = solve(-1);
    let (a, b) = if a_neg < a_pos { (a_neg, b_neg) } else { (a_pos, b_pos) };
    debug_assert_eq!((b * p - a * p1).abs(), 1);
    let mut word = power(leg - 1, a);
    word.extend(power(H, b));
    Ok(FiberWord { leg, a, b, word: free_reduce(&word) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetResult {
    Enumerated(usize),
    Overflow(usize),
}

impl fmt::Display for CosetResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CosetResult::Enumerated(k) => write!(f, "enumerated ({k} cosets)"),
            CosetResult::Overflow(limit) => write!(f, "overflow (limit {limit})"),
        }
    }
}

const UNDEF: u32 = u32::MAX;

/// Closed coset table, cosets renumbered `0..index` with the subgroup
/// coset first. Column `2g` is generator `g`, column `2g + 1` its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    rows: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    /// Action of generator `g` (0-based) on cosets.
    pub fn permutation(&self, g: usize) -> Vec<usize> {
        self.rows.iter().map(|r| r[2 * g] as usize).collect()
    }

    /// Coset reached from `start` by reading `w` left to right.
    pub fn trace(&self, start: usize, w: &[i32]) -> usize {
        w.iter().fold(start, |c, &g| self.rows[c][col(g)] as usize)
    }
}

fn col(g: i32) -> usize {
    let k = g.unsigned_abs() as usize - 1;
    if g > 0 {
        2 * k
    } else {
        2 * k + 1
    }
}

fn inv_col(c: usize) -> usize {
    c ^ 1
}

struct Enumeration {
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    ncols: usize,
    limit: usize,
}

struct Overflowed;

impl Enumeration {
    fn new(ngens: usize, limit: usize) -> Self {
        let ncols = 2 * ngens;
        Enumeration { table: vec![vec![UNDEF; ncols]], parent: vec![0], queue: Vec::new(), ncols, limit }
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Overflowed> {
        if self.table.len() >= self.limit {
            return Err(Overflowed);
        }
        let d = self.table.len() as u32;
        self.table.push(vec![UNDEF; self.ncols]);
        self.parent.push(d);
        self.table[c as usize][x] = d;
        self.table[d as usize][inv_col(x)] = c;
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != root {
            let next = self.parent[k as usize];
            self.parent[k as usize] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut k = 0;
        while k < self.queue.len() {
            let dead = self.queue[k];
            k += 1;
            for x in 0..self.ncols {
                let d = self.table[dead as usize][x];
                if d == UNDEF {
                    continue;
                }
                self.table[d as usize][inv_col(x)] = UNDEF;
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mx = self.table[mu as usize][x];
                let nx = self.table[nu as usize][inv_col(x)];
                if mx != UNDEF {
                    self.merge(nu, mx);
                } else if nx != UNDEF {
                    self.merge(mu, nx);
                } else {
                    self.table[mu as usize][x] = nu;
                    self.table[nu as usize][inv_col(x)] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, start: u32, w: &[i32]) -> Result<(), Overflowed> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = start;
        let mut b = start;
        let mut i = 0usize;
        let mut j = w.len();
        loop {
            while i < j {
                let t = self.table[f as usize][col(w[i])];
                if t == UNDEF {
                    break;
                }
                f = t;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let t = self.table[b as usize][inv_col(col(w[j - 1]))];
                if t == UNDEF {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                let x = col(w[i]);
                self.table[f as usize][x] = b;
                self.table[b as usize][inv_col(x)] = f;
                return Ok(());
            }
            self.define(f, col(w[i]))?;
        }
    }

    /// HLT: cosets are processed in definition order; each live coset
    /// traces every relator, then gets its remaining entries defined.
    fn run(&mut self, relators: &[Word], subgroup: &[Word]) -> Result<(), Overflowed> {
        for w in subgroup {
            self.scan_and_fill(0, w)?;
        }
        let mut c = 0usize;
        while c < self.table.len() {
            let cu = c as u32;
            for w in relators {
                if !self.alive(cu) {
                    break;
                }
                self.scan_and_fill(cu, w)?;
            }
            if self.alive(cu) {
                for x in 0..self.ncols {
                    if self.table[c][x] == UNDEF {
                        self.define(cu, x)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn compact(&self) -> CosetTable {
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.alive(c as u32)).collect();
        let mut renumber = vec![UNDEF; self.table.len()];
        for (k, &c) in live.iter().enumerate() {
            renumber[c] = k as u32;
        }
        let rows = live
            .iter()
            .map(|&c| self.table[c].iter().map(|&d| renumber[d as usize]).collect())
            .collect();
        CosetTable { rows }
    }
}

/// Closes the coset table of `<subgroup>` in the group of `pres`, or
/// gives up once `limit` cosets have been defined.
pub fn enumerate_cosets(
    pres: &Presentation,
    subgroup: &[Word],
    limit: usize,
) -> Result<CosetTable, CosetResult> {
    let mut e = Enumeration::new(pres.generators.len(), limit.max(1));
    match e.run(&pres.relators, subgroup) {
        Ok(()) => Ok(e.compact()),
        Err(Overflowed) => Err(CosetResult::Overflow(limit)),
    }
}

pub fn todd_coxeter(pres: &Presentation, subgroup: &[Word], limit: usize) -> CosetResult {
    match enumerate_cosets(pres, subgroup, limit) {
        Ok(t) => CosetResult::Enumerated(t.index()),
        Err(overflow) => overflow,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalGeneration {
    /// The quotient is trivial.
    Yes,
    /// The quotient closed with this many elements.
    No(usize),
    /// The enumeration overflowed.
    Indeterminate(usize),
}

impl NormalGeneration {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            NormalGeneration::Yes => Some(true),
            NormalGeneration::No(_) => Some(false),
            NormalGeneration::Indeterminate(_) => None,
        }
    }
}

/// Does the fibre of the given leg normally generate `pi_1(Sigma(p,q,r))`?
pub fn normal_generation_check(
    p: i64,
    q: i64,
    r: i64,
    leg: usize,
    limit: usize,
) -> Result<NormalGeneration, Pi1Error> {
    let s = seifert_data(p, q, r)?;
    let fiber = fiber_word(&s, leg)?;
    let quotient = brieskorn_presentation(&s).quotient(&[fiber.word])?;
    Ok(match todd_coxeter(&quotient, &[], limit) {
        CosetResult::Enumerated(1) => NormalGeneration::Yes,
        CosetResult::Enumerated(k) => NormalGeneration::No(k),
        CosetResult::Overflow(l) => NormalGeneration::Indeterminate(l),
    })
}

/// Relator exponent sums, one row per relator.
pub fn exponent_matrix(pres: &Presentation) -> Vec<Vec<BigInt>> {
    pres.relators
        .iter()
        .map(|w| {
            let mut row = vec![BigInt::zero(); pres.generators.len()];
            for &g in w {
                let k = g.unsigned_abs() as usize - 1;
                row[k] += if g > 0 { 1 } else { -1 };
            }
            row
        })
        .collect()
}

/// Diagonal of the Smith normal form, nonnegative, length `min(rows, cols)`.
pub fn smith_diagonal(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero entry in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else {
            diag.extend((t..rows.min(cols)).map(|_| BigInt::zero()));
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let pivot_row = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(pivot_row) {
                        *x -= &q * y;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut() {
                        let y = row[t].clone();
                        row[j] -= &q * y;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    let row_i = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(row_i) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// Invariant factors of the abelianisation (`0` for a free summand), one
/// per generator; trivial iff all equal `1`.
pub fn abelian_invariants(pres: &Presentation) -> Vec<BigInt> {
    let m = exponent_matrix(pres);
    let mut d = smith_diagonal(&m);
    d.resize(pres.generators.len(), BigInt::zero());
    d
}

pub fn abelianization_trivial(pres: &Presentation) -> bool {
    abelian_invariants(pres).iter().all(BigInt::is_one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    fn coprime_triples(max: i64) -> Vec<(i64, i64, i64)> {
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

    #[test]
    fn seifert_identity() {
        for (p, q, r) in [(2, 3, 5), (2, 3, 7), (3, 4, 5), (1, 5, 7), (1, 1, 1)] {
            let s = seifert_data(p, q, r).unwrap();
            let [(_, p1), (_, q1), (_, r1)] = s.legs;
            assert_eq!((s.e * p * q * r - (p1 * q * r + p * q1 * r + p * q * r1)).abs(), 1);
            assert!((0..p).contains(&p1) && (0..q).contains(&q1) && (0..r).contains(&r1));
        }
        assert_eq!(seifert_data(1, 5, 7).unwrap().legs[0], (1, 0));
        assert_eq!(seifert_data(2, 4, 5), Err(Pi1Error::NotCoprime(2, 4, 5)));
        assert_eq!(seifert_data(0, 3, 5), Err(Pi1Error::NotCoprime(0, 3, 5)));
        assert_eq!(
            SeifertData::new(0, [(2, 1), (3, 1), (5, 1)]),
            Err(Pi1Error::NotHomologySphere(-31))
        );
    }

    #[test]
    fn presentation_shape() {
        let pres = brieskorn_presentation(&seifert_data(2, 3, 5).unwrap());
        assert_eq!(pres.generators().len(), 4);
        assert_eq!(pres.relators().len(), 7);
        assert!(matches!(
            Presentation::new(vec!["a".into()], vec![vec![2]]),
            Err(Pi1Error::UnknownGenerator(2))
        ));
    }

    #[test]
    fn free_reduction() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(free_reduce(&[1, -1]), Vec::<i32>::new());
        assert_eq!(inverse(&[1, 2, -3]), vec![3, -2, -1]);
    }

    #[test]
    fn fiber_words() {
        let s = SeifertData { e: 0, legs: [(2, 1), (3, 2), (1, 0)] };
        let f = fiber_word(&s, 1).unwrap();
        assert_eq!((f.a, f.b), (1, 1));
        let f = fiber_word(&s, 2).unwrap();
        assert_eq!((f.a, f.b), (1, 1));
        let f = fiber_word(&s, 3).unwrap();
        assert_eq!((f.a, f.b), (0, 1));
        assert_eq!(f.word, vec![4]);
        assert_eq!(fiber_word(&s, 4), Err(Pi1Error::BadLeg(4)));
    }

    #[test]
    fn fiber_block_is_unimodular() {
        for (p, q, r) in coprime_triples(11) {
            let s = seifert_data(p, q, r).unwrap();
            for leg in 1..=3 {
                let f = fiber_word(&s, leg).unwrap();
                let (a, a1) = s.legs[leg - 1];
                // det [[p, p'], [a, b]]
                let m = vec![vec![BigInt::from(a), BigInt::from(a1)], vec![BigInt::from(f.a), BigInt::from(f.b)]];
                assert_eq!(smith_diagonal(&m), vec![BigInt::one(), BigInt::one()]);
            }
        }
    }

    #[test]
    fn cyclic_group() {
        let pres = Presentation::new(vec!["g".into()], vec![vec![1, 1, 1]]).unwrap();
        assert_eq!(todd_coxeter(&pres, &[], 100), CosetResult::Enumerated(3));
        assert_eq!(todd_coxeter(&pres, &[vec![1]], 100), CosetResult::Enumerated(1));
    }

    #[test]
    fn free_group_overflows() {
        let pres = Presentation::new(vec!["a".into(), "b".into()], vec![]).unwrap();
        assert_eq!(todd_coxeter(&pres, &[], 500), CosetResult::Overflow(500));
    }

    #[test]
    fn small_groups() {
        // S_3 = <a, b | a^2, b^3, (ab)^2>
        let s3 = Presentation::new(
            vec!["a".into(), "b".into()],
            vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2]],
        )
        .unwrap();
        assert_eq!(todd_coxeter(&s3, &[], 1000), CosetResult::Enumerated(6));
        assert_eq!(todd_coxeter(&s3, &[vec![1]], 1000), CosetResult::Enumerated(3));
        // quaternion group Q8 = <i, j | i^4, i^2 j^-2, i j i j^-1>
        let q8 = Presentation::new(
            vec!["i".into(), "j".into()],
            vec![vec![1, 1, 1, 1], vec![1, 1, -2, -2], vec![1, 2, 1, -2]],
        )
        .unwrap();
        assert_eq!(todd_coxeter(&q8, &[], 1000), CosetResult::Enumerated(8));
    }

    #[test]
    fn poincare_sphere_and_s3() {
        let s = seifert_data(2, 3, 5).unwrap();
        let pres = brieskorn_presentation(&s);
        // binary icosahedral group
        assert_eq!(todd_coxeter(&pres, &[], DEFAULT_LIMIT), CosetResult::Enumerated(120));
        let fiber = fiber_word(&s, 1).unwrap();
        assert_eq!(todd_coxeter(&pres.quotient(&[fiber.word]).unwrap(), &[], DEFAULT_LIMIT), CosetResult::Enumerated(1));
        assert_eq!(
            todd_coxeter(&pres.quotient(&[vec![4]]).unwrap(), &[], DEFAULT_LIMIT),
            CosetResult::Enumerated(60)
        );
        let trivial = brieskorn_presentation(&seifert_data(1, 1, 1).unwrap());
        assert_eq!(todd_coxeter(&trivial, &[], 100), CosetResult::Enumerated(1));
    }

    /// Closure of the permutation group generated by the table's action,
    /// built by breadth-first composition.
    fn permutation_group_order(perms: &[Vec<usize>]) -> usize {
        let n = perms[0].len();
        let id: Vec<usize> = (0..n).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for p in perms {
                let h: Vec<usize> = g.iter().map(|&k| p[k]).collect();
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn icosahedral_quotient_cayley_check() {
        let pres = brieskorn_presentation(&seifert_data(2, 3, 5).unwrap()).quotient(&[vec![4]]).unwrap();
        let table = enumerate_cosets(&pres, &[], DEFAULT_LIMIT).unwrap();
        assert_eq!(table.index(), 60);
        for w in pres.relators() {
            for c in 0..60 {
                assert_eq!(table.trace(c, w), c);
            }
        }
        let perms: Vec<Vec<usize>> = (0..4).map(|g| table.permutation(g)).collect();
        // regular action: the generated permutation group has order 60
        assert_eq!(permutation_group_order(&perms), 60);
    }

    #[test]
    fn abelianizations() {
        for (p, q, r) in coprime_triples(11).into_iter().chain([(1, 1, 1), (1, 2, 3)]) {
            let pres = brieskorn_presentation(&seifert_data(p, q, r).unwrap());
            assert!(abelianization_trivial(&pres), "({p},{q},{r})");
        }
        let z6 = Presentation::new(vec!["a".into(), "b".into()], vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, -1, -2]]).unwrap();
        assert_eq!(abelian_invariants(&z6), vec![BigInt::from(1), BigInt::from(6)]);
        let free = Presentation::new(vec!["a".into()], vec![]).unwrap();
        assert_eq!(abelian_invariants(&free), vec![BigInt::zero()]);
    }

    #[test]
    fn normal_generation_examples() {
        assert_eq!(normal_generation_check(2, 3, 5, 1, DEFAULT_LIMIT), Ok(NormalGeneration::Yes));
        assert_eq!(normal_generation_check(2, 3, 7, 3, DEFAULT_LIMIT), Ok(NormalGeneration::Yes));
        assert_eq!(normal_generation_check(3, 4, 5, 2, DEFAULT_LIMIT), Ok(NormalGeneration::Yes));
        assert!(matches!(
            normal_generation_check(2, 3, 7, 1, 2),
            Ok(NormalGeneration::Indeterminate(2))
        ));
    }

    #[test]
    fn enumeration_deterministic() {
        let pres = brieskorn_presentation(&seifert_data(2, 3, 5).unwrap()).quotient(&[vec![4]]).unwrap();
        assert_eq!(
            enumerate_cosets(&pres, &[], DEFAULT_LIMIT),
            enumerate_cosets(&pres, &[], DEFAULT_LIMIT)
        );
    }
}
