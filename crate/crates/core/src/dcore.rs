//! Exact rationals, `Z/n` spin^c indices and the d-invariant profile model.
//!
//! A profile of order `n` stores one correction term per spin^c structure
//! `s_i`, `i in Z/n`. Every stored profile is symmetric under conjugation
//! `s_i <-> s_{-i}`; construction rejects anything else.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

/// Arbitrary precision fraction, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// `a/b` as an exact rational. Panics if `b == 0`.
pub fn rat(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

pub fn int(a: i64) -> Rational {
    Rational::from_integer(BigInt::from(a))
}

/// Representative of `x mod 2Z` in `[0, 2)`.
pub fn mod2(x: &Rational) -> Rational {
    let two = int(2);
    let q = (x / &two).floor();
    x - q * two
}

/// True if `x` is an even integer.
pub fn is_even_integer(x: &Rational) -> bool {
    x.is_integer() && x.numer().is_even()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("profile order must be positive")]
    ZeroOrder,
    #[error("conjugation symmetry fails at i = {i}: d(s_{i}) = {left} but d(s_{j}) = {right}")]
    Asymmetric { i: usize, j: usize, left: String, right: String },
    #[error("shift must be an even integer, got {0}")]
    OddShift(i64),
    #[error("raw profile declares order {declared} but has {actual} entries")]
    OrderMismatch { declared: usize, actual: usize },
    #[error("conjugation is not an involution on ids (at {0})")]
    NotInvolution(String),
    #[error("conjugate ids {a} and {b} carry different values")]
    ConjugateValueMismatch { a: String, b: String },
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("unknown id {0}")]
    UnknownId(String),
}

/// Element of `Z/n` labelling the spin^c structure `s_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinIndex {
    i: usize,
    n: usize,
}

impl SpinIndex {
    /// Reduces `i` modulo `n`. Panics if `n == 0`.
    pub fn new(i: i64, n: usize) -> Self {
        assert!(n > 0, "spin^c index needs a positive modulus");
        let i = i.rem_euclid(n as i64) as usize;
        SpinIndex { i, n }
    }

    pub fn index(&self) -> usize {
        self.i
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn conjugate(&self) -> Self {
        SpinIndex { i: (self.n - self.i) % self.n, n: self.n }
    }

    pub fn succ(&self) -> Self {
        SpinIndex { i: (self.i + 1) % self.n, n: self.n }
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }
}

impl fmt::Display for SpinIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s_{} (mod {})", self.i, self.n)
    }
}

/// The labelled family `{d(Y, s_i)}` for `i in Z/n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DProfile {
    values: Vec<Rational>,
}

impl DProfile {
    /// Builds a profile from `values[i] = d(s_i)`, checking conjugation
    /// symmetry at every index.
    pub fn new(values: Vec<Rational>) -> Result<Self, ProfileError> {
        let n = values.len();
        if n == 0 {
            return Err(ProfileError::ZeroOrder);
        }
        for i in 0..n {
            let j = (n - i) % n;
            if values[i] != values[j] {
                return Err(ProfileError::Asymmetric {
                    i,
                    j,
                    left: values[i].to_string(),
                    right: values[j].to_string(),
                });
            }
        }
        Ok(DProfile { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn at(&self, i: SpinIndex) -> &Rational {
        debug_assert_eq!(i.modulus(), self.n());
        &self.values[i.index()]
    }

    /// Value at `i mod n`.
    pub fn get(&self, i: i64) -> &Rational {
        &self.values[i.rem_euclid(self.n() as i64) as usize]
    }

    /// `d(s_i) - d(s_{i+1})`, with the successor read modulo `n`.
    pub fn consecutive_difference(&self, i: usize) -> Rational {
        let n = self.n();
        &self.values[i % n] - &self.values[(i + 1) % n]
    }

    /// Values sorted ascending, for comparison as a multiset.
    pub fn sorted_values(&self) -> Vec<Rational> {
        let mut v = self.values.clone();
        v.sort();
        v
    }
}

/// Orientation reversal: `d(-Y, s) = -d(Y, s)`, index kept fixed.
pub fn mirror(p: &DProfile) -> DProfile {
    DProfile { values: p.values.iter().map(|v| -v).collect() }
}

/// Subtracts the even integer `e` from every value.
pub fn shift_by_even(p: &DProfile, e: i64) -> Result<DProfile, ProfileError> {
    if e % 2 != 0 {
        return Err(ProfileError::OddShift(e));
    }
    let e = int(e);
    Ok(DProfile { values: p.values.iter().map(|v| v - &e).collect() })
}

/// The value `((2i - n)^2 - |n|) / 4n` before reduction mod 2.
pub fn lens_term(i: usize, n: usize) -> Rational {
    let n = n as i64;
    let a = 2 * i as i64 - n;
    rat(a * a - n.abs(), 4 * n)
}

/// Required residues of `d(s_i)` mod 2 for a boundary with `H^2 = Z/n`,
/// each normalised into `[0, 2)`.
pub fn residue_table(n: usize) -> Vec<Rational> {
    assert!(n >= 1, "residue table needs n >= 1");
    (0..n).map(|i| mod2(&lens_term(i, n))).collect()
}

/// True if every value of `p` agrees with `residue_table(p.n())` mod 2.
pub fn matches_residues(p: &DProfile) -> bool {
    residue_table(p.n())
        .iter()
        .zip(p.values())
        .all(|(r, v)| mod2(v) == *r)
}

/// Unlabelled spin^c data: opaque ids, their d-invariants and the
/// conjugation involution on ids.
///
/// When `cyclic` is set the ids are the elements of `Z/n` in entry order
/// (entry `k` is the group element `k`), and only affine labellings are
/// meaningful.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawProfile {
    ids: Vec<String>,
    values: Vec<Rational>,
    conj: Vec<usize>,
    cyclic: bool,
}

impl RawProfile {
    /// `conj_pairs` lists each orbit once; ids not mentioned are fixed.
    pub fn new(
        n: usize,
        entries: Vec<(String, Rational)>,
        conj_pairs: &[(String, String)],
        cyclic: bool,
    ) -> Result<Self, ProfileError> {
        if n == 0 {
            return Err(ProfileError::ZeroOrder);
        }
        if entries.len() != n {
            return Err(ProfileError::OrderMismatch { declared: n, actual: entries.len() });
        }
        let (ids, values): (Vec<String>, Vec<Rational>) = entries.into_iter().unzip();
        for (k, id) in ids.iter().enumerate() {
            if ids[..k].contains(id) {
                return Err(ProfileError::DuplicateId(id.clone()));
            }
        }
        let pos = |id: &str| {
            ids.iter()
                .position(|x| x == id)
                .ok_or_else(|| ProfileError::UnknownId(id.to_string()))
        };
        let mut conj: Vec<Option<usize>> = vec![None; n];
        for (a, b) in conj_pairs {
            let (ia, ib) = (pos(a)?, pos(b)?);
            for (x, y) in [(ia, ib), (ib, ia)] {
                match conj[x] {
                    Some(prev) if prev != y => return Err(ProfileError::NotInvolution(ids[x].clone())),
                    _ => conj[x] = Some(y),
                }
            }
        }
        let conj: Vec<usize> = conj.into_iter().enumerate().map(|(k, c)| c.unwrap_or(k)).collect();
        Self::from_parts(ids, values, conj, cyclic)
    }

    fn from_parts(
        ids: Vec<String>,
        values: Vec<Rational>,
        conj: Vec<usize>,
        cyclic: bool,
    ) -> Result<Self, ProfileError> {
        for (k, &c) in conj.iter().enumerate() {
            if conj[c] != k {
                return Err(ProfileError::NotInvolution(ids[k].clone()));
            }
            if values[k] != values[c] {
                return Err(ProfileError::ConjugateValueMismatch {
                    a: ids[k].clone(),
                    b: ids[c].clone(),
                });
            }
        }
        Ok(RawProfile { ids, values, conj, cyclic })
    }

    /// Forgets the labelling of `p` but keeps its `Z/n` structure: id `k`
    /// is the group element `k`, conjugation is negation.
    pub fn from_labeled(p: &DProfile) -> Self {
        let n = p.n();
        RawProfile {
            ids: (0..n).map(|k| k.to_string()).collect(),
            values: p.values().to_vec(),
            conj: (0..n).map(|k| (n - k) % n).collect(),
            cyclic: true,
        }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, k: usize) -> &Rational {
        &self.values[k]
    }

    pub fn conj(&self, k: usize) -> usize {
        self.conj[k]
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    /// Conjugation orbits as `(a, conj(a))` with `a <= conj(a)`, in id order.
    pub fn orbits(&self) -> Vec<(usize, usize)> {
        (0..self.n()).filter(|&k| k <= self.conj[k]).map(|k| (k, self.conj[k])).collect()
    }

    pub fn negated(&self) -> Self {
        RawProfile { values: self.values.iter().map(|v| -v).collect(), ..self.clone() }
    }

    pub fn sorted_values(&self) -> Vec<Rational> {
        let mut v = self.values.clone();
        v.sort();
        v
    }
}

/// True if the denominator of `x` divides `m`.
pub fn denominator_divides(x: &Rational, m: &BigInt) -> bool {
    (m % x.denom()).is_zero()
}
