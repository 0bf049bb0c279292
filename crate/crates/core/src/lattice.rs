//! Characteristic-vector maxima on negative-definite integral lattices.
//!
//! For a negative-definite Gram matrix `G` of rank `r` and a characteristic
//! covector `c` (`c_j = G_jj mod 2`), the coset value is
//!
//! ```text
//!     max { (c'^T G^-1 c' + r) / 4  :  c' in c + 2 G Z^r }
//! ```
//!
//! On a linear chain of `-2` framings this reproduces the lens space
//! profile of `L(n,1)`, and on the rank-one lattice `(-n)` its mirror. Anywhere else it is only a lower bound
//! for the d-invariant of the boundary.
//!
//! The maximum is found by exact ellipsoid enumeration: `-G` is written as
//! `sum_i q_ii (u_i + sum_(j>i) q_ij u_j)^2` in rational arithmetic and the
//! shifted integer points are enumerated coordinate by coordinate inside
//! the current best ellipsoid.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::dcore::Rational;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("Gram matrix is empty")]
    Empty,
    #[error("Gram matrix is not square")]
    NotSquare,
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("Gram matrix is not negative definite (leading minor {0} has the wrong sign)")]
    NotNegativeDefinite(usize),
    #[error("enumeration exceeded the budget of {0} lattice points")]
    SearchOverflow(u64),
    #[error("chain lattice needs n >= 2, got {0}")]
    ChainTooShort(usize),
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn to_rat(x: i64) -> Rational {
    Rational::from_integer(big(x))
}

/// Determinant of an integer matrix by fraction-free elimination.
fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Symmetric negative-definite integral lattice, given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    gram: Vec<Vec<i64>>,
}

impl IntLattice {
    /// Checks symmetry and that the `k`-th leading principal minor has sign
    /// `(-1)^k`.
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let r = gram.len();
        if r == 0 {
            return Err(LatticeError::Empty);
        }
        if gram.iter().any(|row| row.len() != r) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..r {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        let g: Vec<Vec<BigInt>> = gram.iter().map(|row| row.iter().map(|&x| big(x)).collect()).collect();
        for k in 1..=r {
            let minor: Vec<Vec<BigInt>> = g[..k].iter().map(|row| row[..k].to_vec()).collect();
            let d = bareiss_det(&minor);
            let ok = if k % 2 == 1 { d.is_negative() } else { d.is_positive() };
            if !ok {
                return Err(LatticeError::NotNegativeDefinite(k));
            }
        }
        Ok(IntLattice { gram })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn det(&self) -> BigInt {
        let g: Vec<Vec<BigInt>> = self.gram.iter().map(|row| row.iter().map(|&x| big(x)).collect()).collect();
        bareiss_det(&g)
    }

    /// Exact inverse of the Gram matrix.
    pub fn inverse(&self) -> Vec<Vec<Rational>> {
        let r = self.rank();
        let mut a: Vec<Vec<Rational>> = self
            .gram
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut v: Vec<Rational> = row.iter().map(|&x| to_rat(x)).collect();
                v.extend((0..r).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                v
            })
            .collect();
        for col in 0..r {
            let piv = (col..r).find(|&i| !a[i][col].is_zero()).expect("definite matrix is invertible");
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            for i in 0..r {
                if i != col && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    let pivot_row = a[col].clone();
                    for (x, p) in a[i].iter_mut().zip(pivot_row) {
                        *x -= &f * p;
                    }
                }
            }
        }
        a.into_iter().map(|row| row[r..].to_vec()).collect()
    }

    /// Upper-triangular basis of the column lattice `G Z^r` with positive
    /// diagonal.
    fn column_hermite(&self) -> Vec<Vec<BigInt>> {
        let r = self.rank();
        // cols[k] is a column vector
        let mut cols: Vec<Vec<BigInt>> =
            (0..r).map(|j| (0..r).map(|i| big(self.gram[i][j])).collect()).collect();
        let mut basis: Vec<Vec<BigInt>> = vec![Vec::new(); r];
        for row in (0..r).rev() {
            // gcd-combine all remaining columns on this row into one
            loop {
                let nonzero: Vec<usize> = (0..cols.len()).filter(|&k| !cols[k][row].is_zero()).collect();
                if nonzero.len() <= 1 {
                    break;
                }
                let pivot = *nonzero.iter().min_by_key(|&&k| cols[k][row].abs()).unwrap();
                for &k in &nonzero {
                    if k != pivot {
                        let q = cols[k][row].div_floor(&cols[pivot][row]);
                        let pc = cols[pivot].clone();
                        for (x, p) in cols[k].iter_mut().zip(pc) {
                            *x -= &q * p;
                        }
                    }
                }
            }
            let k = (0..cols.len())
                .find(|&k| !cols[k][row].is_zero())
                .expect("full-rank lattice");
            let mut c = cols.swap_remove(k);
            if c[row].is_negative() {
                c.iter_mut().for_each(|x| *x = -x.clone());
            }
            basis[row] = c;
        }
        // basis[j] is the column with last nonzero entry in row j
        basis
    }
}

/// `n - 1` vertices of framing `-2` in a line; bounds `L(n,1)`.
pub fn chain_lattice(n: usize) -> Result<IntLattice, LatticeError> {
    if n < 2 {
        return Err(LatticeError::ChainTooShort(n));
    }
    let r = n - 1;
    let gram = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| match i.abs_diff(j) {
                    0 => -2,
                    1 => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    IntLattice::new(gram)
}

/// A characteristic covector, in the dual coordinates `c_j = c(v_j)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CharCoset {
    pub representative: Vec<BigInt>,
}

/// One representative per class of characteristic covectors modulo
/// `2 G Z^r`, `|det G|` in total, in lexicographic order.
pub fn char_cosets(l: &IntLattice) -> Vec<CharCoset> {
    let r = l.rank();
    let h = l.column_hermite();
    let diag: Vec<BigInt> = (0..r).map(|j| h[j][j].clone()).collect();
    let base: Vec<BigInt> = (0..r).map(|j| big(l.gram[j][j].rem_euclid(2))).collect();
    // all x with 0 <= x_j < h_jj are distinct mod G Z^r
    let mut out = Vec::new();
    let mut x: Vec<BigInt> = vec![BigInt::zero(); r];
    loop {
        let rep = base.iter().zip(&x).map(|(b, xi)| b + BigInt::from(2) * xi).collect();
        out.push(CharCoset { representative: rep });
        let mut k = r;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            x[k] += 1;
            if x[k] < diag[k] {
                break;
            }
            x[k] = BigInt::zero();
        }
    }
}

/// `-G = sum_i q[i][i] (u_i + sum_(j>i) q[i][j] u_j)^2`.
fn quadratic_form_decomposition(l: &IntLattice) -> Vec<Vec<Rational>> {
    let r = l.rank();
    let mut q: Vec<Vec<Rational>> =
        l.gram.iter().map(|row| row.iter().map(|&x| to_rat(-x)).collect()).collect();
    for i in 0..r {
        for j in i + 1..r {
            let t = q[i][j].clone();
            q[j][i] = t.clone();
            q[i][j] = t / &q[i][i];
        }
        for k in i + 1..r {
            for j in k..r {
                let t = &q[k][i] * &q[i][j];
                q[k][j] -= t;
            }
        }
    }
    q
}

/// Smallest integer `R >= 0` with `R^2 >= s`.
fn ceil_sqrt(s: &Rational) -> BigInt {
    if !s.is_positive() {
        return BigInt::zero();
    }
    let c = s.ceil().to_integer();
    let mut root = c.sqrt();
    while &root * &root < c {
        root += 1;
    }
    root
}

struct Enumerator<'a> {
    q: &'a [Vec<Rational>],
    shift: &'a [Rational],
    u: Vec<Rational>,
    best: Rational,
    visited: u64,
    budget: u64,
}

impl Enumerator<'_> {
    fn center(&self, i: usize) -> Rational {
        let mut m = Rational::zero();
        for j in i + 1..self.q.len() {
            m -= &self.q[i][j] * &self.u[j];
        }
        m
    }

    /// Descends from the last coordinate with partial sum `acc`.
    fn search(&mut self, level: usize, acc: Rational) -> Result<(), LatticeError> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(LatticeError::SearchOverflow(self.budget));
        }
        let i = level;
        let mu = self.center(i);
        let room = (&self.best - &acc) / &self.q[i][i];
        if room.is_negative() {
            return Ok(());
        }
        // u_i = shift_i + k, |u_i - mu| <= sqrt(room)
        let radius = Rational::from_integer(ceil_sqrt(&room));
        let offset = &mu - &self.shift[i];
        let lo = (&offset - &radius).floor().to_integer();
        let hi = (&offset + &radius).ceil().to_integer();
        let mut k = lo;
        while k <= hi {
            let ui = &self.shift[i] + Rational::from_integer(k.clone());
            let dev = &ui - &mu;
            let term = &self.q[i][i] * &dev * &dev;
            let total = &acc + term;
            if total <= self.best {
                self.u[i] = ui;
                if i == 0 {
                    self.best = total;
                } else {
                    self.search(i - 1, total)?;
                }
            }
            k += 1;
        }
        Ok(())
    }
}

/// Exact value of `max (c'^T G^-1 c' + r) / 4` over the coset of `c`.
pub fn d_lower_bound(l: &IntLattice, c: &CharCoset, budget: u64) -> Result<Rational, LatticeError> {
    let r = l.rank();
    let inv = l.inverse();
    // w = G^-1 c' ranges over G^-1 c + 2 Z^r; write w = 2u
    let shift: Vec<Rational> = (0..r)
        .map(|i| {
            let s: Rational = (0..r)
                .map(|j| &inv[i][j] * Rational::from_integer(c.representative[j].clone()))
                .sum();
            s / to_rat(2)
        })
        .collect();
    let q = quadratic_form_decomposition(l);

    // incumbent: round each coordinate to its center from the top down
    let mut u = vec![Rational::zero(); r];
    let mut value = Rational::zero();
    for i in (0..r).rev() {
        let mut mu = Rational::zero();
        for j in i + 1..r {
            mu -= &q[i][j] * &u[j];
        }
        let k = (&mu - &shift[i]).round();
        u[i] = &shift[i] + k;
        let dev = &u[i] - &mu;
        value += &q[i][i] * &dev * &dev;
    }

    let mut e = Enumerator { q: &q, shift: &shift, u, best: value, visited: 0, budget };
    e.search(r - 1, Rational::zero())?;
    // c'^T G^-1 c' = -(2u)^T(-G)(2u) = -4 * best
    Ok((to_rat(r as i64) - to_rat(4) * e.best) / to_rat(4))
}

/// Coset values for every characteristic class, in coset order.
pub fn coset_values(l: &IntLattice, budget: u64) -> Result<Vec<(CharCoset, Rational)>, LatticeError> {
    char_cosets(l)
        .into_par_iter()
        .map(|c| {
            let v = d_lower_bound(l, &c, budget)?;
            Ok((c, v))
        })
        .collect()
}
