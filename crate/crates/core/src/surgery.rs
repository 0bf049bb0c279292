//! Integer surgery on knots: the exact d-invariants of `S^3_n(K)` and the
//! two-sided bound for surgery on a knot in an arbitrary integer homology
//! sphere.

use crate::dcore::{int, lens_term, DProfile, Rational, SpinIndex};
use crate::knots::VSequence;

fn max_v(v: &VSequence, i: usize, n: usize) -> u64 {
    v.at(i).max(v.at(n - i))
}

/// `d(S^3_n(K), s_i) = ((2i - n)^2 - n) / 4n - 2 max(V_i, V_(n-i))`, for
/// `n >= 1`. Negative surgeries are obtained by mirroring.
pub fn niwu_value(v: &VSequence, n: usize, i: usize) -> Rational {
    assert!(n >= 1 && i < n);
    lens_term(i, n) - int(2 * max_v(v, i, n) as i64)
}

pub fn niwu_profile(v: &VSequence, n: usize) -> DProfile {
    assert!(n >= 1, "surgery coefficient must be positive");
    DProfile::new((0..n).map(|i| niwu_value(v, n, i)).collect())
        .expect("max(V_i, V_(n-i)) is symmetric in i <-> n - i")
}

/// Inputs for surgery on `K` in a homology sphere `Y`: `d(Y)`, the
/// exponent `N_Y` killing `HF_red(Y)`, and the V-sequence of `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryBoundInput {
    pub d_y: Rational,
    pub n_y: u64,
    pub v: VSequence,
    pub i: SpinIndex,
}

impl SurgeryBoundInput {
    pub fn n(&self) -> usize {
        self.i.modulus()
    }
}

/// `candidate - d(Y) - ((2i-n)^2 - n)/4n + 2 max(V_i, V_(n-i))`.
pub fn niwu_deficit(inp: &SurgeryBoundInput, candidate: &Rational) -> Rational {
    let n = inp.n();
    let i = inp.i.index();
    candidate - &inp.d_y - lens_term(i, n) + int(2 * max_v(&inp.v, i, n) as i64)
}

/// True iff the deficit lies in `[-2 N_Y, 0]`.
pub fn niwu_bound_check(inp: &SurgeryBoundInput, candidate: &Rational) -> bool {
    let deficit = niwu_deficit(inp, candidate);
    deficit <= int(0) && deficit >= int(-2 * inp.n_y as i64)
}
