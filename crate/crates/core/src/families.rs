//! Closed-form profiles: lens spaces `L(n,1)`, circle bundles `Q_m` over
//! `RP^2`, and the boundaries `M_p = Q_{-4p-3} # -Y_p`.

use num_integer::Integer;
use thiserror::Error;

use crate::dcore::{int, lens_term, rat, DProfile, ProfileError, RawProfile, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("d(Y_p) must be an even integer, got {0}")]
    OddDYp(i64),
    #[error("order must be positive")]
    ZeroOrder,
    #[error("Q_(k,m) needs k >= 2, got k = {0}")]
    BadK(i64),
    #[error("no closed form for the d-invariants of Q_(k,m) with k = {0} > 2")]
    NoClosedForm(i64),
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H1Type {
    /// `Z/2 + Z/2`
    KleinFour,
    /// `Z/4`
    Cyclic4,
}

/// The circle bundle over `RP^2` with Euler number `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QmDescriptor {
    pub m: i64,
    pub h1_type: H1Type,
}

impl QmDescriptor {
    pub fn new(m: i64) -> Self {
        let h1_type = if m.is_even() { H1Type::KleinFour } else { H1Type::Cyclic4 };
        QmDescriptor { m, h1_type }
    }
}

/// Parameters of `M_p`. `d(Y_p)` enters only through its value, which
/// must be even.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MpDescriptor {
    p: i64,
    d_yp: i64,
}

impl MpDescriptor {
    pub fn new(p: i64, d_yp: i64) -> Result<Self, FamilyError> {
        if d_yp.is_odd() {
            return Err(FamilyError::OddDYp(d_yp));
        }
        Ok(MpDescriptor { p, d_yp })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn d_yp(&self) -> i64 {
        self.d_yp
    }

    /// Euler number of the `Q_m` summand.
    pub fn qm(&self) -> QmDescriptor {
        QmDescriptor::new(-4 * self.p - 3)
    }
}

/// `d(L(n,1), s_i) = ((2i - n)^2 - n) / 4n`.
pub fn lens_n1_profile(n: usize) -> Result<DProfile, FamilyError> {
    if n == 0 {
        return Err(FamilyError::ZeroOrder);
    }
    Ok(DProfile::new((0..n).map(|i| lens_term(i, n)).collect())?)
}

/// The four d-invariants `{(m+2)/4, (m-2)/4, 0, 0}` of `Q_m`.
///
/// For odd `m` the nonzero values sit on the two self-conjugate structures
/// and the zeros form a conjugate pair: the order-4 residues `(3/4, 0, 7/4,
/// 0)` rule out any other placement. For even `m` every structure is
/// self-conjugate.
pub fn qm_profile(m: i64) -> RawProfile {
    let entries = vec![
        ("q0".to_string(), rat(m + 2, 4)),
        ("q1".to_string(), rat(m - 2, 4)),
        ("q2".to_string(), int(0)),
        ("q3".to_string(), int(0)),
    ];
    let conj = if m.is_odd() {
        vec![("q2".to_string(), "q3".to_string())]
    } else {
        vec![]
    };
    RawProfile::new(4, entries, &conj, false).expect("Q_m profile is well formed")
}

/// The order-4 profile of `M_p` under the spin^c labelling fixed by the
/// mod-2 residues; `s_0` and `s_2` trade places with the parity of `p`.
pub fn mp_profile(d: MpDescriptor) -> DProfile {
    let base = -int(d.d_yp);
    let p = d.p;
    let a = &base - rat(4 * p + 1, 4);
    let b = &base - rat(4 * p + 5, 4);
    let (s0, s2) = if p.is_odd() { (a, b) } else { (b, a) };
    DProfile::new(vec![s0, base.clone(), s2, base]).expect("M_p profile is symmetric")
}

/// `(|H^2(Q_(k,m))|, H^2 cyclic?)`, i.e. `(k^2, gcd(k, m) == 1)`.
pub fn qkm_structure(k: i64, m: i64) -> Result<(i64, bool), FamilyError> {
    if k < 2 {
        return Err(FamilyError::BadK(k));
    }
    Ok((k * k, k.gcd(&m) == 1))
}

/// d-invariants of `Q_(k,m)`; only `k = 2` (that is, `Q_m`) has a formula.
pub fn qkm_profile(k: i64, m: i64) -> Result<RawProfile, FamilyError> {
    match k {
        2 => Ok(qm_profile(m)),
        k if k < 2 => Err(FamilyError::BadK(k)),
        k => Err(FamilyError::NoClosedForm(k)),
    }
}

/// Multiset of a raw profile's values, sorted.
pub fn value_multiset(raw: &RawProfile) -> Vec<Rational> {
    raw.sorted_values()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcore::{matches_residues, mod2, residue_table, shift_by_even};

    fn sorted(mut v: Vec<Rational>) -> Vec<Rational> {
        v.sort();
        v
    }

    #[test]
    fn lens_values() {
        let p = lens_n1_profile(4).unwrap();
        assert_eq!(p.values(), &[rat(3, 4), int(0), rat(-1, 4), int(0)]);
        assert_eq!(lens_n1_profile(1).unwrap().values(), &[int(0)]);
        assert_eq!(
            lens_n1_profile(5).unwrap().values(),
            &[int(1), rat(1, 5), rat(-1, 5), rat(-1, 5), rat(1, 5)]
        );
        assert_eq!(lens_n1_profile(0), Err(FamilyError::ZeroOrder));
    }

    #[test]
    fn lens_matches_residues() {
        for n in 1..=32 {
            assert!(matches_residues(&lens_n1_profile(n).unwrap()), "n = {n}");
        }
    }

    #[test]
    fn qm_multisets() {
        assert_eq!(
            value_multiset(&qm_profile(5)),
            sorted(vec![rat(7, 4), rat(3, 4), int(0), int(0)])
        );
        assert_eq!(
            value_multiset(&qm_profile(-3)),
            sorted(vec![rat(-1, 4), rat(-5, 4), int(0), int(0)])
        );
        assert_eq!(value_multiset(&qm_profile(2)), sorted(vec![int(1), int(0), int(0), int(0)]));
    }

    #[test]
    fn qm_always_two_zeros_and_conj_shape() {
        for m in -40..=40 {
            let q = qm_profile(m);
            let zeros = q.values().iter().filter(|v| **v == int(0)).count();
            // m = +-2 make one of the nonzero slots vanish too
            if m.abs() == 2 {
                assert_eq!(zeros, 3);
            } else {
                assert_eq!(zeros, 2, "m = {m}");
            }
            let fixed = (0..4).filter(|&k| q.conj(k) == k).count();
            assert_eq!(fixed, if m % 2 == 0 { 4 } else { 2 });
            // the swapped pair carries the zero values
            for k in 0..4 {
                if q.conj(k) != k {
                    assert_eq!(q.value(k), &int(0));
                }
            }
            assert_eq!(
                QmDescriptor::new(m).h1_type,
                if m % 2 == 0 { H1Type::KleinFour } else { H1Type::Cyclic4 }
            );
        }
    }

    #[test]
    fn mp_examples() {
        let mp = |p, d| mp_profile(MpDescriptor::new(p, d).unwrap());
        assert_eq!(mp(-1, 0).values(), &[rat(3, 4), int(0), rat(-1, 4), int(0)]);
        assert_eq!(mp(0, 0).values(), &[rat(-5, 4), int(0), rat(-1, 4), int(0)]);
        assert_eq!(mp(1, 0).values(), &[rat(-5, 4), int(0), rat(-9, 4), int(0)]);
        assert_eq!(mp(-2, 0).values(), &[rat(3, 4), int(0), rat(7, 4), int(0)]);
        assert_eq!(MpDescriptor::new(1, 1), Err(FamilyError::OddDYp(1)));
    }

    #[test]
    fn mp_residues_and_qm_multiset() {
        for p in -20..=20 {
            for d in [-4, -2, 0, 2, 4] {
                let desc = MpDescriptor::new(p, d).unwrap();
                let prof = mp_profile(desc);
                assert_eq!(
                    prof.values().iter().map(mod2).collect::<Vec<_>>(),
                    residue_table(4)
                );
                // d(M_p) = d(Q_{-4p-3}) - d(Y_p) as multisets
                let shifted: Vec<Rational> = sorted(
                    qm_profile(desc.qm().m).values().iter().map(|v| v - int(d)).collect(),
                );
                assert_eq!(prof.sorted_values(), shifted, "p = {p}, d = {d}");
                assert_eq!(prof, shift_by_even(&mp_profile(MpDescriptor::new(p, 0).unwrap()), d).unwrap());
            }
        }
    }

    #[test]
    fn mp_parity_swaps_self_conjugate_slots() {
        // The even-p profile is the odd-p formula with s_0 and s_2 exchanged.
        let odd_formula = |p: i64| [rat(-(4 * p + 1), 4), int(0), rat(-(4 * p + 5), 4), int(0)];
        for p in -10i64..=10 {
            let prof = mp_profile(MpDescriptor::new(p, 0).unwrap());
            let f = odd_formula(p);
            if p % 2 != 0 {
                assert_eq!(prof.values(), &f);
            } else {
                assert_eq!(prof.values(), &[f[2].clone(), f[1].clone(), f[0].clone(), f[3].clone()]);
            }
        }
    }

    #[test]
    fn qkm() {
        assert_eq!(qkm_structure(2, 5), Ok((4, true)));
        assert_eq!(qkm_structure(3, 6), Ok((9, false)));
        assert_eq!(qkm_structure(2, 4), Ok((4, false)));
        assert_eq!(qkm_structure(1, 4), Err(FamilyError::BadK(1)));
        assert_eq!(qkm_profile(3, 1), Err(FamilyError::NoClosedForm(3)));
        assert_eq!(qkm_profile(2, 5).unwrap(), qm_profile(5));
    }
}
