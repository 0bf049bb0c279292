//! Heegaard Floer d-invariant profiles and the PL-sphere obstruction for
//! 4-manifolds homotopy equivalent to `S^2`.
//!
//! * [`dcore`]: exact rationals, `Z/n` indices, labelled and raw profiles.
//! * [`families`]: lens spaces `L(n,1)`, the bundles `Q_m`, the boundaries `M_p`.
//! * [`knots`], [`surgery`]: V-sequences and d-invariants of integer surgeries.
//! * [`obstruct`]: the consecutive-difference test and the spine verdict.
//! * [`lattice`]: characteristic-vector maxima, an independent check on lens values.
//! * [`pi1`]: Brieskorn presentations and coset enumeration.
//! * [`format`], [`report`]: file formats and CLI output.

pub mod dcore;
pub mod families;
pub mod format;
pub mod knots;
pub mod lattice;
pub mod obstruct;
pub mod pi1;
pub mod report;
pub mod surgery;

pub use dcore::{DProfile, RawProfile, Rational, SpinIndex};
pub use obstruct::{verdict, Overall, SpineVerdict};
