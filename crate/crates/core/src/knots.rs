//! V-sequences `V_0, V_1, ...` of knots in `S^3`.
//!
//! These are taken as inputs. A valid sequence is nonnegative,
//! non-increasing, drops by at most one per step and is eventually zero.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VError {
    #[error("V-sequence violates V_i - 1 <= V_(i+1) <= V_i at i = {index} ({from} -> {to})")]
    MonotonicityViolation { index: usize, from: u64, to: u64 },
    #[error("cannot parse V-sequence entry {0:?}")]
    Parse(String),
}

/// Stored up to its last nonzero entry; every later `V_i` is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VSequence {
    values: Vec<u64>,
}

impl VSequence {
    /// Validates `values` followed by an infinite tail of zeros.
    pub fn from_values(values: &[u64]) -> Result<Self, VError> {
        let tail = values.iter().copied().chain(std::iter::once(0));
        for (index, (from, to)) in values.iter().copied().zip(tail.skip(1)).enumerate() {
            if to > from || to + 1 < from {
                return Err(VError::MonotonicityViolation { index, from, to });
            }
        }
        let len = values.iter().rposition(|&v| v != 0).map_or(0, |k| k + 1);
        Ok(VSequence { values: values[..len].to_vec() })
    }

    /// `V_i`, zero past the stored prefix.
    pub fn at(&self, i: usize) -> u64 {
        self.values.get(i).copied().unwrap_or(0)
    }

    /// Stored prefix (no trailing zeros).
    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

impl fmt::Display for VSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.values.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for VSequence {
    type Err = VError;

    /// Comma separated nonnegative integers, e.g. `2,1,1,0`.
    fn from_str(s: &str) -> Result<Self, VError> {
        let values = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| VError::Parse(t.trim().to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        VSequence::from_values(&values)
    }
}

pub fn v_from_values(values: &[u64]) -> Result<VSequence, VError> {
    VSequence::from_values(values)
}

pub fn v_at(v: &VSequence, i: usize) -> u64 {
    v.at(i)
}

pub fn v_unknot() -> VSequence {
    VSequence { values: vec![] }
}

/// Right-handed trefoil: `V_0 = 1`, all others zero.
pub fn v_trefoil() -> VSequence {
    VSequence { values: vec![1] }
}

/// `V_i(T_(2,2g+1)) = ceil(max(g - i, 0) / 2)`.
#[cfg(feature = "experimental")]
pub fn v_torus_2(g: u64) -> VSequence {
    let values: Vec<u64> = (0..g).map(|i| (g - i).div_ceil(2)).collect();
    VSequence::from_values(&values).expect("torus knot V-sequence is valid")
}
