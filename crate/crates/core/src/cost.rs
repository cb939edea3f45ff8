//! Travel costs: non-negative integers extended with an absorbing infinity.

use std::fmt;
use std::iter::Sum;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest finite value a cost or multiplicity may take.
pub const MAX_FINITE: u64 = i64::MAX as u64;

/// A travel cost. Every finite value orders below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Cost {
    Finite(u64),
    #[default]
    Infinite,
}

impl Cost {
    pub const ZERO: Cost = Cost::Finite(0);

    pub fn finite(value: u64) -> Result<Cost> {
        if value > MAX_FINITE {
            return Err(Error::Overflow("cost exceeds 2^63-1"));
        }
        Ok(Cost::Finite(value))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    pub fn value(self) -> Option<u64> {
        match self {
            Cost::Finite(v) => Some(v),
            Cost::Infinite => None,
        }
    }

    pub fn checked_add(self, other: Cost) -> Result<Cost> {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => match a.checked_add(b) {
                Some(s) if s <= MAX_FINITE => Ok(Cost::Finite(s)),
                _ => Err(Error::Overflow("cost addition")),
            },
            _ => Ok(Cost::Infinite),
        }
    }

    /// `times` copies of this cost. Zero copies of an infinite edge cost nothing.
    pub fn checked_mul(self, times: u64) -> Result<Cost> {
        if times == 0 {
            return Ok(Cost::ZERO);
        }
        match self {
            Cost::Finite(a) => match a.checked_mul(times) {
                Some(p) if p <= MAX_FINITE => Ok(Cost::Finite(p)),
                _ => Err(Error::Overflow("cost multiplication")),
            },
            Cost::Infinite => Ok(Cost::Infinite),
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(v) => write!(f, "{v}"),
            Cost::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Cost {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(Cost::Infinite);
        }
        let v: u64 = s
            .parse()
            .map_err(|_| format!("expected a non-negative integer or `inf`, got `{s}`"))?;
        Cost::finite(v).map_err(|e| e.to_string())
    }
}

/// Sums are overflow-checked; use [`try_sum`] when overflow must be reported.
impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        try_sum(iter).expect("cost sum overflowed")
    }
}

pub fn try_sum<I: IntoIterator<Item = Cost>>(iter: I) -> Result<Cost> {
    iter.into_iter().try_fold(Cost::ZERO, Cost::checked_add)
}
