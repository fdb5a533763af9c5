//! Result types shared by every module.

use serde::{Deserialize, Serialize};

/// What an entropy number means.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyKind {
    Exact,
    /// Certified lower bound.
    Lower,
    /// Certified upper bound.
    Upper,
    /// Leading-order asymptotic value, not a bound.
    Asymptotic,
}

impl EntropyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntropyKind::Exact => "exact",
            EntropyKind::Lower => "lower",
            EntropyKind::Upper => "upper",
            EntropyKind::Asymptotic => "asymptotic",
        }
    }
}

/// An entropy value in bits at radius `epsilon`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyResult {
    pub bits: f64,
    pub kind: EntropyKind,
    pub epsilon: f64,
}

impl EntropyResult {
    pub fn new(bits: f64, kind: EntropyKind, epsilon: f64) -> Self {
        Self { bits, kind, epsilon }
    }

    pub fn nats(&self) -> f64 {
        self.bits * std::f64::consts::LN_2
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn scale(&self, s: f64) -> Self {
        debug_assert!(s >= 0.0);
        Self { lo: self.lo * s, hi: self.hi * s }
    }

    pub fn add(&self, other: &Interval) -> Self {
        Self { lo: self.lo + other.lo, hi: self.hi + other.hi }
    }

    /// Widen outward by a relative amount, to absorb float rounding.
    pub(crate) fn pad(&self, rel: f64) -> Self {
        Self { lo: self.lo - self.lo.abs() * rel, hi: self.hi + self.hi.abs() * rel }
    }
}
