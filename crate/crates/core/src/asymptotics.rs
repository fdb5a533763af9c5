//! Regime classification for power-law ellipsoids, leading and second-order
//! asymptotic evaluators, and the effective-dimension surrogate.
//!
//! The effective dimension here is the computable surrogate
//! `max{d : d^{1/q−1/p}·μ_d > ε}`. The sharper definitions through `N(ε)`
//! itself are not computable and agree with it to leading order.

use std::cmp::Ordering;
use std::f64::consts::LN_2;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::constants::{gamma_pq, HolderExponent};
use crate::error::{invalid, EntropyError, Result};
use crate::numeric::{simplest_rational, KahanSum};
use crate::sequences::{ModelVariant, SemiAxisModel};

/// Default cap on dimensions scanned by the estimators.
pub const DIMENSION_CAP: u64 = 100_000_000;

/// The five cases of the compactness/scaling classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegimeCase {
    /// `q < p/(pb+1)`: not compact.
    #[serde(rename = "NonCompact_a")]
    NonCompactA,
    /// On the critical line with `liminf n·μ_n^{1/b} > 0`: not compact.
    #[serde(rename = "NonCompact_b")]
    NonCompactB,
    /// On the critical line with `Σ μ_n^{1/b} < ∞`.
    #[serde(rename = "Critical_ii")]
    CriticalIi,
    /// `p/(pb+1) < q ≤ p`: two-sided constants.
    #[serde(rename = "Compact_iii")]
    CompactIii,
    /// `p < q`: lower constant and an order-level upper bound.
    #[serde(rename = "Compact_iv")]
    CompactIv,
}

impl RegimeCase {
    pub fn as_str(self) -> &'static str {
        match self {
            RegimeCase::NonCompactA => "NonCompact_a",
            RegimeCase::NonCompactB => "NonCompact_b",
            RegimeCase::CriticalIi => "Critical_ii",
            RegimeCase::CompactIii => "Compact_iii",
            RegimeCase::CompactIv => "Compact_iv",
        }
    }

    pub fn is_compact(self) -> bool {
        !matches!(self, RegimeCase::NonCompactA | RegimeCase::NonCompactB)
    }
}

impl fmt::Display for RegimeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A classification with its analytic constants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Regime {
    pub case: RegimeCase,
    /// `b + 1/p − 1/q`; exactly zero on the critical line.
    pub b_star: f64,
    pub lower_const: Option<f64>,
    pub upper_const: Option<f64>,
    /// The sharp constant `(b/ln2)^b`, present iff `p = q = 2`.
    pub exact_const: Option<f64>,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Sign of `b + 1/p − 1/q` in exact rational arithmetic, with every input
/// read as its simplest rational.
pub fn b_star_sign(p: HolderExponent, q: HolderExponent, b: f64) -> Result<Ordering> {
    check_positive("b", b)?;
    let b = simplest_rational(b).ok_or_else(|| invalid("b is not finite"))?;
    let s: BigRational = b + p.reciprocal_exact() - q.reciprocal_exact();
    Ok(if s.is_zero() {
        Ordering::Equal
    } else if s.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    })
}

/// `(b/(b + 1/p − 1/q))^{1/q − 1/p}`.
pub fn gamma_pqb(p: HolderExponent, q: HolderExponent, b: f64) -> f64 {
    let e = q.reciprocal() - p.reciprocal();
    (b / (b - e)).powf(e)
}

/// Classifies `(p, q, b)` given the two tail flags that matter only on the
/// critical line `q = p/(pb+1)` (read as `1/b` when `p = ∞`).
pub fn classify(
    p: HolderExponent,
    q: HolderExponent,
    b: f64,
    tail_summable_inv_b: bool,
    liminf_n_mu_pos: bool,
) -> Result<Regime> {
    let sign = b_star_sign(p, q, b)?;
    let b_star = match sign {
        Ordering::Equal => 0.0,
        _ => b + p.reciprocal() - q.reciprocal(),
    };
    let empty = |case| Regime { case, b_star, lower_const: None, upper_const: None, exact_const: None };
    let big_gamma = gamma_pq(p, q);
    let lower = || big_gamma * (b / LN_2).powf(b_star);
    Ok(match sign {
        Ordering::Less => empty(RegimeCase::NonCompactA),
        Ordering::Equal => match (tail_summable_inv_b, liminf_n_mu_pos) {
            (true, true) => {
                return Err(invalid("a summable tail forces n·μ_n^(1/b) → 0; the flags contradict each other"))
            }
            (false, true) => empty(RegimeCase::NonCompactB),
            (true, false) => Regime { lower_const: Some(big_gamma), ..empty(RegimeCase::CriticalIi) },
            (false, false) => {
                return Err(EntropyError::UnsupportedCorner(format!(
                    "q = p/(pb+1) with n·μ_n^(1/b) → 0 and Σ μ_n^(1/b) = ∞ (p = {p}, q = {q}, b = {b})"
                )))
            }
        },
        Ordering::Greater if q <= p => Regime {
            lower_const: Some(lower()),
            upper_const: Some(gamma_pqb(p, q, b) * (b / LN_2 + 1.0).powf(b_star)),
            exact_const: (p == HolderExponent::TWO && q == HolderExponent::TWO).then(|| (b / LN_2).powf(b)),
            ..empty(RegimeCase::CompactIii)
        },
        Ordering::Greater => Regime { lower_const: Some(lower()), ..empty(RegimeCase::CompactIv) },
    })
}

/// Classifies an infinite model from its leading power law. Every
/// supported family has `n·μ_n^{1/b} → c^{1/b} > 0`, so on the critical
/// line it is never compact.
pub fn classify_model(model: &SemiAxisModel, p: HolderExponent, q: HolderExponent) -> Result<Regime> {
    let pl = model.leading_power_law().ok_or_else(|| {
        EntropyError::WrongRegime("a finite-dimensional ellipsoid is compact for every p, q".into())
    })?;
    classify(p, q, pl.b, false, true)
}

fn non_compact(case: RegimeCase) -> EntropyError {
    EntropyError::NonCompact { case: case.as_str().to_string() }
}

/// Leading-order entropy band for `μ_n = c·n^{-b}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalBand {
    pub case: RegimeCase,
    pub b_star: f64,
    /// `(b/ln2)·(Γ_{p,q}·c/ε)^{1/b*}`.
    pub lower: f64,
    /// `(b/ln2 + 1)·(γ_{p,q,b}·c/ε)^{1/b*}`, only when `q ≤ p`.
    pub upper: Option<f64>,
    /// For `p < q`: the growth order of the upper bound with its unknown
    /// constant set to 1, `ε^{-1/b*}·log₂log₂(1/ε)` for `b ≥ 1` and
    /// `ε^{-1/b*}·log₂^{1−b}(1/ε)` for `b < 1`. The log factor is floored at 1.
    pub upper_order: Option<f64>,
    /// False whenever the upper edge is only an order of growth.
    pub upper_constant_confirmed: bool,
}

pub fn canonical_band(p: HolderExponent, q: HolderExponent, b: f64, c: f64, eps: f64) -> Result<CanonicalBand> {
    check_positive("c", c)?;
    check_positive("radius", eps)?;
    let regime = classify(p, q, b, false, true)?;
    let bs = regime.b_star;
    let lower = (b / LN_2) * (gamma_pq(p, q) * c / eps).powf(1.0 / bs);
    match regime.case {
        RegimeCase::CompactIii => Ok(CanonicalBand {
            case: regime.case,
            b_star: bs,
            lower,
            upper: Some((b / LN_2 + 1.0) * (gamma_pqb(p, q, b) * c / eps).powf(1.0 / bs)),
            upper_order: None,
            upper_constant_confirmed: true,
        }),
        RegimeCase::CompactIv => {
            let l = (1.0 / eps).log2();
            let factor = if b >= 1.0 { l.max(1.0).log2() } else { l.max(1.0).powf(1.0 - b) };
            Ok(CanonicalBand {
                case: regime.case,
                b_star: bs,
                lower,
                upper: None,
                upper_order: Some(eps.powf(-1.0 / bs) * factor.max(1.0)),
                upper_constant_confirmed: false,
            })
        }
        case => Err(non_compact(case)),
    }
}

/// `(b·c^{1/b}/ln2)·ε^{-1/b}`, the sharp Hilbert-space leading term.
pub fn hilbert_leading(b: f64, c: f64, eps: f64) -> Result<f64> {
    check_positive("b", b)?;
    check_positive("c", c)?;
    check_positive("radius", eps)?;
    Ok(b * c.powf(1.0 / b) / LN_2 * eps.powf(-1.0 / b))
}

/// Two-term Hilbert expansion for `μ_n = c1·n^{-α1} + c2·n^{-α2}`, valid
/// for `α1 < α2 < α1 + 1/2`.
pub fn hilbert_second_order(alpha1: f64, alpha2: f64, c1: f64, c2: f64, eps: f64) -> Result<f64> {
    check_positive("alpha1", alpha1)?;
    check_positive("c1", c1)?;
    check_positive("radius", eps)?;
    if !(alpha1 < alpha2 && alpha2 < alpha1 + 0.5) || !c2.is_finite() {
        return Err(invalid(format!(
            "second-order expansion needs alpha1 < alpha2 < alpha1 + 1/2 and finite c2, got {alpha1}, {alpha2}, {c2}"
        )));
    }
    let a = alpha1 - alpha2 + 1.0;
    let second = c2 * c1.powf((1.0 - alpha2) / alpha1) / (LN_2 * a) * eps.powf(-a / alpha1);
    Ok(hilbert_leading(alpha1, c1, eps)? + second)
}

/// `Σ_{n ≤ d*} log₂(μ_n/ε)` with `d* = #{n : μ_n > ε}`. Meant for `p = q = 2`.
/// Using ε as the reference level instead of `μ_{d*}` shifts the sum by O(1).
pub fn entropy_estimator(model: &SemiAxisModel, eps: f64) -> Result<f64> {
    check_positive("radius", eps)?;
    let d = model.counting(eps, 1)?;
    if d > DIMENSION_CAP {
        return Err(EntropyError::ScanCapExceeded { cap: DIMENSION_CAP });
    }
    let le = eps.log2();
    let mut acc = KahanSum::new();
    for n in 1..=d {
        acc.add(model.log2_axis(n)? - le);
    }
    Ok(acc.value())
}

/// First index from which `d ↦ d^e·μ_d` is non-increasing.
fn surrogate_monotone_from(model: &SemiAxisModel, e: f64) -> Result<u64> {
    if e <= 0.0 {
        return Ok(1);
    }
    match model.variant() {
        ModelVariant::Canonical(_) => Ok(1),
        ModelVariant::Tabulated(tab) => Ok(tab.values.len() as u64 + 1),
        ModelVariant::TwoTerm(tt) => {
            if tt.c2 >= 0.0 {
                return Ok(1);
            }
            // d/dx [c1 x^{e−α1} + c2 x^{e−α2}] < 0 once
            // x^{α2−α1} > |c2|(α2−e) / (c1(α1−e)).
            let x = (-tt.c2 * (tt.alpha2 - e) / (tt.c1 * (tt.alpha1 - e))).powf(1.0 / (tt.alpha2 - tt.alpha1));
            let from = x.ceil() + 1.0;
            if !(from <= DIMENSION_CAP as f64) {
                return Err(EntropyError::ScanCapExceeded { cap: DIMENSION_CAP });
            }
            Ok(from as u64)
        }
    }
}

/// `max{d : d^{1/q−1/p}·μ_d > ε}`, or 0 when no dimension qualifies.
pub fn effective_dimension(model: &SemiAxisModel, p: HolderExponent, q: HolderExponent, eps: f64) -> Result<u64> {
    check_positive("radius", eps)?;
    let e = q.reciprocal() - p.reciprocal();
    let le = eps.log2();
    let above = |d: u64| -> Result<bool> { Ok(e * (d as f64).log2() + model.log2_axis(d)? > le) };
    if let Some(len) = model.finite_len() {
        let mut best = 0;
        for d in 1..=len {
            if above(d)? {
                best = d;
            }
        }
        return Ok(best);
    }
    let regime = classify_model(model, p, q)?;
    if !regime.case.is_compact() {
        return Err(non_compact(regime.case));
    }
    let from = surrogate_monotone_from(model, e)?;
    let mut best = 0;
    for d in 1..from {
        if above(d)? {
            best = d;
        }
    }
    if !above(from)? {
        return Ok(best);
    }
    // Monotone from here on: gallop, then bisect.
    let (mut lo, mut hi) = (from, from.saturating_mul(2));
    while above(hi)? {
        if hi >= DIMENSION_CAP {
            return Err(EntropyError::ScanCapExceeded { cap: DIMENSION_CAP });
        }
        lo = hi;
        hi = hi.saturating_mul(2).min(DIMENSION_CAP);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if above(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// `Σ_{n ≤ d} log₂(μ_n/μ_d)` for the two-term model next to its expansion
/// `α1·d/ln2 + (1/a − 1)·c2/(c1·ln2)·d^a` with `a = α1 − α2 + 1`.
/// Returns `(exact, approx)`.
pub fn sum_expansion_check(alpha1: f64, alpha2: f64, c1: f64, c2: f64, d: u64) -> Result<(f64, f64)> {
    let a = alpha1 - alpha2 + 1.0;
    if !(a > 0.0) {
        return Err(invalid(format!("expansion needs alpha1 - alpha2 + 1 > 0, got {a}")));
    }
    if d == 0 {
        return Err(invalid("expansion needs d ≥ 1"));
    }
    let model = SemiAxisModel::two_term(c1, c2, alpha1, alpha2)?;
    let exact = model.log_product(d)? - d as f64 * model.log2_axis(d)?;
    let df = d as f64;
    let approx = alpha1 * df / LN_2 + (1.0 / a - 1.0) * c2 / (c1 * LN_2) * df.powf(a);
    Ok((exact, approx))
}

/// Two-term asymptotic inverse of `g = c1·u^{-α1} + c2·u^{-α2}` for small g.
pub fn invert_series(alpha1: f64, alpha2: f64, c1: f64, c2: f64, g: f64) -> Result<f64> {
    check_positive("alpha1", alpha1)?;
    check_positive("c1", c1)?;
    check_positive("g", g)?;
    if !(alpha1 < alpha2) && c2 != 0.0 {
        return Err(invalid("series inversion needs alpha1 < alpha2"));
    }
    let lead = c1.powf(1.0 / alpha1) * g.powf(-1.0 / alpha1);
    if c2 == 0.0 {
        return Ok(lead);
    }
    let a = alpha1 - alpha2 + 1.0;
    Ok(lead + c2 * c1.powf((1.0 - alpha2) / alpha1) / alpha1 * g.powf(-a / alpha1))
}
