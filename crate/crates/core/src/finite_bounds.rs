//! Certified lower and upper bounds on covering numbers of finite-dimensional
//! p-ellipsoids measured in a q-norm.
//!
//! The lower bound is the volume argument. The upper bound is the explicit
//! density construction: a random set of centers at radius
//! `ε₁ = ε·d ln d/(1 + d ln d)` followed by a maximal packing at
//! `ε₂ = ε − ε₁`, which gives
//!
//! ```text
//! log₂(N − 1) < d·log₂(κ(d)·(1+η)·B/ε),
//! κ(d) = (1 + 1/(d ln d))·(d ln d + d ln ln d + 1)^{1/d}
//! ```
//!
//! with `B = V_{p,q,d}·μ̄_d` (case FD1) or `B = d^{1/q−1/p}·μ̄_d` (case FD2,
//! only for p ≥ q), valid for ε up to an η-dependent admissible radius.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::constants::{unit_ball_log_volume, HolderExponent};
use crate::error::{invalid, EntropyError, Result};
use crate::numeric::ksum;
use crate::result::{EntropyKind, Interval};
use crate::sequences::SemiAxisModel;

/// `{x ∈ ℝ^d : Σ |x_n/μ_n|^p ≤ 1}` with non-increasing positive axes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteEllipsoid {
    p: HolderExponent,
    axes: Vec<f64>,
}

impl FiniteEllipsoid {
    pub fn new(p: HolderExponent, axes: Vec<f64>) -> Result<Self> {
        if axes.is_empty() {
            return Err(EntropyError::DimensionTooSmall { got: 0, min: 1 });
        }
        if let Some(bad) = axes.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
            return Err(invalid(format!("semi-axes must be positive and finite, got {bad}")));
        }
        if axes.windows(2).any(|w| w[1] > w[0]) {
            return Err(EntropyError::InvalidSequence("non-increasing".into()));
        }
        Ok(Self { p, axes })
    }

    /// Sorts the axes into non-increasing order first.
    pub fn from_unsorted(p: HolderExponent, mut axes: Vec<f64>) -> Result<Self> {
        axes.sort_by(|a, b| b.total_cmp(a));
        Self::new(p, axes)
    }

    /// The first `d` axes of a model.
    pub fn truncate(model: &SemiAxisModel, p: HolderExponent, d: u64) -> Result<Self> {
        Self::new(p, model.axes(d)?)
    }

    pub fn p(&self) -> HolderExponent {
        self.p
    }

    pub fn axes(&self) -> &[f64] {
        &self.axes
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    /// The smallest axis `μ_d`.
    pub fn min_axis(&self) -> f64 {
        self.axes[self.axes.len() - 1]
    }

    /// `Σ log₂ μ_n = d·log₂ μ̄_d`.
    pub fn log2_axis_product(&self) -> f64 {
        ksum(self.axes.iter().map(|a| a.log2()))
    }

    /// `‖x‖_{p,μ}`.
    pub fn gauge(&self, x: &[f64]) -> f64 {
        weighted_norm(x, &self.axes, self.p)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.gauge(x) <= 1.0
    }
}

/// `‖(x_n/μ_n)‖_p`.
pub fn weighted_norm(x: &[f64], axes: &[f64], p: HolderExponent) -> f64 {
    let it = x.iter().zip(axes).map(|(xi, mi)| (xi / mi).abs());
    lp_norm(it, p)
}

/// `‖v‖_p` of the absolute values yielded by `it`.
pub fn lp_norm(it: impl Iterator<Item = f64>, p: HolderExponent) -> f64 {
    if p.is_infinite() {
        return it.fold(0.0, |m, v| m.max(v.abs()));
    }
    let pv = p.value();
    if pv == 1.0 {
        return it.map(f64::abs).sum();
    }
    if pv == 2.0 {
        return it.map(|v| v * v).sum::<f64>().sqrt();
    }
    it.map(|v| v.abs().powf(pv)).sum::<f64>().powf(1.0 / pv)
}

/// Which estimate produced a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiniteCase {
    /// Volume-ratio upper bound, any p, q.
    #[serde(rename = "FD1")]
    Fd1,
    /// Hölder-inclusion upper bound, p ≥ q.
    #[serde(rename = "FD2")]
    Fd2,
    #[serde(rename = "volume-lower")]
    VolumeLower,
}

/// A bound on `log₂ N(ε)` with the data needed to audit it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteBound {
    /// Bound on `log₂ N` (never on `N − 1`).
    pub log2_bound: f64,
    pub kind: EntropyKind,
    /// Radii where the bound is asserted; all of `(0, ∞)` for lower bounds.
    pub valid_radius_range: Interval,
    pub case_tag: FiniteCase,
    /// `κ(d)` for upper bounds, 1 for the volume bound.
    pub kappa_used: f64,
    pub eta: Option<f64>,
    /// The raw bound on `log₂(N − 1)` for upper bounds.
    pub log2_n_minus_one: Option<f64>,
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("radius must be positive and finite, got {eps}")))
    }
}

/// `d·log₂ V_{p,q,d}`, computed from the log-volumes directly.
fn d_log2_volume_ratio(p: HolderExponent, q: HolderExponent, d: usize) -> Result<f64> {
    if p == q {
        return Ok(0.0);
    }
    Ok((unit_ball_log_volume(p, d)? - unit_ball_log_volume(q, d)?) / LN_2)
}

/// `max(0, d·log₂(V_{p,q,d}·μ̄_d/ε))`, valid for every ε > 0.
pub fn volume_lower_bound(e: &FiniteEllipsoid, q: HolderExponent, eps: f64) -> Result<FiniteBound> {
    check_eps(eps)?;
    let d = e.dim();
    let raw = e.log2_axis_product() + d_log2_volume_ratio(e.p, q, d)? - d as f64 * eps.log2();
    Ok(FiniteBound {
        log2_bound: raw.max(0.0),
        kind: EntropyKind::Lower,
        valid_radius_range: Interval::new(0.0, f64::INFINITY),
        case_tag: FiniteCase::VolumeLower,
        kappa_used: 1.0,
        eta: None,
        log2_n_minus_one: None,
    })
}

/// The explicit density constant κ(d); needs d ≥ 2 so that d ln d > 1.
pub fn kappa(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(EntropyError::DimensionTooSmall { got: d, min: 2 });
    }
    let df = d as f64;
    let dl = df * df.ln();
    Ok((1.0 + 1.0 / dl) * (dl + df * df.ln().ln() + 1.0).powf(1.0 / df))
}

/// `(0, η·d^{−(1/p−1/q)_+}·μ_d]` for FD1, `(0, η·d^{1/q−1/p}·μ_d]` for FD2.
pub fn admissible_radius(e: &FiniteEllipsoid, q: HolderExponent, eta: f64, case: FiniteCase) -> Result<Interval> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(invalid(format!("eta must be positive, got {eta}")));
    }
    let d = e.dim() as f64;
    let gap = e.p.reciprocal() - q.reciprocal();
    let hi = match case {
        FiniteCase::Fd1 => eta * d.powf(-gap.max(0.0)) * e.min_axis(),
        FiniteCase::Fd2 => {
            if e.p < q {
                return Err(invalid("case FD2 needs p ≥ q"));
            }
            eta * d.powf(-gap) * e.min_axis()
        }
        FiniteCase::VolumeLower => f64::INFINITY,
    };
    Ok(Interval::new(0.0, hi))
}

/// Smallest η that makes `eps` admissible for `case`.
pub fn minimal_eta(e: &FiniteEllipsoid, q: HolderExponent, eps: f64, case: FiniteCase) -> Result<f64> {
    let unit = admissible_radius(e, q, 1.0, case)?.hi;
    Ok(eps / unit)
}

/// The density upper bound for an explicit case.
pub fn density_upper_bound_case(
    e: &FiniteEllipsoid,
    q: HolderExponent,
    eps: f64,
    eta: f64,
    case: FiniteCase,
) -> Result<FiniteBound> {
    check_eps(eps)?;
    let d = e.dim();
    let k = kappa(d)?;
    let range = admissible_radius(e, q, eta, case)?;
    if eps > range.hi {
        return Err(EntropyError::RadiusOutOfRange { eps, upper: range.hi });
    }
    let df = d as f64;
    let d_log2_b = match case {
        FiniteCase::Fd1 => d_log2_volume_ratio(e.p, q, d)?,
        FiniteCase::Fd2 => df * (q.reciprocal() - e.p.reciprocal()) * df.log2(),
        FiniteCase::VolumeLower => return Err(invalid("the volume case has no upper bound")),
    } + e.log2_axis_product();
    let raw = df * (k.log2() + (1.0 + eta).log2() - eps.log2()) + d_log2_b;
    // log₂(2^raw + 1)
    let on_n = if raw > 0.0 { raw + (-raw).exp2().ln_1p() / LN_2 } else { raw.exp2().ln_1p() / LN_2 };
    Ok(FiniteBound {
        log2_bound: on_n,
        kind: EntropyKind::Upper,
        valid_radius_range: range,
        case_tag: case,
        kappa_used: k,
        eta: Some(eta),
        log2_n_minus_one: Some(raw),
    })
}

/// The tighter of the admissible density bounds (FD1 always, FD2 when p ≥ q).
pub fn density_upper_bound(e: &FiniteEllipsoid, q: HolderExponent, eps: f64, eta: f64) -> Result<FiniteBound> {
    let mut cases = vec![FiniteCase::Fd1];
    if e.p >= q {
        cases.push(FiniteCase::Fd2);
    }
    let mut best: Option<FiniteBound> = None;
    let mut first_err = None;
    for case in cases {
        match density_upper_bound_case(e, q, eps, eta, case) {
            Ok(b) => {
                if best.as_ref().map_or(true, |cur| b.log2_bound < cur.log2_bound) {
                    best = Some(b);
                }
            }
            Err(err) => {
                // Report the widest admissible interval when nothing fits.
                first_err = match (first_err, err) {
                    (Some(EntropyError::RadiusOutOfRange { upper: u0, .. }), EntropyError::RadiusOutOfRange { eps, upper }) => {
                        Some(EntropyError::RadiusOutOfRange { eps, upper: upper.max(u0) })
                    }
                    (None, err) => Some(err),
                    (prev, _) => prev,
                };
            }
        }
    }
    best.ok_or_else(|| first_err.unwrap_or_else(|| invalid("no admissible case")))
}

/// Density bound at its tightest: each admissible case with the smallest
/// η that admits `eps` (nudged up so rounding cannot push it out of range).
pub fn tightest_density_upper_bound(e: &FiniteEllipsoid, q: HolderExponent, eps: f64) -> Result<FiniteBound> {
    let mut cases = vec![FiniteCase::Fd1];
    if e.p >= q {
        cases.push(FiniteCase::Fd2);
    }
    let mut best: Option<FiniteBound> = None;
    for case in cases {
        let eta = minimal_eta(e, q, eps, case)? * (1.0 + 1e-12);
        let bound = density_upper_bound_case(e, q, eps, eta, case)?;
        if best.as_ref().map_or(true, |b| bound.log2_bound < b.log2_bound) {
            best = Some(bound);
        }
    }
    Ok(best.expect("FD1 is always tried"))
}
