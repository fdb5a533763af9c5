//! Certified upper bounds for infinite-dimensional ellipsoids through block
//! decomposition, and two-sided bounds for mixed ellipsoids.
//!
//! A block decomposition splits the coordinates into finite blocks plus an
//! infinite residual. Covering each block at radius `ρ_j` and bounding the
//! residual by a tail radius `α` covers the whole ellipsoid at the
//! q-combination of the weighted radii, at the price of `log₂ #Ω` extra bits
//! for the finite weight set Ω.

use std::cmp::Ordering;
use std::f64::consts::LN_2;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{b_star_sign, classify_model, RegimeCase};
use crate::constants::HolderExponent;
use crate::error::{invalid, EntropyError, Result};
use crate::finite_bounds::{lp_norm, tightest_density_upper_bound, FiniteCase, FiniteEllipsoid};
use crate::numeric::{log2_biguint, KahanSum};
use crate::result::{EntropyKind, EntropyResult};
use crate::sequences::SemiAxisModel;

/// Largest first block `infinite_upper_bound` will materialize.
pub const BLOCK_DIM_CAP: u64 = 10_000_000;

/// Share of `ε^q` given to the tail by default (equal q-power split).
pub const DEFAULT_TAIL_SHARE: f64 = 0.5;

/// Rogers-type density constant used when none is given. The covering
/// theorem only asserts that some constant exists, so every number that
/// depends on it is parametric.
pub const DEFAULT_ROGERS_K: f64 = 1024.0;

/// Relative slack that keeps rounded radii on the admissible side.
const ROUND_SLACK: f64 = 1e-12;

/// How the residual `(x_{d+1}, x_{d+2}, …)` is bounded in the q-norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TailCase {
    /// `q ≥ p`: the residual lies in the `μ_{d+1}` ball.
    I,
    /// `p/(pb+1) < q < p`: Hölder with exponent `r = 1/(1/q − 1/p)`.
    II,
    /// `q = p/(pb+1)`: Hölder with `r = 1/b`, needs `Σ μ_n^{1/b} < ∞`.
    III,
}

/// A decomposition into `k` blocks plus a tail, with its weight set Ω.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockPlan {
    block_sizes: Vec<u64>,
    inner_radii: Vec<f64>,
    omega: Vec<Vec<f64>>,
    tail_case: TailCase,
    tail_radius: f64,
}

impl BlockPlan {
    pub fn new(
        block_sizes: Vec<u64>,
        inner_radii: Vec<f64>,
        omega: Vec<Vec<f64>>,
        tail_case: TailCase,
        tail_radius: f64,
    ) -> Result<Self> {
        let k = block_sizes.len();
        if k == 0 || inner_radii.len() != k {
            return Err(invalid(format!("need k ≥ 1 blocks with one radius each, got {k} and {}", inner_radii.len())));
        }
        if block_sizes.contains(&0) {
            return Err(invalid("block sizes must be positive"));
        }
        if inner_radii.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
            return Err(invalid("inner radii must be positive and finite"));
        }
        if !(tail_radius >= 0.0 && tail_radius.is_finite()) {
            return Err(invalid(format!("tail radius must be finite and non-negative, got {tail_radius}")));
        }
        if omega.is_empty() {
            return Err(invalid("Ω must hold at least one weight vector"));
        }
        for w in &omega {
            if w.len() != k + 1 || w.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
                return Err(invalid(format!("weight vectors need {} non-negative entries", k + 1)));
            }
        }
        Ok(Self { block_sizes, inner_radii, omega, tail_case, tail_radius })
    }

    /// One block, `Ω = {(1, 1)}`.
    pub fn single(d: u64, rho: f64, tail_case: TailCase, tail_radius: f64) -> Result<Self> {
        Self::new(vec![d], vec![rho], vec![vec![1.0, 1.0]], tail_case, tail_radius)
    }

    pub fn block_sizes(&self) -> &[u64] {
        &self.block_sizes
    }

    pub fn inner_radii(&self) -> &[f64] {
        &self.inner_radii
    }

    pub fn omega(&self) -> &[Vec<f64>] {
        &self.omega
    }

    pub fn tail_case(&self) -> TailCase {
        self.tail_case
    }

    pub fn tail_radius(&self) -> f64 {
        self.tail_radius
    }

    pub fn total_dim(&self) -> u64 {
        self.block_sizes.iter().sum()
    }
}

/// `max_ω ‖(ω_1ρ_1, …, ω_kρ_k, ω_{k+1}α)‖_q`.
pub fn combined_radius(plan: &BlockPlan, q: HolderExponent) -> f64 {
    plan.omega
        .iter()
        .map(|w| {
            let radii = plan.inner_radii.iter().chain(std::iter::once(&plan.tail_radius));
            lp_norm(w.iter().zip(radii).map(|(a, b)| a * b), q)
        })
        .fold(0.0, f64::max)
}

/// `(Σ_{n>d} μ_n^r)^{1/r}` from the certified upper end of the tail sum.
fn holder_tail(model: &SemiAxisModel, d: u64, r: f64) -> Result<f64> {
    Ok(model.tail_power_sum(d, r)?.hi.max(0.0).powf(1.0 / r))
}

fn case_i_tail(model: &SemiAxisModel, d: u64) -> Result<f64> {
    match model.finite_len() {
        Some(len) if d >= len => Ok(0.0),
        _ => model.axis(d + 1),
    }
}

fn holder_exponent(p: HolderExponent, q: HolderExponent) -> f64 {
    1.0 / (q.reciprocal() - p.reciprocal())
}

/// A certified bound on the q-norm of any `(x_{d+1}, x_{d+2}, …)` with `x`
/// in the p-ellipsoid.
pub fn tail_radius(
    model: &SemiAxisModel,
    d: u64,
    p: HolderExponent,
    q: HolderExponent,
    b: f64,
    case: TailCase,
) -> Result<f64> {
    match case {
        TailCase::I => {
            if q < p {
                return Err(EntropyError::WrongRegime(format!("tail case I needs q ≥ p, got p = {p}, q = {q}")));
            }
            case_i_tail(model, d)
        }
        TailCase::II => {
            if !(q < p && b_star_sign(p, q, b)? == Ordering::Greater) {
                return Err(EntropyError::WrongRegime(format!(
                    "tail case II needs p/(pb+1) < q < p, got p = {p}, q = {q}, b = {b}"
                )));
            }
            holder_tail(model, d, holder_exponent(p, q))
        }
        TailCase::III => {
            if b_star_sign(p, q, b)? != Ordering::Equal {
                return Err(EntropyError::WrongRegime(format!(
                    "tail case III needs q = p/(pb+1), got p = {p}, q = {q}, b = {b}"
                )));
            }
            holder_tail(model, d, 1.0 / b)
        }
    }
}

/// Audit trail of a certified bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundCertificate {
    /// The whole set fits in one ball around the origin.
    Trivial { reason: String },
    /// One finite block of `d` axes at radius `rho` plus a tail of radius
    /// `alpha_d`, with `Ω = {(1, 1)}`.
    SingleBlock {
        d: u64,
        rho: f64,
        alpha_d: f64,
        tail_case: TailCase,
        /// `None` when the block is one-dimensional and counted exactly.
        finite_case: Option<FiniteCase>,
        eta: Option<f64>,
        kappa: Option<f64>,
        log2_omega: f64,
    },
    /// Rogers-density bound on a mixed ellipsoid.
    Mixed {
        k: u64,
        bar_d: u64,
        gamma: f64,
        rogers_k: f64,
        /// `#Ω` as a decimal integer.
        omega_count: String,
        log2_omega: f64,
        eps: f64,
        eps_gamma: f64,
        /// True because the density constant is not quantified.
        parametric: bool,
    },
}

/// An entropy bound together with its certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifiedBound {
    pub result: EntropyResult,
    pub certificate: BoundCertificate,
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("radius must be positive and finite, got {eps}")))
    }
}

/// The tail case used for `model` at `(p, q)`; errors outside compact regimes.
fn select_tail_case(model: &SemiAxisModel, p: HolderExponent, q: HolderExponent) -> Result<TailCase> {
    if q >= p {
        return Ok(TailCase::I);
    }
    if model.finite_len().is_some() {
        return Ok(TailCase::II);
    }
    let regime = classify_model(model, p, q)?;
    match regime.case {
        RegimeCase::CompactIii => Ok(TailCase::II),
        RegimeCase::CriticalIi => Ok(TailCase::III),
        case => Err(EntropyError::NonCompact { case: case.as_str().to_string() }),
    }
}

/// `log₂ N(ε)` for the infinite ellipsoid with the default equal split.
pub fn infinite_upper_bound(model: &SemiAxisModel, p: HolderExponent, q: HolderExponent, eps: f64) -> Result<CertifiedBound> {
    infinite_upper_bound_with(model, p, q, eps, DEFAULT_TAIL_SHARE)
}

/// Single-block bound: the smallest `d` whose tail radius is at most
/// `share^{1/q}·ε`, the first `d` axes covered at `ρ = (ε^q − α_d^q)^{1/q}`
/// with the density bound (or exactly when `d = 1`).
pub fn infinite_upper_bound_with(
    model: &SemiAxisModel,
    p: HolderExponent,
    q: HolderExponent,
    eps: f64,
    tail_share: f64,
) -> Result<CertifiedBound> {
    check_eps(eps)?;
    if !(tail_share > 0.0 && tail_share < 1.0) {
        return Err(invalid(format!("tail share must lie in (0, 1), got {tail_share}")));
    }
    let case = select_tail_case(model, p, q)?;
    let r = match case {
        TailCase::I => f64::NAN,
        TailCase::II => holder_exponent(p, q),
        TailCase::III => 1.0 / model.leading_power_law().map_or(f64::NAN, |pl| pl.b),
    };
    let alpha = |d: u64| -> Result<f64> {
        match case {
            TailCase::I => case_i_tail(model, d),
            _ => holder_tail(model, d, r),
        }
    };

    let whole = alpha(0)?;
    if whole <= eps {
        return Ok(CertifiedBound {
            result: EntropyResult::new(0.0, EntropyKind::Upper, eps),
            certificate: BoundCertificate::Trivial {
                reason: format!("the ellipsoid lies in the q-ball of radius {whole} ≤ ε"),
            },
        });
    }
    let threshold = if q.is_infinite() { eps } else { eps * tail_share.powf(q.reciprocal()) };
    let d = match case {
        TailCase::I => model.counting(threshold, 1)?,
        _ => smallest_dimension(&alpha, threshold, model.finite_len())?,
    };
    if d > BLOCK_DIM_CAP {
        return Err(EntropyError::NoFeasibleDimension { cap: BLOCK_DIM_CAP });
    }
    let a = alpha(d)?;
    let rho = if q.is_infinite() {
        eps
    } else {
        let qv = q.value();
        eps * (1.0 - (a / eps).powf(qv)).powf(1.0 / qv) * (1.0 - ROUND_SLACK)
    };

    let (bits, finite_case, eta, kappa) = if d == 1 {
        // A one-dimensional block is a segment in every norm.
        let mu1 = model.axis(1)?;
        let n = SemiAxisModel::table(vec![mu1], None)?.axis_count(1, rho)?;
        ((n as f64).log2(), None, None, None)
    } else {
        let e = FiniteEllipsoid::truncate(model, p, d)?;
        let best = tightest_density_upper_bound(&e, q, rho)?;
        (best.log2_bound, Some(best.case_tag), best.eta, Some(best.kappa_used))
    };
    Ok(CertifiedBound {
        result: EntropyResult::new(bits, EntropyKind::Upper, eps),
        certificate: BoundCertificate::SingleBlock {
            d,
            rho,
            alpha_d: a,
            tail_case: case,
            finite_case,
            eta,
            kappa,
            log2_omega: 0.0,
        },
    })
}

/// Smallest `d ≥ 1` with `alpha(d) ≤ threshold`, for a non-increasing alpha.
fn smallest_dimension(alpha: &dyn Fn(u64) -> Result<f64>, threshold: f64, finite_len: Option<u64>) -> Result<u64> {
    let cap = finite_len.unwrap_or(BLOCK_DIM_CAP);
    let mut hi = 1u64;
    let mut lo = 0u64;
    while alpha(hi)? > threshold {
        if hi >= cap {
            return Err(EntropyError::NoFeasibleDimension { cap: BLOCK_DIM_CAP });
        }
        lo = hi;
        hi = (hi * 2).min(cap);
    }
    // alpha(lo) > threshold (or lo = 0), alpha(hi) ≤ threshold.
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if alpha(mid)? <= threshold {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Semi-axes and block dimensions of a mixed ellipsoid with Euclidean
/// inner and outer norms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixedEllipsoidSpec {
    semi_axes: SemiAxisModel,
    dims: Vec<u64>,
}

impl MixedEllipsoidSpec {
    pub fn new(semi_axes: SemiAxisModel, dims: Vec<u64>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(invalid("mixed ellipsoid needs at least one dimension, all ≥ 1"));
        }
        Ok(Self { semi_axes, dims })
    }

    pub fn semi_axes(&self) -> &SemiAxisModel {
        &self.semi_axes
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    /// `k` with `μ_{k+1} ≤ ε < μ_k`, and the first `k` dimensions.
    fn active_blocks(&self, eps: f64) -> Result<(u64, &[u64])> {
        let k = self.semi_axes.counting(eps, 1)?;
        if k as usize > self.dims.len() {
            return Err(invalid(format!(
                "radius {eps} activates {k} blocks but only {} dimensions are given",
                self.dims.len()
            )));
        }
        Ok((k, &self.dims[..k as usize]))
    }
}

/// `#{m ∈ ℕ^{k+1} : Σ m_j ≤ T} = C(T+k+1, k+1)` with
/// `T = ⌊(d̄^γ + √(k+1))²⌋`, the size of the weight lattice Ω.
pub fn omega_lattice_size(bar_d: u64, k: u64, gamma: f64) -> Result<BigUint> {
    let t = ((bar_d as f64).powf(gamma) + ((k + 1) as f64).sqrt()).powi(2) * (1.0 + ROUND_SLACK);
    if !(t < 9.0e15) {
        return Err(EntropyError::EnumerationTooLarge { count: format!("{t:e}"), cap: 9_000_000_000_000_000 });
    }
    let t = t.floor() as u64;
    Ok(num_integer::binomial(BigUint::from(t + k + 1), BigUint::from(k + 1)))
}

fn check_gamma_k(gamma: f64, rogers_k: f64) -> Result<()> {
    if !(gamma >= 1.0 && gamma.is_finite()) {
        return Err(invalid(format!("gamma must be at least 1, got {gamma}")));
    }
    if !(rogers_k > 0.0 && rogers_k.is_finite()) {
        return Err(invalid(format!("the density constant must be positive, got {rogers_k}")));
    }
    Ok(())
}

/// Upper bound on `log₂ N(ε_γ)` with `ε_γ = ε·(1 + d̄^{−γ}√(k+1))`.
pub fn mixed_upper_bound(spec: &MixedEllipsoidSpec, eps: f64, gamma: f64, rogers_k: f64) -> Result<CertifiedBound> {
    check_eps(eps)?;
    check_gamma_k(gamma, rogers_k)?;
    let mu1 = spec.semi_axes.axis(1)?;
    if eps >= mu1 {
        return Err(EntropyError::RadiusOutOfRange { eps, upper: mu1 });
    }
    let (k, dims) = spec.active_blocks(eps)?;
    if let Some(&small) = dims.iter().find(|&&d| d < 9) {
        return Err(EntropyError::DimensionTooSmall { got: small as usize, min: 9 });
    }
    let bar_d: u64 = dims.iter().sum();
    let omega = omega_lattice_size(bar_d, k, gamma)?;
    let log2_omega = log2_biguint(&omega);
    let mut acc = KahanSum::new();
    acc.add(log2_omega);
    let (log2_k, le) = (rogers_k.log2(), eps.log2());
    for (j, &dj) in dims.iter().enumerate() {
        let df = dj as f64;
        acc.add(log2_k + 2.5 * df.log2() + df * (spec.semi_axes.log2_axis(j as u64 + 1)? - le));
    }
    let eps_gamma = eps * (1.0 + ((k + 1) as f64).sqrt() * (bar_d as f64).powf(-gamma));
    Ok(CertifiedBound {
        result: EntropyResult::new(acc.value(), EntropyKind::Upper, eps_gamma),
        certificate: BoundCertificate::Mixed {
            k,
            bar_d,
            gamma,
            rogers_k,
            omega_count: omega.to_string(),
            log2_omega,
            eps,
            eps_gamma,
            parametric: true,
        },
    })
}

/// Volume lower bound `Σ_{j≤k} d_j·log₂ μ_j − d̄·log₂ ε`, clipped at 0.
pub fn mixed_lower_bound(spec: &MixedEllipsoidSpec, eps: f64) -> Result<EntropyResult> {
    check_eps(eps)?;
    let (_, dims) = spec.active_blocks(eps)?;
    let le = eps.log2();
    let mut acc = KahanSum::new();
    for (j, &dj) in dims.iter().enumerate() {
        acc.add(dj as f64 * (spec.semi_axes.log2_axis(j as u64 + 1)? - le));
    }
    Ok(EntropyResult::new(acc.value().max(0.0), EntropyKind::Lower, eps))
}

/// `(N_upper/N_lower)^{1/d̄}`, the per-dimension overhead of the mixed
/// bracket at the same ε.
pub fn mixed_overhead(upper: &CertifiedBound, lower: &EntropyResult) -> Option<f64> {
    match &upper.certificate {
        BoundCertificate::Mixed { bar_d, .. } => {
            let bd = bar_d.to_f64()?;
            Some(((upper.result.bits - lower.bits) / bd * LN_2).exp())
        }
        _ => None,
    }
}
