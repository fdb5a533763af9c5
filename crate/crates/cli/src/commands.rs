use clap::{Args, ValueEnum};
use ellipsoid_entropy::asymptotics::{
    canonical_band, classify, classify_model, entropy_estimator, hilbert_leading, hilbert_second_order, Regime,
};
use ellipsoid_entropy::besov::{besov_entropy_band, BesovSpec};
use ellipsoid_entropy::block_decomp::{
    infinite_upper_bound, mixed_lower_bound, mixed_overhead, mixed_upper_bound, DEFAULT_ROGERS_K,
};
use ellipsoid_entropy::constants::{gamma_pq, volume_ratio, zeta_series_constant};
use ellipsoid_entropy::finite_bounds::{density_upper_bound, tightest_density_upper_bound, volume_lower_bound};
use ellipsoid_entropy::hyperrect::exact_entropy;
use ellipsoid_entropy::oracle::sandwich_report;
use ellipsoid_entropy::{
    EntropyKind, FiniteEllipsoid, HolderExponent, MixedEllipsoidSpec, ModelVariant, SemiAxisModel,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{usage, CliResult, ExitStatus};
use crate::model::parse_model;
use crate::report::Report;

/// Every option a computation may read. Each command checks the ones it needs.
#[derive(Args, Clone, Debug, Default, Serialize)]
pub struct Params {
    /// Semi-axis model: JSON, @file, canonical:b=..,c=.., two-term:c1=..,c2=..,a1=..,a2=.., table:v1,v2,..
    #[arg(long)]
    pub model: Option<String>,
    /// Finite semi-axes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub axes: Option<Vec<f64>>,
    /// Truncate the model to its first DIM axes (finite commands).
    #[arg(long)]
    pub dim: Option<u64>,
    /// Block dimensions of a mixed ellipsoid, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<u64>>,
    /// Exponent of the ellipsoid (number or "inf").
    #[arg(long)]
    pub p: Option<HolderExponent>,
    /// Exponent of the measuring norm (number or "inf").
    #[arg(long)]
    pub q: Option<HolderExponent>,
    /// Covering radius.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Slack of the density bound; the tightest admissible value when omitted.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Lattice exponent of the mixed bound [default: 1].
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Covering-density constant K, whose value is not known [default: 1024].
    #[arg(long)]
    pub rogers_k: Option<f64>,
    /// Oracle grid points per axis [default: 32].
    #[arg(long)]
    pub resolution: Option<u32>,
    /// Power-law exponent.
    #[arg(long)]
    pub b: Option<f64>,
    /// Power-law scale.
    #[arg(long)]
    pub c: Option<f64>,
    /// Which side of the finite bracket to report [default: upper].
    #[arg(long, value_enum)]
    pub bound: Option<Side>,
    /// Classifier flag: the tail sum of μ_n^(1/b) converges (implies --vanishing-liminf).
    #[arg(long)]
    pub summable_tail: bool,
    /// Classifier flag: n·μ_n^(1/b) tends to zero.
    #[arg(long)]
    pub vanishing_liminf: bool,
    /// Besov smoothness.
    #[arg(long)]
    pub s: Option<f64>,
    /// Besov domain dimension, or the dimension of a volume ratio.
    #[arg(long)]
    pub d: Option<u32>,
    /// Besov integrability.
    #[arg(long)]
    pub p1: Option<HolderExponent>,
    /// Besov domain volume.
    #[arg(long)]
    pub vol: Option<f64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    #[default]
    Upper,
}

/// Selectors of the `constants` command.
#[derive(Args, Clone, Debug, Default, Serialize)]
pub struct ConstantArgs {
    /// Print Γ_{p,q}.
    #[arg(long)]
    pub gamma_pq: bool,
    /// Print the volume ratio V_{p,q,d}.
    #[arg(long)]
    pub volume_ratio: bool,
    /// Print the zeta-series constant S(b).
    #[arg(long)]
    pub zeta_series: bool,
}

/// Commands that produce one entropy per radius and can be swept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Computation {
    Exact,
    BoundFinite,
    BoundInfinite,
    MixedBound,
    Asymptotic,
    Estimator,
    Oracle,
    Besov,
}

impl Computation {
    pub fn name(self) -> &'static str {
        match self {
            Computation::Exact => "exact",
            Computation::BoundFinite => "bound-finite",
            Computation::BoundInfinite => "bound-infinite",
            Computation::MixedBound => "mixed-bound",
            Computation::Asymptotic => "asymptotic",
            Computation::Estimator => "estimator",
            Computation::Oracle => "oracle",
            Computation::Besov => "besov",
        }
    }

    pub fn run(self, p: &Params) -> CliResult<Report> {
        let report = Report::new(query(self.name(), p));
        match self {
            Computation::Exact => exact(p, report),
            Computation::BoundFinite => bound_finite(p, report),
            Computation::BoundInfinite => bound_infinite(p, report),
            Computation::MixedBound => mixed_bound(p, report),
            Computation::Asymptotic => asymptotic(p, report),
            Computation::Estimator => estimator(p, report),
            Computation::Oracle => oracle(p, report),
            Computation::Besov => besov(p, report),
        }
    }
}

/// The command name plus every option that was set.
pub fn query(name: &str, params: &impl Serialize) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("command".into(), json!(name));
    if let Ok(Value::Object(m)) = serde_json::to_value(params) {
        out.extend(m.into_iter().filter(|(_, x)| !x.is_null() && *x != Value::Bool(false)));
    }
    Value::Object(out)
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| usage(format!("--{flag} is required")))
}

fn to_json(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("result types serialize")
}

fn model(p: &Params) -> CliResult<SemiAxisModel> {
    match (&p.model, &p.axes) {
        (Some(m), None) => parse_model(m),
        (None, Some(axes)) => {
            let mut axes = axes.clone();
            axes.sort_by(|a, b| b.total_cmp(a));
            Ok(SemiAxisModel::table(axes, None)?)
        }
        (Some(_), Some(_)) => Err(usage("give either --model or --axes, not both")),
        (None, None) => Err(usage("--model or --axes is required")),
    }
}

fn finite_ellipsoid(p: &Params, exp: HolderExponent) -> CliResult<FiniteEllipsoid> {
    if let Some(axes) = &p.axes {
        if p.model.is_some() {
            return Err(usage("give either --model or --axes, not both"));
        }
        return Ok(FiniteEllipsoid::from_unsorted(exp, axes.clone())?);
    }
    let m = model(p)?;
    let d = match (p.dim, m.finite_len()) {
        (Some(d), _) => d,
        (None, Some(len)) => len,
        (None, None) => return Err(usage("--dim is required to truncate an infinite model")),
    };
    Ok(FiniteEllipsoid::truncate(&m, exp, d)?)
}

fn exact(p: &Params, report: Report) -> CliResult<Report> {
    let eps = need(p.eps, "eps")?;
    let h = exact_entropy(&model(p)?, eps)?;
    let cert = json!({
        "covering_number": h.covering_number().to_string(),
        "effective_dim": h.effective_dim,
        "per_axis_counts": h.per_axis_counts,
    });
    Ok(report.entropy(h.bits, EntropyKind::Exact, eps).certificate(cert))
}

fn bound_finite(p: &Params, report: Report) -> CliResult<Report> {
    let (pe, q, eps) = (need(p.p, "p")?, need(p.q, "q")?, need(p.eps, "eps")?);
    let e = finite_ellipsoid(p, pe)?;
    let bound = match (p.bound.unwrap_or_default(), p.eta) {
        (Side::Lower, _) => volume_lower_bound(&e, q, eps)?,
        (Side::Upper, Some(eta)) => density_upper_bound(&e, q, eps, eta)?,
        (Side::Upper, None) => tightest_density_upper_bound(&e, q, eps)?,
    };
    Ok(report.entropy(bound.log2_bound, bound.kind, eps).certificate(to_json(&bound)))
}

fn bound_infinite(p: &Params, mut report: Report) -> CliResult<Report> {
    let (pe, q, eps) = (need(p.p, "p")?, need(p.q, "q")?, need(p.eps, "eps")?);
    let m = model(p)?;
    let bound = infinite_upper_bound(&m, pe, q, eps)?;
    if bound.result.epsilon != eps {
        report.warnings.push(format!("bound holds at radius {}", bound.result.epsilon));
    }
    let r = bound.result;
    Ok(report.entropy(r.bits, r.kind, r.epsilon).certificate(to_json(&bound.certificate)))
}

fn mixed_bound(p: &Params, mut report: Report) -> CliResult<Report> {
    let eps = need(p.eps, "eps")?;
    let dims = p.dims.clone().ok_or_else(|| usage("--dims is required"))?;
    let spec = MixedEllipsoidSpec::new(model(p)?, dims)?;
    let rogers_k = p.rogers_k.unwrap_or(DEFAULT_ROGERS_K);
    let up = mixed_upper_bound(&spec, eps, p.gamma.unwrap_or(1.0), rogers_k)?;
    let lo = mixed_lower_bound(&spec, eps)?;
    let mut cert = to_json(&up.certificate);
    cert["lower_bits"] = json!(lo.bits);
    cert["overhead"] = json!(mixed_overhead(&up, &lo));
    report.warnings.push(format!(
        "the density constant K = {} is assumed, not proven; the bound is parametric in K",
        rogers_k
    ));
    let r = up.result;
    Ok(report.entropy(r.bits, r.kind, r.epsilon).certificate(cert))
}

fn regime_report(regime: &Regime, mut report: Report) -> Report {
    if !regime.case.is_compact() {
        report.status = ExitStatus::NON_COMPACT;
        report.warnings.push(format!("{}: the entropy is infinite at every radius", regime.case));
    }
    report.certificate(to_json(regime))
}

pub fn run_classify(p: &Params) -> CliResult<Report> {
    let report = Report::new(query("classify", p));
    let (pe, q) = (need(p.p, "p")?, need(p.q, "q")?);
    let regime = match (&p.model, p.b) {
        (Some(m), None) => classify_model(&parse_model(m)?, pe, q)?,
        (None, Some(b)) => classify(pe, q, b, p.summable_tail, !(p.vanishing_liminf || p.summable_tail))?,
        _ => return Err(usage("give exactly one of --b or --model")),
    };
    Ok(regime_report(&regime, report))
}

fn asymptotic(p: &Params, mut report: Report) -> CliResult<Report> {
    let (pe, q) = (need(p.p, "p")?, need(p.q, "q")?);
    let (b, c, eps) = (need(p.b, "b")?, need(p.c, "c")?, need(p.eps, "eps")?);
    let regime = classify(pe, q, b, false, true)?;
    if !regime.case.is_compact() {
        return Ok(regime_report(&regime, report));
    }
    let band = canonical_band(pe, q, b, c, eps)?;
    if !band.upper_constant_confirmed {
        report.warnings.push("upper edge is an order of growth with its constant set to 1".into());
    }
    Ok(report.entropy(band.lower, EntropyKind::Asymptotic, eps).certificate(to_json(&band)))
}

fn estimator(p: &Params, report: Report) -> CliResult<Report> {
    let eps = need(p.eps, "eps")?;
    let m = model(p)?;
    let value = entropy_estimator(&m, eps)?;
    let mut cert = json!({ "effective_dim": m.counting(eps, 1)? });
    match m.variant() {
        ModelVariant::Canonical(pl) => {
            cert["hilbert_leading"] = json!(hilbert_leading(pl.b, pl.c, eps)?);
        }
        ModelVariant::TwoTerm(tt) => {
            cert["hilbert_leading"] = json!(hilbert_leading(tt.alpha1, tt.c1, eps)?);
            if let Ok(v) = hilbert_second_order(tt.alpha1, tt.alpha2, tt.c1, tt.c2, eps) {
                cert["hilbert_second_order"] = json!(v);
            }
        }
        ModelVariant::Tabulated(_) => {}
    }
    Ok(report.entropy(value, EntropyKind::Asymptotic, eps).certificate(cert))
}

fn oracle(p: &Params, mut report: Report) -> CliResult<Report> {
    let (pe, q, eps) = (need(p.p, "p")?, need(p.q, "q")?, need(p.eps, "eps")?);
    let e = finite_ellipsoid(p, pe)?;
    let r = sandwich_report(&e, q, eps, p.resolution.unwrap_or(DEFAULT_RESOLUTION))?;
    for c in r.checks.iter().filter(|c| !c.pass) {
        report.warnings.push(format!("check failed: {} ({} > {})", c.name, c.lhs, c.rhs));
    }
    let bits = (r.oracle.cover_count as f64).log2();
    let wide = eps + r.oracle.delta;
    Ok(report.entropy(bits, EntropyKind::Upper, wide).certificate(to_json(&r)))
}

fn besov(p: &Params, mut report: Report) -> CliResult<Report> {
    let spec = BesovSpec::new(
        need(p.s, "s")?,
        need(p.d, "d")?,
        p.p1.unwrap_or(HolderExponent::TWO),
        p.vol.unwrap_or(1.0),
    )?;
    let eps = need(p.eps, "eps")?;
    let band = besov_entropy_band(&spec, eps)?;
    report.warnings.extend(band.warnings.iter().cloned());
    report.warnings.push("both edges hold up to unquantified wavelet-frame constants".into());
    Ok(report.entropy(band.band.lower, EntropyKind::Asymptotic, eps).certificate(to_json(&band)))
}

const DEFAULT_RESOLUTION: u32 = 32;

const GRID: [&str; 5] = ["1", "1.5", "2", "3", "inf"];

pub fn run_constants(p: &Params, sel: &ConstantArgs) -> CliResult<Report> {
    let mut q = query("constants", p);
    if let (Value::Object(m), Value::Object(s)) = (&mut q, query("", sel)) {
        m.extend(s.into_iter().filter(|(k, _)| k != "command"));
    }
    let mut report = Report::new(q);
    let picked = [sel.gamma_pq, sel.volume_ratio, sel.zeta_series].iter().filter(|&&x| x).count();
    if picked > 1 {
        return Err(usage("choose at most one of --gamma-pq, --volume-ratio, --zeta-series"));
    }
    if sel.gamma_pq {
        report.value = Some(gamma_pq(need(p.p, "p")?, need(p.q, "q")?));
    } else if sel.volume_ratio {
        report.value = Some(volume_ratio(need(p.p, "p")?, need(p.q, "q")?, need(p.d, "d")? as usize)?);
    } else if sel.zeta_series {
        report.value = Some(zeta_series_constant(need(p.b, "b")?)?);
    } else {
        report = report.certificate(constant_tables()?);
    }
    Ok(report)
}

fn constant_tables() -> CliResult<Value> {
    let grid: Vec<HolderExponent> = GRID.iter().map(|s| s.parse().expect("grid exponent")).collect();
    let mut gammas = Vec::new();
    let mut ratios = Vec::new();
    for &p in &grid {
        for &q in &grid {
            gammas.push(json!({ "p": p, "q": q, "value": gamma_pq(p, q) }));
            for d in [1usize, 2, 3, 10, 100, 1000] {
                ratios.push(json!({ "p": p, "q": q, "d": d, "value": volume_ratio(p, q, d)? }));
            }
        }
    }
    let zetas = [0.25, 0.5, 1.0, 2.0, 3.0]
        .iter()
        .map(|&b| Ok(json!({ "b": b, "value": zeta_series_constant(b)? })))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(json!({ "gamma_pq": gammas, "volume_ratio": ratios, "zeta_series": zetas }))
}
