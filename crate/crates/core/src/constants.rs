//! Special functions and the universal constants of the entropy theory:
//! log-gamma, Riemann zeta, the volume-ratio constant `Γ_{p,q}`, unit-ball
//! volumes of `ℓ^p_d` and the zeta-series constant of the canonical
//! hyperrectangle.

use std::cmp::Ordering;
use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, EntropyError, Result};
use crate::numeric::{simplest_rational, KahanSum};

/// Euler–Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// B_2, B_4, ..., B_20.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// A Hölder exponent in `[1, ∞]`. Infinity is a distinct value, never a
/// large float, so that `1/∞` is exactly zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HolderExponent(Option<f64>);

impl HolderExponent {
    pub const INFINITY: HolderExponent = HolderExponent(None);
    pub const ONE: HolderExponent = HolderExponent(Some(1.0));
    pub const TWO: HolderExponent = HolderExponent(Some(2.0));

    /// A finite exponent; rejects values below 1 and non-finite input.
    pub fn finite(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(HolderExponent(Some(p)))
        } else {
            Err(invalid(format!("Hölder exponent must lie in [1, inf], got {p}")))
        }
    }

    /// Accepts `f64::INFINITY` as the infinite exponent.
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Self::INFINITY)
        } else {
            Self::finite(p)
        }
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_none()
    }

    /// The exponent as a float, `f64::INFINITY` for ∞.
    pub fn value(self) -> f64 {
        self.0.unwrap_or(f64::INFINITY)
    }

    /// `1/p`, exactly zero for ∞.
    pub fn reciprocal(self) -> f64 {
        match self.0 {
            Some(p) => 1.0 / p,
            None => 0.0,
        }
    }

    /// `1/p` in exact arithmetic, reading `p` as its simplest rational.
    pub fn reciprocal_exact(self) -> BigRational {
        match self.0 {
            Some(p) => simplest_rational(p).map_or_else(BigRational::zero, |r| BigRational::one() / r),
            None => BigRational::zero(),
        }
    }
}

impl PartialOrd for HolderExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.0, other.0) {
            (None, None) => Some(Ordering::Equal),
            (None, Some(_)) => Some(Ordering::Greater),
            (Some(_), None) => Some(Ordering::Less),
            (Some(a), Some(b)) => a.partial_cmp(&b),
        }
    }
}

impl fmt::Display for HolderExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(p) => write!(f, "{p}"),
            None => f.write_str("inf"),
        }
    }
}

impl FromStr for HolderExponent {
    type Err = EntropyError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Self::INFINITY),
            t => t
                .parse::<f64>()
                .map_err(|_| invalid(format!("cannot parse Hölder exponent {s:?}")))
                .and_then(Self::new),
        }
    }
}

impl Serialize for HolderExponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Some(p) => serializer.serialize_f64(p),
            None => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for HolderExponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(deserializer)? {
            Raw::Num(p) => HolderExponent::new(p),
            Raw::Text(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// Natural log of Γ(x) for x > 0, relative error below 1e-12 on [0.5, 1e6].
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(invalid(format!("log_gamma needs a positive finite argument, got {x}")));
    }
    Ok(ln_gamma_pos(x))
}

fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        return ln_gamma_pos(x + 1.0) - x.ln();
    }
    if x <= 1.5 {
        return ln_gamma_1p(x - 1.0);
    }
    if x <= 2.5 {
        let w = x - 2.0;
        return w.ln_1p() + ln_gamma_1p(w);
    }
    if x < 10.0 {
        // Shift down into (1.5, 2.5] and collect the factors.
        let mut y = x;
        let mut prod = 1.0;
        while y > 2.5 {
            y -= 1.0;
            prod *= y;
        }
        return ln_gamma_pos(y) + prod.ln();
    }
    stirling(x)
}

/// lnΓ(1+z) for |z| ≤ 1/2 via the Taylor series around 1, written with
/// ζ(k)−1 so that the terms decay like (z/2)^k.
fn ln_gamma_1p(z: f64) -> f64 {
    let mut acc = KahanSum::new();
    acc.add(-EULER_GAMMA * z);
    acc.add(z - z.ln_1p());
    let mut zk = -z;
    for k in 2..=64u32 {
        zk *= -z;
        let term = zeta_minus_one_raw(k as f64) * zk / k as f64;
        acc.add(term);
        if term.abs() < 1e-20 * z.abs().max(1e-300) {
            break;
        }
    }
    acc.value()
}

fn stirling(x: f64) -> f64 {
    let mut acc = KahanSum::new();
    acc.add((x - 0.5) * x.ln());
    acc.add(-x);
    acc.add(0.5 * (2.0 * PI).ln());
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut pow = inv;
    for (j, b) in BERNOULLI.iter().take(8).enumerate() {
        let k = 2.0 * (j as f64 + 1.0);
        acc.add(b / (k * (k - 1.0)) * pow);
        pow *= inv2;
    }
    acc.value()
}

/// Riemann zeta for real s > 1, absolute error below 1e-12.
pub fn zeta(s: f64) -> Result<f64> {
    Ok(1.0 + zeta_minus_one(s)?)
}

/// ζ(s) − 1 without the cancellation of computing ζ(s) first.
pub fn zeta_minus_one(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(invalid(format!("zeta needs a finite argument s > 1, got {s}")));
    }
    Ok(zeta_minus_one_raw(s))
}

/// Euler–Maclaurin for Σ_{n≥2} n^{-s}, switching at N = 10.
fn zeta_minus_one_raw(s: f64) -> f64 {
    const N: f64 = 10.0;
    if s > 60.0 {
        // 3^{-s} is already below 2^{-s}·1e-10 here; keep two terms.
        return 2f64.powf(-s) + 3f64.powf(-s);
    }
    let mut acc = KahanSum::new();
    for n in 2..10 {
        acc.add((n as f64).powf(-s));
    }
    acc.add(N.powf(1.0 - s) / (s - 1.0));
    acc.add(0.5 * N.powf(-s));
    // term_j = B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{-s-2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = N.powf(-s - 1.0);
    for (j, b) in BERNOULLI.iter().enumerate() {
        if j > 0 {
            let m = 2.0 * j as f64;
            rising *= (s + m - 1.0) * (s + m);
            fact *= (m + 1.0) * (m + 2.0);
            npow /= N * N;
        }
        acc.add(b / fact * rising * npow);
    }
    acc.value()
}

/// Γ_{p,q} = Γ(1/p+1)p^{1/p} / (Γ(1/q+1)q^{1/q}e^{1/q−1/p}), with
/// p^{1/p} → 1 at p = ∞. Equal exponents give exactly 1.
pub fn gamma_pq(p: HolderExponent, q: HolderExponent) -> f64 {
    if p == q {
        return 1.0;
    }
    let half = |e: HolderExponent| -> f64 {
        match e.0 {
            Some(v) => ln_gamma_pos(1.0 / v + 1.0) + v.ln() / v,
            None => 0.0,
        }
    };
    (half(p) - half(q) + p.reciprocal() - q.reciprocal()).exp()
}

/// Natural log of the volume of the unit ball of `ℓ^p_d`.
pub fn unit_ball_log_volume(p: HolderExponent, d: usize) -> Result<f64> {
    if d == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    let df = d as f64;
    Ok(match p.0 {
        None => df * LN_2,
        Some(v) if v == 2.0 => 0.5 * df * PI.ln() - ln_gamma_pos(0.5 * df + 1.0),
        Some(v) => df * (2.0 * ln_gamma_pos(1.0 / v + 1.0).exp()).ln() - ln_gamma_pos(df / v + 1.0),
    })
}

/// V_{p,q,d} = (vol B_p^d / vol B_q^d)^{1/d}.
pub fn volume_ratio(p: HolderExponent, q: HolderExponent, d: usize) -> Result<f64> {
    if p == q {
        unit_ball_log_volume(p, d)?;
        return Ok(1.0);
    }
    let lp = unit_ball_log_volume(p, d)?;
    let lq = unit_ball_log_volume(q, d)?;
    Ok(((lp - lq) / d as f64).exp())
}

/// ∫_x^∞ ln(1+1/t) t^{-a} dt for x ≥ 2, by the alternating expansion of
/// ln(1+1/t).
fn log_weight_tail_integral(x: f64, a: f64) -> f64 {
    let mut acc = KahanSum::new();
    let inv = 1.0 / x;
    let mut pw = x.powf(-a);
    for l in 1..200u32 {
        let lf = l as f64;
        let e = lf + a - 1.0;
        let term = pw / (lf * e);
        acc.add(if l % 2 == 1 { term } else { -term });
        if term < 1e-18 * acc.value().abs() {
            break;
        }
        pw *= inv;
    }
    acc.value()
}

/// S(b) = Σ_{k≥1} log₂(1+1/k)·k^{-1/b}.
///
/// The summand is convex and decreasing in k, which brackets the tail past K
/// between a trapezoid and a midpoint integral. K doubles until that bracket
/// is below 2e-10 wide; the midpoint is returned.
pub fn zeta_series_constant(b: f64) -> Result<f64> {
    let (lo, hi) = zeta_series_bracket(b)?;
    Ok(0.5 * (lo + hi))
}

/// Certified enclosure of S(b) (up to rounding of the partial sum).
pub fn zeta_series_bracket(b: f64) -> Result<(f64, f64)> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(invalid(format!("zeta series constant needs b > 0, got {b}")));
    }
    let a = 1.0 / b;
    let f = |k: f64| (1.0 / k).ln_1p() * k.powf(-a);
    let mut acc = KahanSum::new();
    let mut k_done = 0u64;
    let mut k_max = 64u64;
    loop {
        for k in (k_done + 1)..=k_max {
            acc.add(f(k as f64));
        }
        k_done = k_max;
        let kf = k_done as f64;
        let lower_tail = log_weight_tail_integral(kf + 1.0, a) + 0.5 * f(kf + 1.0);
        let upper_tail = log_weight_tail_integral(kf + 0.5, a);
        let width = upper_tail - lower_tail;
        if width <= 2e-10 * LN_2 || k_max >= 1 << 26 {
            let s = acc.value();
            return Ok(((s + lower_tail) / LN_2, (s + upper_tail) / LN_2));
        }
        k_max *= 2;
    }
}

/// The alternating route (1/ln2)·Σ_ℓ (−1)^{ℓ+1} ζ(ℓ+1/b)/ℓ, rearranged as
/// ln2 + Σ_ℓ (−1)^{ℓ+1}(ζ(ℓ+1/b)−1)/ℓ so that it converges absolutely.
/// Kept as an independent cross-check of [`zeta_series_constant`].
pub fn zeta_series_constant_alternating(b: f64) -> Result<f64> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(invalid(format!("zeta series constant needs b > 0, got {b}")));
    }
    let a = 1.0 / b;
    let mut acc = KahanSum::new();
    acc.add(LN_2);
    for l in 1..400u32 {
        let term = zeta_minus_one_raw(l as f64 + a) / l as f64;
        acc.add(if l % 2 == 1 { term } else { -term });
        if term < 1e-18 {
            break;
        }
    }
    Ok(acc.value() / LN_2)
}
