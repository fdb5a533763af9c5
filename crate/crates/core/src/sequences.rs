//! Semi-axis sequences: evaluation, counting functions, log-products,
//! certified tail power sums and Cesàro means.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, EntropyError, Result};
use crate::numeric::{rational_of, KahanSum};
use crate::result::Interval;

/// Number of explicit terms summed before switching to integral bounds.
const EXPLICIT_TAIL_TERMS: u64 = 1000;

/// Two-term models are checked by brute force up to this index at most.
const TWO_TERM_SCAN_CAP: u64 = 10_000_000;

/// Largest index the counting searches will consider.
pub const INDEX_CAP: u64 = 1 << 52;

/// Relative outward padding of certified float intervals.
const CERT_PAD: f64 = 1e-12;

/// `μ_n = c·n^{-b}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerLaw {
    pub b: f64,
    pub c: f64,
}

impl PowerLaw {
    pub fn new(b: f64, c: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(invalid(format!("decay index b must be positive and finite, got {b}")));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(invalid(format!("scale c must be positive and finite, got {c}")));
        }
        Ok(Self { b, c })
    }

    pub fn value(&self, n: u64) -> f64 {
        self.c * (n as f64).powf(-self.b)
    }

    pub fn log2_value(&self, n: u64) -> f64 {
        self.c.log2() - self.b * (n as f64).log2()
    }

    /// Integer decay indices admit an exact rational comparison.
    fn integer_b(&self) -> Option<u32> {
        (self.b.fract() == 0.0 && self.b <= 64.0).then_some(self.b as u32)
    }

    /// `c·n^{-b} > k·t`, exactly when b is an integer.
    fn exceeds(&self, n: u64, k: u64, t: f64) -> bool {
        if let Some(bi) = self.integer_b() {
            if let (Some(cr), Some(tr)) = (rational_of(self.c), rational_of(t)) {
                // c_num/c_den > k·t_num/t_den·n^b with positive denominators.
                let lhs = cr.numer() * tr.denom();
                let rhs = BigInt::from(k) * tr.numer() * cr.denom() * num_traits::pow(BigInt::from(n), bi as usize);
                return lhs > rhs;
            }
        }
        self.value(n) > (k as f64) * t
    }

    /// `#{n ≥ 1 : c·n^{-b} > k·t}` from the closed form, then nudged so it
    /// agrees with [`PowerLaw::exceeds`].
    fn count_exceeding(&self, k: u64, t: f64) -> Result<u64> {
        let guess = (self.c / (k as f64 * t)).powf(1.0 / self.b);
        if !(guess < INDEX_CAP as f64) {
            return Err(EntropyError::ScanCapExceeded { cap: INDEX_CAP });
        }
        let mut n = guess.floor() as u64;
        while self.exceeds(n + 1, k, t) {
            n += 1;
        }
        while n > 0 && !self.exceeds(n, k, t) {
            n -= 1;
        }
        Ok(n)
    }
}

/// `μ_n = c1·n^{-α1} + c2·n^{-α2}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoTerm {
    pub c1: f64,
    pub c2: f64,
    pub alpha1: f64,
    pub alpha2: f64,
}

impl TwoTerm {
    pub fn value(&self, n: u64) -> f64 {
        let x = n as f64;
        self.c1 * x.powf(-self.alpha1) + self.c2 * x.powf(-self.alpha2)
    }

    /// Index past which positivity and monotonicity follow analytically.
    fn settled_index(&self) -> f64 {
        if self.c2 >= 0.0 {
            return 1.0;
        }
        let gap = self.alpha2 - self.alpha1;
        // positive once c1 x^{α2−α1} > |c2|; decreasing once α1 c1 x^{α2−α1} > α2 |c2|
        let pos = (-self.c2 / self.c1).powf(1.0 / gap);
        let dec = (-self.c2 * self.alpha2 / (self.c1 * self.alpha1)).powf(1.0 / gap);
        pos.max(dec).ceil() + 1.0
    }

    fn validate(&self) -> Result<()> {
        let finite = [self.c1, self.c2, self.alpha1, self.alpha2].iter().all(|v| v.is_finite());
        if !finite || self.c1 <= 0.0 || self.alpha1 <= 0.0 || self.alpha2 <= 0.0 {
            return Err(invalid("two-term model needs finite c1 > 0, alpha1 > 0, alpha2 > 0"));
        }
        if self.c2 != 0.0 && self.alpha2 <= self.alpha1 {
            return Err(invalid("two-term model needs alpha1 < alpha2 when c2 != 0"));
        }
        let settle = self.settled_index();
        if settle > TWO_TERM_SCAN_CAP as f64 {
            return Err(EntropyError::InvalidSequence(format!(
                "verifiable: positivity would need a scan to index {settle:e}"
            )));
        }
        let mut prev = self.value(1);
        if prev <= 0.0 {
            return Err(EntropyError::InvalidSequence("positive at n = 1".into()));
        }
        for n in 2..=(settle as u64 + 1) {
            let v = self.value(n);
            if v <= 0.0 {
                return Err(EntropyError::InvalidSequence(format!("positive at n = {n}")));
            }
            if v > prev {
                return Err(EntropyError::InvalidSequence(format!("non-increasing at n = {n}")));
            }
            prev = v;
        }
        Ok(())
    }
}

/// A finite list of semi-axes, optionally continued by a power law that is
/// evaluated at the absolute index. Without a tail the axes past the table
/// are zero, i.e. the ellipsoid is finite-dimensional.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<PowerLaw>,
}

/// The supported families, as plain data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelVariant {
    Canonical(PowerLaw),
    TwoTerm(TwoTerm),
    #[serde(rename = "table")]
    Tabulated(Table),
}

/// A validated positive non-increasing semi-axis sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelVariant", into = "ModelVariant")]
pub struct SemiAxisModel(ModelVariant);

impl TryFrom<ModelVariant> for SemiAxisModel {
    type Error = EntropyError;

    fn try_from(v: ModelVariant) -> Result<Self> {
        SemiAxisModel::new(v)
    }
}

impl From<SemiAxisModel> for ModelVariant {
    fn from(m: SemiAxisModel) -> Self {
        m.0
    }
}

impl SemiAxisModel {
    pub fn new(variant: ModelVariant) -> Result<Self> {
        match &variant {
            ModelVariant::Canonical(pl) => {
                PowerLaw::new(pl.b, pl.c)?;
            }
            ModelVariant::TwoTerm(tt) => tt.validate()?,
            ModelVariant::Tabulated(tab) => {
                if tab.values.is_empty() {
                    return Err(invalid("table must hold at least one value"));
                }
                if let Some(i) = tab.values.iter().position(|v| !(*v > 0.0 && v.is_finite())) {
                    return Err(EntropyError::InvalidSequence(format!("positive at n = {}", i + 1)));
                }
                if let Some(i) = tab.values.windows(2).position(|w| w[1] > w[0]) {
                    return Err(EntropyError::InvalidSequence(format!("non-increasing at n = {}", i + 2)));
                }
                if let Some(tail) = &tab.tail {
                    PowerLaw::new(tail.b, tail.c)?;
                    let len = tab.values.len() as u64;
                    if tail.value(len + 1) > tab.values[tab.values.len() - 1] {
                        return Err(EntropyError::InvalidSequence(format!(
                            "non-increasing where the tail starts at n = {}",
                            len + 1
                        )));
                    }
                }
            }
        }
        Ok(SemiAxisModel(variant))
    }

    pub fn canonical(b: f64, c: f64) -> Result<Self> {
        Self::new(ModelVariant::Canonical(PowerLaw { b, c }))
    }

    pub fn two_term(c1: f64, c2: f64, alpha1: f64, alpha2: f64) -> Result<Self> {
        Self::new(ModelVariant::TwoTerm(TwoTerm { c1, c2, alpha1, alpha2 }))
    }

    pub fn table(values: Vec<f64>, tail: Option<PowerLaw>) -> Result<Self> {
        Self::new(ModelVariant::Tabulated(Table { values, tail }))
    }

    pub fn variant(&self) -> &ModelVariant {
        &self.0
    }

    /// Number of non-zero axes when finite.
    pub fn finite_len(&self) -> Option<u64> {
        match &self.0 {
            ModelVariant::Tabulated(Table { values, tail: None }) => Some(values.len() as u64),
            _ => None,
        }
    }

    /// The power law governing the decay, `None` for a finite table.
    pub fn leading_power_law(&self) -> Option<PowerLaw> {
        match &self.0 {
            ModelVariant::Canonical(pl) => Some(*pl),
            ModelVariant::TwoTerm(tt) => Some(PowerLaw { b: tt.alpha1, c: tt.c1 }),
            ModelVariant::Tabulated(tab) => tab.tail,
        }
    }

    fn check_index(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(invalid("axis indices start at 1"));
        }
        if let Some(len) = self.finite_len() {
            if n > len {
                return Err(EntropyError::IndexBeyondTable { index: n, len: len as usize });
            }
        }
        Ok(())
    }

    /// `μ_n`.
    pub fn axis(&self, n: u64) -> Result<f64> {
        self.check_index(n)?;
        Ok(self.axis_unchecked(n))
    }

    fn axis_unchecked(&self, n: u64) -> f64 {
        match &self.0 {
            ModelVariant::Canonical(pl) => pl.value(n),
            ModelVariant::TwoTerm(tt) => tt.value(n),
            ModelVariant::Tabulated(tab) => match tab.values.get((n - 1) as usize) {
                Some(v) => *v,
                None => tab.tail.map_or(0.0, |pl| pl.value(n)),
            },
        }
    }

    /// `log₂ μ_n`, computed without forming `μ_n` where possible.
    pub fn log2_axis(&self, n: u64) -> Result<f64> {
        self.check_index(n)?;
        Ok(match &self.0 {
            ModelVariant::Canonical(pl) => pl.log2_value(n),
            ModelVariant::TwoTerm(tt) => tt.value(n).log2(),
            ModelVariant::Tabulated(tab) => match tab.values.get((n - 1) as usize) {
                Some(v) => v.log2(),
                None => tab.tail.map_or(f64::NEG_INFINITY, |pl| pl.log2_value(n)),
            },
        })
    }

    /// The first `d` semi-axes.
    pub fn axes(&self, d: u64) -> Result<Vec<f64>> {
        if d > 0 {
            self.check_index(d)?;
        }
        Ok((1..=d).map(|n| self.axis_unchecked(n)).collect())
    }

    /// Verifies `μ_n ≥ μ_{n+1}` for all `n < up_to`.
    pub fn check_non_increasing(&self, up_to: u64) -> Result<()> {
        let top = self.finite_len().map_or(up_to, |len| up_to.min(len));
        let mut prev = self.axis_unchecked(1);
        for n in 2..=top {
            let v = self.axis_unchecked(n);
            if v > prev {
                return Err(EntropyError::InvalidSequence(format!("non-increasing at n = {n}")));
            }
            prev = v;
        }
        Ok(())
    }

    /// The strict predicate `μ_n > k·t` shared by every exact count, so
    /// that the per-axis and counting-function routes agree bit for bit.
    pub(crate) fn exceeds(&self, n: u64, k: u64, t: f64) -> bool {
        match &self.0 {
            ModelVariant::Canonical(pl) => pl.exceeds(n, k, t),
            ModelVariant::TwoTerm(tt) => tt.value(n) > (k as f64) * t,
            ModelVariant::Tabulated(tab) => match tab.values.get((n - 1) as usize) {
                Some(v) => *v > (k as f64) * t,
                None => tab.tail.is_some_and(|pl| pl.exceeds(n, k, t)),
            },
        }
    }

    /// `M_k(t) = #{n : μ_n > k·t}`.
    pub fn counting(&self, t: f64, k: u64) -> Result<u64> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(invalid(format!("threshold t must be positive and finite, got {t}")));
        }
        if k == 0 {
            return Err(invalid("k must be at least 1"));
        }
        if !self.exceeds(1, k, t) {
            return Ok(0);
        }
        match &self.0 {
            ModelVariant::Canonical(pl) => pl.count_exceeding(k, t),
            ModelVariant::TwoTerm(_) => self.search_last(1, k, t),
            ModelVariant::Tabulated(tab) => {
                let len = tab.values.len() as u64;
                if self.exceeds(len, k, t) {
                    match &tab.tail {
                        Some(pl) => Ok(pl.count_exceeding(k, t)?.max(len)),
                        None => Ok(len),
                    }
                } else {
                    // Entries are non-increasing: binary search inside the table.
                    Ok(self.bisect_last(1, len, k, t))
                }
            }
        }
    }

    /// Largest n with the predicate true, given it holds at `from`.
    fn search_last(&self, from: u64, k: u64, t: f64) -> Result<u64> {
        let mut lo = from;
        let mut hi = from.max(1) * 2;
        while self.exceeds(hi, k, t) {
            lo = hi;
            hi = hi.checked_mul(2).filter(|h| *h <= INDEX_CAP).ok_or(EntropyError::ScanCapExceeded { cap: INDEX_CAP })?;
        }
        Ok(self.bisect_last(lo, hi, k, t))
    }

    /// Predicate true at `lo` (and monotone): last true index in `[lo, hi]`.
    fn bisect_last(&self, mut lo: u64, mut hi: u64, k: u64, t: f64) -> u64 {
        if self.exceeds(hi, k, t) {
            return hi;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.exceeds(mid, k, t) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// `⌈μ_n/t⌉`, computed as `1 + #{k ≥ 1 : μ_n > k·t}`.
    pub fn axis_count(&self, n: u64, t: f64) -> Result<u64> {
        let mu = self.axis(n)?;
        let ratio = mu / t;
        if !(ratio < 1e18) {
            return Err(EntropyError::ScanCapExceeded { cap: 1_000_000_000_000_000_000 });
        }
        let mut k = (ratio.ceil() as u64).saturating_sub(1);
        while self.exceeds(n, k + 1, t) {
            k += 1;
        }
        while k > 0 && !self.exceeds(n, k, t) {
            k -= 1;
        }
        Ok(k + 1)
    }

    /// `Σ_{n ≤ d} log₂ μ_n`.
    pub fn log_product(&self, d: u64) -> Result<f64> {
        if d == 0 {
            return Err(invalid("log_product needs d ≥ 1"));
        }
        self.check_index(d)?;
        let mut acc = KahanSum::new();
        for n in 1..=d {
            acc.add(self.log2_axis(n)?);
        }
        Ok(acc.value())
    }

    /// Certified enclosure of `Σ_{n > d} μ_n^θ`.
    pub fn tail_power_sum(&self, d: u64, theta: f64) -> Result<Interval> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(invalid(format!("tail exponent must be positive, got {theta}")));
        }
        let explicit = |from: u64, to: u64| -> f64 {
            let mut acc = KahanSum::new();
            for n in (from + 1)..=to {
                acc.add(self.axis_unchecked(n).powf(theta));
            }
            acc.value()
        };
        let out = match &self.0 {
            ModelVariant::Canonical(pl) => {
                let s = pl.b * theta;
                if s <= 1.0 {
                    return Err(EntropyError::DivergentTail(format!("Σ n^(-{s}) diverges")));
                }
                let cut = d + EXPLICIT_TAIL_TERMS;
                let head = explicit(d, cut);
                power_tail(s, cut).scale(pl.c.powf(theta)).add(&Interval::point(head))
            }
            ModelVariant::TwoTerm(tt) => {
                let s = tt.alpha1 * theta;
                if s <= 1.0 {
                    return Err(EntropyError::DivergentTail(format!("Σ n^(-{s}) diverges")));
                }
                let cut = d + EXPLICIT_TAIL_TERMS;
                let head = explicit(d, cut);
                // For n > cut: n^{-α2} ≤ n^{-α1}·(cut+1)^{α1−α2}.
                let shrink = if tt.c2 == 0.0 { 0.0 } else { ((cut + 1) as f64).powf(tt.alpha1 - tt.alpha2) };
                let upper_c = tt.c1 + tt.c2.max(0.0) * shrink;
                let lower_c = (tt.c1 + tt.c2.min(0.0) * shrink).max(0.0);
                let env = power_tail(s, cut);
                Interval::new(head + lower_c.powf(theta) * env.lo, head + upper_c.powf(theta) * env.hi)
            }
            ModelVariant::Tabulated(tab) => {
                let len = tab.values.len() as u64;
                let head = if d < len { explicit(d, len) } else { 0.0 };
                match &tab.tail {
                    None => Interval::point(head),
                    Some(pl) => {
                        let s = pl.b * theta;
                        if s <= 1.0 {
                            return Err(EntropyError::DivergentTail(format!("Σ n^(-{s}) diverges")));
                        }
                        let start = d.max(len);
                        let cut = start + EXPLICIT_TAIL_TERMS;
                        let mid = explicit(start, cut);
                        power_tail(s, cut).scale(pl.c.powf(theta)).add(&Interval::point(head + mid))
                    }
                }
            }
        };
        Ok(out.pad(CERT_PAD))
    }

    /// `(1/N)·Σ_{n ≤ N} log₂(μ_n/μ_N)`.
    pub fn cesaro_log_ratio(&self, big_n: u64) -> Result<f64> {
        if big_n == 0 {
            return Err(invalid("Cesàro mean needs N ≥ 1"));
        }
        let last = self.log2_axis(big_n)?;
        let mut acc = KahanSum::new();
        for n in 1..=big_n {
            acc.add(self.log2_axis(n)? - last);
        }
        Ok(acc.value() / big_n as f64)
    }
}

/// `Σ_{n > m} n^{-s}` for s > 1, bracketed with the trapezoid (below) and
/// midpoint (above) rules, both valid because the summand is convex.
fn power_tail(s: f64, m: u64) -> Interval {
    let x = m as f64;
    let lo = (x + 1.0).powf(1.0 - s) / (s - 1.0) + 0.5 * (x + 1.0).powf(-s);
    let hi = (x + 0.5).powf(1.0 - s) / (s - 1.0);
    Interval::new(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canon(b: f64, c: f64) -> SemiAxisModel {
        SemiAxisModel::canonical(b, c).unwrap()
    }

    #[test]
    fn axis_examples() {
        assert_eq!(canon(1.0, 1.0).axis(4).unwrap(), 0.25);
        let tt = SemiAxisModel::two_term(1.0, 1.0, 1.0, 1.25).unwrap();
        assert_eq!(tt.axis(1).unwrap(), 2.0);
        let tab = SemiAxisModel::table(vec![3.0, 2.0, 1.0], None).unwrap();
        assert_eq!(tab.axis(2).unwrap(), 2.0);
        assert_eq!(tab.axis(4), Err(EntropyError::IndexBeyondTable { index: 4, len: 3 }));
        assert!(canon(1.0, 1.0).axis(0).is_err());
    }

    #[test]
    fn table_tail_uses_absolute_index() {
        let m = SemiAxisModel::table(vec![5.0, 1.0], Some(PowerLaw { b: 1.0, c: 1.0 })).unwrap();
        assert_eq!(m.axis(3).unwrap(), 1.0 / 3.0);
        assert_eq!(m.axis(10).unwrap(), 0.1);
        assert!(SemiAxisModel::table(vec![1.0, 0.1], Some(PowerLaw { b: 1.0, c: 1.0 })).is_err());
    }

    #[test]
    fn invalid_models_rejected() {
        assert!(SemiAxisModel::canonical(0.0, 1.0).is_err());
        assert!(SemiAxisModel::canonical(1.0, -1.0).is_err());
        assert!(SemiAxisModel::table(vec![1.0, 2.0], None).is_err());
        assert!(SemiAxisModel::table(vec![], None).is_err());
        assert!(SemiAxisModel::table(vec![1.0, 0.0], None).is_err());
        // negative at n = 1
        assert!(SemiAxisModel::two_term(1.0, -2.0, 1.0, 2.0).is_err());
        // dominated by the negative term forever
        assert!(SemiAxisModel::two_term(1.0, -0.5, 1.0, 0.5).is_err());
        // dips then recovers positivity: increasing somewhere
        assert!(SemiAxisModel::two_term(1.0, -0.99, 1.0, 3.0).is_err());
        assert!(SemiAxisModel::two_term(1.0, -0.5, 1.0, 1.25).is_ok());
    }

    #[test]
    fn counting_examples() {
        assert_eq!(canon(1.0, 1.0).counting(0.3, 1).unwrap(), 3);
        assert_eq!(canon(1.0, 1.0).counting(0.6, 2).unwrap(), 0);
        let tab = SemiAxisModel::table(vec![1.0, 0.5], None).unwrap();
        assert_eq!(tab.counting(0.4, 1).unwrap(), 2);
        assert_eq!(tab.counting(0.45, 1).unwrap(), 2);
        assert_eq!(tab.counting(0.5, 1).unwrap(), 1);
    }

    #[test]
    fn counting_is_strict_at_exact_ties() {
        // μ_4 = 1/4 = 1·0.25 exactly: excluded.
        assert_eq!(canon(1.0, 1.0).counting(0.25, 1).unwrap(), 3);
        // μ_n = 3/n²; the double nearest 0.03 lies just below 3/100, so n = 10 counts.
        assert_eq!(canon(2.0, 3.0).counting(0.03, 1).unwrap(), 10);
        // Dyadic threshold: 3/n² > 1/16 iff n² < 48.
        assert_eq!(canon(2.0, 3.0).counting(0.0625, 1).unwrap(), 6);
        // The double nearest 0.1 is slightly above 1/10, so n = 10 drops out.
        assert_eq!(canon(1.0, 1.0).counting(0.1, 1).unwrap(), 9);
    }

    #[test]
    fn counting_two_term_and_tail() {
        let tt = SemiAxisModel::two_term(1.0, 1.0, 1.0, 1.25).unwrap();
        let t = 1e-3;
        let brute = (1..100_000u64).filter(|&n| tt.axis(n).unwrap() > t).count() as u64;
        assert_eq!(tt.counting(t, 1).unwrap(), brute);
        let m = SemiAxisModel::table(vec![5.0, 1.0], Some(PowerLaw { b: 1.0, c: 1.0 })).unwrap();
        assert_eq!(m.counting(0.3, 1).unwrap(), 3);
        assert_eq!(m.counting(0.9, 1).unwrap(), 2);
        assert_eq!(m.counting(2.0, 1).unwrap(), 1);
    }

    #[test]
    fn axis_count_is_ceiling() {
        let m = canon(1.0, 1.0);
        assert_eq!(m.axis_count(1, 0.3).unwrap(), 4);
        assert_eq!(m.axis_count(2, 0.3).unwrap(), 2);
        assert_eq!(m.axis_count(4, 0.3).unwrap(), 1);
        assert_eq!(m.axis_count(1, 0.25).unwrap(), 4);
        assert_eq!(m.axis_count(1, 0.5).unwrap(), 2);
        assert_eq!(m.axis_count(1, 2.0).unwrap(), 1);
    }

    #[test]
    fn log_product_examples() {
        assert!((canon(1.0, 1.0).log_product(3).unwrap() + 6f64.log2()).abs() < 1e-15);
        let tab = SemiAxisModel::table(vec![2.0, 2.0], None).unwrap();
        assert_eq!(tab.log_product(2).unwrap(), 2.0);
        assert_eq!(canon(1.0, 3.0).log_product(1).unwrap(), 3f64.log2());
    }

    #[test]
    fn tail_power_sum_examples() {
        let m = canon(1.0, 1.0);
        let basel = m.tail_power_sum(0, 2.0).unwrap();
        assert!(basel.contains(std::f64::consts::PI.powi(2) / 6.0));
        assert!(basel.width() < 1e-9);
        let t10 = m.tail_power_sum(10, 2.0).unwrap();
        assert!(t10.lo >= 1.0 / 11.0 && t10.hi <= 1.0 / 10.0);
        // ψ'(11) = π²/6 − Σ_{n≤10} 1/n².
        let trigamma11 = std::f64::consts::PI.powi(2) / 6.0 - (1..=10).map(|n| 1.0 / (n * n) as f64).sum::<f64>();
        assert!(t10.contains(trigamma11));
        let single = SemiAxisModel::table(vec![5.0], None).unwrap();
        assert_eq!(single.tail_power_sum(1, 3.0).unwrap(), Interval::point(0.0));
        assert!(matches!(m.tail_power_sum(3, 1.0), Err(EntropyError::DivergentTail(_))));
    }

    #[test]
    fn tail_power_sum_sandwiches_brute_force() {
        const TERMS: u64 = 1_000_000;
        let models = [
            canon(1.0, 1.0),
            canon(0.75, 2.0),
            canon(2.0, 0.5),
            SemiAxisModel::two_term(1.0, 1.0, 1.0, 1.25).unwrap(),
            SemiAxisModel::two_term(2.0, -0.5, 1.5, 1.8).unwrap(),
            SemiAxisModel::table(vec![4.0, 3.0, 1.0], Some(PowerLaw { b: 1.2, c: 2.0 })).unwrap(),
        ];
        for m in &models {
            let pl = m.leading_power_law().unwrap();
            for theta in [1.5, 2.0, 3.0] {
                let s = pl.b * theta;
                if s <= 1.0 {
                    continue;
                }
                for d in [0u64, 7, 50] {
                    let mut acc = KahanSum::new();
                    for n in (d + 1)..=TERMS {
                        acc.add(m.axis(n).unwrap().powf(theta));
                    }
                    // remainder past 10⁶ from the leading law (its own error is far below the pad)
                    let rem = pl.c.powf(theta) * (TERMS as f64 + 0.5).powf(1.0 - s) / (s - 1.0);
                    let brute = acc.value() + rem;
                    let iv = m.tail_power_sum(d, theta).unwrap();
                    let slack = 1e-9 * brute;
                    assert!(iv.lo - slack <= brute && brute <= iv.hi + slack, "{m:?} θ={theta} d={d}: {brute} ∉ {iv:?}");
                }
            }
        }
    }

    #[test]
    fn cesaro_examples() {
        let ln2 = std::f64::consts::LN_2;
        let v = canon(1.0, 1.0).cesaro_log_ratio(100_000).unwrap();
        assert!((v - 1.0 / ln2).abs() <= 1e-3 / ln2);
        let v = canon(2.0, 5.0).cesaro_log_ratio(100_000).unwrap();
        assert!((v - 2.0 / ln2).abs() <= 2e-3 / ln2);
        let flat = SemiAxisModel::table(vec![1.0, 1.0, 1.0], None).unwrap();
        assert_eq!(flat.cesaro_log_ratio(3).unwrap(), 0.0);
    }

    #[test]
    fn json_round_trip() {
        let models = [
            canon(1.0, 1.0),
            SemiAxisModel::two_term(1.0, 1.0, 1.0, 1.25).unwrap(),
            SemiAxisModel::table(vec![3.0, 2.0], Some(PowerLaw { b: 1.0, c: 2.0 })).unwrap(),
            SemiAxisModel::table(vec![3.0, 2.0], None).unwrap(),
        ];
        for m in models {
            let s = serde_json::to_string(&m).unwrap();
            assert_eq!(serde_json::from_str::<SemiAxisModel>(&s).unwrap(), m);
        }
        let m: SemiAxisModel = serde_json::from_str(r#"{"kind":"canonical","b":1.0,"c":1.0}"#).unwrap();
        assert_eq!(m, canon(1.0, 1.0));
        let m: SemiAxisModel =
            serde_json::from_str(r#"{"kind":"table","values":[1,0.5],"tail":{"kind":"canonical","b":2,"c":1}}"#).unwrap();
        assert_eq!(m.axis(3).unwrap(), 1.0 / 9.0);
        assert!(serde_json::from_str::<SemiAxisModel>(r#"{"kind":"canonical","b":-1.0,"c":1.0}"#).is_err());
        assert!(serde_json::from_str::<SemiAxisModel>(r#"{"kind":"table","values":[1,2]}"#).is_err());
    }
}
