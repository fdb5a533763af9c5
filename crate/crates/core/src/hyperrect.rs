//! Exact metric entropy of hyperrectangles (∞-ellipsoids in the sup-norm),
//! their optimal product-grid coverings, and the zeta-series asymptotic of
//! the canonical case.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::constants::zeta_series_constant;
use crate::error::{invalid, EntropyError, Result};
use crate::numeric::{log2_biguint, KahanSum};
use crate::sequences::SemiAxisModel;

/// Default cap on the number of enumerated covering centers.
pub const DEFAULT_COVERING_CAP: u64 = 10_000_000;

/// Exact entropy of a hyperrectangle from the per-axis counts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HyperrectEntropy {
    pub bits: f64,
    /// `⌈μ_n/ε⌉` for every axis whose count is at least 2.
    pub per_axis_counts: Vec<u64>,
    pub effective_dim: usize,
    #[serde(skip)]
    product: BigUint,
}

impl HyperrectEntropy {
    /// The covering number `∏ ⌈μ_n/ε⌉` as an exact integer.
    pub fn covering_number(&self) -> &BigUint {
        &self.product
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("radius must be positive and finite, got {eps}")))
    }
}

/// `log₂ ∏_n ⌈μ_n/ε⌉`, with the product formed exactly.
pub fn exact_entropy(model: &SemiAxisModel, eps: f64) -> Result<HyperrectEntropy> {
    check_eps(eps)?;
    let d = model.counting(eps, 1)?;
    let mut counts = Vec::with_capacity(d as usize);
    let mut product = BigUint::one();
    for n in 1..=d {
        let m = model.axis_count(n, eps)?;
        product *= m;
        counts.push(m);
    }
    Ok(HyperrectEntropy {
        bits: log2_biguint(&product),
        effective_dim: counts.len(),
        per_axis_counts: counts,
        product,
    })
}

/// The same entropy through the counting function:
/// `Σ_k log₂(1+1/k)·M_k(ε)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountingEntropy {
    /// Floating-point value of the sum.
    pub bits: f64,
    /// `M_1(ε), …, M_K(ε)` with `K` the largest per-axis count minus one.
    pub counts: Vec<u64>,
    #[serde(skip)]
    numerator: BigUint,
    #[serde(skip)]
    denominator: BigUint,
}

impl CountingEntropy {
    /// `∏_k (k+1)^{M_k}` and `∏_k k^{M_k}`, unreduced.
    pub fn rational(&self) -> (&BigUint, &BigUint) {
        (&self.numerator, &self.denominator)
    }

    /// True iff `∏_k ((k+1)/k)^{M_k}` equals `product` exactly.
    pub fn equals_product(&self, product: &BigUint) -> bool {
        self.numerator == product * &self.denominator
    }

    /// log₂ of the exact rational.
    pub fn exact_bits(&self) -> f64 {
        log2_biguint(&self.numerator) - log2_biguint(&self.denominator)
    }
}

pub fn exact_entropy_counting(model: &SemiAxisModel, eps: f64) -> Result<CountingEntropy> {
    check_eps(eps)?;
    let top = if model.counting(eps, 1)? == 0 { 0 } else { model.axis_count(1, eps)? - 1 };
    let mut counts = Vec::with_capacity(top as usize);
    let mut bits = KahanSum::new();
    let mut numerator = BigUint::one();
    let mut denominator = BigUint::one();
    for k in 1..=top {
        let mk = model.counting(eps, k)?;
        counts.push(mk);
        if mk == 0 {
            continue;
        }
        bits.add(mk as f64 * (1.0 / k as f64).ln_1p() / std::f64::consts::LN_2);
        let e = u32::try_from(mk).map_err(|_| EntropyError::ScanCapExceeded { cap: u32::MAX as u64 })?;
        numerator *= BigUint::from(k + 1).pow(e);
        denominator *= BigUint::from(k).pow(e);
    }
    Ok(CountingEntropy { bits: bits.value(), counts, numerator, denominator })
}

/// Product grid with `⌈μ_i/ε⌉` equally spaced centers on axis i.
#[derive(Clone, Debug, PartialEq)]
pub struct CoveringGrid {
    axes: Vec<f64>,
    counts: Vec<u64>,
}

impl CoveringGrid {
    pub fn new(axes: &[f64], eps: f64) -> Result<Self> {
        check_eps(eps)?;
        if let Some(bad) = axes.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
            return Err(invalid(format!("semi-axes must be positive, got {bad}")));
        }
        let counts = axes
            .iter()
            .map(|&mu| {
                let table = SemiAxisModel::table(vec![mu], None)?;
                table.axis_count(1, eps)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { axes: axes.to_vec(), counts })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn cardinality(&self) -> BigUint {
        self.counts.iter().fold(BigUint::one(), |acc, m| acc * *m)
    }

    /// `μ_i/m_i`, the sup-distance from any point of axis i to its nearest center.
    pub fn half_spacing(&self) -> Vec<f64> {
        self.axes.iter().zip(&self.counts).map(|(mu, m)| mu / *m as f64).collect()
    }

    /// Coordinate of the j-th center (1-based) on axis i.
    pub fn coordinate(&self, i: usize, j: u64) -> f64 {
        let (mu, m) = (self.axes[i], self.counts[i]);
        if m == 1 {
            0.0
        } else {
            -mu + (2 * j - 1) as f64 * mu / m as f64
        }
    }

    /// The center closest to `x` in every coordinate.
    pub fn nearest_center(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .enumerate()
            .map(|(i, &xi)| {
                let (mu, m) = (self.axes[i], self.counts[i] as f64);
                let j = (((xi + mu) * m / (2.0 * mu)).floor() + 1.0).clamp(1.0, m);
                self.coordinate(i, j as u64)
            })
            .collect()
    }

    /// Lazily enumerates the centers in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        let total: u128 = self.counts.iter().map(|&m| m as u128).product();
        let mut idx = vec![1u64; self.counts.len()];
        let mut emitted: u128 = 0;
        std::iter::from_fn(move || {
            if emitted == total {
                return None;
            }
            let point = idx.iter().enumerate().map(|(i, &j)| self.coordinate(i, j)).collect();
            emitted += 1;
            for i in (0..idx.len()).rev() {
                if idx[i] < self.counts[i] {
                    idx[i] += 1;
                    break;
                }
                idx[i] = 1;
            }
            Some(point)
        })
    }

    /// All centers, refusing to materialize more than `cap` of them.
    pub fn centers(&self, cap: u64) -> Result<Vec<Vec<f64>>> {
        let n = self.cardinality();
        if n > BigUint::from(cap) {
            return Err(EntropyError::EnumerationTooLarge { count: n.to_string(), cap });
        }
        Ok(self.iter().collect())
    }
}

/// Centers of an optimal sup-norm covering of `∏[−μ_i, μ_i]`.
pub fn optimal_covering(axes: &[f64], eps: f64) -> Result<Vec<Vec<f64>>> {
    CoveringGrid::new(axes, eps)?.centers(DEFAULT_COVERING_CAP)
}

/// One center per line, comma separated.
pub fn centers_to_csv(centers: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for c in centers {
        let row: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// `c^{1/b}·ε^{−1/b}·S(b)`, the leading term of the canonical entropy.
pub fn canonical_asymptotic(b: f64, c: f64, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    if !(c > 0.0 && c.is_finite()) {
        return Err(invalid(format!("scale c must be positive, got {c}")));
    }
    Ok((c / eps).powf(1.0 / b) * zeta_series_constant(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(v: &[f64]) -> SemiAxisModel {
        SemiAxisModel::table(v.to_vec(), None).unwrap()
    }

    #[test]
    fn exact_entropy_examples() {
        let h = exact_entropy(&table(&[1.0, 0.5, 1.0 / 3.0]), 0.3).unwrap();
        assert_eq!(h.per_axis_counts, vec![4, 2, 2]);
        assert_eq!(h.bits, 4.0);
        assert_eq!(h.effective_dim, 3);
        let h = exact_entropy(&SemiAxisModel::canonical(1.0, 1.0).unwrap(), 0.3).unwrap();
        assert_eq!(h.bits, 4.0);
        let h = exact_entropy(&table(&[1.0, 0.5]), 1.0).unwrap();
        assert_eq!(h.bits, 0.0);
        assert!(h.per_axis_counts.is_empty());
    }

    #[test]
    fn counting_route_examples() {
        let m = SemiAxisModel::canonical(1.0, 1.0).unwrap();
        let c = exact_entropy_counting(&m, 0.3).unwrap();
        assert_eq!(c.counts, vec![3, 1, 1]);
        assert!((c.bits - 4.0).abs() < 1e-15);
        assert!(c.equals_product(exact_entropy(&m, 0.3).unwrap().covering_number()));
        let t = table(&[2.0, 2.0]);
        let c = exact_entropy_counting(&t, 0.5).unwrap();
        assert_eq!(c.counts, vec![2, 2, 2]);
        assert!((c.bits - 4.0).abs() < 1e-15);
        assert_eq!(c.exact_bits(), 4.0);
        let c = exact_entropy_counting(&t, 3.0).unwrap();
        assert!(c.counts.is_empty());
        assert_eq!(c.bits, 0.0);
    }

    #[test]
    fn covering_examples() {
        let c = optimal_covering(&[1.0], 0.3).unwrap();
        let xs: Vec<f64> = c.iter().map(|p| p[0]).collect();
        assert_eq!(xs, vec![-0.75, -0.25, 0.25, 0.75]);
        assert_eq!(optimal_covering(&[0.2], 0.3).unwrap(), vec![vec![0.0]]);
        assert_eq!(optimal_covering(&[1.0, 0.5], 0.3).unwrap().len(), 8);
    }

    #[test]
    fn covering_cap_reports_count() {
        let grid = CoveringGrid::new(&[1.0; 8], 0.01).unwrap();
        match grid.centers(1000) {
            Err(EntropyError::EnumerationTooLarge { count, cap }) => {
                assert_eq!(count, "10000000000000000");
                assert_eq!(cap, 1000);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn csv_export() {
        let c = optimal_covering(&[1.0, 0.2], 0.5).unwrap();
        assert_eq!(centers_to_csv(&c), "-0.5,0\n0.5,0\n");
    }

    #[test]
    fn canonical_asymptotic_scaling() {
        let a = canonical_asymptotic(1.0, 1.0, 1e-3).unwrap();
        assert!((a - 1000.0 * 1.814_545_196_488_174).abs() < 1e-6);
        let b = 2.0;
        let r = canonical_asymptotic(b, 2.0, 1e-3).unwrap() / canonical_asymptotic(b, 1.0, 1e-3).unwrap();
        assert!((r - 2f64.powf(1.0 / b)).abs() < 1e-12);
    }
}
