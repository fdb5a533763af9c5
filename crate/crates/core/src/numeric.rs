//! Small numeric helpers shared across modules.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = KahanSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Compensated sum of an iterator.
pub fn ksum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<KahanSum>().value()
}

/// log2 of a positive big integer, accurate to double precision.
///
/// Returns `-inf` for zero.
pub fn log2_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 64 {
        return n.to_u64().map_or(f64::NAN, |v| (v as f64).log2());
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).log2() + shift as f64
}

/// Exact rational value of a finite double.
pub fn rational_of(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// The first continued-fraction convergent of `x` that rounds back to `x`.
///
/// Reads decimal input such as `0.3` or `0.3333333333333333` as the
/// rational the user meant (3/10, 1/3) instead of the binary fraction
/// actually stored.
pub fn simplest_rational(x: f64) -> Option<BigRational> {
    let exact = rational_of(x)?;
    let (mut num, mut den) = (exact.numer().clone(), exact.denom().clone());
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    while !den.is_zero() {
        let (a, r) = num.div_mod_floor(&den);
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        let cand = BigRational::new(h2.clone(), k2.clone());
        if cand.to_f64() == Some(x) {
            return Some(cand);
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        (num, den) = (den, r);
        if k1.abs() > BigInt::from(1u64 << 53) {
            break;
        }
    }
    Some(exact)
}

/// Log-spaced grid of `count` points from `start` to `stop` inclusive.
pub fn log_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let (a, b) = (start.ln(), stop.ln());
            (0..count)
                .map(|i| {
                    if i == 0 {
                        start
                    } else if i + 1 == count {
                        stop
                    } else {
                        (a + (b - a) * i as f64 / (count - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}
