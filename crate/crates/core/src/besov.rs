//! Besov balls on a bounded domain as power-law ellipsoids.
//!
//! Wavelet coefficients of the unit ball of `B^s_{p1,p1}(Ω)`, with
//! `Ω ⊂ ℝ^d` of volume `vol`, form (up to frame constants) a p1-ellipsoid
//! with semi-axes `μ_n = (vol/n)^{s/d + 1/2 − 1/p1}`. Measured in `L²`
//! (q = 2) this gives `b* = s/d`, so the entropy scales as
//! `vol^{1 − (d/s)(1/p1 − 1/2)}·ε^{−d/s}`.

use serde::{Deserialize, Serialize};

use crate::asymptotics::{canonical_band, CanonicalBand};
use crate::constants::HolderExponent;
use crate::error::{invalid, EntropyError, Result};
use crate::sequences::{PowerLaw, SemiAxisModel};

/// Smoothness `s`, domain dimension `d`, integrability `p1`, domain volume.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesovSpec {
    pub s: f64,
    pub d: u32,
    pub p1: HolderExponent,
    pub vol_omega: f64,
}

impl BesovSpec {
    pub fn new(s: f64, d: u32, p1: HolderExponent, vol_omega: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(invalid(format!("smoothness must be positive, got {s}")));
        }
        if d == 0 {
            return Err(invalid("domain dimension must be at least 1"));
        }
        if !(vol_omega > 0.0 && vol_omega.is_finite()) {
            return Err(invalid(format!("domain volume must be positive, got {vol_omega}")));
        }
        Ok(Self { s, d, p1, vol_omega })
    }

    /// `s/d + 1/2 − 1/p1`, the decay exponent of the semi-axes.
    pub fn axis_exponent(&self) -> f64 {
        self.s / self.d as f64 + 0.5 - self.p1.reciprocal()
    }

    /// `1 − (d/s)(1/p1 − 1/2)`, the power of `vol` in the entropy.
    pub fn volume_exponent(&self) -> f64 {
        1.0 - self.d as f64 / self.s * (self.p1.reciprocal() - 0.5)
    }

    /// Below `p1 = 2` the band comes from the `p < q` regime.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.p1 < HolderExponent::TWO {
            w.push(format!(
                "p1 = {} < 2: outside the main Besov statement; band taken from the p < q regime",
                self.p1
            ));
        }
        w
    }
}

/// `Canonical(b, vol^b)` with `b = s/d + 1/2 − 1/p1`.
pub fn semi_axes_from_besov(spec: &BesovSpec) -> Result<SemiAxisModel> {
    let b = spec.axis_exponent();
    if !(b > 0.0) {
        return Err(EntropyError::NonCompact {
            case: format!("semi-axes do not decay (s/d + 1/2 - 1/p1 = {b})"),
        });
    }
    SemiAxisModel::canonical(b, spec.vol_omega.powf(b))
}

/// The leading-order band for the Besov ball together with its model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesovBand {
    pub band: CanonicalBand,
    pub model: PowerLaw,
    pub p: HolderExponent,
    pub q: HolderExponent,
    /// `μ_1 = c`. Radii at or above it lie outside the asymptotic range;
    /// this is the module's own validity radius, not a proven threshold.
    pub validity_radius: f64,
    /// Always true: the unquantified wavelet-frame constants scale both edges.
    pub up_to_frame_constants: bool,
    pub warnings: Vec<String>,
}

pub fn besov_entropy_band(spec: &BesovSpec, eps: f64) -> Result<BesovBand> {
    let model = semi_axes_from_besov(spec)?;
    let pl = model.leading_power_law().expect("canonical model");
    let q = HolderExponent::TWO;
    let band = canonical_band(spec.p1, q, pl.b, pl.c, eps)?;
    let mut warnings = spec.warnings();
    if eps >= pl.c {
        warnings.push(format!("radius {eps} is not below the largest semi-axis {}; the band is only asymptotic", pl.c));
    }
    Ok(BesovBand {
        band,
        model: pl,
        p: spec.p1,
        q,
        validity_radius: pl.c,
        up_to_frame_constants: true,
        warnings,
    })
}
