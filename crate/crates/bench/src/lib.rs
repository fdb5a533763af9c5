//! Fixed workloads shared by the benchmarks.

use ellipsoid_entropy::{FiniteEllipsoid, HolderExponent, MixedEllipsoidSpec, SemiAxisModel};

pub fn canonical(b: f64, c: f64) -> SemiAxisModel {
    SemiAxisModel::canonical(b, c).expect("valid power law")
}

/// A three-axis Euclidean ellipsoid small enough for the grid oracle.
pub fn small_ellipsoid() -> FiniteEllipsoid {
    FiniteEllipsoid::new(HolderExponent::TWO, vec![1.0, 0.6, 0.35]).expect("valid axes")
}

/// Four blocks of `dim` axes each under `μ_n = 1/n`.
pub fn mixed_spec(dim: u64) -> MixedEllipsoidSpec {
    MixedEllipsoidSpec::new(canonical(1.0, 1.0), vec![dim; 4]).expect("valid spec")
}
