//! Metric entropy of lp-ellipsoids measured in lq-norms.
//!
//! The crate computes exact entropies of hyperrectangles, certified lower
//! and upper bounds for finite- and infinite-dimensional ellipsoids, the
//! compactness regime and leading constants for power-law semi-axes, and a
//! brute-force grid oracle for small dimensions. All entropies are in bits.

pub mod asymptotics;
pub mod besov;
pub mod block_decomp;
pub mod constants;
pub mod error;
pub mod finite_bounds;
pub mod hyperrect;
mod numeric;
pub mod oracle;
pub mod result;
pub mod sequences;

pub use asymptotics::{Regime, RegimeCase};
pub use block_decomp::{BoundCertificate, CertifiedBound, MixedEllipsoidSpec, TailCase};
pub use constants::HolderExponent;
pub use error::{EntropyError, Result};
pub use finite_bounds::{FiniteBound, FiniteCase, FiniteEllipsoid};
pub use numeric::{log2_biguint, log_grid, simplest_rational};
pub use result::{EntropyKind, EntropyResult, Interval};
pub use sequences::{ModelVariant, PowerLaw, SemiAxisModel};
