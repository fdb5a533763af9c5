//! Brute-force covering and packing counts on a grid, for ellipsoids of
//! dimension at most 3. They bracket every certified bound in this crate.
//!
//! The grid has `resolution` cells per axis over `[−μ_i, μ_i]`, represented
//! by their centers. A cover is built over every cell that meets the
//! ellipsoid, so it covers the ellipsoid itself at radius `ε + δ` where `δ`
//! is the q-norm of the half cell diagonal. A packing uses only cell centers
//! inside the ellipsoid and is a valid lower bound on `N(ε)` as it stands.
//! Both scans run in lexicographic order and are deterministic.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::HolderExponent;
use crate::error::{invalid, EntropyError, Result};
use crate::finite_bounds::{lp_norm, tightest_density_upper_bound, volume_lower_bound, FiniteEllipsoid};
use crate::hyperrect::exact_entropy;
use crate::sequences::SemiAxisModel;

pub const MAX_ORACLE_DIM: usize = 3;
pub const MIN_RESOLUTION: u32 = 8;
pub const ORACLE_POINT_CAP: u64 = 10_000_000;

/// Absolute slack in bits when comparing two bounds that may coincide.
const CHECK_TOL: f64 = 1e-9;

type Point = [f64; MAX_ORACLE_DIM];

struct Grid<'a> {
    e: &'a FiniteEllipsoid,
    res: usize,
    half: Vec<f64>,
}

impl<'a> Grid<'a> {
    fn new(e: &'a FiniteEllipsoid, resolution: u32) -> Result<Self> {
        let d = e.dim();
        if d > MAX_ORACLE_DIM {
            return Err(EntropyError::DimensionTooLarge { got: d, max: MAX_ORACLE_DIM });
        }
        if resolution < MIN_RESOLUTION {
            return Err(invalid(format!("resolution must be at least {MIN_RESOLUTION}, got {resolution}")));
        }
        let n = (resolution as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
        if n > ORACLE_POINT_CAP {
            return Err(EntropyError::EnumerationTooLarge { count: n.to_string(), cap: ORACLE_POINT_CAP });
        }
        let half = e.axes().iter().map(|mu| mu / resolution as f64).collect();
        Ok(Self { e, res: resolution as usize, half })
    }

    fn dim(&self) -> usize {
        self.half.len()
    }

    fn len(&self) -> usize {
        self.res.pow(self.dim() as u32)
    }

    fn coord(&self, axis: usize, j: usize) -> f64 {
        -self.e.axes()[axis] + (2 * j + 1) as f64 * self.half[axis]
    }

    fn indices(&self, mut idx: usize) -> [usize; MAX_ORACLE_DIM] {
        let mut js = [0; MAX_ORACLE_DIM];
        for axis in (0..self.dim()).rev() {
            js[axis] = idx % self.res;
            idx /= self.res;
        }
        js
    }

    fn flat(&self, js: &[usize; MAX_ORACLE_DIM]) -> usize {
        (0..self.dim()).fold(0, |acc, a| acc * self.res + js[a])
    }

    fn point(&self, idx: usize) -> Point {
        let js = self.indices(idx);
        let mut x = [0.0; MAX_ORACLE_DIM];
        for a in 0..self.dim() {
            x[a] = self.coord(a, js[a]);
        }
        x
    }

    /// The cell around `idx` meets the ellipsoid iff its corner nearest the
    /// origin lies inside (the gauge grows with every |x_i|).
    fn cell_meets(&self, idx: usize) -> bool {
        let x = self.point(idx);
        let near: Vec<f64> = (0..self.dim()).map(|a| (x[a].abs() - self.half[a]).max(0.0)).collect();
        self.e.contains(&near)
    }

    fn inside(&self, idx: usize) -> bool {
        let x = self.point(idx);
        self.e.contains(&x[..self.dim()])
    }

    /// Inclusive index range of grid coordinates within `r` of `c` on `axis`.
    fn axis_window(&self, axis: usize, c: f64, r: f64) -> (usize, usize) {
        let mu = self.e.axes()[axis];
        let step = 2.0 * self.half[axis];
        let lo = ((c - r + mu) / step - 0.5).ceil().max(0.0);
        let hi = ((c + r + mu) / step - 0.5).floor().min((self.res - 1) as f64);
        if hi < lo {
            (1, 0)
        } else {
            (lo as usize, hi as usize)
        }
    }

    /// All grid indices in the sup-norm box of radius `r` around `c`.
    fn window(&self, c: &Point, r: f64) -> Vec<usize> {
        let d = self.dim();
        let ranges: Vec<(usize, usize)> = (0..d).map(|a| self.axis_window(a, c[a], r)).collect();
        if ranges.iter().any(|(lo, hi)| lo > hi) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut js = [0; MAX_ORACLE_DIM];
        for a in 0..d {
            js[a] = ranges[a].0;
        }
        loop {
            out.push(self.flat(&js));
            let mut a = d;
            loop {
                if a == 0 {
                    return out;
                }
                a -= 1;
                if js[a] < ranges[a].1 {
                    js[a] += 1;
                    break;
                }
                js[a] = ranges[a].0;
            }
        }
    }

    fn window_size(&self, c: &Point, r: f64) -> usize {
        (0..self.dim())
            .map(|a| {
                let (lo, hi) = self.axis_window(a, c[a], r);
                if hi < lo {
                    0
                } else {
                    hi - lo + 1
                }
            })
            .product()
    }

    fn dist(&self, x: &Point, y: &Point, q: HolderExponent) -> f64 {
        lp_norm((0..self.dim()).map(|a| x[a] - y[a]), q)
    }
}

/// `max_{x ∈ E} ‖x‖_q`: `μ_1` when `q ≥ p`, else `‖μ‖_r` with `1/r = 1/q − 1/p`.
pub fn q_radius(e: &FiniteEllipsoid, q: HolderExponent) -> f64 {
    let p = e.p();
    if q >= p {
        e.axes()[0]
    } else {
        let r = 1.0 / (q.reciprocal() - p.reciprocal());
        e.axes().iter().map(|m| m.powf(r)).sum::<f64>().powf(1.0 / r)
    }
}

/// Half cell diagonal in the q-norm.
fn grid_delta(grid: &Grid, q: HolderExponent) -> f64 {
    lp_norm(grid.half.iter().copied(), q)
}

/// A greedy cover of the grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverResult {
    /// Upper bound on `N(ε + δ)`.
    pub count: u64,
    pub delta: f64,
}

pub fn greedy_cover(e: &FiniteEllipsoid, q: HolderExponent, eps: f64, resolution: u32) -> Result<CoverResult> {
    check_eps(eps)?;
    let grid = Grid::new(e, resolution)?;
    let delta = grid_delta(&grid, q);
    if q_radius(e, q) <= eps {
        return Ok(CoverResult { count: 1, delta });
    }
    let n = grid.len();
    let keep: Vec<bool> = (0..n).into_par_iter().map(|i| grid.cell_meets(i)).collect();
    let mut covered = vec![false; n];
    let d = grid.dim();
    // Shifting the center along the diagonal lets one ball reach forward
    // in scan order; the scanned point stays strictly inside.
    let shift = eps * (1.0 - 1e-9) / (d as f64).powf(q.reciprocal());
    let reach = eps * (1.0 - 1e-12);
    let mut count = 0u64;
    for idx in 0..n {
        if !keep[idx] || covered[idx] {
            continue;
        }
        count += 1;
        let mut c = grid.point(idx);
        for x in c.iter_mut().take(d) {
            *x += shift;
        }
        covered[idx] = true;
        for j in grid.window(&c, eps) {
            if keep[j] && !covered[j] && grid.dist(&grid.point(j), &c, q) <= reach {
                covered[j] = true;
            }
        }
    }
    Ok(CoverResult { count, delta })
}

/// Size of a greedy `2ε`-separated subset of grid points inside the
/// ellipsoid: a lower bound on `N(ε)`.
///
/// Greedy selection alone can lose points when the grid is refined. A
/// ×3 refinement keeps every cell center, so the packing found on each
/// coarser grid `resolution/3, resolution/9, …` is also a packing here and
/// the best one is returned. The count is therefore non-decreasing along
/// ×3 refinements.
pub fn greedy_pack(e: &FiniteEllipsoid, q: HolderExponent, eps: f64, resolution: u32) -> Result<u64> {
    check_eps(eps)?;
    let mut best = greedy_pack_at(e, q, eps, resolution)?;
    let mut r = resolution;
    while r % 3 == 0 && r / 3 >= MIN_RESOLUTION {
        r /= 3;
        best = best.max(greedy_pack_at(e, q, eps, r)?);
    }
    Ok(best)
}

fn greedy_pack_at(e: &FiniteEllipsoid, q: HolderExponent, eps: f64, resolution: u32) -> Result<u64> {
    let grid = Grid::new(e, resolution)?;
    let n = grid.len();
    let inside: Vec<bool> = (0..n).into_par_iter().map(|i| grid.inside(i)).collect();
    let sep = 2.0 * eps * (1.0 + 1e-12);
    let mut chosen = vec![false; n];
    let mut picked: Vec<Point> = Vec::new();
    for idx in 0..n {
        if !inside[idx] {
            continue;
        }
        let x = grid.point(idx);
        let clash = if grid.window_size(&x, sep) < picked.len() {
            grid.window(&x, sep).into_iter().any(|j| chosen[j] && grid.dist(&grid.point(j), &x, q) <= sep)
        } else {
            picked.iter().any(|y| grid.dist(y, &x, q) <= sep)
        };
        if !clash {
            chosen[idx] = true;
            picked.push(x);
        }
    }
    Ok(picked.len() as u64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    /// Valid upper bound on `N(ε + δ)`.
    pub cover_count: u64,
    /// Valid lower bound on `N(ε)`.
    pub pack_count: u64,
    pub grid_resolution: u32,
    /// Grid slack: the q-norm of the half cell diagonal.
    pub delta: f64,
}

pub fn oracle_report(e: &FiniteEllipsoid, q: HolderExponent, eps: f64, resolution: u32) -> Result<OracleReport> {
    let cover = greedy_cover(e, q, eps, resolution)?;
    let pack_count = greedy_pack(e, q, eps, resolution)?;
    Ok(OracleReport { cover_count: cover.count, pack_count, grid_resolution: resolution, delta: cover.delta })
}

/// One inequality `lhs ≤ rhs` between bounds, in bits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub eps: f64,
    pub oracle: OracleReport,
    /// `log₂` of a greedy packing at `ε + δ`, comparable with the cover.
    pub log2_pack_matched: f64,
    pub volume_lower: f64,
    /// Volume bound at `ε + δ`.
    pub volume_lower_matched: f64,
    /// Density bound at its tightest η; absent in dimension 1.
    pub density_upper: Option<f64>,
    /// Exact entropy at ε and at `ε + δ`, only for `p = q = ∞`.
    pub exact: Option<f64>,
    pub exact_matched: Option<f64>,
    pub checks: Vec<InequalityCheck>,
}

impl SandwichReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Evaluates every bound on one instance and checks all comparable pairs.
pub fn sandwich_report(e: &FiniteEllipsoid, q: HolderExponent, eps: f64, resolution: u32) -> Result<SandwichReport> {
    let oracle = oracle_report(e, q, eps, resolution)?;
    let wide = eps + oracle.delta;
    let log2_cover = (oracle.cover_count as f64).log2();
    let log2_pack = (oracle.pack_count as f64).log2();
    let log2_pack_matched = (greedy_pack(e, q, wide, resolution)? as f64).log2();
    let volume_lower = volume_lower_bound(e, q, eps)?.log2_bound;
    let volume_lower_matched = volume_lower_bound(e, q, wide)?.log2_bound;
    let density_upper = if e.dim() >= 2 { Some(tightest_density_upper_bound(e, q, eps)?.log2_bound) } else { None };
    let (exact, exact_matched) = if e.p().is_infinite() && q.is_infinite() {
        let model = SemiAxisModel::table(e.axes().to_vec(), None)?;
        (Some(exact_entropy(&model, eps)?.bits), Some(exact_entropy(&model, wide)?.bits))
    } else {
        (None, None)
    };

    let mut checks = Vec::new();
    let mut check = |name: &str, lhs: f64, rhs: f64| {
        checks.push(InequalityCheck { name: name.to_string(), lhs, rhs, pass: lhs <= rhs + CHECK_TOL });
    };
    check("volume_lower(eps+delta) <= log2 cover", volume_lower_matched, log2_cover);
    check("log2 pack(eps+delta) <= log2 cover", log2_pack_matched, log2_cover);
    if let Some(up) = density_upper {
        check("volume_lower(eps) <= density_upper(eps)", volume_lower, up);
        check("log2 pack(eps) <= density_upper(eps)", log2_pack, up);
    }
    if let (Some(ex), Some(ex_m)) = (exact, exact_matched) {
        check("volume_lower(eps) <= exact(eps)", volume_lower, ex);
        check("log2 pack(eps) <= exact(eps)", log2_pack, ex);
        check("volume_lower(eps+delta) <= exact(eps+delta)", volume_lower_matched, ex_m);
        check("exact(eps+delta) <= log2 cover", ex_m, log2_cover);
        if let Some(up) = density_upper {
            check("exact(eps) <= density_upper(eps)", ex, up);
        }
    }
    Ok(SandwichReport {
        eps,
        oracle,
        log2_pack_matched,
        volume_lower,
        volume_lower_matched,
        density_upper,
        exact,
        exact_matched,
        checks,
    })
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("radius must be positive and finite, got {eps}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn inf() -> HolderExponent {
        HolderExponent::INFINITY
    }
    fn fin(p: f64) -> HolderExponent {
        HolderExponent::finite(p).unwrap()
    }
    fn ell(p: HolderExponent, axes: &[f64]) -> FiniteEllipsoid {
        FiniteEllipsoid::new(p, axes.to_vec()).unwrap()
    }

    #[test]
    fn one_dimensional_examples() {
        let e = ell(fin(2.0), &[1.0]);
        let c = greedy_cover(&e, fin(2.0), 0.25, 256).unwrap();
        assert!(c.count == 4 || c.count == 5, "{}", c.count);
        assert!((c.delta - 1.0 / 256.0).abs() < 1e-15);
        let pack = greedy_pack(&e, fin(2.0), 0.2, 64).unwrap();
        assert!(pack >= 3);
        assert!(pack <= 5);
        assert_eq!(greedy_pack(&e, fin(2.0), 0.25, 256).unwrap(), 4);
    }

    #[test]
    fn product_grid_lower_limit() {
        let e = ell(inf(), &[1.0, 0.5]);
        let c = greedy_cover(&e, inf(), 0.3, 64).unwrap();
        assert!(c.count >= 8);
    }

    #[test]
    fn huge_radius_is_one_ball() {
        let e = ell(fin(1.0), &[1.0, 0.7, 0.2]);
        assert_eq!(greedy_cover(&e, fin(2.0), 1.0, 16).unwrap().count, 1);
        assert_eq!(greedy_pack(&e, fin(2.0), 5.0, 16).unwrap(), 1);
        // p = ∞, q = 1: the radius is Σ μ_i.
        let e = ell(inf(), &[1.0, 0.5]);
        assert!((q_radius(&e, fin(1.0)) - 1.5).abs() < 1e-15);
        assert!(greedy_cover(&e, fin(1.0), 1.2, 16).unwrap().count > 1);
    }

    #[test]
    fn input_limits() {
        let e4 = ell(fin(2.0), &[1.0; 4]);
        assert!(matches!(greedy_cover(&e4, fin(2.0), 0.1, 8), Err(EntropyError::DimensionTooLarge { .. })));
        let e = ell(fin(2.0), &[1.0, 1.0, 1.0]);
        assert!(greedy_pack(&e, fin(2.0), 0.1, 4).is_err());
        assert!(matches!(greedy_pack(&e, fin(2.0), 0.1, 1000), Err(EntropyError::EnumerationTooLarge { .. })));
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let e = ell(fin(1.5), &[1.0, 0.8, 0.5]);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| oracle_report(&e, fin(2.0), 0.2, 32).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn pack_count_grows_along_nested_refinement() {
        // Plain greedy drops from 7 to 6 points here when refined.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let exps = [fin(1.0), fin(2.0), inf()];
        for _ in 0..20 {
            let d = rng.gen_range(1..=3);
            let mut axes: Vec<f64> = (0..d).map(|_| rng.gen_range(0.2..1.0)).collect();
            axes.sort_by(|a, b| b.total_cmp(a));
            let p = exps[rng.gen_range(0..3)];
            let q = exps[rng.gen_range(0..3)];
            let e = FiniteEllipsoid::new(p, axes).unwrap();
            let eps = rng.gen_range(0.05..0.4) * e.axes()[0];
            let counts: Vec<u64> = [9, 27, 81].iter().map(|&r| greedy_pack(&e, q, eps, r).unwrap()).collect();
            assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{counts:?}");
        }
    }

    #[test]
    fn delta_shrinks_with_resolution() {
        let e = ell(fin(2.0), &[1.0, 0.5]);
        let d: Vec<f64> = [8, 16, 48, 144].iter().map(|&r| greedy_cover(&e, fin(2.0), 0.3, r).unwrap().delta).collect();
        assert!(d.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn randomized_sandwiches_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let exps = [fin(1.0), fin(2.0), inf()];
        for _ in 0..12 {
            let d = rng.gen_range(2..=3);
            let mut axes: Vec<f64> = (0..d).map(|_| rng.gen_range(0.2..1.0)).collect();
            axes.sort_by(|a, b| b.total_cmp(a));
            let p = exps[rng.gen_range(0..3)];
            let q = exps[rng.gen_range(0..3)];
            let e = FiniteEllipsoid::new(p, axes.clone()).unwrap();
            let eps = rng.gen_range(0.1..0.4) * axes[d - 1];
            let r = sandwich_report(&e, q, eps, 24).unwrap();
            for c in &r.checks {
                assert!(c.pass, "{axes:?} p={p} q={q} eps={eps}: {} ({} > {})", c.name, c.lhs, c.rhs);
            }
        }
    }

    #[test]
    fn exact_value_inside_brackets() {
        let e = ell(inf(), &[1.0, 0.6, 0.35]);
        let r = sandwich_report(&e, inf(), 0.11, 32).unwrap();
        assert!(r.exact.is_some());
        assert!(r.checks.len() >= 7);
        assert!(r.all_pass(), "{:?}", r.checks);
    }

    #[test]
    fn near_flat_ellipsoid_stays_ordered() {
        let e = ell(fin(2.0), &[1.0, 1e-6]);
        let r = sandwich_report(&e, fin(2.0), 0.05, 64).unwrap();
        assert!(r.all_pass(), "{:?}", r.checks);
    }
}
