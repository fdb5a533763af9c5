//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any criterion fails.

use std::f64::consts::LN_2;
use std::process::ExitCode;
use std::time::Instant;

use ellipsoid_entropy::asymptotics::{classify, entropy_estimator, hilbert_leading, hilbert_second_order};
use ellipsoid_entropy::block_decomp::{infinite_upper_bound, mixed_lower_bound, mixed_overhead, mixed_upper_bound};
use ellipsoid_entropy::constants::{gamma_pq, volume_ratio, zeta_series_constant, zeta_series_constant_alternating};
use ellipsoid_entropy::hyperrect::{canonical_asymptotic, exact_entropy, exact_entropy_counting};
use ellipsoid_entropy::oracle::sandwich_report;
use ellipsoid_entropy::{
    log_grid, FiniteEllipsoid, HolderExponent, MixedEllipsoidSpec, RegimeCase, SemiAxisModel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn inf() -> HolderExponent {
    HolderExponent::INFINITY
}

fn fin(p: f64) -> HolderExponent {
    HolderExponent::finite(p).unwrap()
}

fn canon(b: f64, c: f64) -> SemiAxisModel {
    SemiAxisModel::canonical(b, c).unwrap()
}

fn exact_dual_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0001);
    let mut bad = 0;
    for _ in 0..200 {
        let len = rng.gen_range(1..=40);
        let mut axes: Vec<f64> = (0..len).map(|_| rng.gen_range(1e-3..5.0)).collect();
        axes.sort_by(|a, b| b.total_cmp(a));
        let model = SemiAxisModel::table(axes.clone(), None).unwrap();
        let eps = axes[0] * rng.gen_range(0.01..1.2);
        let direct = exact_entropy(&model, eps).unwrap();
        let counting = exact_entropy_counting(&model, eps).unwrap();
        if !counting.equals_product(direct.covering_number()) {
            bad += 1;
        }
    }
    Outcome::new(bad == 0, format!("{bad}/200 integer mismatches"))
}

fn canonical_corner_asymptotic() -> Outcome {
    let model = canon(1.0, 1.0);
    let mut ks = Vec::new();
    let mut rel = 0.0;
    for eps in [1e-2, 1e-3, 1e-4] {
        let exact = exact_entropy(&model, eps).unwrap().bits;
        let lead = canonical_asymptotic(1.0, 1.0, eps).unwrap();
        ks.push((exact - lead).abs() / (1.0 / eps).log2());
        rel = (exact - lead).abs() / exact;
    }
    let envelope = ks[1..].iter().all(|&k| k <= 1.1 * ks[0]);
    Outcome::new(envelope && rel <= 0.02, format!("K(eps) = {ks:.4?}, relative error at 1e-4 = {rel:.2e}"))
}

fn hilbert_leading_constant() -> Outcome {
    let mut ratios = Vec::new();
    for (b, c) in [(1.0, 1.0), (2.0, 1.0), (1.0, 3.0)] {
        let est = entropy_estimator(&canon(b, c), 1e-4).unwrap();
        ratios.push(est / hilbert_leading(b, c, 1e-4).unwrap());
    }
    let pass = ratios.iter().all(|r| (0.98..=1.02).contains(r));
    Outcome::new(pass, format!("ratios for (1,1), (2,1), (1,3) = {ratios:.5?}"))
}

fn second_order_residual() -> Outcome {
    let model = SemiAxisModel::two_term(1.0, 1.0, 1.0, 1.25).unwrap();
    let res: Vec<f64> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&eps| {
            let est = entropy_estimator(&model, eps).unwrap();
            let approx = hilbert_second_order(1.0, 1.25, 1.0, 1.0, eps).unwrap();
            (est - approx).abs() / eps.powf(-0.75)
        })
        .collect();
    let pass = res.windows(2).all(|w| w[1] < w[0]);
    Outcome::new(pass, format!("normalized residuals = {res:.4?}"))
}

fn finite_sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0005);
    let exps = [fin(1.0), fin(2.0), inf()];
    let mut failures = Vec::new();
    for i in 0..50 {
        let d = rng.gen_range(2..=3);
        let mut axes: Vec<f64> = (0..d).map(|_| rng.gen_range(0.2..1.0)).collect();
        axes.sort_by(|a, b| b.total_cmp(a));
        let p = exps[rng.gen_range(0..3)];
        let q = exps[rng.gen_range(0..3)];
        let eps = rng.gen_range(0.1..0.4) * axes[d - 1];
        let e = FiniteEllipsoid::new(p, axes.clone()).unwrap();
        match sandwich_report(&e, q, eps, 64) {
            Ok(r) => {
                for c in r.checks.iter().filter(|c| !c.pass) {
                    failures.push(format!("#{i} p={p} q={q} eps={eps:.4}: {} ({} > {})", c.name, c.lhs, c.rhs));
                }
            }
            Err(err) => failures.push(format!("#{i}: {err}")),
        }
    }
    let detail = if failures.is_empty() { "50/50 instances ordered".to_string() } else { failures.join("; ") };
    Outcome::new(failures.is_empty(), detail)
}

fn certified_infinite_bound() -> Outcome {
    let model = canon(1.0, 1.0);
    let mut bad = Vec::new();
    for eps in log_grid(1e-3, 0.5, 20) {
        let up = infinite_upper_bound(&model, inf(), inf(), eps).unwrap().result.bits;
        let ex = exact_entropy(&model, eps).unwrap().bits;
        if up < ex {
            bad.push(format!("eps={eps:.3e}: {up} < {ex}"));
        }
    }
    Outcome::new(bad.is_empty(), if bad.is_empty() { "20/20 radii".into() } else { bad.join("; ") })
}

fn constants() -> Outcome {
    let grid = [fin(1.0), fin(1.5), fin(2.0), fin(3.0), inf()];
    let mut notes = Vec::new();
    let mut pass = true;

    if !grid.iter().all(|&p| gamma_pq(p, p) == 1.0) {
        pass = false;
        notes.push("gamma_pp != 1".to_string());
    }
    let mut worst_product = 0f64;
    for &p in &grid {
        for &q in &grid {
            worst_product = worst_product.max((gamma_pq(p, q) * gamma_pq(q, p) - 1.0).abs());
        }
    }
    pass &= worst_product <= 1e-12;
    notes.push(format!("max |G_pq G_qp - 1| = {worst_product:.1e}"));

    let ds: Vec<usize> = log_grid(50.0, 1e4, 12).into_iter().map(|x| x.round() as usize).collect();
    let mut envelope_misses = Vec::new();
    for &p in &grid {
        for &q in &grid {
            if p == q {
                continue;
            }
            let e = q.reciprocal() - p.reciprocal();
            let scaled = |d: usize| {
                let r = volume_ratio(p, q, d).unwrap() / (gamma_pq(p, q) * (d as f64).powf(e));
                d as f64 * (r - 1.0).abs()
            };
            let k = scaled(ds[0]);
            let worst = ds.iter().map(|&d| scaled(d)).fold(0.0, f64::max);
            if worst > 1.1 * k {
                envelope_misses.push(format!("({p},{q}) K50={k:.3} max={worst:.3}"));
            }
        }
    }
    pass &= envelope_misses.is_empty();
    if envelope_misses.is_empty() {
        notes.push("volume ratio within K/d on all pairs".into());
    } else {
        notes.push(format!("volume ratio exceeds K/d for {}", envelope_misses.join(", ")));
    }

    let mut worst_zeta = 0f64;
    for b in [0.5, 1.0, 2.0] {
        let a = zeta_series_constant(b).unwrap();
        let z = zeta_series_constant_alternating(b).unwrap();
        worst_zeta = worst_zeta.max((a - z).abs());
    }
    pass &= worst_zeta <= 1e-8;
    notes.push(format!("zeta routes differ by {worst_zeta:.1e}"));
    Outcome::new(pass, notes.join("; "))
}

fn regime_truth_table() -> Outcome {
    use RegimeCase::*;
    let rows = [
        (fin(2.0), fin(2.0), 1.0, false, true, CompactIii),
        (fin(2.0), fin(1.0), 0.3, false, true, NonCompactA),
        (fin(1.0), fin(2.0), 1.0, false, true, CompactIv),
        (fin(2.0), fin(1.0), 0.5, false, true, NonCompactB),
        (fin(2.0), fin(1.0), 0.5, true, false, CriticalIi),
        (inf(), fin(2.0), 0.5, false, true, NonCompactB),
        (inf(), fin(1.0), 0.5, false, true, NonCompactA),
        (inf(), fin(3.0), 0.5, false, true, CompactIii),
        (fin(3.0), inf(), 0.1, false, true, CompactIv),
        (fin(4.0), fin(2.0), 0.25, true, false, CriticalIi),
    ];
    let mut bad = Vec::new();
    for (i, &(p, q, b, summable, liminf, want)) in rows.iter().enumerate() {
        match classify(p, q, b, summable, liminf) {
            Ok(r) if r.case == want => {}
            Ok(r) => bad.push(format!("row {}: {} != {}", i + 1, r.case, want)),
            Err(e) => bad.push(format!("row {}: {e}", i + 1)),
        }
    }
    Outcome::new(bad.is_empty(), if bad.is_empty() { "10/10 rows".into() } else { bad.join("; ") })
}

fn cesaro_law() -> Outcome {
    let mut bad = Vec::new();
    for b in [0.5, 1.0, 3.0] {
        let m = canon(b, 1.0);
        let dev = |n: u64| (m.cesaro_log_ratio(n).unwrap() - b / LN_2).abs();
        let rate = |n: u64| (n as f64).ln() / n as f64;
        let k = dev(1_000) / rate(1_000);
        for n in [1_000u64, 10_000, 100_000] {
            if dev(n) > k * rate(n) * (1.0 + 1e-12) {
                bad.push(format!("b={b} N={n}: {:.3e} > {:.3e}", dev(n), k * rate(n)));
            }
        }
    }
    Outcome::new(bad.is_empty(), if bad.is_empty() { "9/9 points inside K log N/N".into() } else { bad.join("; ") })
}

fn mixed_bracket() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0010);
    let ks = [1.0, 1e3, 1e6];
    let mut bad = Vec::new();
    for i in 0..20 {
        let b = rng.gen_range(0.5..2.0);
        let blocks = rng.gen_range(1..=4);
        let dims: Vec<u64> = (0..blocks + 2).map(|_| rng.gen_range(9..=60)).collect();
        let model = canon(b, 1.0);
        let eps = model.axis(blocks).unwrap() * rng.gen_range(0.6..0.99);
        let rogers_k = ks[rng.gen_range(0..3)];
        let spec = MixedEllipsoidSpec::new(model.clone(), dims.clone()).unwrap();
        let up = mixed_upper_bound(&spec, eps, 1.0, rogers_k).unwrap();
        let lo = mixed_lower_bound(&spec, eps).unwrap();
        let lo_wide = mixed_lower_bound(&spec, up.result.epsilon).unwrap();
        if !(lo.bits <= up.result.bits && lo_wide.bits <= up.result.bits) {
            bad.push(format!("#{i}: lower {} > upper {}", lo.bits, up.result.bits));
        }

        let mut prev = f64::INFINITY;
        for scale in [1u64, 4, 16, 64] {
            let grown = MixedEllipsoidSpec::new(model.clone(), dims.iter().map(|d| d * scale).collect()).unwrap();
            let u = mixed_upper_bound(&grown, eps, 1.0, rogers_k).unwrap();
            let o = mixed_overhead(&u, &mixed_lower_bound(&grown, eps).unwrap()).unwrap();
            if !(o < prev) {
                bad.push(format!("#{i}: overhead {o} not below {prev} at scale {scale}"));
            }
            prev = o;
        }
    }
    Outcome::new(bad.is_empty(), if bad.is_empty() { "20/20 specs bracketed, overhead decreasing".into() } else { bad.join("; ") })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("exact dual formula", exact_dual_formula),
        ("canonical inf/inf asymptotic", canonical_corner_asymptotic),
        ("Hilbert leading constant", hilbert_leading_constant),
        ("second-order residual", second_order_residual),
        ("finite sandwich", finite_sandwich),
        ("certified infinite bound", certified_infinite_bound),
        ("constants", constants),
        ("regime classifier", regime_truth_table),
        ("Cesaro mean law", cesaro_law),
        ("mixed bracket", mixed_bracket),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("{tag} [{:>2}] {name} ({:.1}s): {}", i + 1, start.elapsed().as_secs_f64(), out.detail);
        failed += usize::from(!out.pass);
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
