//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use bessel_geom::audit::corollary_audit;
use bessel_geom::bessel::ode_residual;
use bessel_geom::criteria::{starlike_coefficient_sum, BesselCoefficients, SignMode, ZDerivative, DEFAULT_SUM_EPS};
use bessel_geom::disk::{sup_estimate_both, TaylorSeries};
use bessel_geom::thresholds::find_all_roots;
use bessel_geom::{
    convex_quotient, eval_u, find_threshold, lemma1_closed_form, lemma1_sum, lemma2_sum, positivity_scan,
    starlike_quotient, theorem1_condition, theorem2_condition, BesselKind, BesselParams64, ClassSpec64, Complex64,
    CriterionId, DiskGrid64, Error, FigureFunction, Variant, DEFAULT_SERIES_EPS,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, ok: String, bad: String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(bad)
    }
}

fn thresholds() -> Outcome {
    let quoted = [
        (FigureFunction::Fig1, -1.5314f64),
        (FigureFunction::Fig3, -2.0314f64),
        (FigureFunction::Fig4, -1.5254f64),
        (FigureFunction::Fig5, 3.8523f64),
        (FigureFunction::Fig6, -2.0254f64),
    ];
    let start = Instant::now();
    let mut found = vec![];
    for (fig, x) in quoted {
        let r = find_threshold(fig, 1e-10).map_err(|e| format!("fig{}: {e}", fig.number()))?;
        if (r.x0 - x).abs() > 1e-3 {
            return Err(format!("fig{}: x0 = {:.6}, quoted {x}", fig.number(), r.x0));
        }
        found.push(format!("fig{}={:.6}", fig.number(), r.x0));
    }
    let elapsed = start.elapsed();
    check(
        elapsed < Duration::from_secs(1),
        format!("{} in {elapsed:.2?}", found.join(" ")),
        format!("too slow: {elapsed:.2?}"),
    )
}

fn fig2_anomaly() -> Outcome {
    match find_threshold::<f64>(FigureFunction::Fig2, 1e-10) {
        Err(Error::NoBracket { .. }) => {}
        other => return Err(format!("expected NoBracket, got {other:?}")),
    }
    let hits = positivity_scan(FigureFunction::Fig2, -1.999, 50.0, 0.005);
    let all = find_all_roots::<f64>(FigureFunction::Fig2, 1e-10).map_err(|e| e.to_string())?;
    check(
        hits.is_empty() && all.is_empty(),
        "NoBracket on (-2, 100], scan on [-1.999, 50] empty, no zero on either side of x = -2".into(),
        format!("sign changes {hits:?}, roots {}", all.len()),
    )
}

#[derive(Default)]
struct ChainCounts {
    draws: usize,
    theorem_holds: usize,
    lemma_holds: usize,
    theorem_without_lemma: usize,
    lemma_without_disk: usize,
    degenerate: usize,
}

fn chain_draw(seed: u64) -> Result<ChainCounts, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = rng.gen_range(0.05..=20.0);
    let c = rng.gen_range(-5.0..=-0.01);
    let alpha = rng.gen_range(0.0..=0.99);
    let beta = 1.0 - rng.gen_range(0.0..1.0);
    let prm = BesselParams64::from_shift(q, c).map_err(|e| e.to_string())?;
    let cls = ClassSpec64::new(alpha, beta).map_err(|e| e.to_string())?;
    let mut out = ChainCounts { draws: 1, ..Default::default() };

    let l1 = lemma1_sum(&prm, &cls, DEFAULT_SUM_EPS).map_err(|e| e.to_string())?;
    let l2 = lemma2_sum(&prm, &cls, DEFAULT_SUM_EPS).map_err(|e| e.to_string())?;
    let t1 = theorem1_condition(&prm, &cls, Variant::TheoremDerived).map_err(|e| e.to_string())?;
    let t2 = theorem2_condition(&prm, &cls, Variant::TheoremDerived).map_err(|e| e.to_string())?;
    for (t, l) in [(t1.holds, l1.holds), (t2.holds, l2.holds)] {
        out.theorem_holds += usize::from(t);
        out.lemma_holds += usize::from(l);
        out.theorem_without_lemma += usize::from(t && !l);
    }
    if l1.holds || l2.holds {
        let (star, convex) = sup_estimate_both(&prm, alpha, beta, &DiskGrid64::default());
        if l1.holds {
            out.lemma_without_disk += usize::from(star.violations > 0);
            out.degenerate += star.degenerate_points;
        }
        if l2.holds {
            out.lemma_without_disk += usize::from(convex.violations > 0);
            out.degenerate += convex.degenerate_points;
        }
    }
    Ok(out)
}

fn implication_chain() -> Outcome {
    const DRAWS: u64 = 500;
    let start = Instant::now();
    let parts = (0..DRAWS).into_par_iter().map(|i| chain_draw(0xC4A1_0000 + i)).collect::<Result<Vec<_>, _>>()?;
    let mut t = ChainCounts::default();
    for p in parts {
        t.draws += p.draws;
        t.theorem_holds += p.theorem_holds;
        t.lemma_holds += p.lemma_holds;
        t.theorem_without_lemma += p.theorem_without_lemma;
        t.lemma_without_disk += p.lemma_without_disk;
        t.degenerate += p.degenerate;
    }
    let elapsed = start.elapsed();
    let summary = format!(
        "{} draws, theorem holds {}x, lemma holds {}x, theorem-without-lemma {}, lemma-without-disk {}, \
         degenerate points {}, {elapsed:.1?}",
        t.draws, t.theorem_holds, t.lemma_holds, t.theorem_without_lemma, t.lemma_without_disk, t.degenerate
    );
    check(
        t.theorem_without_lemma == 0
            && t.lemma_without_disk == 0
            && t.degenerate == 0
            && t.lemma_holds > 0
            && elapsed < Duration::from_secs(120),
        summary.clone(),
        summary,
    )
}

fn duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_sum: f64 = 0.0;
    let mut worst_quot: f64 = 0.0;
    for _ in 0..500 {
        let q = rng.gen_range(0.5..=20.0);
        let c = rng.gen_range(-2.0..=2.0);
        let cls = ClassSpec64::new(rng.gen_range(0.0..=0.99), 1.0 - rng.gen_range(0.0..1.0)).unwrap();
        let z = Complex64::from_polar(rng.gen_range(0.0..=0.99), rng.gen_range(0.0..std::f64::consts::TAU));
        let prm = BesselParams64::from_shift(q, c).map_err(|e| e.to_string())?;
        let coeffs = BesselCoefficients { params: prm };

        let convex = lemma2_sum(&prm, &cls, DEFAULT_SUM_EPS).map_err(|e| e.to_string())?;
        let dual = starlike_coefficient_sum(&ZDerivative(coeffs), &cls, DEFAULT_SUM_EPS, SignMode::Absolute)
            .map_err(|e| e.to_string())?;
        worst_sum = worst_sum.max((convex.sum - dual.sum).abs());

        let zf = TaylorSeries { coefficients: ZDerivative(coeffs), eps: 1e-15 };
        let a = convex_quotient(&prm, z, cls.alpha()).map_err(|e| e.to_string())?;
        let b = starlike_quotient(&zf, z, cls.alpha()).map_err(|e| e.to_string())?;
        worst_quot = worst_quot.max((a - b).abs());
    }
    let summary = format!("500 draws, max |sum diff| = {worst_sum:.2e}, max |quotient diff| = {worst_quot:.2e}");
    check(worst_sum < 1e-12 && worst_quot < 1e-10, summary.clone(), summary)
}

fn committed_audit_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../reports/corollary_audit.md")
}

fn corollary_audit_check() -> Outcome {
    use CriterionId::*;
    let report = corollary_audit().map_err(|e| e.to_string())?;
    let mut problems = vec![];
    for id in [Cor1, Cor3, Cor10, Cor12, Eq2_8, Eq2_10, Eq2_13, Eq2_15] {
        let row = report.row(id).ok_or("missing row")?;
        if !row.agrees() {
            problems.push(format!("{} disagrees at {} points", id.name(), row.derived_disagreements));
        }
    }
    for id in [Cor2, Eq2_9] {
        let row = report.row(id).ok_or("missing row")?;
        if row.agrees() {
            problems.push(format!("{} shows no disagreement", id.name()));
        }
    }
    let cls = ClassSpec64::new(0.0, 1.0).unwrap();
    let printed = bessel_geom::corollary_condition(Cor2, 1.0, &cls, Variant::AsPrinted).map_err(|e| e.to_string())?;
    let derived =
        bessel_geom::corollary_condition(Cor2, 1.0, &cls, Variant::TheoremDerived).map_err(|e| e.to_string())?;
    if (printed.value - 4.417_550_299_655_642).abs() > 1e-9 || (derived.value + 1.164_899_400_688_716).abs() > 1e-9 {
        problems.push(format!("cor2 spot check {} / {}", printed.value, derived.value));
    }
    let committed = std::fs::read_to_string(committed_audit_path()).unwrap_or_default();
    if committed != report.to_markdown() {
        problems.push("reports/corollary_audit.md is missing or stale".into());
    }
    let cor2 = report.row(Cor2).unwrap();
    check(
        problems.is_empty(),
        format!(
            "8 displays agree; cor2 disagrees at {}/{} points (p=1: printed {:+.3}, derived {:+.3}); report up to date",
            cor2.derived_disagreements, cor2.points, printed.value, derived.value
        ),
        problems.join("; "),
    )
}

fn series_accuracy() -> Outcome {
    // J0(2) = Σ (-1)^k / (k!)², summed pairwise-compensated in a separate loop
    let mut oracle = 0.0f64;
    let mut comp = 0.0f64;
    let mut term = 1.0f64;
    for k in 0..40 {
        let y = term - comp;
        let t = oracle + y;
        comp = (t - oracle) - y;
        oracle = t;
        let kf = (k + 1) as f64;
        term *= -1.0 / (kf * kf);
    }
    if (oracle - 0.223_890_779_141_235_67).abs() > 1e-16 {
        return Err(format!("oracle drifted: {oracle}"));
    }
    let prm = BesselKind::Kind1(0.0f64).params().map_err(|e| e.to_string())?;
    let u = eval_u(&prm, Complex64::new(1.0, 0.0), DEFAULT_SERIES_EPS).map_err(|e| e.to_string())?;
    let rel = ((u.value.re - oracle) / oracle).abs();

    let mut worst: f64 = 0.0;
    for p in [0.0, 1.0, 2.5] {
        for b in [1.0, 2.0] {
            for c in [1.0, -1.0] {
                let prm = BesselParams64::new(p, b, c).map_err(|e| e.to_string())?;
                for x in [0.3, 0.7, 1.5] {
                    worst = worst.max(ode_residual(&prm, x, DEFAULT_SERIES_EPS).map_err(|e| e.to_string())?.abs());
                }
            }
        }
    }
    let summary = format!("J0(2) rel err {rel:.2e}, max ODE residual over 36 points {worst:.2e}");
    check(rel < 1e-12 && worst < 1e-8, summary.clone(), summary)
}

fn closed_form() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for (p, b, c) in [(-0.5, 1.0, -1.0), (1.0, 1.0, -1.0), (4.0, 2.0, -3.0)] {
        let prm = BesselParams64::new(p, b, c).map_err(|e| e.to_string())?;
        for alpha in [0.0, 0.5, 0.9] {
            for beta in [0.3, 0.7, 1.0] {
                let cls = ClassSpec64::new(alpha, beta).unwrap();
                let lhs = lemma1_closed_form(&prm, &cls).map_err(|e| e.to_string())?;
                let rhs = lemma1_sum(&prm, &cls, DEFAULT_SUM_EPS).map_err(|e| e.to_string())?.sum;
                worst = worst.max((lhs - rhs).abs());
                n += 1;
            }
        }
    }
    let summary = format!("{n} points, max |closed form - sum| = {worst:.2e}");
    check(n == 27 && worst < 1e-10, summary.clone(), summary)
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("threshold reproduction", thresholds),
        ("figure-2 anomaly", fig2_anomaly),
        ("implication chain", implication_chain),
        ("duality", duality),
        ("corollary audit", corollary_audit_check),
        ("series accuracy", series_accuracy),
        ("closed form", closed_form),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("PASS [{}] {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{}] {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
