use anyhow::{bail, Context, Result};
use bessel_geom::audit::corollary_audit;
use bessel_geom::bessel::ode_residual;
use bessel_geom::thresholds::{find_all_roots, SCAN_STEP};
use bessel_geom::{
    eval_u_derivatives, eval_w_derivatives, find_threshold, lemma1_sum, lemma2_sum, positivity_scan, sup_estimate,
    theorem1_condition, theorem2_condition, BesselParams64, ClassSpec64, Complex64, ConditionVerdict64, DiskGrid64,
    Error, FigureFunction, QuotientKind, RootResult64, SumReport64, SupEstimate64, Variant,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::{complex, csv, csv_num, num, object, record, Output};
use crate::{
    AuditArgs, CheckArgs, ClassArg, EvalArgs, FigureArgs, FormatArg, ModeArg, ReportFormatArg, ScanArgs, ThresholdArgs,
    VariantArg,
};

/// Right end of the positivity certificate reported with a threshold.
const CERTIFICATE_END: f64 = 50.0;
/// Upper limit on tabulated points.
const MAX_FIGURE_POINTS: usize = 10_000_000;
pub const THREADS_ENV: &str = "BESSEL_GEOM_THREADS";

pub struct Done {
    pub output: Output,
    /// Set when an implication that must hold was observed to fail.
    pub violation: Option<String>,
}

impl Done {
    fn json(v: Value) -> Self {
        Done { output: Output::Json(v), violation: None }
    }
}

fn variant(v: VariantArg) -> Variant {
    match v {
        VariantArg::Printed => Variant::AsPrinted,
        VariantArg::Derived => Variant::TheoremDerived,
    }
}

fn variant_name(v: VariantArg) -> &'static str {
    match v {
        VariantArg::Printed => "printed",
        VariantArg::Derived => "derived",
    }
}

fn class_name(c: ClassArg) -> &'static str {
    match c {
        ClassArg::Star => "star",
        ClassArg::Convex => "convex",
    }
}

fn figure_id(n: u8) -> Result<FigureFunction> {
    FigureFunction::from_number(n).with_context(|| format!("--figure must be 1..6, got {n}"))
}

pub fn eval(a: &EvalArgs) -> Result<Done> {
    let prm = BesselParams64::new(a.p, a.b, a.c)?;
    let z = Complex64::new(a.z, a.z_imag);
    let (u, du, d2u) = eval_u_derivatives(&prm, z, a.eps)?;
    let mut result = object([
        ("q", num(prm.q())),
        ("u", complex(u.value)),
        ("du", complex(du.value)),
        ("d2u", complex(d2u.value)),
        ("tail_bounds", json!({ "u": num(u.tail_bound), "du": num(du.tail_bound), "d2u": num(d2u.tail_bound) })),
        ("terms_used", json!(u.terms_used)),
    ]);
    if a.w {
        if a.z_imag != 0.0 || a.z.is_nan() || a.z <= 0.0 {
            bail!("--w needs a real positive z, got {z}");
        }
        let (w, dw, d2w) = eval_w_derivatives(&prm, a.z, a.eps)?;
        let residual = ode_residual(&prm, a.z, a.eps)?;
        result["w"] = object([
            ("value", num(w.value)),
            ("derivative", num(dw.value)),
            ("second_derivative", num(d2w.value)),
            ("tail_bounds", json!({ "w": num(w.tail_bound), "dw": num(dw.tail_bound), "d2w": num(d2w.tail_bound) })),
            ("ode_residual", num(residual)),
        ]);
    }
    let inputs = json!({
        "p": num(a.p), "b": num(a.b), "c": num(a.c),
        "z": num(a.z), "z_imag": num(a.z_imag), "eps": num(a.eps), "w": a.w,
    });
    Ok(Done::json(record("eval", inputs, result)))
}

fn sum_json(s: &SumReport64) -> Value {
    object([
        ("sum", num(s.sum)),
        ("tail_bound", num(s.tail_bound)),
        ("threshold", num(s.threshold)),
        ("margin", num(s.margin)),
        ("holds", json!(s.holds)),
        ("verdict", json!(s.verdict.as_str())),
        ("terms_used", json!(s.terms_used)),
    ])
}

fn theorem_json(t: &ConditionVerdict64, hypothesis_violated: bool) -> Value {
    object([
        ("criterion", json!(t.criterion.name())),
        ("variant", json!(t.variant.name())),
        ("value", num(t.value)),
        ("holds", json!(t.holds)),
        ("hypothesis_violated", json!(hypothesis_violated)),
    ])
}

fn disk_json(d: &SupEstimate64, grid: &DiskGrid64) -> Value {
    let rings: Vec<Value> = grid
        .radii()
        .iter()
        .zip(&d.ring_max)
        .map(|(&r, &m)| json!({ "radius": num(r), "max_quotient": num(m) }))
        .collect();
    object([
        ("quotient", json!(d.kind.name())),
        ("max_quotient", num(d.max_quotient)),
        ("argmax_z", complex(d.argmax_z)),
        ("violations", json!(d.violations)),
        ("degenerate_points", json!(d.degenerate_points)),
        ("points", json!(d.points)),
        ("rings", Value::Array(rings)),
        ("consistent_with_membership", json!(d.consistent())),
    ])
}

/// Layers computed for one parameter point.
struct Layers {
    theorem: Option<(ConditionVerdict64, bool)>,
    lemma: Option<SumReport64>,
    disk: Option<SupEstimate64>,
}

impl Layers {
    /// Broken links of theorem ⇒ lemma ⇒ disk, if any.
    fn violations(&self) -> Vec<String> {
        let mut out = vec![];
        if let (Some((t, hyp_broken)), Some(l)) = (&self.theorem, &self.lemma) {
            if t.holds && !hyp_broken && !l.holds {
                out.push(format!("{} holds ({:e}) but the coefficient sum fails", t.criterion.name(), t.value));
            }
        }
        if let (Some(l), Some(d)) = (&self.lemma, &self.disk) {
            if l.holds && d.violations > 0 {
                out.push(format!("coefficient sum holds but {} disk points violate the bound", d.violations));
            }
        }
        out
    }
}

fn layers(
    prm: &BesselParams64,
    cls: &ClassSpec64,
    class: ClassArg,
    v: VariantArg,
    (want_theorem, want_lemma, grid): (bool, bool, Option<&DiskGrid64>),
    eps: f64,
) -> Result<Layers> {
    let convex = class == ClassArg::Convex;
    let theorem = if want_theorem {
        let t =
            if convex { theorem2_condition(prm, cls, variant(v))? } else { theorem1_condition(prm, cls, variant(v))? };
        // the printed theorems assume c < 0 and claim nothing otherwise
        Some((t, v == VariantArg::Printed && prm.c() > 0.0))
    } else {
        None
    };
    let lemma = if want_lemma {
        Some(if convex { lemma2_sum(prm, cls, eps)? } else { lemma1_sum(prm, cls, eps)? })
    } else {
        None
    };
    let disk = grid.map(|g| {
        let kind = if convex { QuotientKind::Convex } else { QuotientKind::Starlike };
        sup_estimate(prm, cls, kind, g)
    });
    Ok(Layers { theorem, lemma, disk })
}

fn grid_with(angles: usize) -> Result<DiskGrid64> {
    Ok(DiskGrid64::default().with_angles(angles)?)
}

pub fn check(a: &CheckArgs) -> Result<Done> {
    let prm = BesselParams64::new(a.p, a.b, a.c)?;
    let cls = ClassSpec64::new(a.alpha, a.beta)?;
    let grid = grid_with(a.angles)?;
    let want = match a.mode {
        ModeArg::Lemma => (false, true, None),
        ModeArg::Theorem => (true, false, None),
        ModeArg::Disk => (false, false, Some(&grid)),
        ModeArg::All => (true, true, Some(&grid)),
    };
    let l = layers(&prm, &cls, a.class, a.variant, want, a.eps.max(f64::EPSILON))?;
    let broken = l.violations();
    let status = if a.mode != ModeArg::All {
        "not_applicable"
    } else if broken.is_empty() {
        "consistent"
    } else {
        "inconsistent"
    };
    let result = object([
        ("q", num(prm.q())),
        ("theorem", l.theorem.as_ref().map_or(Value::Null, |(t, h)| theorem_json(t, *h))),
        ("lemma", l.lemma.as_ref().map_or(Value::Null, sum_json)),
        ("disk", l.disk.as_ref().map_or(Value::Null, |d| disk_json(d, &grid))),
        ("chain", json!({ "status": status, "violations": broken })),
    ]);
    let inputs = json!({
        "p": num(a.p), "b": num(a.b), "c": num(a.c), "alpha": num(a.alpha), "beta": num(a.beta),
        "class": class_name(a.class), "mode": format!("{:?}", a.mode).to_lowercase(),
        "variant": variant_name(a.variant), "eps": num(a.eps), "angles": a.angles,
    });
    let violation = (!broken.is_empty()).then(|| broken.join("; "));
    Ok(Done { output: Output::Json(record("check", inputs, result)), violation })
}

fn root_json(r: &RootResult64) -> Value {
    object([
        ("x0", num(r.x0)),
        ("bracket", json!([num(r.bracket.0), num(r.bracket.1)])),
        ("iterations", json!(r.iterations)),
        ("residual", num(r.residual)),
    ])
}

pub fn threshold(a: &ThresholdArgs) -> Result<Done> {
    let fig = figure_id(a.figure)?;
    let (root, status) = match find_threshold(fig, a.tol) {
        Ok(r) => (root_json(&r), "root"),
        Err(Error::NoBracket { .. }) => (Value::Null, "no_bracket"),
        Err(e) => return Err(e.into()),
    };
    let all: Vec<Value> = find_all_roots(fig, a.tol)?.iter().map(root_json).collect();
    let low = fig.right_window().0;
    let step = 5.0 * SCAN_STEP;
    let changes = positivity_scan(fig, low, CERTIFICATE_END, step);
    let positive = changes.is_empty() && fig.eval(low).is_ok_and(|g: f64| g > 0.0);
    let result = object([
        ("figure", json!(fig.number())),
        ("status", json!(status)),
        ("threshold", root),
        ("all_roots", Value::Array(all)),
        ("singularity", num(fig.singularity())),
        (
            "positivity_scan",
            object([
                ("low", num(low)),
                ("high", num(CERTIFICATE_END)),
                ("step", num(step)),
                ("sign_changes", changes.iter().map(|&(x, y)| json!([num(x), num(y)])).collect()),
                ("positive_on_window", json!(positive)),
            ]),
        ),
    ]);
    let inputs = json!({ "figure": a.figure, "tol": num(a.tol) });
    Ok(Done::json(record("threshold", inputs, result)))
}

pub fn figure(a: &FigureArgs) -> Result<Done> {
    let fig = figure_id(a.figure)?;
    if !(a.low.is_finite() && a.high.is_finite() && a.low < a.high) {
        bail!("need finite --low < --high, got [{}, {}]", a.low, a.high);
    }
    if !(a.step > 0.0 && a.step.is_finite()) {
        bail!("--step must be positive, got {}", a.step);
    }
    let span = (a.high - a.low) / a.step;
    if span >= MAX_FIGURE_POINTS as f64 {
        bail!("{span:.0} points exceed the limit of {MAX_FIGURE_POINTS}");
    }
    // the small slack keeps `high` when it is a grid point up to rounding
    let n = (span + 1e-9).floor() as usize;
    let points: Vec<(f64, Option<f64>)> = (0..=n)
        .map(|i| {
            let x = a.low + a.step * i as f64;
            (x, fig.eval(x).ok())
        })
        .collect();
    let output = match a.format {
        FormatArg::Csv => Output::Text(csv(
            &["x", "g"],
            points.iter().map(|&(x, g)| vec![csv_num(x), csv_num(g.unwrap_or(f64::NAN))]),
        )),
        FormatArg::Json => {
            let pts: Vec<Value> =
                points.iter().map(|&(x, g)| json!({ "x": num(x), "g": g.map_or(Value::Null, num) })).collect();
            let inputs = json!({
                "figure": a.figure, "low": num(a.low), "high": num(a.high), "step": num(a.step), "format": "json",
            });
            let result = json!({ "figure": fig.number(), "singularity": num(fig.singularity()), "points": pts });
            Output::Json(record("figure", inputs, result))
        }
    };
    Ok(Done { output, violation: None })
}

fn parse_range(flag: &str, s: &str) -> Result<(f64, f64)> {
    let parse = |t: &str| t.trim().parse::<f64>().with_context(|| format!("{flag}: cannot parse {t:?}"));
    let (lo, hi) = match s.split_once(':') {
        Some((lo, hi)) => (parse(lo)?, parse(hi)?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        bail!("{flag}: need finite LOW <= HIGH, got {s:?}");
    }
    Ok((lo, hi))
}

fn axis((lo, hi): (f64, f64), steps: usize, flag: &str) -> Result<Vec<f64>> {
    if lo == hi {
        return Ok(vec![lo]);
    }
    if steps < 2 {
        bail!("{flag} spans an interval, so --steps must be at least 2");
    }
    let last = (steps - 1) as f64;
    Ok((0..steps).map(|i| if i + 1 == steps { hi } else { lo + (hi - lo) * i as f64 / last }).collect())
}

/// `--parallel` first, then the environment, 0 meaning rayon's default.
fn thread_count(flag: Option<usize>) -> Result<usize> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(THREADS_ENV) {
        Ok(s) if !s.trim().is_empty() => {
            s.trim().parse().with_context(|| format!("{THREADS_ENV} must be a non-negative integer, got {s:?}"))
        }
        _ => Ok(0),
    }
}

struct ScanRow {
    p: f64,
    alpha: f64,
    beta: f64,
    layers: Layers,
}

pub fn scan(a: &ScanArgs) -> Result<Done> {
    let ps = axis(parse_range("--p-range", &a.p_range)?, a.steps, "--p-range")?;
    let alphas = axis(parse_range("--alpha-range", &a.alpha_range)?, a.steps, "--alpha-range")?;
    let betas = axis(parse_range("--beta-range", &a.beta_range)?, a.steps, "--beta-range")?;
    let grid = grid_with(a.angles)?;
    let eps = a.eps.max(f64::EPSILON);

    let mut points = Vec::with_capacity(ps.len() * alphas.len() * betas.len());
    for &p in &ps {
        let prm = BesselParams64::new(p, a.b, a.c)?;
        for &alpha in &alphas {
            for &beta in &betas {
                points.push((prm, ClassSpec64::new(alpha, beta)?));
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new().num_threads(thread_count(a.parallel)?).build()?;
    let rows: Vec<ScanRow> = pool.install(|| {
        points
            .par_iter()
            .map(|(prm, cls)| {
                let layers = layers(prm, cls, a.class, a.variant, (true, true, Some(&grid)), eps)?;
                Ok(ScanRow { p: prm.p(), alpha: cls.alpha(), beta: cls.beta(), layers })
            })
            .collect::<Result<_>>()
    })?;

    let mut broken = vec![];
    for r in &rows {
        for v in r.layers.violations() {
            broken.push(format!("p={}, alpha={}, beta={}: {v}", r.p, r.alpha, r.beta));
        }
    }

    let output = match a.format {
        FormatArg::Csv => Output::Text(csv(
            &["p", "alpha", "beta", "theorem", "lemma", "disk_max"],
            rows.iter().map(|r| {
                let (t, _) = r.layers.theorem.as_ref().expect("computed");
                let l = r.layers.lemma.as_ref().expect("computed");
                let d = r.layers.disk.as_ref().expect("computed");
                vec![
                    csv_num(r.p),
                    csv_num(r.alpha),
                    csv_num(r.beta),
                    if t.holds { "holds" } else { "fails" }.to_string(),
                    l.verdict.as_str().to_string(),
                    csv_num(d.max_quotient),
                ]
            }),
        )),
        FormatArg::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let (t, hyp) = r.layers.theorem.as_ref().expect("computed");
                    let l = r.layers.lemma.as_ref().expect("computed");
                    let d = r.layers.disk.as_ref().expect("computed");
                    object([
                        ("p", num(r.p)),
                        ("alpha", num(r.alpha)),
                        ("beta", num(r.beta)),
                        ("theorem", json!(if t.holds { "holds" } else { "fails" })),
                        ("theorem_value", num(t.value)),
                        ("hypothesis_violated", json!(hyp)),
                        ("lemma", json!(l.verdict.as_str())),
                        ("lemma_sum", num(l.sum)),
                        ("disk_max", num(d.max_quotient)),
                        ("disk_violations", json!(d.violations)),
                    ])
                })
                .collect();
            let inputs = json!({
                "b": num(a.b), "c": num(a.c), "p_range": a.p_range, "alpha_range": a.alpha_range,
                "beta_range": a.beta_range, "class": class_name(a.class), "steps": a.steps,
                "variant": variant_name(a.variant), "eps": num(a.eps), "angles": a.angles,
            });
            let status = if broken.is_empty() { "consistent" } else { "inconsistent" };
            let result = json!({ "rows": rows, "chain": { "status": status, "violations": broken } });
            Output::Json(record("scan", inputs, result))
        }
    };
    let violation = (!broken.is_empty()).then(|| broken.join("; "));
    Ok(Done { output, violation })
}

pub fn audit(a: &AuditArgs) -> Result<Done> {
    let report = corollary_audit()?;
    let output = match a.format {
        ReportFormatArg::Markdown => Output::Text(report.to_markdown()),
        ReportFormatArg::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    let first = r.first_disagreement.map_or(Value::Null, |d| {
                        json!({
                            "p": num(d.p), "alpha": num(d.alpha), "beta": num(d.beta),
                            "printed": num(d.printed), "derived": num(d.derived),
                        })
                    });
                    object([
                        ("criterion", json!(r.criterion.name())),
                        ("points", json!(r.points)),
                        ("derived_disagreements", json!(r.derived_disagreements)),
                        ("corrected_disagreements", json!(r.corrected_disagreements)),
                        ("printed_holds_sum_fails", json!(r.printed_holds_sum_fails)),
                        ("corrected_holds_sum_fails", json!(r.corrected_holds_sum_fails)),
                        ("first_disagreement", first),
                        ("agrees", json!(r.agrees())),
                    ])
                })
                .collect();
            Output::Json(record("audit", json!({}), json!({ "rows": rows })))
        }
    };
    Ok(Done { output, violation: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layers_for(theorem: bool, hyp_broken: bool, lemma: bool, disk_violations: usize) -> Layers {
        let prm = BesselParams64::new(1.0, 1.0, -1.0).unwrap();
        let cls = ClassSpec64::new(0.0, 1.0).unwrap();
        let mut t = theorem1_condition(&prm, &cls, Variant::TheoremDerived).unwrap();
        t.holds = theorem;
        let mut l = lemma1_sum(&prm, &cls, 1e-12).unwrap();
        l.holds = lemma;
        let grid = DiskGrid64::new(vec![0.5], 4).unwrap();
        let mut d = sup_estimate(&prm, &cls, QuotientKind::Starlike, &grid);
        d.violations = disk_violations;
        Layers { theorem: Some((t, hyp_broken)), lemma: Some(l), disk: Some(d) }
    }

    #[test]
    fn broken_links_are_reported() {
        assert!(layers_for(true, false, true, 0).violations().is_empty());
        assert!(layers_for(false, false, false, 3).violations().is_empty());
        assert_eq!(layers_for(true, false, false, 0).violations().len(), 1);
        assert_eq!(layers_for(false, false, true, 2).violations().len(), 1);
        // no claim outside the printed hypothesis
        assert!(layers_for(true, true, false, 0).violations().is_empty());
        // disk violations only count against a passing coefficient sum
        assert_eq!(layers_for(true, false, false, 5).violations().len(), 1);
    }

    #[test]
    fn ranges_and_axes() {
        assert_eq!(parse_range("--p", "-1:2").unwrap(), (-1.0, 2.0));
        assert_eq!(parse_range("--p", "3").unwrap(), (3.0, 3.0));
        assert!(parse_range("--p", "2:1").is_err());
        assert!(parse_range("--p", "a:1").is_err());
        assert_eq!(axis((0.0, 1.0), 3, "--p").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(axis((2.0, 2.0), 9, "--p").unwrap(), vec![2.0]);
        assert!(axis((0.0, 1.0), 1, "--p").is_err());
    }
}
