//! Printed-vs-derived consistency audit of the corollary conditions.
//!
//! For every corollary display the audit evaluates the printed form and the
//! form obtained by substituting `(b, c)` into the theorem inequality, on a
//! fixed `(p, α, β)` grid, and counts where their verdicts differ. It also
//! counts grid points where a condition holds while the coefficient sum it
//! is supposed to dominate does not.

use std::fmt::Write as _;

use crate::bessel::BesselParams;
use crate::conditions::{corollary_condition, CriterionId, Variant};
use crate::criteria::{lemma1_sum, lemma2_sum, ClassSpec, DEFAULT_SUM_EPS};
use crate::Result;

pub const AUDIT_P_POINTS: usize = 50;
pub const AUDIT_P_STEP: f64 = 0.4;
pub const AUDIT_ALPHAS: [f64; 5] = [0.0, 0.2, 0.4, 0.6, 0.8];
pub const AUDIT_BETAS: [f64; 5] = [0.2, 0.4, 0.6, 0.8, 1.0];

/// A grid point where printed and theorem-derived verdicts differ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disagreement {
    pub p: f64,
    pub alpha: f64,
    pub beta: f64,
    pub printed: f64,
    pub derived: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditRow {
    pub criterion: CriterionId,
    pub points: usize,
    /// Printed vs theorem-derived verdicts differ.
    pub derived_disagreements: usize,
    /// Printed vs sign-corrected (`|c|`) verdicts differ.
    pub corrected_disagreements: usize,
    pub first_disagreement: Option<Disagreement>,
    /// Printed condition holds while the coefficient sum fails.
    pub printed_holds_sum_fails: usize,
    /// Sign-corrected condition holds while the coefficient sum fails.
    pub corrected_holds_sum_fails: usize,
}

impl AuditRow {
    pub fn agrees(&self) -> bool {
        self.derived_disagreements == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
}

/// Orders `p` used for a corollary with domain `p > bound`.
pub fn audit_orders(bound: f64) -> Vec<f64> {
    (0..AUDIT_P_POINTS).map(|i| bound + 0.1 + AUDIT_P_STEP * i as f64).collect()
}

fn audit_row(id: CriterionId) -> Result<AuditRow> {
    let bound = id.order_bound().expect("corollary");
    let (b, c) = id.specialization().expect("corollary");
    let betas: &[f64] = if id.is_beta_one_form() { &[1.0] } else { &AUDIT_BETAS };
    let mut row = AuditRow {
        criterion: id,
        points: 0,
        derived_disagreements: 0,
        corrected_disagreements: 0,
        first_disagreement: None,
        printed_holds_sum_fails: 0,
        corrected_holds_sum_fails: 0,
    };
    for p in audit_orders(bound) {
        let params = BesselParams::new(p, b, c)?;
        for &alpha in &AUDIT_ALPHAS {
            for &beta in betas {
                let cls = ClassSpec::new(alpha, beta)?;
                let printed = corollary_condition(id, p, &cls, Variant::AsPrinted)?;
                let derived = corollary_condition(id, p, &cls, Variant::TheoremDerived)?;
                let corrected = corollary_condition(id, p, &cls, Variant::SignCorrected)?;
                let sum = if id.is_convex() {
                    lemma2_sum(&params, &cls, DEFAULT_SUM_EPS)?
                } else {
                    lemma1_sum(&params, &cls, DEFAULT_SUM_EPS)?
                };
                row.points += 1;
                if printed.holds != derived.holds {
                    row.derived_disagreements += 1;
                    row.first_disagreement.get_or_insert(Disagreement {
                        p,
                        alpha,
                        beta,
                        printed: printed.value,
                        derived: derived.value,
                    });
                }
                if printed.holds != corrected.holds {
                    row.corrected_disagreements += 1;
                }
                if printed.holds && !sum.holds {
                    row.printed_holds_sum_fails += 1;
                }
                if corrected.holds && !sum.holds {
                    row.corrected_holds_sum_fails += 1;
                }
            }
        }
    }
    Ok(row)
}

/// Runs the audit over every corollary display.
pub fn corollary_audit() -> Result<AuditReport> {
    let rows = CriterionId::COROLLARIES.iter().map(|&id| audit_row(id)).collect::<Result<Vec<_>>>()?;
    Ok(AuditReport { rows })
}

impl AuditReport {
    pub fn row(&self, id: CriterionId) -> Option<&AuditRow> {
        self.rows.iter().find(|r| r.criterion == id)
    }

    /// Deterministic markdown rendering.
    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Corollary consistency audit\n");
        let _ = writeln!(
            s,
            "Grid: {AUDIT_P_POINTS} orders p = bound + 0.1 + {AUDIT_P_STEP}·i, alpha in {AUDIT_ALPHAS:?}, \
             beta in {AUDIT_BETAS:?} (beta = 1 only for the equation forms).\n"
        );
        let _ = writeln!(s, "Columns:\n");
        let _ = writeln!(
            s,
            "- `derived`: verdict differs between printed display and theorem display with (b, c) substituted."
        );
        let _ =
            writeln!(s, "- `|c|`: verdict differs between printed display and the |c| (sign-corrected) theorem form.");
        let _ = writeln!(
            s,
            "- `printed⇒sum` / `|c|⇒sum`: condition holds but the coefficient sum exceeds its threshold.\n"
        );
        let _ = writeln!(s, "| criterion | (b, c) | points | derived | \\|c\\| | printed⇒sum | \\|c\\|⇒sum | first disagreement (p, α, β: printed, derived) |");
        let _ = writeln!(s, "|---|---|---|---|---|---|---|---|");
        for r in &self.rows {
            let (b, c) = r.criterion.specialization().unwrap_or((f64::NAN, f64::NAN));
            let first = r.first_disagreement.map_or_else(
                || "-".to_string(),
                |d| format!("{:.1}, {:.1}, {:.1}: {:+.6}, {:+.6}", d.p, d.alpha, d.beta, d.printed, d.derived),
            );
            let _ = writeln!(
                s,
                "| {} | ({b}, {c}) | {} | {} | {} | {} | {} | {} |",
                r.criterion.name(),
                r.points,
                r.derived_disagreements,
                r.corrected_disagreements,
                r.printed_holds_sum_fails,
                r.corrected_holds_sum_fails,
                first
            );
        }
        let cls = ClassSpec::new(0.0, 1.0).expect("valid class");
        if let (Ok(printed), Ok(derived)) = (
            corollary_condition(CriterionId::Cor2, 1.0, &cls, Variant::AsPrinted),
            corollary_condition(CriterionId::Cor2, 1.0, &cls, Variant::TheoremDerived),
        ) {
            let _ = writeln!(
                s,
                "\nSpot check cor2 at p = 1, alpha = 0, beta = 1: printed {:+.6} ({}), theorem-derived {:+.6} ({}).",
                printed.value,
                if printed.holds { "holds" } else { "fails" },
                derived.value,
                if derived.holds { "holds" } else { "fails" },
            );
        }
        s
    }
}
