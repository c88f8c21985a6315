//! Normalized generalized Bessel functions of the first kind and
//! coefficient/closed-form sufficient conditions for membership in the
//! starlike class `S*(α, β)` and the convex class `K(α, β)`.
//!
//! The normalized function is
//!
//! ```text
//! u_{p,b,c}(z) = Σ_{k≥0} (-c)^k / ((q)_k k!) · z^{k+1},   q = p + (b+1)/2
//! ```
//!
//! Everything numerical is generic over [`Real`] (implemented for `f32` and
//! `f64`); the `*64` aliases at the crate root fix the scalar to `f64`, which
//! is what the tolerances quoted in the docs and tests assume.
//!
//! Module map:
//!
//! * [`bessel`]: parameters, coefficients, series evaluation of `u`, `u'`,
//!   `u''` and of the unnormalized `w_{p,b,c}` on the positive real axis.
//! * [`criteria`]: weighted coefficient sums that certify membership.
//! * [`conditions`]: closed-form theorem and corollary conditions.
//! * [`thresholds`]: the six auxiliary functions and their critical roots.
//! * [`disk`]: direct sampling of the defining quotients on the unit disk.
//! * [`audit`]: printed-vs-derived corollary consistency report.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod audit;
pub mod bessel;
pub mod conditions;
pub mod criteria;
pub mod disk;
mod error;
pub mod gamma;
mod scalar;
pub mod summation;
pub mod thresholds;

pub use error::{Error, Result};
pub use scalar::Real;

pub use bessel::{
    coefficient, eval_u, eval_u_derivatives, eval_w, eval_w_derivatives, pochhammer, BesselKind, BesselParams,
    SeriesValue, DEFAULT_SERIES_EPS,
};
pub use conditions::{
    corollary_condition, theorem1_condition, theorem2_condition, ConditionVerdict, CriterionId, Variant,
};
pub use criteria::{lemma1_closed_form, lemma1_sum, lemma2_sum, ClassSpec, SignMode, SumReport, Verdict};
pub use disk::{convex_quotient, starlike_quotient, sup_estimate, DiskGrid, QuotientKind, SupEstimate};
pub use thresholds::{find_threshold, positivity_scan, FigureFunction, RootResult};

pub type BesselParams64 = BesselParams<f64>;
pub type BesselParams32 = BesselParams<f32>;
pub type ClassSpec64 = ClassSpec<f64>;
pub type ClassSpec32 = ClassSpec<f32>;
pub type SumReport64 = SumReport<f64>;
pub type ConditionVerdict64 = ConditionVerdict<f64>;
pub type RootResult64 = RootResult<f64>;
pub type SupEstimate64 = SupEstimate<f64>;
pub type DiskGrid64 = DiskGrid<f64>;
pub type Complex64 = num_complex::Complex<f64>;
