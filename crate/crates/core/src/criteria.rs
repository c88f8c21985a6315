//! Weighted coefficient sums certifying membership in `S*(α, β)` and
//! `K(α, β)`.
//!
//! For `f(z) = z + Σ_{k≥2} a_k z^k`:
//!
//! ```text
//! Σ_{k≥2} [k - 1 + β(k + 1 - 2α)] |a_k|   ≤ 2β(1-α)   ⇒ f ∈ S*(α, β)
//! Σ_{k≥2} k [k - 1 + β(k + 1 - 2α)] |a_k| ≤ 2β(1-α)   ⇒ f ∈ K(α, β)
//! ```
//!
//! Both are sufficient only; a failed sum says nothing about non-membership.

use crate::bessel::{eval_u_derivatives, BesselParams, DEFAULT_SERIES_EPS, MAX_TERMS, MIN_TERMS};
use crate::summation::CompensatedSum;
use crate::{Error, Real, Result};

/// Default absolute tail tolerance for the coefficient sums.
pub const DEFAULT_SUM_EPS: f64 = 1e-12;

/// Order `α ∈ [0, 1)` and type `β ∈ (0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassSpec<T> {
    alpha: T,
    beta: T,
}

impl<T: Real> ClassSpec<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        if !(alpha >= T::zero() && alpha < T::one()) {
            return Err(Error::Domain(format!("alpha = {alpha} must lie in [0, 1)")));
        }
        if !(beta > T::zero() && beta <= T::one()) {
            return Err(Error::Domain(format!("beta = {beta} must lie in (0, 1]")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// Right-hand side `2β(1-α)` shared by both criteria.
    pub fn threshold(&self) -> T {
        T::lit(2.0) * self.beta * (T::one() - self.alpha)
    }

    /// `k - 1 + β(k + 1 - 2α)`.
    pub fn starlike_weight(&self, k: usize) -> T {
        let k = T::from_usize_lossy(k);
        k - T::one() + self.beta * (k + T::one() - T::lit(2.0) * self.alpha)
    }

    /// `k [k - 1 + β(k + 1 - 2α)]`.
    pub fn convex_weight(&self, k: usize) -> T {
        T::from_usize_lossy(k) * self.starlike_weight(k)
    }
}

/// How coefficients enter the sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignMode {
    /// `|a_k|`, as the coefficient criteria require.
    #[default]
    Absolute,
    /// Signed `a_k = (-c)^{k-1}/(…)`, which equals `|a_k|` only for `c ≤ 0`.
    AsPrinted,
}

/// Tri-state outcome of a sum compared against its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// The threshold lies within the tail bound of the computed sum.
    Indeterminate,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumReport<T> {
    pub sum: T,
    pub tail_bound: T,
    /// `2β(1-α)`.
    pub threshold: T,
    /// `sum + tail_bound ≤ threshold`; equality counts as holding.
    pub holds: bool,
    /// `threshold - sum`.
    pub margin: T,
    pub verdict: Verdict,
    pub terms_used: usize,
}

impl<T: Real> SumReport<T> {
    fn new(sum: T, tail_bound: T, threshold: T, terms_used: usize) -> Self {
        let holds = sum + tail_bound <= threshold;
        let verdict = if holds {
            Verdict::Holds
        } else if sum - tail_bound > threshold {
            Verdict::Fails
        } else {
            Verdict::Indeterminate
        };
        Self { sum, tail_bound, threshold, holds, margin: threshold - sum, verdict, terms_used }
    }
}

/// Taylor coefficients `a_1 = 1, a_2, …` of a normalized function, described
/// through consecutive ratios.
pub trait CoefficientSequence<T> {
    /// `a_{k+1} / a_k` for `k ≥ 1`.
    fn ratio(&self, k: usize) -> Result<T>;

    /// A bound on `|a_{j+1} / a_j|` valid for every `j ≥ k`, when one is known.
    fn ratio_bound(&self, k: usize) -> Option<T>;
}

/// Coefficients of `u_{p,b,c}`.
#[derive(Debug, Clone, Copy)]
pub struct BesselCoefficients<T> {
    pub params: BesselParams<T>,
}

impl<T: Real> CoefficientSequence<T> for BesselCoefficients<T> {
    fn ratio(&self, k: usize) -> Result<T> {
        // a_{k+1}/a_k = -c / ((q + k - 1) k)
        let denom = (self.params.q() + T::from_usize_lossy(k) - T::one()) * T::from_usize_lossy(k);
        if denom == T::zero() {
            return Err(Error::Pole(format!("(q)_{k} vanishes for q = {}", self.params.q())));
        }
        Ok(-self.params.c() / denom)
    }

    fn ratio_bound(&self, k: usize) -> Option<T> {
        let shifted = self.params.q() + T::from_usize_lossy(k) - T::one();
        (shifted > T::zero()).then(|| self.params.c().abs() / (shifted * T::from_usize_lossy(k)))
    }
}

/// Coefficients `k a_k` of `z f'(z)` given those of `f`.
#[derive(Debug, Clone, Copy)]
pub struct ZDerivative<S>(pub S);

impl<T: Real, S: CoefficientSequence<T>> CoefficientSequence<T> for ZDerivative<S> {
    fn ratio(&self, k: usize) -> Result<T> {
        let k_f = T::from_usize_lossy(k);
        Ok(self.0.ratio(k)? * (k_f + T::one()) / k_f)
    }

    fn ratio_bound(&self, k: usize) -> Option<T> {
        let k_f = T::from_usize_lossy(k);
        self.0.ratio_bound(k).map(|r| r * (k_f + T::one()) / k_f)
    }
}

/// `Σ_{k≥2} weight(k) · a_k` (or `|a_k|`), stopped by a geometric majorant.
///
/// `weight` must be positive with `weight(k+1)/weight(k)` non-increasing,
/// which holds for both lemma weights.
pub fn weighted_coefficient_sum<T, S, W>(seq: &S, weight: W, mode: SignMode, eps: T) -> Result<(T, T, usize)>
where
    T: Real,
    S: CoefficientSequence<T> + ?Sized,
    W: Fn(usize) -> T,
{
    if !(eps > T::zero()) {
        return Err(Error::Domain(format!("eps = {eps} must be positive")));
    }
    let half = T::lit(0.5);
    let mut acc = CompensatedSum::new();
    let mut a = seq.ratio(1)?;
    for k in 2..MAX_TERMS + 2 {
        let w = weight(k);
        let coeff = match mode {
            SignMode::Absolute => a.abs(),
            SignMode::AsPrinted => a,
        };
        let term = w * coeff;
        acc.add(term);
        if !term.is_finite() {
            return Err(Error::NoConvergence { terms: k - 1 });
        }
        let used = k - 1;
        if used >= MIN_TERMS {
            if let Some(rb) = seq.ratio_bound(k) {
                let rho = rb * weight(k + 1) / w;
                if rho <= half {
                    let tail = term.abs() * rho / (T::one() - rho);
                    if tail < eps {
                        return Ok((acc.value(), tail, used));
                    }
                }
            }
        }
        a = a * seq.ratio(k)?;
    }
    Err(Error::NoConvergence { terms: MAX_TERMS })
}

/// Starlike coefficient sum for an arbitrary normalized coefficient sequence.
pub fn starlike_coefficient_sum<T: Real, S: CoefficientSequence<T> + ?Sized>(
    seq: &S,
    cls: &ClassSpec<T>,
    eps: T,
    mode: SignMode,
) -> Result<SumReport<T>> {
    let (sum, tail, used) = weighted_coefficient_sum(seq, |k| cls.starlike_weight(k), mode, eps)?;
    Ok(SumReport::new(sum, tail, cls.threshold(), used))
}

/// Convex coefficient sum for an arbitrary normalized coefficient sequence.
pub fn convex_coefficient_sum<T: Real, S: CoefficientSequence<T> + ?Sized>(
    seq: &S,
    cls: &ClassSpec<T>,
    eps: T,
    mode: SignMode,
) -> Result<SumReport<T>> {
    let (sum, tail, used) = weighted_coefficient_sum(seq, |k| cls.convex_weight(k), mode, eps)?;
    Ok(SumReport::new(sum, tail, cls.threshold(), used))
}

/// Starlike criterion for `u_{p,b,c}` with absolute coefficients.
pub fn lemma1_sum<T: Real>(params: &BesselParams<T>, cls: &ClassSpec<T>, eps: T) -> Result<SumReport<T>> {
    lemma1_sum_with(params, cls, eps, SignMode::Absolute)
}

pub fn lemma1_sum_with<T: Real>(
    params: &BesselParams<T>,
    cls: &ClassSpec<T>,
    eps: T,
    mode: SignMode,
) -> Result<SumReport<T>> {
    params.require_positive_shift()?;
    starlike_coefficient_sum(&BesselCoefficients { params: *params }, cls, eps, mode)
}

/// Convex criterion for `u_{p,b,c}` with absolute coefficients.
pub fn lemma2_sum<T: Real>(params: &BesselParams<T>, cls: &ClassSpec<T>, eps: T) -> Result<SumReport<T>> {
    lemma2_sum_with(params, cls, eps, SignMode::Absolute)
}

pub fn lemma2_sum_with<T: Real>(
    params: &BesselParams<T>,
    cls: &ClassSpec<T>,
    eps: T,
    mode: SignMode,
) -> Result<SumReport<T>> {
    params.require_positive_shift()?;
    convex_coefficient_sum(&BesselCoefficients { params: *params }, cls, eps, mode)
}

/// Closed form of the starlike sum for `c < 0`, where every coefficient is
/// positive and the sum collapses onto `u(1)` and `u'(1)`:
///
/// ```text
/// (1+β)(u'(1) - u(1)) + 2β(1-α)(u(1) - 1)
/// ```
pub fn lemma1_closed_form<T: Real>(params: &BesselParams<T>, cls: &ClassSpec<T>) -> Result<T> {
    if !(params.c() < T::zero()) {
        return Err(Error::Domain(format!("closed form needs c < 0, got c = {}", params.c())));
    }
    params.require_positive_shift()?;
    let one = num_complex::Complex::new(T::one(), T::zero());
    let eps = T::lit(DEFAULT_SERIES_EPS).max(T::epsilon());
    let (u, du, _) = eval_u_derivatives(params, one, eps)?;
    let (u1, du1) = (u.value.re, du.value.re);
    Ok((T::one() + cls.beta) * (du1 - u1) + cls.threshold() * (u1 - T::one()))
}
