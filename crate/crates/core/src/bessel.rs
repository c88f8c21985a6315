//! The normalized generalized Bessel function `u_{p,b,c}` and its
//! specializations.
//!
//! With `q = p + (b+1)/2`,
//!
//! ```text
//! w_{p,b,c}(x) = Σ_{k≥0} (-c)^k / (k! Γ(k+q)) · (x/2)^{2k+p}
//! u_{p,b,c}(z) = Γ(q) z^{1-p/2} w_{p,b,c}(2√z) = Σ_{k≥0} (-c)^k / ((q)_k k!) · z^{k+1}
//! ```
//!
//! `(b, c) = (1, 1)`, `(1, -1)` and `(2, 1)` give the normalized forms of
//! `J_p`, `I_p` and the spherical `j_p` respectively.
//!
//! Series are truncated with a geometric majorant: once the ratio of
//! consecutive term magnitudes is at most 1/2 (and can only decrease from
//! there on), the remainder is bounded by `|next term| / (1 - ratio)`.

use num_complex::Complex;

use crate::gamma::{gamma, is_nonpositive_integer};
use crate::summation::CompensatedComplexSum;
use crate::{Error, Real, Result};

/// Default absolute tail tolerance for series evaluation.
pub const DEFAULT_SERIES_EPS: f64 = 1e-13;

/// `eval_u` and friends accept `|z|` up to this radius.
pub const WORKING_RADIUS: f64 = 4.0;

pub(crate) const MIN_TERMS: usize = 10;
pub(crate) const MAX_TERMS: usize = 10_000;

/// Real parameters `(p, b, c)` together with the shift `q = p + (b+1)/2`.
///
/// Construction rejects `q ∈ {0, -1, -2, …}`, where the Pochhammer
/// denominators vanish.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselParams<T> {
    p: T,
    b: T,
    c: T,
    q: T,
}

impl<T: Real> BesselParams<T> {
    pub fn new(p: T, b: T, c: T) -> Result<Self> {
        if !(p.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::Domain(format!("non-finite parameters p={p}, b={b}, c={c}")));
        }
        let q = p + (b + T::one()) * T::lit(0.5);
        if is_nonpositive_integer(q) {
            return Err(Error::Pole(format!("q = p + (b+1)/2 = {q} is zero or a negative integer")));
        }
        Ok(Self { p, b, c, q })
    }

    /// Parameters for a given shift `q` with `b = 1`, i.e. `p = q - 1`.
    pub fn from_shift(q: T, c: T) -> Result<Self> {
        Self::new(q - T::one(), T::one(), c)
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn c(&self) -> T {
        self.c
    }

    /// The shift `q = p + (b+1)/2`.
    pub fn q(&self) -> T {
        self.q
    }

    /// The theorem conditions need `q > 0`.
    pub fn require_positive_shift(&self) -> Result<()> {
        if self.q > T::zero() {
            Ok(())
        } else {
            Err(Error::Domain(format!("q = {} must be positive", self.q)))
        }
    }
}

/// Which member of the family: general `(p, b, c)` or one of the three
/// classical normalized functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BesselKind<T> {
    Generalized {
        p: T,
        b: T,
        c: T,
    },
    /// `J_p`: `b = 1, c = 1`, needs `p > -1`.
    Kind1(T),
    /// `I_p`: `b = 1, c = -1`, needs `p > -1`.
    Kind2(T),
    /// spherical `j_p`: `b = 2, c = 1`, needs `p > -3/2`.
    Kind3(T),
}

impl<T: Real> BesselKind<T> {
    pub fn params(&self) -> Result<BesselParams<T>> {
        let one = T::one();
        match *self {
            BesselKind::Generalized { p, b, c } => BesselParams::new(p, b, c),
            BesselKind::Kind1(p) => {
                Self::check_order(p, -one)?;
                BesselParams::new(p, one, one)
            }
            BesselKind::Kind2(p) => {
                Self::check_order(p, -one)?;
                BesselParams::new(p, one, -one)
            }
            BesselKind::Kind3(p) => {
                Self::check_order(p, T::lit(-1.5))?;
                BesselParams::new(p, T::lit(2.0), one)
            }
        }
    }

    fn check_order(p: T, bound: T) -> Result<()> {
        if p > bound {
            Ok(())
        } else {
            Err(Error::Domain(format!("order p = {p} must exceed {bound}")))
        }
    }
}

/// A truncated series together with a rigorous bound on the truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue<T, V = Complex<T>> {
    pub value: V,
    pub terms_used: usize,
    pub tail_bound: T,
}

/// Rising factorial `λ(λ+1)…(λ+μ-1)`, with `(λ)_0 = 1`.
///
/// Computed as a running product; large arguments overflow to `±∞`.
pub fn pochhammer<T: Real>(lambda: T, mu: usize) -> T {
    (0..mu).fold(T::one(), |acc, j| acc * (lambda + T::from_usize_lossy(j)))
}

/// Coefficient `a_k` of `z^k` in `u_{p,b,c}`: `a_1 = 1` and
/// `a_k = (-c)^{k-1} / ((q)_{k-1} (k-1)!)`.
pub fn coefficient<T: Real>(params: &BesselParams<T>, k: usize) -> Result<T> {
    if k == 0 {
        return Err(Error::Domain("coefficient index starts at 1".into()));
    }
    let mut a = T::one();
    for j in 0..k - 1 {
        let denom = (params.q + T::from_usize_lossy(j)) * T::from_usize_lossy(j + 1);
        if denom == T::zero() {
            return Err(Error::Pole(format!("(q)_{} vanishes for q = {}", j + 1, params.q)));
        }
        a = a * (-params.c) / denom;
    }
    Ok(a)
}

/// `u_{p,b,c}(z)` with tail bound below `eps`.
pub fn eval_u<T: Real>(params: &BesselParams<T>, z: Complex<T>, eps: T) -> Result<SeriesValue<T>> {
    check_inputs(z, eps)?;
    let [u, _, _] = taylor_sum(params, z, eps, false)?;
    Ok(u)
}

/// `(u, u', u'')` from the term-wise differentiated series, each with its own
/// tail bound below `eps`.
pub fn eval_u_derivatives<T: Real>(
    params: &BesselParams<T>,
    z: Complex<T>,
    eps: T,
) -> Result<(SeriesValue<T>, SeriesValue<T>, SeriesValue<T>)> {
    check_inputs(z, eps)?;
    let [u, du, d2u] = taylor_sum(params, z, eps, true)?;
    Ok((u, du, d2u))
}

fn check_inputs<T: Real>(z: Complex<T>, eps: T) -> Result<()> {
    if !(eps > T::zero()) {
        return Err(Error::Domain(format!("eps = {eps} must be positive")));
    }
    if !(z.norm() <= T::lit(WORKING_RADIUS)) {
        return Err(Error::Domain(format!("|z| = {} outside working radius {WORKING_RADIUS}", z.norm())));
    }
    Ok(())
}

/// Sums `u`, and when `derivatives` is set also `u'` and `u''`.
fn taylor_sum<T: Real>(
    params: &BesselParams<T>,
    z: Complex<T>,
    eps: T,
    derivatives: bool,
) -> Result<[SeriesValue<T>; 3]> {
    shifted_sum(params, z, eps, derivatives, 1)
}

/// Sums `Σ_k b_k z^{k+m}` and its first two derivatives, where
/// `b_k = (-c)^k / ((q)_k k!)`; `m = 1` gives `u`, `m = 0` gives `u(z)/z`.
fn shifted_sum<T: Real>(
    params: &BesselParams<T>,
    z: Complex<T>,
    eps: T,
    derivatives: bool,
    shift: usize,
) -> Result<[SeriesValue<T>; 3]> {
    let r = z.norm();
    let abs_c = params.c.abs();
    let half = T::lit(0.5);
    let one = T::one();
    let zero = Complex::new(T::zero(), T::zero());

    let mut coef = one;
    // z^{k+m-2}, z^{k+m-1}, z^{k+m}; negative powers only meet zero multipliers
    let mut pw = match shift {
        0 => [zero, zero, Complex::new(one, T::zero())],
        _ => [zero, Complex::new(one, T::zero()), z],
    };
    let mut sums = [CompensatedComplexSum::new(); 3];

    for k in 0..MAX_TERMS {
        let kf = T::from_usize_lossy(k);
        let n = T::from_usize_lossy(k + shift);
        let terms = [pw[2] * coef, pw[1] * (coef * n), pw[0] * (coef * n * (n - one))];
        for (s, t) in sums.iter_mut().zip(terms) {
            s.add(t);
        }

        let denom = (params.q + kf) * (kf + one);
        if denom == T::zero() {
            return Err(Error::Pole(format!("(q)_{} vanishes for q = {}", k + 1, params.q)));
        }
        let used = k + 1;
        if used >= MIN_TERMS && params.q + kf > T::zero() {
            // ratios |t_{k+1}/t_k|; every later ratio is smaller because q + k > 0
            let rho = abs_c * r / denom;
            let rhos = [rho, rho * (n + one) / n, rho * (n + one) / (n - one)];
            let active = if derivatives { 3 } else { 1 };
            if rhos[..active].iter().all(|&x| x <= half) {
                let tails: Vec<T> = (0..3).map(|i| terms[i].norm() * rhos[i] / (one - rhos[i])).collect();
                if tails[..active].iter().all(|&t| t < eps) {
                    let mk = |i: usize| SeriesValue { value: sums[i].value(), terms_used: used, tail_bound: tails[i] };
                    return Ok([mk(0), mk(1), mk(2)]);
                }
            }
        }

        coef = coef * (-params.c) / denom;
        if !coef.is_finite() {
            return Err(Error::NoConvergence { terms: used });
        }
        pw = [pw[1], pw[2], pw[2] * z];
    }
    Err(Error::NoConvergence { terms: MAX_TERMS })
}

/// `w`, `w'`, `w''` on the real axis.
pub type WDerivatives<T> = (SeriesValue<T, T>, SeriesValue<T, T>, SeriesValue<T, T>);

/// `w_{p,b,c}(x)` for real `0 < x ≤ 4`, as `v(x²/4) (x/2)^p / Γ(q)` with
/// `v(s) = u(s)/s`.
pub fn eval_w<T: Real>(params: &BesselParams<T>, x: T, eps: T) -> Result<SeriesValue<T, T>> {
    let (w, _, _) = w_parts(params, x, eps, false)?;
    Ok(w)
}

/// `(w, w', w'')` on the positive real axis, obtained by the chain rule from
/// series of `v(s) = u(s)/s` and its derivatives.
pub fn eval_w_derivatives<T: Real>(params: &BesselParams<T>, x: T, eps: T) -> Result<WDerivatives<T>> {
    w_parts(params, x, eps, true)
}

fn w_parts<T: Real>(params: &BesselParams<T>, x: T, eps: T, derivatives: bool) -> Result<WDerivatives<T>> {
    if !(x > T::zero()) {
        return Err(Error::Domain(format!("eval_w needs x > 0, got {x}")));
    }
    let half = T::lit(0.5);
    let s = Complex::new(x * x * T::lit(0.25), T::zero());
    check_inputs(s, eps)?;
    let [v, dv, d2v] = shifted_sum(params, s, eps, derivatives, 0)?;

    let p = params.p;
    let phi = (x * half).powf(p) / gamma(params.q)?;
    let a = phi.abs();
    let used = v.terms_used;
    let w = SeriesValue { value: v.value.re * phi, terms_used: used, tail_bound: v.tail_bound * a };
    if !derivatives {
        return Ok((w, w, w));
    }
    // φ' = (p/x) φ, φ'' = p(p-1)/x² φ
    let dw = SeriesValue {
        value: phi * (dv.value.re * x * half + v.value.re * p / x),
        terms_used: used,
        tail_bound: a * (dv.tail_bound * x * half + v.tail_bound * (p / x).abs()),
    };
    let quarter_x2 = x * x * T::lit(0.25);
    let pp = p * (p - T::one()) / (x * x);
    let d2w = SeriesValue {
        value: phi * (d2v.value.re * quarter_x2 + dv.value.re * (half + p) + v.value.re * pp),
        terms_used: used,
        tail_bound: a * (d2v.tail_bound * quarter_x2 + dv.tail_bound * (half + p).abs() + v.tail_bound * pp.abs()),
    };
    Ok((w, dw, d2w))
}

/// Residual of `x² w'' + b x w' + (c x² - p² + (1-b) p) w` at `x`.
pub fn ode_residual<T: Real>(params: &BesselParams<T>, x: T, eps: T) -> Result<T> {
    let (w, dw, d2w) = eval_w_derivatives(params, x, eps)?;
    let (p, b, c) = (params.p, params.b, params.c);
    Ok(x * x * d2w.value + b * x * dw.value + (c * x * x - p * p + (T::one() - b) * p) * w.value)
}
