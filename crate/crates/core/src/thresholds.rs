//! Auxiliary functions behind the α = 0 corollaries and their critical
//! points.
//!
//! Each function is the β = 1, α = 0 condition with positive factors
//! cleared; the corollary claim is that `g(x) ≥ 0` for every `x` right of
//! the threshold `x₀`, the right-most zero.

use crate::{Error, Real, Result};

/// Half-width of the excluded neighbourhood of the singular point.
pub const SINGULARITY_GUARD: f64 = 1e-6;
/// Outer end of the root search windows.
pub const SEARCH_EXTENT: f64 = 100.0;
/// Grid step of the sign-change scan preceding bisection.
pub const SCAN_STEP: f64 = 1e-3;
pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_BISECTIONS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FigureFunction {
    /// `(2x+3) e^{1/(x+2)} - (x+1)`
    Fig1,
    /// `(2x+3) - e^{1/(x+2)} (x+1)`
    Fig2,
    /// `4(x+2) e^{2/(2x+5)} - (2x+3)`
    Fig3,
    /// `(2x²+7x+6) e^{1/(x+2)} - (x²+x-1)`
    Fig4,
    /// `(2x²+7x+6) - (x²+7x+11) e^{1/(x+2)}`
    Fig5,
    /// `(8x²+36x+40) e^{2/(2x+5)} - (4x²+8x-1)`
    Fig6,
}

impl FigureFunction {
    pub const ALL: [FigureFunction; 6] = [
        FigureFunction::Fig1,
        FigureFunction::Fig2,
        FigureFunction::Fig3,
        FigureFunction::Fig4,
        FigureFunction::Fig5,
        FigureFunction::Fig6,
    ];

    /// Figures are numbered 1 to 6.
    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.get(usize::from(n).checked_sub(1)?).copied()
    }

    pub fn number(&self) -> u8 {
        *self as u8 + 1
    }

    /// Abscissa of the essential singularity.
    pub fn singularity(&self) -> f64 {
        match self {
            FigureFunction::Fig3 | FigureFunction::Fig6 => -2.5,
            _ => -2.0,
        }
    }

    /// Lower end of the order range the corresponding corollary covers.
    pub fn corollary_domain(&self) -> f64 {
        match self {
            FigureFunction::Fig3 | FigureFunction::Fig6 => -1.5,
            _ => -1.0,
        }
    }

    /// Whether the function certifies convexity (else starlikeness).
    pub fn is_convex(&self) -> bool {
        matches!(self, FigureFunction::Fig4 | FigureFunction::Fig5 | FigureFunction::Fig6)
    }

    /// `g(x)`; `Error::Singularity` exactly at the singular point.
    pub fn eval<T: Real>(&self, x: T) -> Result<T> {
        let l = T::lit;
        if x == l(self.singularity()) {
            return Err(Error::Singularity { figure: self.number(), x: x.as_f64() });
        }
        let one = T::one();
        let e1 = || (one / (x + l(2.0))).exp();
        let e3 = || (l(2.0) / (l(2.0) * x + l(5.0))).exp();
        Ok(match self {
            FigureFunction::Fig1 => (l(2.0) * x + l(3.0)) * e1() - (x + one),
            FigureFunction::Fig2 => (l(2.0) * x + l(3.0)) - e1() * (x + one),
            FigureFunction::Fig3 => l(4.0) * (x + l(2.0)) * e3() - (l(2.0) * x + l(3.0)),
            FigureFunction::Fig4 => (l(2.0) * x * x + l(7.0) * x + l(6.0)) * e1() - (x * x + x - one),
            FigureFunction::Fig5 => (l(2.0) * x * x + l(7.0) * x + l(6.0)) - (x * x + l(7.0) * x + l(11.0)) * e1(),
            FigureFunction::Fig6 => {
                (l(8.0) * x * x + l(36.0) * x + l(40.0)) * e3() - (l(4.0) * x * x + l(8.0) * x - one)
            }
        })
    }

    /// Search window right of the singularity.
    pub fn right_window(&self) -> (f64, f64) {
        (self.singularity() + SINGULARITY_GUARD, SEARCH_EXTENT)
    }

    /// Search window left of the singularity.
    pub fn left_window(&self) -> (f64, f64) {
        (-SEARCH_EXTENT, self.singularity() - SINGULARITY_GUARD)
    }
}

/// A located zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult<T> {
    pub x0: T,
    /// Final bracket; `g` changes sign (or vanishes) across it.
    pub bracket: (T, T),
    pub iterations: usize,
    /// `|g(x0)|`.
    pub residual: T,
}

fn sign_change<T: Real>(a: T, b: T) -> bool {
    a.is_finite() && b.is_finite() && (a == T::zero() || b == T::zero() || (a < T::zero()) != (b < T::zero()))
}

fn grid_point<T: Real>(low: T, step: T, i: usize) -> T {
    low + step * T::from_usize_lossy(i)
}

/// Every grid interval `[x, x + step]` in `[low, high]` on which `g` changes
/// sign. Intervals touching the singular point or non-finite values are
/// skipped.
pub fn positivity_scan<T: Real>(id: FigureFunction, low: T, high: T, step: T) -> Vec<(T, T)> {
    let mut out = Vec::new();
    if !(step > T::zero()) || !(high > low) {
        return out;
    }
    let n = ((high - low) / step).ceil().to_usize().unwrap_or(0);
    let eval = |x: T| id.eval(x).unwrap_or_else(|_| T::nan());
    let mut prev_x = low;
    let mut prev = eval(low);
    for i in 1..=n {
        let x = grid_point(low, step, i).min(high);
        let g = eval(x);
        let straddles = prev_x < T::lit(id.singularity()) && x > T::lit(id.singularity());
        if !straddles && sign_change(prev, g) {
            out.push((prev_x, x));
        }
        prev_x = x;
        prev = g;
    }
    out
}

/// Bisects a sign-changing bracket down to width `2 tol`.
pub fn bisect<T: Real>(id: FigureFunction, low: T, high: T, tol: T) -> Result<RootResult<T>> {
    let (mut lo, mut hi) = (low, high);
    let mut g_lo = id.eval(lo)?;
    let g_hi = id.eval(hi)?;
    if !sign_change(g_lo, g_hi) {
        return Err(Error::NoBracket { figure: id.number(), low: low.as_f64(), high: high.as_f64() });
    }
    let two = T::lit(2.0);
    let mut iterations = 0;
    while hi - lo > two * tol && iterations < MAX_BISECTIONS {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = id.eval(mid)?;
        iterations += 1;
        if g_mid == T::zero() {
            lo = mid;
            hi = mid;
            break;
        }
        if sign_change(g_lo, g_mid) {
            hi = mid;
        } else {
            lo = mid;
            g_lo = g_mid;
        }
    }
    let x0 = (lo + hi) / two;
    Ok(RootResult { x0, bracket: (lo, hi), iterations, residual: id.eval(x0)?.abs() })
}

fn roots_in<T: Real>(id: FigureFunction, (low, high): (f64, f64), tol: T) -> Result<Vec<RootResult<T>>> {
    positivity_scan(id, T::lit(low), T::lit(high), T::lit(SCAN_STEP))
        .into_iter()
        .map(|(a, b)| bisect(id, a, b, tol))
        .collect()
}

/// Threshold `x₀`: the right-most zero right of the singularity.
///
/// `Error::NoBracket` when `g` keeps one sign on the whole window, which is
/// the case for figure 2.
pub fn find_threshold<T: Real>(id: FigureFunction, tol: T) -> Result<RootResult<T>> {
    if !(tol > T::zero()) {
        return Err(Error::Domain(format!("tol = {tol} must be positive")));
    }
    let window = id.right_window();
    roots_in(id, window, tol)?.pop().ok_or(Error::NoBracket { figure: id.number(), low: window.0, high: window.1 })
}

/// All zeros on both sides of the singularity, left to right.
pub fn find_all_roots<T: Real>(id: FigureFunction, tol: T) -> Result<Vec<RootResult<T>>> {
    if !(tol > T::zero()) {
        return Err(Error::Domain(format!("tol = {tol} must be positive")));
    }
    let mut roots = roots_in(id, id.left_window(), tol)?;
    roots.extend(roots_in(id, id.right_window(), tol)?);
    Ok(roots)
}
