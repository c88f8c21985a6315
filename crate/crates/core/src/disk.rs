//! Direct sampling of the quotients defining `S*(α, β)` and `K(α, β)` on the
//! unit disk:
//!
//! ```text
//! starlike: |(w - 1) / (w + 1 - 2α)| < β,   w = z f'(z) / f(z)
//! convex:   |v / (v + 2(1 - α))|      < β,   v = z f''(z) / f'(z)
//! ```
//!
//! A grid maximum below β is evidence consistent with membership, not a
//! proof of it.

use num_complex::Complex;

use crate::bessel::{eval_u_derivatives, BesselParams, DEFAULT_SERIES_EPS, MAX_TERMS, MIN_TERMS};
use crate::criteria::CoefficientSequence;
use crate::summation::CompensatedComplexSum;
use crate::{Error, Real, Result};

/// Denominators below this modulus make a sample degenerate.
pub const DENOMINATOR_GUARD: f64 = 1e-14;

/// An analytic `f` with `f(0) = 0`, `f'(0) = 1`, evaluable with its first two
/// derivatives.
pub trait NormalizedFunction<T: Real> {
    fn derivatives(&self, z: Complex<T>) -> Result<[Complex<T>; 3]>;
}

impl<T: Real> NormalizedFunction<T> for BesselParams<T> {
    fn derivatives(&self, z: Complex<T>) -> Result<[Complex<T>; 3]> {
        let eps = T::lit(DEFAULT_SERIES_EPS).max(T::epsilon());
        let (u, du, d2u) = eval_u_derivatives(self, z, eps)?;
        Ok([u.value, du.value, d2u.value])
    }
}

/// `Σ_{k≥1} a_k z^k` for a coefficient sequence with `a_1 = 1`, summed with
/// its own majorant-based stopping rule.
#[derive(Debug, Clone, Copy)]
pub struct TaylorSeries<S, T> {
    pub coefficients: S,
    pub eps: T,
}

impl<T: Real, S: CoefficientSequence<T>> NormalizedFunction<T> for TaylorSeries<S, T> {
    fn derivatives(&self, z: Complex<T>) -> Result<[Complex<T>; 3]> {
        let one = T::one();
        let half = T::lit(0.5);
        let r = z.norm();
        let mut a = one;
        // z^{k-2}, z^{k-1}, z^k
        let mut pw = [Complex::new(T::zero(), T::zero()), Complex::new(one, T::zero()), z];
        let mut sums = [CompensatedComplexSum::new(); 3];
        for k in 1..=MAX_TERMS {
            let kf = T::from_usize_lossy(k);
            let terms = [pw[2] * a, pw[1] * (a * kf), pw[0] * (a * kf * (kf - one))];
            for (s, t) in sums.iter_mut().zip(terms) {
                s.add(t);
            }
            if k >= MIN_TERMS {
                if let Some(rb) = self.coefficients.ratio_bound(k) {
                    let rho = rb * r;
                    let rhos = [rho, rho * (kf + one) / kf, rho * (kf + one) / (kf - one)];
                    if rhos.iter().all(|&x| x <= half)
                        && (0..3).all(|i| terms[i].norm() * rhos[i] / (one - rhos[i]) < self.eps)
                    {
                        return Ok([sums[0].value(), sums[1].value(), sums[2].value()]);
                    }
                }
            }
            a = a * self.coefficients.ratio(k)?;
            if !a.is_finite() {
                return Err(Error::NoConvergence { terms: k });
            }
            pw = [pw[1], pw[2], pw[2] * z];
        }
        Err(Error::NoConvergence { terms: MAX_TERMS })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotientKind {
    Starlike,
    Convex,
}

impl QuotientKind {
    pub fn name(&self) -> &'static str {
        match self {
            QuotientKind::Starlike => "starlike",
            QuotientKind::Convex => "convex",
        }
    }
}

fn guarded<T: Real>(x: Complex<T>, z: Complex<T>, what: &'static str) -> Result<()> {
    if x.norm() > T::lit(DENOMINATOR_GUARD) {
        Ok(())
    } else {
        Err(Error::Degenerate { re: z.re.as_f64(), im: z.im.as_f64(), what })
    }
}

fn starlike_from<T: Real>(z: Complex<T>, f: Complex<T>, df: Complex<T>, alpha: T) -> Result<T> {
    guarded(f, z, "f(z) vanishes")?;
    let w = z * df / f;
    let den = w + (T::one() - T::lit(2.0) * alpha);
    guarded(den, z, "zf'/f + 1 - 2α vanishes")?;
    Ok(((w - T::one()) / den).norm())
}

fn convex_from<T: Real>(z: Complex<T>, df: Complex<T>, d2f: Complex<T>, alpha: T) -> Result<T> {
    guarded(df, z, "f'(z) vanishes")?;
    let v = z * d2f / df;
    let den = v + T::lit(2.0) * (T::one() - alpha);
    guarded(den, z, "zf''/f' + 2(1 - α) vanishes")?;
    Ok((v / den).norm())
}

fn check_point<T: Real>(z: Complex<T>) -> Result<()> {
    if z.norm() < T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("|z| = {} must be below 1", z.norm())))
    }
}

/// `|(w - 1)/(w + 1 - 2α)|` with `w = z f'/f`. At `z = 0` the removable
/// limit `0` is returned.
pub fn starlike_quotient<T: Real, F: NormalizedFunction<T> + ?Sized>(f: &F, z: Complex<T>, alpha: T) -> Result<T> {
    check_point(z)?;
    if z.norm() == T::zero() {
        return Ok(T::zero());
    }
    let [u, du, _] = f.derivatives(z)?;
    starlike_from(z, u, du, alpha)
}

/// `|v/(v + 2(1 - α))|` with `v = z f''/f'`. At `z = 0` the removable limit
/// `0` is returned.
pub fn convex_quotient<T: Real, F: NormalizedFunction<T> + ?Sized>(f: &F, z: Complex<T>, alpha: T) -> Result<T> {
    check_point(z)?;
    if z.norm() == T::zero() {
        return Ok(T::zero());
    }
    let [_, du, d2u] = f.derivatives(z)?;
    convex_from(z, du, d2u, alpha)
}

/// Concentric rings of sample points, `z = 0` excluded.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskGrid<T> {
    radii: Vec<T>,
    angles_per_ring: usize,
}

impl<T: Real> DiskGrid<T> {
    pub fn new(radii: Vec<T>, angles_per_ring: usize) -> Result<Self> {
        if radii.is_empty() || angles_per_ring == 0 {
            return Err(Error::Domain("disk grid needs at least one ring and one angle".into()));
        }
        if let Some(r) = radii.iter().find(|&&r| !(r > T::zero() && r < T::one())) {
            return Err(Error::Domain(format!("radius {r} outside (0, 1)")));
        }
        Ok(Self { radii, angles_per_ring })
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    pub fn angles_per_ring(&self) -> usize {
        self.angles_per_ring
    }

    /// Same rings with a different angular resolution.
    pub fn with_angles(&self, angles_per_ring: usize) -> Result<Self> {
        Self::new(self.radii.clone(), angles_per_ring)
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles_per_ring
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points of ring `i`.
    pub fn ring(&self, i: usize) -> impl Iterator<Item = Complex<T>> + '_ {
        let r = self.radii[i];
        let n = self.angles_per_ring;
        (0..n).map(move |j| Complex::from_polar(r, T::TAU() * T::from_usize_lossy(j) / T::from_usize_lossy(n)))
    }
}

impl<T: Real> Default for DiskGrid<T> {
    /// Radii 0.1, 0.2, …, 0.9, 0.95, 0.99, 0.999 with 720 angles each.
    fn default() -> Self {
        let mut radii: Vec<T> = (1..=9).map(|i| T::lit(f64::from(i) / 10.0)).collect();
        radii.extend([0.95, 0.99, 0.999].map(T::lit));
        Self { radii, angles_per_ring: 720 }
    }
}

/// Grid maximum of a quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct SupEstimate<T> {
    pub kind: QuotientKind,
    pub max_quotient: T,
    pub argmax_z: Complex<T>,
    /// Points with quotient `≥ β`.
    pub violations: usize,
    /// Points where a guard tripped or the series failed.
    pub degenerate_points: usize,
    pub points: usize,
    /// Maximum per ring, innermost first.
    pub ring_max: Vec<T>,
}

impl<T: Real> SupEstimate<T> {
    fn empty(kind: QuotientKind, rings: usize) -> Self {
        Self {
            kind,
            max_quotient: T::zero(),
            argmax_z: Complex::new(T::zero(), T::zero()),
            violations: 0,
            degenerate_points: 0,
            points: 0,
            ring_max: vec![T::zero(); rings],
        }
    }

    fn record(&mut self, ring: usize, z: Complex<T>, q: Result<T>, beta: T) {
        self.points += 1;
        match q {
            Ok(q) if q.is_finite() => {
                if q >= beta {
                    self.violations += 1;
                }
                if q > self.max_quotient {
                    self.max_quotient = q;
                    self.argmax_z = z;
                }
                if q > self.ring_max[ring] {
                    self.ring_max[ring] = q;
                }
            }
            _ => self.degenerate_points += 1,
        }
    }

    /// Consecutive rings whose maximum drops by more than `tol` going
    /// outwards.
    pub fn ring_monotonicity_breaks(&self, tol: T) -> usize {
        self.ring_max.windows(2).filter(|w| w[1] + tol < w[0]).count()
    }

    /// Grid evidence is consistent with membership.
    pub fn consistent(&self) -> bool {
        self.violations == 0
    }
}

/// Starlike and convex grid maxima from one pass over the grid.
pub fn sup_estimate_both<T: Real, F: NormalizedFunction<T> + ?Sized>(
    f: &F,
    alpha: T,
    beta: T,
    grid: &DiskGrid<T>,
) -> (SupEstimate<T>, SupEstimate<T>) {
    let rings = grid.radii.len();
    let mut star = SupEstimate::empty(QuotientKind::Starlike, rings);
    let mut convex = SupEstimate::empty(QuotientKind::Convex, rings);
    for i in 0..rings {
        for z in grid.ring(i) {
            match f.derivatives(z) {
                Ok([u, du, d2u]) => {
                    star.record(i, z, starlike_from(z, u, du, alpha), beta);
                    convex.record(i, z, convex_from(z, du, d2u, alpha), beta);
                }
                Err(e) => {
                    star.record(i, z, Err(e.clone()), beta);
                    convex.record(i, z, Err(e), beta);
                }
            }
        }
    }
    (star, convex)
}

/// Grid maximum of the chosen quotient for class parameters `(α, β)`.
pub fn sup_estimate<T: Real, F: NormalizedFunction<T> + ?Sized>(
    f: &F,
    cls: &crate::ClassSpec<T>,
    which: QuotientKind,
    grid: &DiskGrid<T>,
) -> SupEstimate<T> {
    let rings = grid.radii.len();
    let mut est = SupEstimate::empty(which, rings);
    let alpha = cls.alpha();
    for i in 0..rings {
        for z in grid.ring(i) {
            let q = f.derivatives(z).and_then(|[u, du, d2u]| match which {
                QuotientKind::Starlike => starlike_from(z, u, du, alpha),
                QuotientKind::Convex => convex_from(z, du, d2u, alpha),
            });
            est.record(i, z, q, cls.beta());
        }
    }
    est
}
