//! Gamma function via the Lanczos approximation (g = 7, 9 terms).
//!
//! Relative error is below 1e-14 for f64 arguments away from the poles; the
//! reflection formula handles `x < 1/2`.

use crate::{Error, Real, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `true` when `x` is zero or a negative integer.
pub fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.round()
}

/// Γ(x) for real `x`. Returns `Error::Pole` at `x ∈ {0, -1, -2, …}`.
///
/// Large arguments overflow to `+∞` (x > ~171.6 in f64).
pub fn gamma<T: Real>(x: T) -> Result<T> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma of non-finite argument {x}")));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(format!("gamma has a pole at {x}")));
    }
    // exact factorials keep integer arguments bit-exact
    if x == x.round() && x <= T::lit(25.0) {
        let n = x.to_usize().unwrap_or(0);
        let mut acc = T::one();
        for j in 2..n {
            acc = acc * T::from_usize_lossy(j);
        }
        return Ok(acc);
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        // Γ(x) Γ(1-x) = π / sin(πx)
        let pi = T::PI();
        return pi / ((pi * x).sin() * gamma_unchecked(T::one() - x));
    }
    let x = x - T::one();
    let mut acc = T::lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (x + T::from_usize_lossy(i));
    }
    let t = x + T::lit(LANCZOS_G) + half;
    // split the power to delay overflow for large x
    let pw = t.powf((x + half) * half);
    (T::lit(2.0) * T::PI()).sqrt() * pw * (-t).exp() * pw * acc
}
