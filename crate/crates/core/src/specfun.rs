//! Error-function family on the real line and one complex strip.
//!
//! Every routine has a scaled companion that stays finite where the plain
//! value overflows; callers composing `exp(+s) * f` should take the scaled
//! value and fold the exponent in analytically.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Result};

/// 2 / sqrt(pi)
pub const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;
const FRAC_1_SQRT_PI: f64 = 0.5 * FRAC_2_SQRT_PI;

/// Below this |x| the Maclaurin series is used for `erfi`.
pub const ERFI_SERIES_LIMIT: f64 = 6.0;
/// Below this |x| the positive-term series is used for `erf`.
const ERF_SERIES_LIMIT: f64 = 2.5;

/// `erfi(x)` together with `exp(-x^2) * erfi(x)`.
///
/// `value` overflows to `+inf` (with the sign of `x`) once `exp(x^2)` is not
/// representable; `scaled` is always finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledErfiValue {
    pub x: f64,
    pub value: f64,
    pub scaled: f64,
}

/// Real error function, relative error below `1e-14`.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    let ax = x.abs();
    let r = if ax < ERF_SERIES_LIMIT {
        erf_series(ax)
    } else if ax < 6.0 {
        1.0 - erfc_cf(ax)
    } else {
        1.0
    };
    r.copysign(x)
}

/// Complementary error function for real arguments.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    if x < ERF_SERIES_LIMIT {
        1.0 - erf(x)
    } else {
        erfc_cf(x)
    }
}

// erf(x) = (2/sqrt(pi)) x exp(-x^2) sum_k (2x^2)^k / (2k+1)!!, all terms positive.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= 2.0 * x2 / (2 * k + 1) as f64;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    FRAC_2_SQRT_PI * x * (-x2).exp() * sum
}

// Laplace continued fraction, modified Lentz. Valid for x >= ~2.
fn erfc_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = f;
    let mut d = 0.0;
    for n in 1..2000 {
        let a = 0.5 * n as f64;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        d = 1.0 / d;
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    FRAC_1_SQRT_PI * (-x * x).exp() / f
}

/// Imaginary error function `erfi(x) = -i erf(ix)` and its scaled form.
///
/// Maclaurin series (positive terms) for `|x| <= 6`; above that the
/// asymptotic series of `exp(-x^2) erfi(x)` truncated at its smallest term,
/// whose size there is about `exp(-x^2)`.
pub fn erfi(x: f64) -> ScaledErfiValue {
    let ax = x.abs();
    let (value, scaled) = if ax <= ERFI_SERIES_LIMIT {
        let v = erfi_series(ax);
        (v, v * (-ax * ax).exp())
    } else {
        let s = erfi_scaled_asymptotic(ax);
        (s * (ax * ax).exp(), s)
    };
    ScaledErfiValue {
        x,
        value: value.copysign(x),
        scaled: scaled.copysign(x),
    }
}

fn erfi_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut power = x; // x^(2k+1) / k!
    let mut sum = x;
    for k in 1..400 {
        power *= x2 / k as f64;
        let term = power / (2 * k + 1) as f64;
        sum += term;
        if (k as f64) > x2 && term < 1e-17 * sum {
            break;
        }
    }
    FRAC_2_SQRT_PI * sum
}

fn erfi_scaled_asymptotic(x: f64) -> f64 {
    let inv = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let next = term * (2 * k - 1) as f64 * inv;
        if next >= term {
            break;
        }
        term = next;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    FRAC_1_SQRT_PI * sum / x
}

/// `Im erf(x + iy)` for `y >= 0`.
///
/// May under- or overflow when `|x^2 - y^2|` is large; see [`im_erf_scaled`].
pub fn im_erf(x: f64, y: f64) -> Result<f64> {
    let s = im_erf_scaled(x, y)?;
    if s == 0.0 {
        return Ok(0.0);
    }
    Ok(s * ((y - x) * (y + x)).exp())
}

/// `exp(x^2 - y^2) * Im erf(x + iy)` for `y >= 0`; bounded for all such
/// arguments.
pub fn im_erf_scaled(x: f64, y: f64) -> Result<f64> {
    check_strip(x, y)?;
    // Im erf is even in x
    let x = x.abs();
    let phase = 2.0 * x * y;
    Ok(ScaledImErf::evaluate(x, y, phase.sin(), phase.cos()).value)
}

fn check_strip(x: f64, y: f64) -> Result<()> {
    if !x.is_finite() || !y.is_finite() {
        return Err(domain(format!("non-finite argument ({x}, {y})")));
    }
    if y < 0.0 {
        return Err(domain(format!(
            "im_erf requires y >= 0 (got {y}); use Im erf(x - iy) = -Im erf(x + iy)"
        )));
    }
    Ok(())
}

/// Scaled imaginary part with a cancellation estimate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ScaledImErf {
    pub value: f64,
    /// Sum of term magnitudes over the magnitude of the result.
    pub condition: f64,
}

impl ScaledImErf {
    /// Exponentially convergent expansion of erf(x + iy) (Abramowitz and
    /// Stegun 7.1.29), multiplied through by exp(x^2 - y^2) so that every
    /// term carries exp(-(n/2 - y)^2) <= 1. The phase `2xy` is passed in as
    /// its sine and cosine so integer-multiple-of-pi phases can be exact.
    pub(crate) fn evaluate(x: f64, y: f64, sin2xy: f64, cos2xy: f64) -> Self {
        if y == 0.0 {
            return Self {
                value: 0.0,
                condition: 1.0,
            };
        }
        let lead = if x == 0.0 {
            y / PI
        } else {
            sin2xy / (2.0 * PI * x)
        };
        let lead = (-y * y).exp() * lead;

        let four_x2 = 4.0 * x * x;
        let n_max = (2.0 * y + 14.0).ceil() as usize;
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        // reverse order: small tail terms first
        for n in (1..=n_max).rev() {
            let nf = n as f64;
            let half = 0.5 * nf - y;
            let weight = (-half * half).exp();
            if weight == 0.0 {
                continue;
            }
            let decay = (-2.0 * nf * y).exp();
            let one_minus = -(-2.0 * nf * y).exp_m1();
            let t = weight * (x * (1.0 + decay) * sin2xy + 0.5 * nf * one_minus * cos2xy)
                / (nf * nf + four_x2);
            sum += t;
            abs_sum += t.abs();
        }
        let value = lead + 2.0 / PI * sum;
        let mag = lead.abs() + 2.0 / PI * abs_sum;
        let condition = if value == 0.0 {
            if mag == 0.0 {
                1.0
            } else {
                f64::INFINITY
            }
        } else {
            mag / value.abs()
        };
        Self { value, condition }
    }
}

/// `coth(x)` and `cosech(x)` for `x > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Hyperbolics {
    pub coth: f64,
    pub cosech: f64,
}

pub fn hyperbolics(x: f64) -> Result<Hyperbolics> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("coth/cosech need finite x > 0 (got {x})")));
    }
    if x < 1e-4 {
        let x2 = x * x;
        return Ok(Hyperbolics {
            coth: 1.0 / x + x / 3.0 - x * x2 / 45.0,
            cosech: 1.0 / x - x / 6.0 + 7.0 * x * x2 / 360.0,
        });
    }
    let cosech = if x > 20.0 {
        2.0 * (-x).exp()
    } else {
        1.0 / x.sinh()
    };
    Ok(Hyperbolics {
        coth: 1.0 / x.tanh(),
        cosech,
    })
}
