//! Analytical approximations to the intelligent states and the lattice sums
//! they need.
//!
//! * perturbative: first order in `lambda` around the flat state;
//! * wavefunction: large `|lambda|`, the normalisation integral reduced to
//!   the boundary layers at `phi = +-pi`;
//! * Lorentzian: large `|lambda|`, amplitudes
//!   `c_m ~ (-1)^m / (lambda^2 pi^2 + m^2)`.
//!
//! Each returns an [`ApproxReport`] with `valid` set from the regime it was
//! derived for; values outside that regime are still returned when they are
//! defined, so they can be compared against the exact ones.

use std::f64::consts::PI;

use serde::Serialize;

use crate::continuum::{m4_tail_bound, m_max_for, AngularDistribution, TailModel};
use crate::error::{domain, Result};
use crate::specfun::hyperbolics;

const SQRT_2PI: f64 = 2.5066282746310002;

/// Perturbative reports are flagged valid up to this `|lambda|`.
pub const PERTURBATIVE_LIMIT: f64 = 0.1;
/// Large-`|lambda|` reports are flagged valid above this `|lambda| pi^2`.
pub const LARGE_LAMBDA_LIMIT: f64 = 3.0;
/// `perturbative_state` refuses `|lambda|` above this.
pub const PERTURBATIVE_STATE_LIMIT: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ApproxMethod {
    Perturbative,
    Wavefunction,
    Lorentzian,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxReport {
    pub method: ApproxMethod,
    pub lambda: f64,
    pub delta_phi: Option<f64>,
    pub delta_m: Option<f64>,
    pub product: Option<f64>,
    pub bound: Option<f64>,
    pub valid: bool,
}

fn non_negative(x: f64) -> Option<f64> {
    (x >= 0.0 && x.is_finite()).then_some(x)
}

fn check_finite(lambda: f64) -> Result<()> {
    if lambda.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("lambda must be finite (got {lambda})")))
    }
}

/// `N_per^2 = 1 + lambda^2 pi^4 / 45`.
pub fn perturbative_norm_sq(lambda: f64) -> f64 {
    1.0 + lambda * lambda * PI.powi(4) / 45.0
}

/// First-order wavefunction
/// `[1 + lambda (pi^2/6 - phi^2/2)] / (N_per sqrt(2 pi))`.
pub fn perturbative_wavefunction(lambda: f64, phi: f64) -> f64 {
    (1.0 + lambda * (PI * PI / 6.0 - 0.5 * phi * phi))
        / (perturbative_norm_sq(lambda).sqrt() * SQRT_2PI)
}

/// `delta_phi = (pi / sqrt 3)(1 - 2 lambda pi^2 / 15)`, `delta_m =
/// |lambda| delta_phi`; the product and bound are evaluated from the
/// first-order state and agree to `O(lambda^2)`.
pub fn perturbative_report(lambda: f64) -> Result<ApproxReport> {
    check_finite(lambda)?;
    let delta_phi = PI / 3f64.sqrt() * (1.0 - 2.0 * lambda * PI * PI / 15.0);
    let delta_m = lambda.abs() * delta_phi;
    let psi_pi = perturbative_wavefunction(lambda, PI);
    let bound = 0.5 * (1.0 - 2.0 * PI * psi_pi * psi_pi).abs();
    Ok(ApproxReport {
        method: ApproxMethod::Perturbative,
        lambda,
        delta_phi: non_negative(delta_phi),
        delta_m: non_negative(delta_m),
        product: non_negative(delta_m * delta_phi),
        bound: Some(bound),
        valid: lambda.abs() <= PERTURBATIVE_LIMIT,
    })
}

/// First-order amplitudes `c_0 = 1/N_per`, `c_m = -lambda (-1)^m / (m^2 N_per)`.
pub fn perturbative_state(lambda: f64, m_max: usize) -> Result<AngularDistribution> {
    check_finite(lambda)?;
    if lambda.abs() > PERTURBATIVE_STATE_LIMIT {
        return Err(domain(format!(
            "perturbative state needs |lambda| <= {PERTURBATIVE_STATE_LIMIT} (got {lambda})"
        )));
    }
    if m_max == 0 {
        return Err(domain("m_max must be positive"));
    }
    let n = perturbative_norm_sq(lambda).sqrt();
    let half: Vec<f64> = (0..=m_max)
        .map(|m| {
            if m == 0 {
                1.0 / n
            } else {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                -lambda * sign / ((m * m) as f64 * n)
            }
        })
        .collect();
    let k = lambda.abs() / n;
    Ok(AngularDistribution::from_half(
        lambda,
        &half,
        m4_tail_bound(k, m_max),
        TailModel { k, beta: 0.0 },
    ))
}

/// `ln N_wvf^2 = |lambda| pi^2 - ln(|lambda| pi)`.
pub fn wavefunction_log_norm_sq(lambda: f64) -> f64 {
    let s = lambda.abs();
    s * PI * PI - (s * PI).ln()
}

/// `P(pi) ~ |lambda| pi`.
pub fn wavefunction_p_pi(lambda: f64) -> f64 {
    lambda.abs() * PI
}

/// `P(pi) ~ |lambda| pi (1 - 1 / (2 pi^2 |lambda|))`.
///
/// Keeping the `(phi - pi)^2` term of the boundary-layer exponent gives
/// `N^2 ~ N_wvf^2 (1 + 1/(2a))` with `a = |lambda| pi^2`; this is its first
/// order in `1/a`, the order at which the bound equals `a - 1`.
pub fn wavefunction_p_pi_refined(lambda: f64) -> f64 {
    let s = lambda.abs();
    s * PI * (1.0 - 1.0 / (2.0 * PI * PI * s))
}

/// `delta_phi^2 = pi^2 - 1/|lambda|`, `delta_m = |lambda| pi - 1/(2 pi)`,
/// product `|lambda| pi^2 - 1`, bound `pi P(pi) - 1/2` with `P(pi) ~
/// |lambda| pi`. Defined for `lambda < 0`; fields that would be negative or
/// undefined are `None`.
pub fn wavefunction_report(lambda: f64) -> Result<ApproxReport> {
    check_finite(lambda)?;
    let mut r = ApproxReport {
        method: ApproxMethod::Wavefunction,
        lambda,
        delta_phi: None,
        delta_m: None,
        product: None,
        bound: None,
        valid: false,
    };
    if lambda >= 0.0 {
        return Ok(r);
    }
    let s = -lambda;
    let a = s * PI * PI;
    r.delta_phi = non_negative(PI * PI - 1.0 / s).map(f64::sqrt);
    r.delta_m = non_negative(s * PI - 0.5 / PI);
    r.product = non_negative(a - 1.0);
    r.bound = non_negative(PI * wavefunction_p_pi(lambda) - 0.5);
    r.valid = a > LARGE_LAMBDA_LIMIT;
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LorentzianReport {
    pub report: ApproxReport,
    pub amplitudes: AngularDistribution,
    /// `pi |lambda|`, given when `|lambda| pi^2 > 3`.
    pub simplified_delta_m: Option<f64>,
}

/// Scaled Lorentzian normalisation `N_Lor^2 exp(-a) = pi cosech^2 a +
/// coth a / (|lambda| pi)`, `a = |lambda| pi^2`.
pub fn lorentzian_scaled_norm_sq(lambda: f64) -> Result<f64> {
    let s = lambda.abs();
    let h = hyperbolics(s * PI * PI)?;
    Ok(PI * h.cosech * h.cosech + h.coth / (s * PI))
}

/// `ln N_Lor^2`.
pub fn lorentzian_log_norm_sq(lambda: f64) -> Result<f64> {
    Ok(lorentzian_scaled_norm_sq(lambda)?.ln() + lambda.abs() * PI * PI)
}

/// `c_m = (-1)^m 2 |lambda| pi exp(a/2) / (N_Lor sqrt(2 pi) (lambda^2 pi^2 + m^2))`,
/// with `exp(a/2)` cancelled against `N_Lor`.
pub fn lorentzian_amplitude(lambda: f64, m: i64) -> Result<f64> {
    let s = lambda.abs();
    let k = lorentzian_k(lambda)?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let mf = m as f64;
    Ok(sign * k / (s * s * PI * PI + mf * mf))
}

fn lorentzian_k(lambda: f64) -> Result<f64> {
    let s = lambda.abs();
    Ok(2.0 * s * PI / (SQRT_2PI * lorentzian_scaled_norm_sq(lambda)?.sqrt()))
}

/// `(delta_m)^2 = pi^2 lambda^2 (coth a - a cosech^2 a) / (coth a + a cosech^2 a)`.
pub fn lorentzian_delta_m(lambda: f64) -> Result<f64> {
    let s = lambda.abs();
    let a = s * PI * PI;
    let h = hyperbolics(a)?;
    let c2 = h.cosech * h.cosech;
    Ok(PI * s * ((h.coth - a * c2) / (h.coth + a * c2)).sqrt())
}

pub fn lorentzian_report(lambda: f64, m_max: usize) -> Result<LorentzianReport> {
    check_finite(lambda)?;
    if lambda >= 0.0 {
        return Err(domain(format!(
            "Lorentzian approximation needs lambda < 0 (got {lambda})"
        )));
    }
    if m_max == 0 {
        return Err(domain("m_max must be positive"));
    }
    let s = -lambda;
    let a = s * PI * PI;
    let half = (0..=m_max as i64)
        .map(|m| lorentzian_amplitude(lambda, m))
        .collect::<Result<Vec<_>>>()?;
    let k = lorentzian_k(lambda)?;
    let amplitudes = AngularDistribution::from_half(
        lambda,
        &half,
        m4_tail_bound(k, m_max),
        TailModel {
            k,
            beta: s * s * PI * PI,
        },
    );
    let valid = a > LARGE_LAMBDA_LIMIT;
    Ok(LorentzianReport {
        report: ApproxReport {
            method: ApproxMethod::Lorentzian,
            lambda,
            delta_phi: None,
            delta_m: Some(lorentzian_delta_m(lambda)?),
            product: None,
            bound: None,
            valid,
        },
        amplitudes,
        simplified_delta_m: valid.then_some(PI * s),
    })
}

/// Smallest `m_max` whose Lorentzian tail weight is below `epsilon`.
pub fn lorentzian_m_max(lambda: f64, epsilon: f64) -> Result<usize> {
    Ok(m_max_for(lorentzian_k(lambda)?, epsilon))
}

/// Closed forms of the lattice sums, all over `m` in `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedSums {
    /// `sum_{m != 0} m^-4 = pi^4 / 45`.
    pub inv_m4: f64,
}

pub fn closed_sums() -> ClosedSums {
    ClosedSums {
        inv_m4: PI.powi(4) / 45.0,
    }
}

impl ClosedSums {
    /// `sum_m (a^2 + m^2)^-1 = (pi/a) coth(pi a)`.
    pub fn lorentzian_inverse_sum(&self, a: f64) -> Result<f64> {
        let h = hyperbolics(PI * a)?;
        Ok(PI / a * h.coth)
    }

    /// `sum_m (a^2 + m^2)^-2`.
    pub fn lorentzian_sum(&self, a: f64) -> Result<f64> {
        let h = hyperbolics(PI * a)?;
        Ok(PI / (2.0 * a.powi(3)) * h.coth + PI * PI / (2.0 * a * a) * h.cosech * h.cosech)
    }

    /// `sum_m m^2 (a^2 + m^2)^-2`.
    pub fn lorentzian_m2_sum(&self, a: f64) -> Result<f64> {
        let h = hyperbolics(PI * a)?;
        Ok(PI / (2.0 * a) * h.coth - 0.5 * PI * PI * h.cosech * h.cosech)
    }

    /// `sum_{m != 0} (-1)^m exp(i m phi) / m^2 = phi^2/2 - pi^2/6` on `[-pi, pi]`.
    pub fn alternating_fourier(&self, phi: f64) -> Result<f64> {
        if !(-PI..=PI).contains(&phi) {
            return Err(domain(format!("phi must lie in [-pi, pi] (got {phi})")));
        }
        Ok(0.5 * phi * phi - PI * PI / 6.0)
    }
}

/// Brute-force counterparts of [`ClosedSums`], summed term by term.
pub mod brute {

    /// Number of terms used by default.
    pub const TERMS: usize = 1_000_000;

    /// Compensated sum of `f(m)` for `m = m_max` down to `1`.
    fn sum_down(m_max: usize, f: impl Fn(f64) -> f64) -> f64 {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for m in (1..=m_max).rev() {
            let t = f(m as f64);
            let s = sum + t;
            if sum.abs() >= t.abs() {
                comp += (sum - s) + t;
            } else {
                comp += (t - s) + sum;
            }
            sum = s;
        }
        sum + comp
    }

    pub fn inv_m4(terms: usize) -> f64 {
        2.0 * sum_down(terms, |m| 1.0 / (m * m * m * m))
    }

    pub fn lorentzian_sum(a: f64, terms: usize) -> f64 {
        let a2 = a * a;
        1.0 / (a2 * a2) + 2.0 * sum_down(terms, |m| 1.0 / ((a2 + m * m) * (a2 + m * m)))
    }

    /// Partial sums converge like `2/M` here, so three partial sums at
    /// `M/4, M/2, M` are Richardson-extrapolated to cancel the `1/M` and
    /// `1/M^2` terms.
    pub fn lorentzian_m2_sum(a: f64, terms: usize) -> f64 {
        let a2 = a * a;
        let partial = |n: usize| 2.0 * sum_down(n, |m| m * m / ((a2 + m * m) * (a2 + m * m)));
        let (s1, s2, s4) = (partial(terms / 4), partial(terms / 2), partial(terms));
        let r1 = 2.0 * s2 - s1;
        let r2 = 2.0 * s4 - s2;
        (4.0 * r2 - r1) / 3.0
    }

    pub fn alternating_fourier(phi: f64, terms: usize) -> f64 {
        2.0 * sum_down(terms, |m| {
            let sign = if m % 2.0 == 0.0 { 1.0 } else { -1.0 };
            sign * (m * phi).cos() / (m * m)
        })
    }
}
