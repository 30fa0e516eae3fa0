//! Exact continuum intelligent states `psi(phi) = exp(-lambda phi^2 / 2) / N`
//! on the window `[-pi, pi)`.
//!
//! For `lambda != 0` the angle variance follows from one integration by parts:
//!
//! ```text
//! (delta_phi)^2 = (1 - 2 pi P(pi)) / (2 lambda)
//! ```
//!
//! and with `delta_m = |lambda| delta_phi` the uncertainty product equals the
//! bound `|1 - 2 pi P(pi)| / 2` identically. Near `lambda = 0` that quotient
//! cancels, so `|lambda| pi^2 < 1` is handled by power series instead.
//!
//! For `lambda < 0` everything is carried in scaled form: `Ns^2 = N^2
//! exp(-|lambda| pi^2)`, which stays `O(1/|lambda|)` however large `|lambda|`
//! becomes, and `P(pi) = 1 / Ns^2`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::quad::{self, Quadrature};
use crate::specfun::{erf, erfi, ScaledImErf};

const SQRT_2PI: f64 = 2.5066282746310002;
/// `|lambda| pi^2` below which the series branch is used.
const SERIES_LIMIT: f64 = 1.0;
/// Digits the scaled `Im erf` sum may lose before an amplitude is rejected.
const MAX_CONDITION: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    /// `lambda > 0`: truncated Gaussian.
    Gaussian,
    /// `lambda = 0`: the flat state `|m = 0>`.
    Flat,
    /// `lambda < 0`: grows towards the window edge.
    Growing,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntelligentState {
    pub lambda: f64,
    /// `ln N^2`.
    pub log_norm_sq: f64,
    pub norm_kind: NormKind,
    /// `N^2 exp(-|lambda| pi^2)` when growing, `N^2` otherwise.
    #[serde(skip)]
    scaled_norm_sq: f64,
}

/// Builds the state for `lambda`.
pub fn make_state(lambda: f64) -> Result<IntelligentState> {
    IntelligentState::new(lambda)
}

impl IntelligentState {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(domain(format!("lambda must be finite (got {lambda})")));
        }
        let s = lambda.abs();
        let a = s * PI * PI;
        let (norm_kind, scaled_norm_sq, log_norm_sq) = if lambda == 0.0 {
            (NormKind::Flat, 2.0 * PI, (2.0 * PI).ln())
        } else if lambda < 0.0 {
            let ns2 = if a < SERIES_LIMIT {
                norm_series(lambda) * (-a).exp()
            } else {
                (PI / s).sqrt() * erfi(s.sqrt() * PI).scaled
            };
            (NormKind::Growing, ns2, ns2.ln() + a)
        } else {
            let n2 = if a < SERIES_LIMIT {
                norm_series(lambda)
            } else {
                (PI / s).sqrt() * erf(s.sqrt() * PI)
            };
            (NormKind::Gaussian, n2, n2.ln())
        };
        Ok(Self {
            lambda,
            log_norm_sq,
            norm_kind,
            scaled_norm_sq,
        })
    }

    /// `N^2`; `inf` once `exp(|lambda| pi^2)` overflows.
    pub fn norm_sq(&self) -> f64 {
        self.log_norm_sq.exp()
    }

    /// Angle density at the window edge, `psi(pi)^2`.
    pub fn p_pi(&self) -> f64 {
        match self.norm_kind {
            NormKind::Flat => 1.0 / (2.0 * PI),
            NormKind::Growing => 1.0 / self.scaled_norm_sq,
            NormKind::Gaussian => (-self.lambda * PI * PI).exp() / self.scaled_norm_sq,
        }
    }

    /// `psi(phi)` for `-pi <= phi < pi`.
    pub fn wavefunction(&self, phi: f64) -> Result<f64> {
        if !(-PI..PI).contains(&phi) {
            return Err(domain(format!("phi must lie in [-pi, pi) (got {phi})")));
        }
        Ok(self.psi(phi))
    }

    /// `psi(phi)^2`.
    pub fn density(&self, phi: f64) -> Result<f64> {
        self.wavefunction(phi).map(|p| p * p)
    }

    // No window check, so the closed interval can be integrated.
    fn psi(&self, phi: f64) -> f64 {
        match self.norm_kind {
            NormKind::Growing => {
                let s = -self.lambda;
                (-0.5 * s * (PI - phi.abs()) * (PI + phi.abs())).exp() / self.scaled_norm_sq.sqrt()
            }
            _ => (-0.5 * self.lambda * phi * phi).exp() / self.scaled_norm_sq.sqrt(),
        }
    }

    pub fn report(&self) -> UncertaintyReport {
        let lambda = self.lambda;
        let s = lambda.abs();
        let p_pi = self.p_pi();
        if lambda == 0.0 {
            return UncertaintyReport {
                lambda,
                delta_phi: PI / 3f64.sqrt(),
                delta_m: 0.0,
                product: 0.0,
                bound: 0.0,
                residual: 0.0,
                p_pi,
            };
        }
        let (var_phi, one_minus) = if s * PI * PI < SERIES_LIMIT {
            let v = second_moment_series(lambda) / norm_series(lambda);
            (v, 2.0 * lambda * v)
        } else {
            let one_minus = 1.0 - 2.0 * PI * p_pi;
            (one_minus / (2.0 * lambda), one_minus)
        };
        let delta_phi = var_phi.sqrt();
        let delta_m = s * delta_phi;
        let product = delta_m * delta_phi;
        let bound = 0.5 * one_minus.abs();
        UncertaintyReport {
            lambda,
            delta_phi,
            delta_m,
            product,
            bound,
            residual: product - bound,
            p_pi,
        }
    }

    /// Angular-momentum amplitude `c_m = <m|psi>`.
    ///
    /// Growing states use a closed form in `Im erf`, the flat state is `|0>`
    /// and Gaussian states go through [`oam_amplitude_quadrature`].
    pub fn amplitude(&self, m: i64) -> Result<f64> {
        match self.norm_kind {
            NormKind::Flat => Ok(if m == 0 { 1.0 } else { 0.0 }),
            NormKind::Gaussian => oam_amplitude_quadrature(self, m),
            NormKind::Growing => {
                let s = -self.lambda;
                let x = m.unsigned_abs() as f64 / (2.0 * s).sqrt();
                let y = PI * (0.5 * s).sqrt();
                // 2xy = |m| pi exactly
                let cos = if m % 2 == 0 { 1.0 } else { -1.0 };
                let im = ScaledImErf::evaluate(x, y, 0.0, cos);
                if !(im.condition <= MAX_CONDITION) {
                    return Err(Error::Numerical(format!(
                        "amplitude m = {m} at lambda = {}: Im erf sum condition {:e}",
                        self.lambda, im.condition
                    )));
                }
                Ok(im.value / (s.sqrt() * self.scaled_norm_sq.sqrt()))
            }
        }
    }
}

/// Uncertainties of one intelligent state (`hbar = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub lambda: f64,
    pub delta_phi: f64,
    pub delta_m: f64,
    pub product: f64,
    /// `|1 - 2 pi P(pi)| / 2`.
    pub bound: f64,
    /// `product - bound`.
    pub residual: f64,
    pub p_pi: f64,
}

pub fn report(lambda: f64) -> Result<UncertaintyReport> {
    Ok(make_state(lambda)?.report())
}

pub fn oam_amplitude(state: &IntelligentState, m: i64) -> Result<f64> {
    state.amplitude(m)
}

// int exp(s phi^2) dphi over [-pi, pi] with s = -lambda, |s| pi^2 < 1:
// sum_k s^k 2 pi^(2k+1) / (k! (2k+1)).
fn norm_series(lambda: f64) -> f64 {
    power_series(-lambda, 1)
}

// int phi^2 exp(s phi^2) dphi: sum_k s^k 2 pi^(2k+3) / (k! (2k+3)).
fn second_moment_series(lambda: f64) -> f64 {
    power_series(-lambda, 3)
}

fn power_series(s: f64, offset: i32) -> f64 {
    let x = s * PI * PI;
    let mut coeff = 2.0 * PI.powi(offset);
    let mut sum = coeff / offset as f64;
    for k in 1..60 {
        coeff *= x / k as f64;
        let term = coeff / (2 * k + offset) as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `c_m` by adaptive quadrature of the Fourier cosine integral; the oracle
/// for the closed form and the production route for `lambda > 0`.
///
/// For `m != 0` the integral is integrated by parts twice, leaving the
/// boundary term `-(-1)^m 2 lambda pi psi(pi) / m^2` plus a remainder that
/// is itself `O(1/m^2)`, so the result keeps its relative accuracy for
/// large `m`.
pub fn oam_amplitude_quadrature(state: &IntelligentState, m: i64) -> Result<f64> {
    let lambda = state.lambda;
    if lambda == 0.0 {
        return Ok(if m == 0 { 1.0 } else { 0.0 });
    }
    let mf = m.unsigned_abs() as f64;
    let q = Quadrature::default();
    // half-periods of cos(m phi), measured from either end of [0, pi]
    let nodes: Vec<f64> = (1..m.unsigned_abs()).map(|k| k as f64 * PI / mf).collect();
    let weight = |phi: f64| {
        if m == 0 {
            1.0
        } else {
            // psi'' / psi
            lambda * lambda * phi * phi - lambda
        }
    };
    let integral = if lambda < 0.0 {
        let s = -lambda;
        let r = q.endpoint_peaked_over(|phi| weight(phi) * (mf * phi).cos(), 0.5 * s, &nodes)?;
        // exp(s pi^2 / 2) from the scaling cancels against N
        r.mantissa.value / state.scaled_norm_sq.sqrt()
    } else {
        let mut points = vec![0.0];
        points.extend(&nodes);
        points.push(PI);
        let r = q.integrate_over(
            |phi| weight(phi) * (mf * phi).cos() * state.psi(phi),
            &points,
        )?;
        2.0 * r.value
    };
    if m == 0 {
        return Ok(integral / SQRT_2PI);
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let edge = -sign * 2.0 * lambda * PI * state.p_pi().sqrt();
    Ok((edge - integral) / (mf * mf * SQRT_2PI))
}

/// Large-`m` model `c_m ~ (-1)^m k (1/m^2 - beta/m^4)`, used to bound the
/// truncated tail and to correct second moments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailModel {
    pub k: f64,
    pub beta: f64,
}

/// Amplitudes `c_m` for `|m| <= m_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngularDistribution {
    pub lambda: f64,
    pub m_max: usize,
    /// Upper bound on the discarded weight `sum_{|m| > m_max} c_m^2`.
    pub tail_bound: f64,
    pub tail: TailModel,
    amplitudes: Vec<f64>,
}

impl AngularDistribution {
    /// `amplitudes[i]` is `c_{i - m_max}`.
    pub(crate) fn new(lambda: f64, amplitudes: Vec<f64>, tail_bound: f64, tail: TailModel) -> Self {
        debug_assert!(amplitudes.len() % 2 == 1);
        Self {
            lambda,
            m_max: amplitudes.len() / 2,
            tail_bound,
            tail,
            amplitudes,
        }
    }

    /// Builds a symmetric distribution from `c_0 ..= c_{m_max}`.
    pub(crate) fn from_half(lambda: f64, half: &[f64], tail_bound: f64, tail: TailModel) -> Self {
        let mut amplitudes: Vec<f64> = half.iter().rev().copied().collect();
        amplitudes.extend_from_slice(&half[1..]);
        Self::new(lambda, amplitudes, tail_bound, tail)
    }

    pub fn get(&self, m: i64) -> Option<f64> {
        let i = m.checked_add(self.m_max as i64)?;
        usize::try_from(i)
            .ok()
            .and_then(|i| self.amplitudes.get(i).copied())
    }

    /// Amplitudes in ascending `m`, starting at `-m_max`.
    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let m0 = self.m_max as i64;
        self.amplitudes
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - m0, c))
    }

    // outermost terms first, so small contributions are not swamped
    fn sum_outside_in(&self, f: impl Fn(i64, f64) -> f64) -> f64 {
        let m0 = self.m_max as i64;
        let mut total = 0.0;
        for m in (1..=m0).rev() {
            total += f(m, self.get(m).unwrap()) + f(-m, self.get(-m).unwrap());
        }
        total + f(0, self.get(0).unwrap())
    }

    /// `sum_{|m| <= m_max} c_m^2`.
    pub fn parseval_sum(&self) -> f64 {
        self.sum_outside_in(|_, c| c * c)
    }

    /// `|1 - parseval_sum|`.
    pub fn defect(&self) -> f64 {
        (1.0 - self.parseval_sum()).abs()
    }

    /// `sum_{|m| <= m_max} m^2 c_m^2` with no tail correction.
    pub fn truncated_second_moment(&self) -> f64 {
        self.sum_outside_in(|m, c| (m * m) as f64 * c * c)
    }

    /// `<m^2>` including the modelled tail `|m| > m_max`.
    pub fn second_moment(&self) -> f64 {
        let TailModel { k, beta } = self.tail;
        let big_m = self.m_max as f64;
        // m^2 c_m^2 ~ k^2 (m^-2 - 2 beta m^-4)
        let tail = 2.0 * k * k * (zeta_tail(2, big_m) - 2.0 * beta * zeta_tail(4, big_m));
        self.truncated_second_moment() + tail
    }

    /// `psi(phi)` rebuilt from the retained amplitudes.
    pub fn reconstruct(&self, phi: f64) -> f64 {
        let sum = self.sum_outside_in(|m, c| c * (m as f64 * phi).cos());
        sum / SQRT_2PI
    }
}

/// `sum_{m > big_m} m^-p` by Euler-Maclaurin; accurate for `big_m >= 5`.
pub(crate) fn zeta_tail(p: i32, big_m: f64) -> f64 {
    let pf = p as f64;
    big_m.powf(1.0 - pf) / (pf - 1.0) - 0.5 * big_m.powf(-pf) + pf * big_m.powf(-pf - 1.0) / 12.0
        - pf * (pf + 1.0) * (pf + 2.0) * big_m.powf(-pf - 3.0) / 720.0
}

/// Smallest `m_max` with `2 k_bound^2 / (3 m_max^3) < epsilon`, where
/// `|c_m| <= k_bound / m^2`.
pub(crate) fn m_max_for(k_bound: f64, epsilon: f64) -> usize {
    let m = (2.0 * k_bound * k_bound / (3.0 * epsilon)).cbrt().floor() as usize + 1;
    m.max(5)
}

pub(crate) fn m4_tail_bound(k_bound: f64, m_max: usize) -> f64 {
    2.0 * k_bound * k_bound / (3.0 * (m_max as f64).powi(3))
}

/// Amplitudes with `m_max` chosen so the discarded weight is below
/// `epsilon`.
///
/// For `lambda < 0` the wavefunction is convex, and two integrations by
/// parts give `|c_m| <= 4 |lambda| pi psi(pi) / (sqrt(2 pi) m^2)`; for
/// `lambda > 0` the remainder is bounded by `int |psi''|` instead.
pub fn oam_distribution(lambda: f64, epsilon: f64) -> Result<AngularDistribution> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(domain(format!(
            "epsilon must lie in (0, 1) (got {epsilon})"
        )));
    }
    let state = make_state(lambda)?;
    let s = lambda.abs();
    let edge = 2.0 * s * PI * state.p_pi().sqrt() / SQRT_2PI;
    let tail = TailModel {
        k: edge,
        beta: -lambda * (3.0 - lambda * PI * PI),
    };
    let k_bound = match state.norm_kind {
        NormKind::Flat => {
            return Ok(AngularDistribution::from_half(
                0.0,
                &[1.0, 0.0],
                0.0,
                TailModel { k: 0.0, beta: 0.0 },
            ))
        }
        NormKind::Growing => 2.0 * edge,
        NormKind::Gaussian => {
            let turn = 1.0 / lambda.sqrt();
            let f = |phi: f64| ((lambda * phi * phi - 1.0) * lambda).abs() * state.psi(phi);
            let pts: Vec<f64> = if turn < PI {
                vec![0.0, turn, PI]
            } else {
                vec![0.0, PI]
            };
            let abs_second = 2.0 * Quadrature::default().integrate_over(f, &pts)?.value;
            edge + abs_second / SQRT_2PI
        }
    };
    let m_max = m_max_for(k_bound, epsilon);
    let half = (0..=m_max as i64)
        .map(|m| state.amplitude(m))
        .collect::<Result<Vec<_>>>()?;
    Ok(AngularDistribution::from_half(
        lambda,
        &half,
        m4_tail_bound(k_bound, m_max),
        tail,
    ))
}

/// The two sides of `<psi|p^2|psi> = <p psi|p psi>` for `p = -i d/dphi`,
/// which differ by a boundary term because `psi` is not periodic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HermiticityDefect {
    /// `int psi (-psi'')`.
    pub lhs: f64,
    /// `int psi'^2`.
    pub rhs: f64,
    /// `-[psi psi']` over the window, `2 lambda pi P(pi)`.
    pub boundary_term: f64,
}

pub fn hermiticity_defect(lambda: f64) -> Result<HermiticityDefect> {
    let state = make_state(lambda)?;
    let l2 = lambda * lambda;
    let boundary_term = 2.0 * lambda * PI * state.p_pi();
    // psi'' = (lambda^2 phi^2 - lambda) psi, psi' = -lambda phi psi
    let (lhs, rhs) = match state.norm_kind {
        NormKind::Flat => (0.0, 0.0),
        NormKind::Growing => {
            let q = Quadrature::default();
            let s = -lambda;
            let ns2 = state.scaled_norm_sq;
            let lhs = q.endpoint_peaked(|p| -(l2 * p * p + s), s)?;
            let rhs = q.endpoint_peaked(|p| l2 * p * p, s)?;
            (lhs.mantissa.value / ns2, rhs.mantissa.value / ns2)
        }
        NormKind::Gaussian => {
            let rho = |p: f64| state.psi(p).powi(2);
            let tol = quad::DEFAULT_TOLERANCE;
            let lhs = quad::integrate(|p| (lambda - l2 * p * p) * rho(p), -PI, PI, tol)?;
            let rhs = quad::integrate(|p| l2 * p * p * rho(p), -PI, PI, tol)?;
            (lhs.value, rhs.value)
        }
    };
    Ok(HermiticityDefect {
        lhs,
        rhs,
        boundary_term,
    })
}
