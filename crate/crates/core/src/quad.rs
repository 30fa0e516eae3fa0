//! Globally adaptive 21-point Gauss-Kronrod integration.
//!
//! This is the independent oracle for every closed form in the crate. The
//! plain driver bisects the subinterval with the largest error estimate until
//! the summed estimate meets `max(tol, tol * |value|)`. The endpoint-peaked
//! driver integrates `g(phi) * exp(a * phi^2)` over `[-pi, pi]` after pulling
//! out `exp(a * pi^2)`, so the peak at `|phi| = pi` becomes a decaying
//! boundary layer at `u = pi - |phi| = 0` and nothing overflows.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-11;
pub const DEFAULT_MAX_EVALUATIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Result of an integral whose true value is `mantissa.value * exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledQuadrature {
    pub mantissa: QuadratureResult,
    pub log_scale: f64,
}

impl ScaledQuadrature {
    /// Unscaled value; `inf` when `exp(log_scale)` overflows.
    pub fn value(&self) -> f64 {
        if self.mantissa.value == 0.0 {
            0.0
        } else {
            self.mantissa.value * self.log_scale.exp()
        }
    }

    /// `ln |value|`, finite whenever the mantissa is non-zero.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.value.abs().ln() + self.log_scale
    }
}

/// Integrator configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub tol: f64,
    pub max_evaluations: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOLERANCE,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
        }
    }
}

/// `int_a^b f` with the default evaluation budget.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    Quadrature::with_tolerance(tol).integrate(f, a, b)
}

/// `int_{-pi}^{pi} g(phi) exp(lambda_abs * phi^2) dphi`, log-scaled.
pub fn integrate_endpoint_peaked<G: Fn(f64) -> f64>(
    g: G,
    lambda_abs: f64,
    tol: f64,
) -> Result<ScaledQuadrature> {
    Quadrature::with_tolerance(tol).endpoint_peaked(g, lambda_abs)
}

impl Quadrature {
    pub fn with_tolerance(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    pub fn max_evaluations(mut self, n: usize) -> Self {
        self.max_evaluations = n;
        self
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<QuadratureResult> {
        self.integrate_over(f, &[a, b])
    }

    /// Integrates over `[points[0], points[last]]`, seeding the adaptive
    /// partition with every listed point. Points must be strictly increasing.
    pub fn integrate_over<F: Fn(f64) -> f64>(
        &self,
        f: F,
        points: &[f64],
    ) -> Result<QuadratureResult> {
        if !(self.tol > 0.0) {
            return Err(domain(format!(
                "tolerance must be positive (got {})",
                self.tol
            )));
        }
        if points.len() < 2 {
            return Err(domain("need at least two integration limits"));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(domain("integration limits must be finite"));
        }
        if points.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(domain("integration points must be strictly increasing"));
        }
        adaptive(&f, points, self.tol, self.max_evaluations)
    }

    /// See [`integrate_endpoint_peaked`].
    pub fn endpoint_peaked<G: Fn(f64) -> f64>(
        &self,
        g: G,
        lambda_abs: f64,
    ) -> Result<ScaledQuadrature> {
        self.endpoint_peaked_over(g, lambda_abs, &[])
    }

    /// As [`Quadrature::endpoint_peaked`], with extra breakpoints given in
    /// the boundary-layer coordinate `u = pi - |phi|`, `0 < u < pi`.
    pub fn endpoint_peaked_over<G: Fn(f64) -> f64>(
        &self,
        g: G,
        lambda_abs: f64,
        u_breaks: &[f64],
    ) -> Result<ScaledQuadrature> {
        if !(lambda_abs > 0.0) || !lambda_abs.is_finite() {
            return Err(domain(format!(
                "endpoint-peaked integral needs finite lambda_abs > 0 (got {lambda_abs})"
            )));
        }
        // phi^2 - pi^2 = -u (2 pi - u)
        let h = |u: f64| {
            let w = (-lambda_abs * u * (2.0 * PI - u)).exp();
            if w == 0.0 {
                0.0
            } else {
                (g(PI - u) + g(u - PI)) * w
            }
        };
        let mut points = vec![0.0, PI];
        let width = 1.0 / (2.0 * PI * lambda_abs);
        let mut s = 0.25 * width;
        while s < PI {
            points.push(s);
            s *= 2.0;
        }
        points.extend(u_breaks.iter().copied().filter(|u| *u > 0.0 && *u < PI));
        points.sort_by(f64::total_cmp);
        points.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * PI);
        let mantissa = self.integrate_over(h, &points)?;
        Ok(ScaledQuadrature {
            mantissa,
            log_scale: lambda_abs * PI * PI,
        })
    }
}

// 21-point Kronrod abscissae and weights; Gauss weights for the embedded
// 10-point rule sit at the odd Kronrod indices.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600525685903,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    frozen: bool,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut res_g = 0.0;
    let mut res_k = WGK[10] * fc;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx);
        let f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    let mut frozen = false;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && error <= floor {
        error = floor;
        frozen = true;
    }
    if half.abs() <= 4.0 * f64::EPSILON * centre.abs().max(f64::MIN_POSITIVE) {
        frozen = true;
    }
    Segment {
        a,
        b,
        value,
        error,
        frozen,
    }
}

fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    points: &[f64],
    tol: f64,
    max_evaluations: usize,
) -> Result<QuadratureResult> {
    const EVALS: usize = 21;
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Segment> = Vec::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        let s = kronrod21(f, w[0], w[1]);
        evaluations += EVALS;
        if !s.value.is_finite() || !s.error.is_finite() {
            return Err(Error::Numerical(format!(
                "integrand not finite on [{}, {}]",
                w[0], w[1]
            )));
        }
        if s.frozen {
            frozen.push(s);
        } else {
            heap.push(s);
        }
    }

    let totals = |heap: &BinaryHeap<Segment>, frozen: &[Segment]| {
        let mut v = 0.0;
        let mut e = 0.0;
        for s in heap.iter().chain(frozen.iter()) {
            v += s.value;
            e += s.error;
        }
        (v, e)
    };
    let (mut value, mut error) = totals(&heap, &frozen);

    loop {
        if error <= tol.max(tol * value.abs()) {
            // running sums drift; confirm with a fresh pass
            let (v, e) = totals(&heap, &frozen);
            value = v;
            error = e;
            if error <= tol.max(tol * value.abs()) {
                return Ok(QuadratureResult {
                    value,
                    error_estimate: error,
                    evaluations,
                });
            }
        }
        let fail = |value, error, evaluations| Error::NonConvergence {
            value,
            error_estimate: error,
            evaluations,
        };
        if evaluations + 2 * EVALS > max_evaluations {
            let (v, e) = totals(&heap, &frozen);
            return Err(fail(v, e, evaluations));
        }
        let Some(worst) = heap.pop() else {
            let (v, e) = totals(&heap, &frozen);
            return Err(fail(v, e, evaluations));
        };
        let mid = 0.5 * (worst.a + worst.b);
        let left = kronrod21(f, worst.a, mid);
        let right = kronrod21(f, mid, worst.b);
        evaluations += 2 * EVALS;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        for s in [left, right] {
            if !s.value.is_finite() {
                return Err(Error::Numerical(format!(
                    "integrand not finite on [{}, {}]",
                    s.a, s.b
                )));
            }
            if s.frozen {
                frozen.push(s);
            } else {
                heap.push(s);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::erfi;

    #[test]
    fn constant_and_polynomial() {
        let r = integrate(|_| 1.0, -PI, PI, 1e-12).unwrap();
        assert!((r.value - 2.0 * PI).abs() < 1e-13);
        assert!(r.error_estimate <= 1e-12);
        let r = integrate(|x| x * x, -PI, PI, 1e-12).unwrap();
        assert!((r.value - 2.0 * PI.powi(3) / 3.0).abs() < 1e-12);
    }

    #[test]
    fn growing_gaussian_matches_erfi() {
        let r = integrate(|x| (x * x).exp(), -PI, PI, 1e-12).unwrap();
        let want = PI.sqrt() * erfi(PI).value;
        assert!(((r.value - want) / want).abs() < 1e-10);
    }

    #[test]
    fn endpoint_peaked_constant() {
        let r = integrate_endpoint_peaked(|_| 1.0, 2.0, 1e-12).unwrap();
        let x = 2f64.sqrt() * PI;
        // sqrt(pi/2) erfi(sqrt(2) pi), scaled by exp(-2 pi^2)
        let want = (PI / 2.0).sqrt() * erfi(x).scaled;
        assert!(((r.mantissa.value - want) / want).abs() < 1e-10);
        let full = (PI / 2.0).sqrt() * erfi(x).value;
        assert!(((r.value() - full) / full).abs() < 1e-10);
    }

    #[test]
    fn endpoint_peaked_agrees_with_plain_driver() {
        for &lam in &[0.1, 1.0, 3.0, 5.0] {
            let scaled = integrate_endpoint_peaked(|p| p.cos(), lam, 1e-13).unwrap();
            let plain = integrate(|p| p.cos() * (lam * p * p).exp(), -PI, PI, 1e-13).unwrap();
            let rel = ((scaled.value() - plain.value) / plain.value).abs();
            assert!(rel < 1e-10, "lambda {lam}: {rel:e}");
        }
    }

    #[test]
    fn endpoint_peaked_survives_large_lambda() {
        // exp(50 pi^2) is about 1e214; the mantissa must still be accurate
        let r = integrate_endpoint_peaked(|_| 1.0, 50.0, 1e-13).unwrap();
        let x = 50f64.sqrt() * PI;
        let want = (PI / 50.0).sqrt() * erfi(x).scaled;
        assert!(((r.mantissa.value - want) / want).abs() < 1e-10);
        assert!((r.ln_abs() - (want.ln() + 50.0 * PI * PI)).abs() < 1e-10);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let q = Quadrature::with_tolerance(1e-14).max_evaluations(100);
        match q.integrate(|x| (50.0 * x).sin().abs(), 0.0, 10.0) {
            Err(Error::NonConvergence { evaluations, .. }) => assert!(evaluations <= 100),
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn bad_limits() {
        assert!(integrate(|x| x, 1.0, 1.0, 1e-10).is_err());
        assert!(integrate(|x| x, 2.0, 1.0, 1e-10).is_err());
        assert!(integrate(|x| x, 0.0, 1.0, 0.0).is_err());
        assert!(integrate_endpoint_peaked(|x| x, 0.0, 1e-10).is_err());
    }

    #[test]
    fn evaluation_count_is_reported() {
        let r = integrate(|x| x.sin(), 0.0, 1.0, 1e-10).unwrap();
        assert_eq!(r.evaluations % 21, 0);
        assert!(r.evaluations > 0 && r.evaluations <= DEFAULT_MAX_EVALUATIONS);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn splitting_invariance(c in -3.0f64..3.0, k in 0.5f64..4.0) {
                let tol = 1e-11;
                let f = |x: f64| (k * x).cos() * (0.7 * x * x).exp();
                let whole = integrate(f, -PI, PI, tol).unwrap().value;
                let left = integrate(f, -PI, c, tol).unwrap().value;
                let right = integrate(f, c, PI, tol).unwrap().value;
                let scale = whole.abs().max(1.0);
                prop_assert!((whole - left - right).abs() <= 2.0 * tol * scale);
            }

            #[test]
            fn scaled_and_plain_paths_agree(lam in 0.01f64..5.0) {
                let s = integrate_endpoint_peaked(|p| p * p, lam, 1e-12).unwrap().value();
                let p = integrate(|p| p * p * (lam * p * p).exp(), -PI, PI, 1e-12).unwrap().value;
                prop_assert!(((s - p) / p).abs() <= 1e-10);
            }
        }
    }
}
