//! The `(2L+1)`-dimensional state space spanned by `|m>`, `m = -L..=L`,
//! with angle eigenstates
//!
//! ```text
//! |theta_n> = (2L+1)^(-1/2) sum_m exp(-i m theta_n) |m>,
//! theta_n = theta0 + 2 pi n / (2L+1).
//! ```
//!
//! Matrices are dense and indexed by `m + L`. Uncertainties are computed in
//! `O(N^2)` through the angle-basis amplitudes rather than by forming
//! operator products.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::continuum::make_state;
use crate::error::{domain, Error, Result};

/// Largest supported `L`.
pub const MAX_L: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiniteSpace {
    l: usize,
    theta0: f64,
}

impl FiniteSpace {
    /// Space with window start `theta0 = -pi`.
    pub fn new(l: usize) -> Result<Self> {
        Self::with_theta0(l, -PI)
    }

    pub fn with_theta0(l: usize, theta0: f64) -> Result<Self> {
        if l == 0 || l > MAX_L {
            return Err(domain(format!("L must lie in 1..={MAX_L} (got {l})")));
        }
        if !theta0.is_finite() {
            return Err(domain("theta0 must be finite"));
        }
        Ok(Self { l, theta0 })
    }

    #[allow(non_snake_case)]
    pub fn L(&self) -> usize {
        self.l
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn dim(&self) -> usize {
        2 * self.l + 1
    }

    /// `theta_n` for `0 <= n <= 2L` (not range-checked).
    pub fn theta(&self, n: usize) -> f64 {
        self.theta0 + 2.0 * PI * n as f64 / self.dim() as f64
    }

    pub fn thetas(&self) -> Vec<f64> {
        (0..self.dim()).map(|n| self.theta(n)).collect()
    }

    fn ms(&self) -> impl Iterator<Item = i64> {
        let l = self.l as i64;
        -l..=l
    }

    // exp(i m theta_n) for all m (rows) and n (columns), with m n reduced
    // mod N before the angle is formed so large products keep full accuracy.
    fn phases(&self) -> Vec<Complex64> {
        let dim = self.dim();
        let roots: Vec<Complex64> = (0..dim)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / dim as f64))
            .collect();
        let mut out = Vec::with_capacity(dim * dim);
        for m in self.ms() {
            let base = Complex64::from_polar(1.0, m as f64 * self.theta0);
            for n in 0..dim {
                let k = (m * n as i64).rem_euclid(dim as i64) as usize;
                out.push(base * roots[k]);
            }
        }
        out
    }
}

/// Normalised state `sum_m b_m |m>`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteState {
    space: FiniteSpace,
    coeffs: DVector<Complex64>,
}

impl FiniteState {
    /// Normalises `coeffs` (indexed by `m + L`).
    pub fn new(space: FiniteSpace, coeffs: DVector<Complex64>) -> Result<Self> {
        if coeffs.len() != space.dim() {
            return Err(domain(format!(
                "expected {} coefficients, got {}",
                space.dim(),
                coeffs.len()
            )));
        }
        let norm = coeffs.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(domain("state vector must have finite non-zero norm"));
        }
        Ok(Self {
            space,
            coeffs: coeffs / Complex64::from(norm),
        })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn coeffs(&self) -> &DVector<Complex64> {
        &self.coeffs
    }

    /// `b_m`, or `None` for `|m| > L`.
    pub fn coeff(&self, m: i64) -> Option<Complex64> {
        let i = m + self.space.l as i64;
        usize::try_from(i)
            .ok()
            .and_then(|i| self.coeffs.get(i).copied())
    }

    /// Amplitudes `<theta_n|psi>`, `n = 0..2L`.
    pub fn angle_amplitudes(&self) -> Vec<Complex64> {
        self.angle_transform(|_, b| b)
    }

    // <theta_n| sum_m w(m, b_m) |m>
    fn angle_transform(&self, w: impl Fn(i64, Complex64) -> Complex64) -> Vec<Complex64> {
        let dim = self.space.dim();
        let phases = self.space.phases();
        let scale = 1.0 / (dim as f64).sqrt();
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for (row, m) in self.space.ms().enumerate() {
            let b = w(m, self.coeffs[row]);
            if b == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (n, o) in out.iter_mut().enumerate() {
                *o += phases[row * dim + n] * b;
            }
        }
        out.iter_mut().for_each(|o| *o *= scale);
        out
    }
}

/// `|m>` for `|m| <= L`.
pub fn m_eigenstate(space: FiniteSpace, m: i64) -> Result<FiniteState> {
    let l = space.l as i64;
    if m.abs() > l {
        return Err(Error::Index { index: m, max: l });
    }
    let mut coeffs = DVector::zeros(space.dim());
    coeffs[(m + l) as usize] = Complex64::new(1.0, 0.0);
    FiniteState::new(space, coeffs)
}

/// `|theta_n>` for `0 <= n <= 2L`.
pub fn angle_eigenstate(space: FiniteSpace, n: usize) -> Result<FiniteState> {
    let dim = space.dim();
    if n >= dim {
        return Err(Error::Index {
            index: n as i64,
            max: dim as i64 - 1,
        });
    }
    let theta = space.theta(n);
    let scale = 1.0 / (dim as f64).sqrt();
    let coeffs = DVector::from_iterator(
        dim,
        space
            .ms()
            .map(|m| Complex64::from_polar(scale, -(m as f64) * theta)),
    );
    Ok(FiniteState { space, coeffs })
}

/// `sum_n theta_n |theta_n><theta_n|` in the `m` basis.
///
/// The entry `<m'|phi|m>` depends only on `m - m'` and is summed directly
/// over `n` for each offset.
pub fn angle_operator(space: FiniteSpace) -> DMatrix<Complex64> {
    let dim = space.dim();
    let thetas = space.thetas();
    let by_offset: Vec<Complex64> = (0..2 * dim - 1)
        .map(|i| {
            let d = i as i64 - (dim as i64 - 1);
            let mut acc = Complex64::new(0.0, 0.0);
            for (n, &t) in thetas.iter().enumerate() {
                let k = (d * n as i64).rem_euclid(dim as i64) as f64;
                let phase = d as f64 * space.theta0 + 2.0 * PI * k / dim as f64;
                acc += Complex64::from_polar(t, phase);
            }
            acc / dim as f64
        })
        .collect();
    DMatrix::from_fn(dim, dim, |r, c| by_offset[c + dim - 1 - r])
}

/// `diag(-L, ..., L)`.
pub fn lz_operator(space: FiniteSpace) -> DMatrix<Complex64> {
    let l = space.l as f64;
    DMatrix::from_fn(space.dim(), space.dim(), |r, c| {
        if r == c {
            Complex64::new(r as f64 - l, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CommutatorMode {
    /// `phi L_z - L_z phi` by matrix products.
    Direct,
    /// Entrywise closed form.
    ClosedForm,
}

/// `[phi, L_z]` in the `m` basis.
///
/// The closed form is
/// `<m'|[phi, L_z]|m> = (2 pi / N) d exp(i d theta0) / (exp(2 pi i d / N) - 1)`
/// with `d = m - m'` and `N = 2L + 1`, and zero on the diagonal.
pub fn commutator(space: FiniteSpace, mode: CommutatorMode) -> DMatrix<Complex64> {
    match mode {
        CommutatorMode::Direct => {
            let phi = angle_operator(space);
            let lz = lz_operator(space);
            &phi * &lz - &lz * &phi
        }
        CommutatorMode::ClosedForm => {
            let dim = space.dim();
            let nf = dim as f64;
            DMatrix::from_fn(dim, dim, |r, c| {
                let d = c as i64 - r as i64;
                if d == 0 {
                    return Complex64::new(0.0, 0.0);
                }
                let df = d as f64;
                let denom = Complex64::from_polar(1.0, 2.0 * PI * df / nf) - 1.0;
                Complex64::from_polar(2.0 * PI * df / nf, df * space.theta0) / denom
            })
        }
    }
}

/// Uncertainties of `phi` and `L_z` in a finite state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RsReport {
    pub dphi: f64,
    pub dlz: f64,
    pub product: f64,
    /// `|<[phi, L_z]>| / 2`.
    pub rs_bound: f64,
    /// `|1 - (2L+1) |<theta_0|psi>|^2| / 2`, the large-`L` form of the bound.
    pub approx_bound: f64,
}

pub fn rs_report(state: &FiniteState) -> RsReport {
    let space = state.space;
    let dim = space.dim();
    let thetas = space.thetas();
    let a = state.angle_amplitudes();
    let la = state.angle_transform(|m, b| b * m as f64);

    let weights: Vec<f64> = a.iter().map(|z| z.norm_sqr()).collect();
    let total: f64 = weights.iter().sum();
    let mean_phi = thetas.iter().zip(&weights).map(|(t, w)| t * w).sum::<f64>() / total;
    let var_phi = thetas
        .iter()
        .zip(&weights)
        .map(|(t, w)| (t - mean_phi).powi(2) * w)
        .sum::<f64>()
        / total;

    let mut mean_m = 0.0;
    for m in space.ms() {
        mean_m += m as f64 * state.coeff(m).unwrap().norm_sqr();
    }
    let mut var_m = 0.0;
    for m in space.ms() {
        var_m += (m as f64 - mean_m).powi(2) * state.coeff(m).unwrap().norm_sqr();
    }

    // <psi|phi L_z|psi> in the angle basis; the commutator expectation is
    // twice its imaginary part
    let cross: Complex64 = (0..dim).map(|n| a[n].conj() * la[n] * thetas[n]).sum();
    let dphi = var_phi.max(0.0).sqrt();
    let dlz = var_m.max(0.0).sqrt();
    RsReport {
        dphi,
        dlz,
        product: dphi * dlz,
        rs_bound: cross.im.abs(),
        approx_bound: 0.5 * (1.0 - dim as f64 * a[0].norm_sqr()).abs(),
    }
}

/// Intelligent state truncated to `|m| <= L` and renormalised.
pub fn embed_intelligent(lambda: f64, space: FiniteSpace) -> Result<FiniteState> {
    let state = make_state(lambda)?;
    let l = space.l as i64;
    let half = (0..=l)
        .map(|m| state.amplitude(m))
        .collect::<Result<Vec<_>>>()?;
    let coeffs = DVector::from_iterator(
        space.dim(),
        (-l..=l).map(|m| Complex64::new(half[m.unsigned_abs() as usize], 0.0)),
    );
    FiniteState::new(space, coeffs)
}

/// Intelligent state sampled on the angle grid, `<theta_n|psi> ~ psi(theta_n)`,
/// and renormalised. Converges to the same limit as [`embed_intelligent`].
pub fn embed_sampled(lambda: f64, space: FiniteSpace) -> Result<FiniteState> {
    let state = make_state(lambda)?;
    let dim = space.dim();
    let wrap = |t: f64| (t + PI).rem_euclid(2.0 * PI) - PI;
    let samples = space
        .thetas()
        .into_iter()
        .map(|t| state.wavefunction(wrap(t)))
        .collect::<Result<Vec<_>>>()?;
    let phases = space.phases();
    let scale = 1.0 / (dim as f64).sqrt();
    let coeffs = DVector::from_iterator(
        dim,
        (0..dim).map(|row| {
            let acc: Complex64 = (0..dim)
                .map(|n| phases[row * dim + n].conj() * samples[n])
                .sum();
            acc * scale
        }),
    );
    FiniteState::new(space, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs(m: &DMatrix<Complex64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn space_validation() {
        assert!(FiniteSpace::new(0).is_err());
        assert!(FiniteSpace::new(MAX_L + 1).is_err());
        assert!(FiniteSpace::with_theta0(3, f64::NAN).is_err());
        let s = FiniteSpace::new(4).unwrap();
        assert_eq!(s.dim(), 9);
        for t in s.thetas() {
            assert!((-PI..PI).contains(&t));
        }
    }

    #[test]
    fn small_angle_operator() {
        let s = FiniteSpace::new(1).unwrap();
        let phi = angle_operator(s);
        assert!(max_abs(&(&phi - phi.adjoint())) < 1e-12);
        let trace: Complex64 = phi.diagonal().iter().sum();
        assert!((trace.re + PI).abs() < 1e-12 && trace.im.abs() < 1e-12);
        let e = angle_eigenstate(s, 0).unwrap();
        for z in e.coeffs().iter() {
            assert!((z.norm() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        }
        assert!(angle_eigenstate(s, 3).is_err());
        assert!(m_eigenstate(s, 2).is_err());
    }

    #[test]
    fn lz_is_diagonal() {
        let s = FiniteSpace::new(1).unwrap();
        let lz = lz_operator(s);
        let want = [-1.0, 0.0, 1.0];
        for r in 0..3 {
            for c in 0..3 {
                let v = if r == c { want[r] } else { 0.0 };
                assert_eq!(lz[(r, c)], Complex64::new(v, 0.0));
            }
        }
    }

    #[test]
    fn phi_on_flat_state_approaches_inverse_m() {
        // <m|phi|0> -> i (-1)^m / m. The imaginary part converges as
        // O(m / L^2); the real part is (-1)^(m+1) pi / (2L+1) for every m,
        // the shift of the window mean away from zero.
        let deviation = |l: usize| {
            let s = FiniteSpace::new(l).unwrap();
            let phi = angle_operator(s);
            let mut worst: f64 = 0.0;
            for m in -20i64..=20 {
                if m == 0 {
                    continue;
                }
                let got = phi[((m + l as i64) as usize, l)];
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                if l >= 400 {
                    assert!(
                        (got.im - sign / m as f64).abs() < 1e-3,
                        "L {l} m {m}: {got}"
                    );
                }
                let offset = -sign * PI / s.dim() as f64;
                assert!((got.re - offset).abs() < 1e-12, "L {l} m {m}: {got}");
                worst = worst.max((got - Complex64::new(0.0, sign / m as f64)).norm());
            }
            worst
        };
        let (coarse, fine) = (deviation(100), deviation(400));
        assert!(fine < coarse / 3.5, "{coarse:e} -> {fine:e}");
    }

    #[test]
    fn eigenstates_saturate_trivially() {
        let s = FiniteSpace::new(6).unwrap();
        let r = rs_report(&m_eigenstate(s, 2).unwrap());
        assert!(r.dlz < 1e-15 && r.rs_bound < 1e-12);
        let r = rs_report(&angle_eigenstate(s, 5).unwrap());
        assert!(r.dphi < 1e-12 && r.rs_bound < 1e-12);
    }

    #[test]
    fn flat_embedding_is_m_zero() {
        let s = FiniteSpace::new(10).unwrap();
        let e = embed_intelligent(0.0, s).unwrap();
        assert_eq!(e.coeff(0), Some(Complex64::new(1.0, 0.0)));
        assert_eq!(e.coeff(3), Some(Complex64::new(0.0, 0.0)));
        assert_eq!(e.coeff(11), None);
    }
}
