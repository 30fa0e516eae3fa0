//! Intelligent states for the angle / angular-momentum uncertainty relation.
//!
//! The crate evaluates, for any real parameter `lambda`, the states whose
//! angle wavefunction on `[-pi, pi)` is `exp(-lambda * phi^2 / 2) / N`. These
//! states turn the relation
//!
//! ```text
//! delta_phi * delta_m >= |1 - 2 pi P(pi)| / 2
//! ```
//!
//! into an equality. For `lambda < 0` the wavefunction grows towards the
//! window edge and the uncertainty product is unbounded.
//!
//! Modules:
//!
//! * [`specfun`]: error-function family (`erf`, `erfi`, `Im erf(x + iy)`)
//!   with overflow-safe scaled variants, plus `coth`/`cosech`.
//! * [`quad`]: adaptive Gauss-Kronrod integration used as the independent
//!   oracle, including an endpoint-peaked variant with log-scaled results.
//! * [`continuum`]: exact normalisation, uncertainties, bound and
//!   angular-momentum amplitudes.
//! * [`finite_dim`]: the `(2L+1)`-dimensional angle and `L_z` operators and
//!   the Robertson uncertainty relation they satisfy.
//! * [`approx`]: perturbative, wavefunction and Lorentzian approximations and
//!   the closed-form lattice sums they rely on.
//!
//! Units: `hbar = 1`, so the angular-momentum uncertainty is reported as
//! `delta_m`.

// `!(x <= y)` is used on purpose so that NaN takes the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod continuum;
mod error;
pub mod finite_dim;
pub mod quad;
pub mod specfun;

pub use approx::{ApproxMethod, ApproxReport, LorentzianReport};
pub use continuum::{
    AngularDistribution, HermiticityDefect, IntelligentState, NormKind, UncertaintyReport,
};
pub use error::{Error, Result};
pub use finite_dim::{CommutatorMode, FiniteSpace, FiniteState, RsReport};
pub use quad::{QuadratureResult, ScaledQuadrature};
pub use specfun::{Hyperbolics, ScaledErfiValue};
