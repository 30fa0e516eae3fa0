use aut_core::quad;
use aut_core::specfun::{erf, erfi, im_erf_scaled, FRAC_2_SQRT_PI};

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn erf_on_grid() {
    for i in 0..50 {
        let x = -6.0 + 12.0 * (i as f64 + 0.5) / 50.0;
        let q = quad::integrate(|t| FRAC_2_SQRT_PI * (-t * t).exp(), 0.0, x.abs(), 1e-12)
            .unwrap()
            .value
            .copysign(x);
        assert!(rel(erf(x), q) < 1e-10, "x {x}: {} vs {q}", erf(x));
    }
}

#[test]
fn erfi_on_grid() {
    // both sides of the series/asymptotic seam, up to |lambda| = 50
    for i in 0..50 {
        let x = 0.02 + 22.2 * (i as f64 / 49.0).powf(1.5);
        let e = erfi(x);
        let scaled = quad::integrate(
            |t| FRAC_2_SQRT_PI * ((t - x) * (t + x)).exp(),
            0.0,
            x,
            1e-12,
        )
        .unwrap()
        .value;
        assert!(rel(e.scaled, scaled) < 1e-10, "x {x}");
        if x < 20.0 {
            let plain = quad::integrate(|t| FRAC_2_SQRT_PI * (t * t).exp(), 0.0, x, 1e-12).unwrap();
            assert!(rel(e.value, plain.value) < 1e-10, "x {x}");
        }
    }
}

#[test]
fn im_erf_scaled_on_vertical_segments() {
    // exp(x^2 - y^2) Im erf(x + iy) = (2/sqrt(pi)) int_0^y exp(t^2 - y^2) cos(2xt) dt;
    // x, y stay moderate so the oscillating integral keeps its digits
    for i in 0..50 {
        let x = 0.1 + 0.05 * i as f64;
        let y = 0.5 + 0.06 * i as f64;
        let q = quad::integrate(
            |t| FRAC_2_SQRT_PI * ((t - y) * (t + y)).exp() * (2.0 * x * t).cos(),
            0.0,
            y,
            1e-12,
        )
        .unwrap()
        .value;
        let got = im_erf_scaled(x, y).unwrap();
        assert!(rel(got, q) < 1e-10, "({x}, {y}): {got:e} vs {q:e}");
    }
}
