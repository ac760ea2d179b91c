//! Reference computations that avoid the library's closed forms: direct
//! quadrature of defining integrals, original roulette parametrizations,
//! pure bisection and central differences.

use std::f64::consts::{FRAC_PI_2, PI};

use delaunay_core::assembly::{balance_function, BRACKET};
use delaunay_core::quadrature::{integrate, integrate_vec_with_breaks, Tolerance};

fn tight() -> Tolerance {
    Tolerance::relative(1e-14).with_abs(1e-16)
}

pub fn ellip_k(k: f64) -> f64 {
    integrate(|t| 1.0 / (1.0 - (k * t.sin()).powi(2)).sqrt(), 0.0, FRAC_PI_2, tight()).expect("smooth integrand").0
}

pub fn ellip_e(k: f64) -> f64 {
    integrate(|t| (1.0 - (k * t.sin()).powi(2)).sqrt(), 0.0, FRAC_PI_2, tight()).expect("smooth integrand").0
}

/// `2π ∫ √(E G) dt` over one period, `E = a²b²/(a + c cos t)²`.
pub fn unduloid_area(a: f64, b: f64) -> f64 {
    let c = (a * a - b * b).sqrt();
    let density = |t: f64| {
        let q = a + c * t.cos();
        let e = (a * b / q).powi(2);
        let g = b * b * (a - c * t.cos()) / q;
        (e * g).sqrt()
    };
    let v = integrate_vec_with_breaks(|t| [density(t)], &[0.0, PI, 2.0 * PI], tight()).expect("smooth integrand");
    2.0 * PI * v.value[0]
}

/// `∫₀^{2π} √(a² − c² cos² x) dx`.
pub fn unduloid_length(a: f64, b: f64) -> f64 {
    let c2 = a * a - b * b;
    integrate(|x| (a * a - c2 * x.cos().powi(2)).sqrt(), 0.0, 2.0 * PI, tight()).expect("smooth integrand").0
}

/// Both branches in the hyperbolic parameter, `E± = a²b²/(c cosh t ± a)²`.
pub fn nodoid_area(a: f64, b: f64) -> f64 {
    let c = a.hypot(b);
    let branch = |t: f64, s: f64| {
        let ch = c * t.cosh();
        let e = (a * b / (ch + s * a)).powi(2);
        let g = b * b * (ch - s * a) / (ch + s * a);
        (e * g).sqrt()
    };
    let breaks: Vec<f64> = (-8..=8).map(|i| 5.0 * i as f64).collect();
    let v = integrate_vec_with_breaks(|t| [branch(t, 1.0) + branch(t, -1.0)], &breaks, tight()).expect("smooth integrand");
    2.0 * PI * v.value[0]
}

/// `4 a n ∫₀^{π/2} sin² x / √(1 + n² sin² x) dx` with `n = a/b`.
pub fn nodoid_length(a: f64, b: f64) -> f64 {
    let n = a / b;
    let v = integrate(|x| x.sin().powi(2) / (1.0 + (n * x.sin()).powi(2)).sqrt(), 0.0, FRAC_PI_2, tight())
        .expect("smooth integrand")
        .0;
    4.0 * a * n * v
}

/// Root of `F(c, ·)` by bisection alone, to `1e-14`.
pub fn balance_root(c: f64) -> anyhow::Result<f64> {
    let (mut lo, mut hi) = BRACKET;
    let f_lo = balance_function(c, lo)?.f;
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if (balance_function(c, mid)?.f > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn central_difference(mut f: impl FnMut(f64) -> anyhow::Result<f64>, x: f64, h: f64) -> anyhow::Result<f64> {
    Ok((f(x + h)? - f(x - h)?) / (2.0 * h))
}
