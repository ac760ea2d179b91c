use std::f64::consts::{FRAC_PI_2, PI};

use delaunay_core::cmc::{
    nodoid_area, nodoid_length, nodoid_point, patched_nodoid_curve, unduloid_area, unduloid_curve, unduloid_length,
    unduloid_point, NodoidSpan,
};
use delaunay_core::metrics::integrate_quantity;
use delaunay_core::quadrature::{integrate, integrate_vec_with_breaks, Tolerance};
use delaunay_core::revolution::SurfaceQuantity;
use delaunay_core::{fundamental_forms, Branch, NodoidParams, ProfileCurve, Shape, UnduloidParams};
use proptest::prelude::*;

fn tight() -> Tolerance {
    Tolerance::relative(1e-13).with_abs(1e-16)
}

// Oracles below integrate the original roulette parametrizations directly,
// without going through the crate's profile formulas.

fn unduloid_area_oracle(a: f64, b: f64) -> f64 {
    let c = (a * a - b * b).sqrt();
    let density = |t: f64| {
        let q = a + c * t.cos();
        let e = (a * b / q).powi(2);
        let g = b * b * (a - c * t.cos()) / q;
        (e * g).sqrt()
    };
    let v = integrate_vec_with_breaks(|t| [density(t)], &[0.0, PI, 2.0 * PI], tight()).unwrap();
    2.0 * PI * v.value[0]
}

fn unduloid_length_oracle(a: f64, b: f64) -> f64 {
    let c2 = a * a - b * b;
    integrate(|x| (a * a - c2 * x.cos().powi(2)).sqrt(), 0.0, 2.0 * PI, tight()).unwrap().0
}

fn nodoid_area_oracle(a: f64, b: f64) -> f64 {
    let c = a.hypot(b);
    let branch = |t: f64, s: f64| {
        let ch = c * t.cosh();
        let e = (a * b / (ch + s * a)).powi(2);
        let g = b * b * (ch - s * a) / (ch + s * a);
        (e * g).sqrt()
    };
    let breaks: Vec<f64> = (-8..=8).map(|i| 5.0 * i as f64).collect();
    let v = integrate_vec_with_breaks(|t| [branch(t, 1.0) + branch(t, -1.0)], &breaks, tight()).unwrap();
    2.0 * PI * v.value[0]
}

fn nodoid_length_oracle(a: f64, b: f64) -> f64 {
    let n = a / b;
    let v = integrate(|x| x.sin().powi(2) / (1.0 + (n * x.sin()).powi(2)).sqrt(), 0.0, FRAC_PI_2, tight()).unwrap().0;
    4.0 * a * n * v
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

#[test]
fn unduloid_closed_forms_match_oracle_grid() {
    for i in 0..10 {
        let a = 0.5 + 0.25 * i as f64;
        for j in 0..10 {
            let b = a * (0.05 + 0.1 * j as f64);
            let p = UnduloidParams::new(a, b).unwrap();
            let (area, len) = (unduloid_area(&p).unwrap(), unduloid_length(&p).unwrap());
            assert!(rel(area, unduloid_area_oracle(a, b)) <= 1e-8, "area at ({a}, {b})");
            assert!(rel(len, unduloid_length_oracle(a, b)) <= 1e-8, "length at ({a}, {b})");
        }
    }
}

#[test]
fn nodoid_closed_forms_match_oracle_grid() {
    for i in 0..10 {
        let a = 0.3 + 0.3 * i as f64;
        for j in 0..10 {
            let b = 0.3 + 0.3 * j as f64;
            let p = NodoidParams::new(a, b).unwrap();
            let (area, len) = (nodoid_area(&p).unwrap(), nodoid_length(&p).unwrap());
            assert!(rel(area, nodoid_area_oracle(a, b)) <= 1e-8, "area at ({a}, {b})");
            assert!(rel(len, nodoid_length_oracle(a, b)) <= 1e-8, "length at ({a}, {b})");
        }
    }
}

#[test]
fn sampled_meridians_reproduce_closed_forms() {
    let p = UnduloidParams::new(1.0, 0.5).unwrap();
    let curve = unduloid_curve(&p, 1).unwrap();
    let (area, _) = integrate_quantity(&curve, SurfaceQuantity::Area, 1e-12).unwrap();
    assert!(rel(area, unduloid_area(&p).unwrap()) <= 1e-10);
    let rise = curve.end_point().unwrap().g - curve.start_point().unwrap().g;
    assert!(rel(rise, unduloid_length(&p).unwrap()) <= 1e-9);

    let n = NodoidParams::new(1.0, 1.0).unwrap();
    let curve = patched_nodoid_curve(&n, NodoidSpan::Periods(1)).unwrap();
    let (area, _) = integrate_quantity(&curve, SurfaceQuantity::Area, 1e-12).unwrap();
    assert!(rel(area, nodoid_area(&n).unwrap()) <= 1e-10);
    let rise = curve.end_point().unwrap().g - curve.start_point().unwrap().g;
    assert!(rel(rise.abs(), nodoid_length(&n).unwrap()) <= 1e-9);
}

#[test]
fn frozen_reference_values() {
    // 40-digit values from tests/data/reference_values.py
    let cases = [
        (1.0, 0.5, 47.324528077642738, 4.8442241102738381),
        (1.0, 0.9, 41.377055178702881, 5.9731604325248287),
        (2.0, 0.3, 199.94411465333057, 8.2522005882150766),
    ];
    for (a, b, area, len) in cases {
        let p = UnduloidParams::new(a, b).unwrap();
        assert!(rel(unduloid_area(&p).unwrap(), area) <= 1e-13);
        assert!(rel(unduloid_length(&p).unwrap(), len) <= 1e-13);
    }
    let cases = [
        (1.0, 1.0, 63.062295474740471, 2.3962804694711844),
        (1.0, 3f64.sqrt(), 83.974100715416863, 1.625195545839841),
        (0.5, 2.0, 41.29408733724193, 0.38383910598601446),
    ];
    for (a, b, area, len) in cases {
        let p = NodoidParams::new(a, b).unwrap();
        assert!(rel(nodoid_area(&p).unwrap(), area) <= 1e-13);
        assert!(rel(nodoid_length(&p).unwrap(), len) <= 1e-12);
    }
}

#[test]
fn mean_curvature_is_constant_on_grid() {
    for i in 0..5 {
        for j in 0..5 {
            let a = 0.5 + 0.5 * i as f64;
            let u = UnduloidParams::new(a, a * (0.1 + 0.2 * j as f64)).unwrap();
            for s in 0..1024 {
                let t = 2.0 * PI * s as f64 / 1024.0;
                let h = fundamental_forms(&unduloid_point(&u, t).unwrap()).unwrap().h;
                assert!((h - 0.5 / a).abs() <= 1e-9, "unduloid a = {a}, t = {t}: {h}");
            }
            let n = NodoidParams::new(a, 0.3 + 0.5 * j as f64).unwrap();
            for s in 0..1024 {
                let branch = if s % 2 == 0 { Branch::Plus } else { Branch::Minus };
                let t = -FRAC_PI_2 + PI * (s / 2) as f64 / 511.0;
                let h = fundamental_forms(&nodoid_point(&n, branch, t).unwrap()).unwrap().h;
                assert!((h + 0.5 / a).abs() <= 1e-9, "nodoid a = {a}, {branch:?}, t = {t}: {h}");
            }
        }
    }
}

#[test]
fn shared_area_formula() {
    // a = 1, c = 1.1 as nodoid and the same (a, c) pair as an ellipse have one closed form.
    let n = NodoidParams::from_focal(1.0, 1.1).unwrap();
    let expect = 8.0 * PI * 2.1 * delaunay_core::elliptic::EllipticModulus::from_complement(0.1 / 2.1)
        .unwrap()
        .complete_e()
        .unwrap();
    assert!(rel(nodoid_area(&n).unwrap(), expect) <= 1e-14);
}

#[test]
fn patched_nodoid_two_periods_oscillates() {
    let n = NodoidParams::new(1.0, 1.0).unwrap();
    let samples = patched_nodoid_curve(&n, NodoidSpan::Periods(2)).unwrap().sample(2048).unwrap();
    let (lo, hi) = samples.samples.iter().fold((f64::MAX, f64::MIN), |(lo, hi), p| (lo.min(p.f), hi.max(p.f)));
    assert!((lo - n.neck()).abs() <= 1e-12);
    assert!((hi - n.bulge()).abs() <= 1e-6);
    assert!(samples.patch.iter().filter(|&&p| p).count() >= 4);
}

proptest! {
    #[test]
    fn unduloid_radius_stays_between_extrema(a in 0.2f64..5.0, r in 0.01f64..0.99, t in 0.0f64..(2.0 * PI)) {
        let p = UnduloidParams::new(a, a * r).unwrap();
        let f = p.jet(t).f;
        prop_assert!(f >= p.neck() * (1.0 - 1e-14) && f <= p.bulge() * (1.0 + 1e-14));
    }

    #[test]
    fn nodoid_branches_are_ordered(a in 0.2f64..5.0, b in 0.2f64..5.0, t in -FRAC_PI_2..FRAC_PI_2) {
        let p = NodoidParams::new(a, b).unwrap();
        let (plus, minus) = (p.jet(Branch::Plus, t).f, p.jet(Branch::Minus, t).f);
        prop_assert!(plus <= b * (1.0 + 1e-14) && minus >= b * (1.0 - 1e-14));
        prop_assert!(plus >= p.neck() * (1.0 - 1e-14) && minus <= p.bulge() * (1.0 + 1e-14));
    }

    #[test]
    fn area_does_not_depend_on_direction(a in 0.5f64..3.0, r in 0.1f64..0.9) {
        let p = UnduloidParams::new(a, a * r).unwrap();
        let fwd = ProfileCurve::chain(vec![(Shape::Unduloid(p), 0.0, 2.0 * PI)], 0.0, false).unwrap();
        let back = ProfileCurve::chain(vec![(Shape::Unduloid(p), 2.0 * PI, 0.0)], 0.0, false).unwrap();
        let (x, _) = integrate_quantity(&fwd, SurfaceQuantity::Area, 1e-11).unwrap();
        let (y, _) = integrate_quantity(&back, SurfaceQuantity::Area, 1e-11).unwrap();
        prop_assert!((x - y).abs() <= 1e-10 * x);
        let (w, _) = integrate_quantity(&back, SurfaceQuantity::Willmore, 1e-11).unwrap();
        let (wf, _) = integrate_quantity(&fwd, SurfaceQuantity::Willmore, 1e-11).unwrap();
        prop_assert!((w - wf).abs() <= 1e-10 * w);
    }
}
