//! Unduloid and nodoid meridians: roulettes of a focus of a rolling ellipse
//! or hyperbola.
//!
//! Radii and derivatives are written in terms of the neck radius (`a − c` for
//! the unduloid, `c − a` for the nodoid) so that thin necks keep full relative
//! precision. The height coordinate contains an incomplete integral, evaluated
//! by adaptive quadrature.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::curve::{ProfileCurve, Shape};
use crate::elliptic::EllipticModulus;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, Tolerance};
use crate::revolution::{Jet, ProfilePoint};

pub(crate) const HEIGHT_TOL: Tolerance = Tolerance { rel: 1e-14, abs: 1e-15, max_panels: 4000 };

/// Ellipse with semi-axes `a > b > 0` and focal distance `c = √(a² − b²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnduloidParams {
    a: f64,
    b: f64,
    c: f64,
    neck: f64,
}

impl UnduloidParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b > 0.0 && a >= b) {
            return Err(Error::Domain(format!("unduloid needs a ≥ b > 0, got a = {a}, b = {b}")));
        }
        let c = ((a - b) * (a + b)).sqrt();
        Ok(Self { a, b, c, neck: b * b / (a + c) })
    }

    /// Ellipse with focal distance `c ≥ 0` and neck radius `a − c = neck > 0`.
    pub fn from_neck(neck: f64, c: f64) -> Result<Self> {
        if !(neck > 0.0 && c >= 0.0 && c.is_finite()) {
            return Err(Error::Domain(format!("unduloid needs neck > 0, c ≥ 0; got {neck}, {c}")));
        }
        Ok(Self { a: c + neck, b: (neck * (2.0 * c + neck)).sqrt(), c, neck })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    /// Minimum radius `a − c`.
    pub fn neck(&self) -> f64 {
        self.neck
    }
    /// Maximum radius `a + c`.
    pub fn bulge(&self) -> f64 {
        self.a + self.c
    }

    pub fn mean_curvature(&self) -> f64 {
        0.5 / self.a
    }

    // a − c cos t, a + c cos t
    fn pq(&self, t: f64) -> (f64, f64) {
        let (s, c) = (0.5 * t).sin_cos();
        (self.neck + 2.0 * self.c * s * s, self.neck + 2.0 * self.c * c * c)
    }

    pub fn jet(&self, t: f64) -> Jet {
        let (a, b, c) = (self.a, self.b, self.c);
        let (p, q) = self.pq(t);
        let d = (p * q).sqrt();
        let (sin, cos) = t.sin_cos();
        let h = 1.0 / (q * d);
        let dh = -c * sin * (2.0 * c * cos - a) / (q * d * d * d);
        Jet {
            f: b * p / d,
            df: a * b * c * sin * h,
            dg: a * b * b * h,
            ddf: a * b * c * (cos * h + sin * dh),
            ddg: a * b * b * dh,
        }
    }

    /// `√(a² − c² cos² x)`, the integrand of the height integral.
    fn height_integrand(&self, x: f64) -> f64 {
        let (p, q) = self.pq(x);
        (p * q).sqrt()
    }

    /// Height minus its integral term: `−c sin t (a − c cos t)/√(a² − c² cos² t)`.
    fn height_closed_part(&self, t: f64) -> f64 {
        let (p, q) = self.pq(t);
        -self.c * t.sin() * p / (p * q).sqrt()
    }

    pub fn height(&self, t: f64) -> Result<f64> {
        Ok(self.height_integral(0.0, t)? + self.height_closed_part(t))
    }

    pub(crate) fn height_integral(&self, t0: f64, t1: f64) -> Result<f64> {
        Ok(integrate(|x| self.height_integrand(x), t0, t1, HEIGHT_TOL)?.0)
    }

    pub(crate) fn height_step(&self, t0: f64, t1: f64) -> Result<f64> {
        Ok(self.height_integral(t0, t1)? + self.height_closed_part(t1) - self.height_closed_part(t0))
    }
}

/// Branch of the nodoid roulette: `Plus` follows the focus `(c, 0)`,
/// `Minus` the reflected focus `(−c, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Hyperbola with semi-axes `a, b > 0` and focal distance `c = √(a² + b²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodoidParams {
    a: f64,
    b: f64,
    c: f64,
    neck: f64,
}

impl NodoidParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::Domain(format!("nodoid needs a, b > 0, got a = {a}, b = {b}")));
        }
        let c = a.hypot(b);
        Ok(Self { a, b, c, neck: b * b / (a + c) })
    }

    /// Hyperbola from `a > 0` and focal distance `c > a`.
    pub fn from_focal(a: f64, c: f64) -> Result<Self> {
        if !(a > 0.0 && c > a && c.is_finite()) {
            return Err(Error::Domain(format!("nodoid needs c > a > 0, got a = {a}, c = {c}")));
        }
        let neck = c - a;
        Ok(Self { a, b: (neck * (c + a)).sqrt(), c, neck })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    /// Minimum radius of the plus branch, `c − a`.
    pub fn neck(&self) -> f64 {
        self.neck
    }
    /// Maximum radius of the minus branch, `c + a`.
    pub fn bulge(&self) -> f64 {
        self.c + self.a
    }

    pub fn mean_curvature(&self) -> f64 {
        -0.5 / self.a
    }

    // (c ∓ a cos t, c ± a cos t) for the branch sign ±
    fn pq(&self, branch: Branch, t: f64) -> (f64, f64) {
        let s = (0.5 * t).sin();
        let small = self.neck + 2.0 * self.a * s * s;
        let large = self.c + self.a * t.cos();
        match branch {
            Branch::Plus => (small, large),
            Branch::Minus => (large, small),
        }
    }

    /// Jet in the transformed parameter `t ∈ [−π/2, π/2]`.
    pub fn jet(&self, branch: Branch, t: f64) -> Jet {
        let (a, b, c) = (self.a, self.b, self.c);
        let sg = branch.sign();
        let (p, q) = self.pq(branch, t);
        let w = (p * q).sqrt();
        let (sin, cos) = t.sin_cos();
        let h = 1.0 / (w * q);
        let dh = -a * sin * (a * c * cos + sg * (2.0 * a * a * cos * cos - c * c)) / (w * w * w * q * q);
        Jet {
            f: b * p / w,
            df: sg * a * b * c * sin * h,
            dg: sg * a * b * b * cos * h,
            ddf: sg * a * b * c * (cos * h + sin * dh),
            ddg: sg * a * b * b * (cos * dh - sin * h),
        }
    }

    /// `a² sin² x / √(c² − a² cos² x)`, the integrand of the height integral.
    fn height_integrand(&self, x: f64) -> f64 {
        let sin = x.sin();
        let (p, q) = self.pq(Branch::Plus, x);
        self.a * self.a * sin * sin / (p * q).sqrt()
    }

    fn height_closed_part(&self, branch: Branch, t: f64) -> f64 {
        let (p, q) = self.pq(branch, t);
        branch.sign() * self.a * t.sin() * (p / q).sqrt()
    }

    pub fn height(&self, branch: Branch, t: f64) -> Result<f64> {
        Ok(self.height_closed_part(branch, t) - self.height_integral(0.0, t)?)
    }

    pub(crate) fn height_integral(&self, t0: f64, t1: f64) -> Result<f64> {
        Ok(integrate(|x| self.height_integrand(x), t0, t1, HEIGHT_TOL)?.0)
    }

    pub(crate) fn height_step(&self, branch: Branch, t0: f64, t1: f64) -> Result<f64> {
        Ok(self.height_closed_part(branch, t1) - self.height_closed_part(branch, t0)
            - self.height_integral(t0, t1)?)
    }
}

pub fn unduloid_point(p: &UnduloidParams, t: f64) -> Result<ProfilePoint> {
    Ok(ProfilePoint::from_jet(t, p.height(t)?, p.jet(t)))
}

/// Area of one period: `8π a (a + c) E(2√(ac)/(a + c))`.
pub fn unduloid_area(p: &UnduloidParams) -> Result<f64> {
    let m = EllipticModulus::from_complement(p.neck / (p.a + p.c))?;
    Ok(8.0 * PI * p.a * (p.a + p.c) * m.complete_e()?)
}

/// Axial length of one period: `4a E(c/a)`.
pub fn unduloid_length(p: &UnduloidParams) -> Result<f64> {
    let m = EllipticModulus::from_complement(p.b / p.a)?;
    Ok(4.0 * p.a * m.complete_e()?)
}

pub fn nodoid_point(p: &NodoidParams, branch: Branch, t: f64) -> Result<ProfilePoint> {
    if !(-FRAC_PI_2..=FRAC_PI_2).contains(&t) {
        return Err(Error::Domain(format!("nodoid parameter t = {t} outside [−π/2, π/2]")));
    }
    Ok(ProfilePoint::from_jet(t, p.height(branch, t)?, p.jet(branch, t)))
}

/// Area of one period (both branches): `8π a (a + c) E(2√(ac)/(a + c))`.
pub fn nodoid_area(p: &NodoidParams) -> Result<f64> {
    let m = EllipticModulus::from_complement(p.neck / (p.a + p.c))?;
    Ok(8.0 * PI * p.a * (p.a + p.c) * m.complete_e()?)
}

/// Axial length of one period: `4c [E(k) − k′² K(k)]` with `k = a/c`, `k′ = b/c`.
pub fn nodoid_length(p: &NodoidParams) -> Result<f64> {
    let kp = p.b / p.c;
    let pair = EllipticModulus::from_complement(kp)?.pair()?;
    Ok(4.0 * p.c * (pair.big_e - kp * kp * pair.big_k))
}

/// `periods` full periods of an unduloid starting at its neck.
pub fn unduloid_curve(p: &UnduloidParams, periods: usize) -> Result<ProfileCurve> {
    if periods == 0 {
        return Err(Error::Domain("at least one period is required".into()));
    }
    let pieces = (0..periods)
        .map(|i| (Shape::Unduloid(*p), 2.0 * PI * i as f64, 2.0 * PI * (i + 1) as f64))
        .collect();
    ProfileCurve::chain(pieces, 0.0, false)
}

/// How far a patched nodoid runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodoidSpan {
    /// Whole periods, neck to neck.
    Periods(usize),
    /// From the plus-branch neck to the minus-branch bulge.
    HalfPeriod,
}

/// The two nodoid roulettes glued into one C¹ curve starting at a plus-branch
/// neck. Branches meet at radius `b`, where both tangents are radial.
pub fn patched_nodoid_curve(p: &NodoidParams, span: NodoidSpan) -> Result<ProfileCurve> {
    let plus = Shape::Nodoid(*p, Branch::Plus);
    let minus = Shape::Nodoid(*p, Branch::Minus);
    let mut pieces = vec![(plus.clone(), 0.0, FRAC_PI_2)];
    match span {
        NodoidSpan::HalfPeriod => pieces.push((minus, -FRAC_PI_2, 0.0)),
        NodoidSpan::Periods(0) => return Err(Error::Domain("at least one period is required".into())),
        NodoidSpan::Periods(n) => {
            for i in 0..n {
                pieces.push((minus.clone(), -FRAC_PI_2, FRAC_PI_2));
                let end = if i + 1 == n { 0.0 } else { FRAC_PI_2 };
                pieces.push((plus.clone(), -FRAC_PI_2, end));
            }
        }
    }
    ProfileCurve::chain(pieces, 0.0, false)
}
