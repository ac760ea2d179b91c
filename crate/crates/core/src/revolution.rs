//! Differential geometry of surfaces of revolution
//! `X(t, θ) = (f(t) cos θ, f(t) sin θ, g(t))`.
//!
//! The normal is `n = X_t × X_θ / |X_t × X_θ|`. For a meridian traversed
//! counterclockwise in the `(f, g)` half-plane this makes the round sphere
//! `H = +1/r`, and the meridian volume `π ∮ f² dg` positive.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Position and first/second derivatives of a meridian at one parameter value,
/// without the height coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub f: f64,
    pub df: f64,
    pub dg: f64,
    pub ddf: f64,
    pub ddg: f64,
}

impl Jet {
    pub fn speed(&self) -> f64 {
        self.df.hypot(self.dg)
    }

    /// Same point traversed backwards: first derivatives flip, second do not.
    pub fn reversed(self) -> Self {
        Self { df: -self.df, dg: -self.dg, ..self }
    }
}

/// A point of a profile curve `(f(t), g(t))` with analytic or stencil derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub t: f64,
    pub f: f64,
    pub g: f64,
    pub df: f64,
    pub dg: f64,
    pub ddf: f64,
    pub ddg: f64,
}

impl ProfilePoint {
    pub fn from_jet(t: f64, g: f64, jet: Jet) -> Self {
        Self { t, f: jet.f, g, df: jet.df, dg: jet.dg, ddf: jet.ddf, ddg: jet.ddg }
    }

    pub fn jet(&self) -> Jet {
        Jet { f: self.f, df: self.df, dg: self.dg, ddf: self.ddf, ddg: self.ddg }
    }

    pub fn speed(&self) -> f64 {
        self.df.hypot(self.dg)
    }
}

/// Coefficients of the first and second fundamental forms, and the mean curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub h: f64,
}

impl FundamentalForms {
    pub fn from_jet(jet: &Jet) -> Result<Self> {
        let speed = jet.speed();
        if !(speed > 0.0) {
            return Err(Error::Degenerate(format!("zero speed at f = {}", jet.f)));
        }
        if !(jet.f > 0.0) {
            return Err(Error::Degenerate(format!("radius f = {} on or across the axis", jet.f)));
        }
        let e = speed * speed;
        let g = jet.f * jet.f;
        let l = (jet.df * jet.ddg - jet.ddf * jet.dg) / speed;
        let n = jet.f * jet.dg / speed;
        // N/G simplified to dg/(f|c'|) so that f² never underflows near the axis
        let h = 0.5 * (l / e + jet.dg / (jet.f * speed));
        Ok(Self { e, f: 0.0, g, l, m: 0.0, n, h })
    }

    /// Principal curvatures `(L/E, N/G)`: meridian and parallel directions.
    pub fn principal_curvatures(&self) -> (f64, f64) {
        (self.l / self.e, self.n / self.g)
    }
}

pub fn fundamental_forms(p: &ProfilePoint) -> Result<FundamentalForms> {
    FundamentalForms::from_jet(&p.jet())
}

/// Pointwise integrands over the curve parameter, revolution factor included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceQuantity {
    /// `2π f |c′|`
    Area,
    /// `π f² ġ`
    Volume,
    /// `2π H² f |c′|`
    Willmore,
    /// `2π (H − c₀)² f |c′|`
    Helfrich(f64),
    /// `2π H f |c′|`
    MeanCurvature,
}

/// Value of `quantity` at a jet. Points on the axis (`f = 0`) contribute zero:
/// every density carries a factor `f` and `H` stays bounded there.
pub fn density(jet: &Jet, quantity: SurfaceQuantity) -> Result<f64> {
    if jet.f == 0.0 {
        return Ok(0.0);
    }
    let ds = jet.speed();
    let weight = 2.0 * PI * jet.f * ds;
    Ok(match quantity {
        SurfaceQuantity::Area => weight,
        SurfaceQuantity::Volume => PI * jet.f * jet.f * jet.dg,
        SurfaceQuantity::Willmore => {
            let h = FundamentalForms::from_jet(jet)?.h;
            weight * h * h
        }
        SurfaceQuantity::Helfrich(c0) => {
            let h = FundamentalForms::from_jet(jet)?.h - c0;
            weight * h * h
        }
        SurfaceQuantity::MeanCurvature => weight * FundamentalForms::from_jet(jet)?.h,
    })
}

/// Family that generated a piece of a profile curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentTag {
    Unduloid,
    NodoidPlus,
    NodoidMinus,
    CircularArc,
    Generic,
}

impl SegmentTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SegmentTag::Unduloid => "unduloid",
            SegmentTag::NodoidPlus => "nodoid_plus",
            SegmentTag::NodoidMinus => "nodoid_minus",
            SegmentTag::CircularArc => "circular_arc",
            SegmentTag::Generic => "generic",
        }
    }
}

/// A meridian sampled at increasing parameter values.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledProfile {
    pub samples: Vec<ProfilePoint>,
    /// Generating family of each sample.
    pub tags: Vec<SegmentTag>,
    /// `true` where the sample sits on a join between two segments.
    pub patch: Vec<bool>,
    pub t_range: (f64, f64),
    pub closed: bool,
}

impl SampledProfile {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Checks for crossings between non-adjacent chords of the sampled polyline.
    pub fn is_embedded(&self) -> bool {
        let pts: Vec<(f64, f64)> = self.samples.iter().map(|p| (p.f, p.g)).collect();
        let n = pts.len();
        if n < 4 {
            return true;
        }
        let chords = n - 1;
        for i in 0..chords {
            for j in (i + 2)..chords {
                if self.closed && i == 0 && j == chords - 1 {
                    continue;
                }
                if chords_cross(pts[i], pts[i + 1], pts[j], pts[j + 1]) {
                    return false;
                }
            }
        }
        true
    }
}

fn chords_cross(p1: (f64, f64), p2: (f64, f64), q1: (f64, f64), q2: (f64, f64)) -> bool {
    let orient = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| {
        (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
    };
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Evaluates `quantity` at every sample of `curve`.
pub fn sample_surface_quantity(
    curve: &SampledProfile,
    quantity: SurfaceQuantity,
) -> Result<Vec<(f64, f64)>> {
    curve.samples.iter().map(|p| Ok((p.t, density(&p.jet(), quantity)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn torus_point(t: f64, r: f64, big_r: f64) -> ProfilePoint {
        ProfilePoint {
            t,
            f: r * t.cos() + big_r,
            g: r * t.sin(),
            df: -r * t.sin(),
            dg: r * t.cos(),
            ddf: -r * t.cos(),
            ddg: -r * t.sin(),
        }
    }

    #[test]
    fn round_torus_outer_equator() {
        let ff = fundamental_forms(&torus_point(0.0, 1.0, 2.0)).unwrap();
        assert_relative_eq!(2.0 * ff.h, 1.0 + 1.0 / 3.0, max_relative = 1e-15);
        assert_eq!(ff.f, 0.0);
        assert_eq!(ff.m, 0.0);
        let (k1, k2) = ff.principal_curvatures();
        assert_relative_eq!(k1 + k2, 2.0 * ff.h, max_relative = 1e-15);
    }

    #[test]
    fn degenerate_points_are_rejected() {
        let mut p = torus_point(0.3, 1.0, 2.0);
        p.df = 0.0;
        p.dg = 0.0;
        assert!(matches!(fundamental_forms(&p), Err(Error::Degenerate(_))));
        let mut p = torus_point(0.3, 1.0, 2.0);
        p.f = 0.0;
        assert!(fundamental_forms(&p).is_err());
    }

    #[test]
    fn reversal_flips_mean_curvature() {
        let p = torus_point(1.1, 0.7, 2.0);
        let h = FundamentalForms::from_jet(&p.jet()).unwrap().h;
        let hr = FundamentalForms::from_jet(&p.jet().reversed()).unwrap().h;
        assert_relative_eq!(h, -hr, max_relative = 1e-15);
    }

    fn unit_sphere(n: usize) -> SampledProfile {
        let samples: Vec<ProfilePoint> = (0..=n)
            .map(|i| {
                let t = -PI / 2.0 + PI * i as f64 / n as f64;
                ProfilePoint {
                    t,
                    f: t.cos().max(0.0),
                    g: t.sin(),
                    df: -t.sin(),
                    dg: t.cos(),
                    ddf: -t.cos(),
                    ddg: -t.sin(),
                }
            })
            .collect();
        SampledProfile {
            tags: vec![SegmentTag::Generic; samples.len()],
            patch: vec![false; samples.len()],
            t_range: (-PI / 2.0, PI / 2.0),
            closed: false,
            samples,
        }
    }

    fn simpson(values: &[(f64, f64)]) -> f64 {
        let n = values.len() - 1;
        assert!(n % 2 == 0);
        let h = (values[n].0 - values[0].0) / n as f64;
        let mut s = values[0].1 + values[n].1;
        for (i, v) in values.iter().enumerate().take(n).skip(1) {
            s += if i % 2 == 1 { 4.0 * v.1 } else { 2.0 * v.1 };
        }
        s * h / 3.0
    }

    #[test]
    fn unit_sphere_densities_integrate_to_known_values() {
        let sphere = unit_sphere(2000);
        let area = simpson(&sample_surface_quantity(&sphere, SurfaceQuantity::Area).unwrap());
        let vol = simpson(&sample_surface_quantity(&sphere, SurfaceQuantity::Volume).unwrap());
        let w = simpson(&sample_surface_quantity(&sphere, SurfaceQuantity::Willmore).unwrap());
        assert_relative_eq!(area, 4.0 * PI, max_relative = 1e-10);
        assert_relative_eq!(vol, 4.0 * PI / 3.0, max_relative = 1e-10);
        assert_relative_eq!(w, 4.0 * PI, max_relative = 1e-10);
        // resolution independence
        let coarse = simpson(&sample_surface_quantity(&unit_sphere(1000), SurfaceQuantity::Willmore).unwrap());
        assert!((coarse - w).abs() < 1e-9);
    }

    #[test]
    fn unit_sphere_is_embedded() {
        assert!(unit_sphere(200).is_embedded());
    }

    #[test]
    fn figure_eight_is_not_embedded() {
        let samples: Vec<ProfilePoint> = (0..=200)
            .map(|i| {
                let t = 0.01 + 2.0 * PI * i as f64 / 200.0;
                ProfilePoint { t, f: 2.0 + t.sin(), g: (2.0 * t).sin(), df: 0.0, dg: 0.0, ddf: 0.0, ddg: 0.0 }
            })
            .collect();
        let n = samples.len();
        let curve = SampledProfile {
            samples,
            tags: vec![SegmentTag::Generic; n],
            patch: vec![false; n],
            t_range: (0.0, 2.0 * PI),
            closed: true,
        };
        assert!(!curve.is_embedded());
    }
}
