//! Area, enclosed volume, Willmore and Helfrich energies of a surface of
//! revolution by adaptive quadrature over its meridian.
//!
//! Each segment of the meridian is integrated separately so that no panel
//! straddles a join, where second derivatives jump. Mean curvature comes
//! from the fundamental forms of the segment's jet, never from the closed
//! form of the generating family.

use std::cell::RefCell;
use std::f64::consts::PI;

use crate::curve::ProfileCurve;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_vec, pairwise, Tolerance};
use crate::revolution::{density, Jet, SurfaceQuantity};

pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const REL_TOL_RANGE: (f64, f64) = (1e-12, 1e-4);

const MAX_PANELS: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuadratureErrors {
    pub area: f64,
    pub volume: f64,
    pub willmore: f64,
    pub helfrich: f64,
    pub mean_curvature: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceMetrics {
    pub area: f64,
    pub volume: f64,
    pub willmore: f64,
    pub helfrich: f64,
    pub c0: f64,
    /// `∫ H dμ`.
    pub mean_curvature_integral: f64,
    /// `area / volume^{2/3}`.
    pub iso_ratio: f64,
    pub quadrature_error: QuadratureErrors,
}

fn check_tolerance(rel_tol: f64) -> Result<()> {
    let (lo, hi) = REL_TOL_RANGE;
    if !(lo..=hi).contains(&rel_tol) {
        return Err(Error::Domain(format!("relative tolerance {rel_tol} outside [{lo}, {hi}]")));
    }
    Ok(())
}

fn tolerance(rel_tol: f64) -> Tolerance {
    Tolerance { rel: rel_tol, abs: 1e-15, max_panels: MAX_PANELS }
}

/// Integrates several densities over every segment of `curve`, returning
/// per-quantity totals and error estimates.
fn integrate_densities<const N: usize>(
    curve: &ProfileCurve,
    quantities: [SurfaceQuantity; N],
    tol: Tolerance,
) -> Result<([f64; N], [f64; N])> {
    let mut per_segment = Vec::with_capacity(curve.segments().len());
    for seg in curve.segments() {
        let failure = RefCell::new(None);
        let est = integrate_vec(
            |u| {
                let jet: Jet = seg.jet(u);
                let mut out = [0.0; N];
                for (slot, q) in out.iter_mut().zip(quantities.iter()) {
                    match density(&jet, *q) {
                        Ok(v) => *slot = v,
                        Err(e) => {
                            failure.borrow_mut().get_or_insert(e);
                        }
                    }
                }
                out
            },
            0.0,
            seg.span(),
            tol,
        )?;
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        per_segment.push(est);
    }
    let mut value = [0.0; N];
    let mut error = [0.0; N];
    for i in 0..N {
        value[i] = pairwise(&per_segment.iter().map(|e| e.value[i]).collect::<Vec<_>>());
        error[i] = pairwise(&per_segment.iter().map(|e| e.error[i]).collect::<Vec<_>>());
    }
    Ok((value, error))
}

fn check_bounded(curve: &ProfileCurve) -> Result<()> {
    if curve.is_closed() || curve.ends_on_axis()? {
        Ok(())
    } else {
        Err(Error::NotClosed)
    }
}

/// All surface metrics of the revolution of `curve`, which must be closed
/// or start and end on the axis.
pub fn compute_metrics(curve: &ProfileCurve, c0: f64, rel_tol: f64) -> Result<SurfaceMetrics> {
    check_tolerance(rel_tol)?;
    check_bounded(curve)?;
    if !c0.is_finite() {
        return Err(Error::Domain(format!("spontaneous curvature c0 = {c0} is not finite")));
    }
    let quantities = [
        SurfaceQuantity::Area,
        SurfaceQuantity::Volume,
        SurfaceQuantity::Willmore,
        SurfaceQuantity::Helfrich(c0),
        SurfaceQuantity::MeanCurvature,
    ];
    let (v, e) = integrate_densities(curve, quantities, tolerance(rel_tol))?;
    let (area, volume) = (v[0], v[1]);
    if !(volume > 0.0) {
        return Err(Error::Degenerate(format!(
            "enclosed volume {volume} is not positive; the meridian must run counterclockwise"
        )));
    }
    Ok(SurfaceMetrics {
        area,
        volume,
        willmore: v[2],
        helfrich: v[3],
        c0,
        mean_curvature_integral: v[4],
        iso_ratio: area / volume.powf(2.0 / 3.0),
        quadrature_error: QuadratureErrors {
            area: e[0],
            volume: e[1],
            willmore: e[2],
            helfrich: e[3],
            mean_curvature: e[4],
        },
    })
}

/// The three terms of `∫(H − c₀)² dμ = W − 2c₀∫H dμ + c₀² A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelfrichExpansion {
    pub willmore: f64,
    /// `−2 c₀ ∫ H dμ`
    pub cross_term: f64,
    /// `c₀² A`
    pub area_term: f64,
}

impl HelfrichExpansion {
    pub fn sum(&self) -> f64 {
        self.willmore + self.cross_term + self.area_term
    }
}

pub fn helfrich_expansion(curve: &ProfileCurve, c0: f64) -> Result<HelfrichExpansion> {
    check_bounded(curve)?;
    let quantities = [SurfaceQuantity::Willmore, SurfaceQuantity::MeanCurvature, SurfaceQuantity::Area];
    let (v, _) = integrate_densities(curve, quantities, tolerance(DEFAULT_REL_TOL))?;
    Ok(HelfrichExpansion { willmore: v[0], cross_term: -2.0 * c0 * v[1], area_term: c0 * c0 * v[2] })
}

/// Integral of one density over any curve, open or closed, as `(value, error)`.
pub fn integrate_quantity(curve: &ProfileCurve, quantity: SurfaceQuantity, rel_tol: f64) -> Result<(f64, f64)> {
    check_tolerance(rel_tol)?;
    let (v, e) = integrate_densities(curve, [quantity], tolerance(rel_tol))?;
    Ok((v[0], e[0]))
}

/// Enclosed volume from the ambient form `(1/3) ∫ ⟨x, n⟩ dμ`, which on a
/// surface of revolution reads `(2π/3) ∫ f (f ġ − ḟ g) dt`.
pub fn ambient_volume(curve: &ProfileCurve, rel_tol: f64) -> Result<f64> {
    check_tolerance(rel_tol)?;
    check_bounded(curve)?;
    let mut parts = Vec::with_capacity(curve.segments().len());
    for seg in curve.segments() {
        let failure = RefCell::new(None);
        let est = integrate_vec(
            |u| {
                let jet = seg.jet(u);
                let g = seg.height(u).unwrap_or_else(|e| {
                    failure.borrow_mut().get_or_insert(e);
                    0.0
                });
                [2.0 * PI / 3.0 * jet.f * (jet.f * jet.dg - jet.df * g)]
            },
            0.0,
            seg.span(),
            tolerance(rel_tol),
        )?;
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        parts.push(est.value[0]);
    }
    Ok(pairwise(&parts))
}
