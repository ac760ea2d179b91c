//! Delaunay spheres: half a Delaunay torus, cut at the two bulges, closed off
//! by two concentric quarter circles centred on the axis.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::assembly::{check_joins, torus_energy, BalanceState};
use crate::cmc::Branch;
use crate::curve::{ProfileCurve, Shape};
use crate::elliptic::EllipticModulus;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelaunaySphereSpec {
    pub balance: BalanceState,
    /// Unduloid bulge `a + y`.
    pub r_inner: f64,
    /// Nodoid bulge `c + 1`.
    pub r_outer: f64,
    /// Half the period, `2a E(y/a)`, measured from the neck.
    pub cap_center_height: f64,
}

impl DelaunaySphereSpec {
    pub fn new(balance: BalanceState) -> Result<Self> {
        let (y, eps, a) = (balance.y, balance.eps, balance.a);
        let m = EllipticModulus::from_complement((eps * (2.0 * y + eps)).sqrt() / a)?;
        let spec = Self {
            balance,
            r_inner: a + y,
            r_outer: balance.c + 1.0,
            cap_center_height: 2.0 * a * m.complete_e()?,
        };
        if !(spec.r_outer > spec.r_inner) {
            return Err(Error::Degenerate(format!(
                "outer cap radius {} does not exceed inner radius {}",
                spec.r_outer, spec.r_inner
            )));
        }
        Ok(spec)
    }
}

/// Half of the torus meridian: unduloid from bulge to neck, then nodoid from
/// neck to bulge. Starts at height `cap_center_height`.
pub fn half_torus_profile(spec: &DelaunaySphereSpec) -> Result<ProfileCurve> {
    let nod = spec.balance.nodoid()?;
    let und = spec.balance.unduloid()?;
    let pieces = vec![
        (Shape::Unduloid(und), PI, 0.0),
        (Shape::Nodoid(nod, Branch::Plus), 0.0, -FRAC_PI_2),
        (Shape::Nodoid(nod, Branch::Minus), FRAC_PI_2, 0.0),
    ];
    ProfileCurve::chain(pieces, spec.cap_center_height, false)
}

/// Axis-to-axis meridian, counterclockwise: inner cap from the axis down to
/// the unduloid bulge, the half torus, then the outer cap back to the axis.
pub fn assemble_sphere_profile(spec: &DelaunaySphereSpec) -> Result<ProfileCurve> {
    let nod = spec.balance.nodoid()?;
    let und = spec.balance.unduloid()?;
    let gc = spec.cap_center_height;
    let pieces = vec![
        (Shape::Arc { radius: spec.r_inner, center: gc }, FRAC_PI_2, 0.0),
        (Shape::Unduloid(und), PI, 0.0),
        (Shape::Nodoid(nod, Branch::Plus), 0.0, -FRAC_PI_2),
        (Shape::Nodoid(nod, Branch::Minus), FRAC_PI_2, 0.0),
        (Shape::Arc { radius: spec.r_outer, center: gc }, 0.0, FRAC_PI_2),
    ];
    let curve = ProfileCurve::chain(pieces, gc + spec.r_inner, false)?;
    check_joins(&curve)?;
    Ok(curve)
}

/// Willmore energy of a quarter-circle cap of any radius: `H = 1/r` over a
/// hemisphere of area `2πr²`.
pub fn cap_willmore_energy(radius: f64) -> f64 {
    let h = 1.0 / radius;
    h * h * 2.0 * PI * radius * radius
}

/// `4π + W(T)/2`.
pub fn sphere_energy(spec: &DelaunaySphereSpec) -> Result<f64> {
    let torus = torus_energy(&spec.balance)?;
    Ok(cap_willmore_energy(spec.r_inner) + cap_willmore_energy(spec.r_outer) + 0.5 * torus.w_total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::solve_balance;
    use approx::assert_relative_eq;

    #[test]
    fn radii_and_center() {
        let spec = DelaunaySphereSpec::new(solve_balance(1.1).unwrap()).unwrap();
        assert_relative_eq!(spec.r_outer, 2.1, max_relative = 1e-15);
        assert_relative_eq!(spec.cap_center_height, spec.balance.period_length / 2.0, max_relative = 1e-14);
        assert!(spec.r_inner < spec.r_outer);
    }

    #[test]
    fn profile_runs_axis_to_axis() {
        let spec = DelaunaySphereSpec::new(solve_balance(1.1).unwrap()).unwrap();
        let curve = assemble_sphere_profile(&spec).unwrap();
        assert!(curve.ends_on_axis().unwrap());
        let (start, end) = (curve.start_point().unwrap(), curve.end_point().unwrap());
        assert!(start.dg.abs() < 1e-14 && end.dg.abs() < 1e-14);
        assert_relative_eq!(end.g, spec.cap_center_height + spec.r_outer, max_relative = 1e-10);
    }

    #[test]
    fn cap_energy_is_scale_free() {
        assert_relative_eq!(cap_willmore_energy(0.3), 2.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(cap_willmore_energy(7.0), 2.0 * PI, max_relative = 1e-15);
    }
}
