//! Delaunay tori: one nodoid period (`a = 1`, focal distance `c`) patched to
//! one unduloid period at their common neck radius `ε = c − 1`.
//!
//! The unduloid is fixed by its focal distance `y`, with semi-major axis
//! `a = y + ε`. Matching the two period lengths gives the balance equation
//! `F(c, y) = (y + ε) E(y/(y + ε)) − L(c) = 0`, where `L(c)` is a quarter of
//! the nodoid period.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::cmc::{Branch, NodoidParams, UnduloidParams};
use crate::curve::{ProfileCurve, Shape};
use crate::elliptic::{EllipticModulus, EllipticPair};
use crate::error::{Error, Result};

/// Smallest admissible focal distance.
pub const MIN_C: f64 = 1.0 + 1e-6;

pub const SOLVER_TOL: f64 = 1e-12;
pub const BRACKET: (f64, f64) = (1e-6, 10.0);

const SCAN_POINTS: usize = 200;
const MAX_NEWTON: usize = 200;
const JOIN_POSITION_TOL: f64 = 1e-8;
const JOIN_TANGENT_TOL: f64 = 1e-6;

fn check_c(c: f64) -> Result<f64> {
    if !(c >= MIN_C) || !c.is_finite() {
        return Err(Error::Range(format!("c = {c} is below the admissible minimum 1 + 1e-6")));
    }
    Ok(c - 1.0)
}

/// `K(1/c)`, `E(1/c)` with `k′ = √(ε(2 + ε))/c`.
fn inverse_c_pair(c: f64, eps: f64) -> Result<EllipticPair> {
    EllipticModulus::from_complement((eps * (2.0 + eps)).sqrt() / c)?.pair()
}

/// `K`, `E` at `y/(y + ε)` with `k′ = √(ε(2y + ε))/(y + ε)`.
fn unduloid_pair(y: f64, eps: f64) -> Result<(EllipticModulus, EllipticPair)> {
    let m = EllipticModulus::from_complement((eps * (2.0 * y + eps)).sqrt() / (y + eps))?;
    Ok((m, m.pair()?))
}

/// Quarter period of the nodoid, `L(c) = c [E(1/c) − (1 − 1/c²) K(1/c)]`.
pub fn quarter_length(c: f64) -> Result<f64> {
    let eps = check_c(c)?;
    let p = inverse_c_pair(c, eps)?;
    Ok(quarter_length_from(c, eps, &p))
}

fn quarter_length_from(c: f64, eps: f64, p: &EllipticPair) -> f64 {
    c * p.big_e - eps * (c + 1.0) / c * p.big_k
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceValue {
    pub f: f64,
    pub dfdc: f64,
    pub dfdy: f64,
}

/// `F(c, y)` with both analytic partial derivatives.
pub fn balance_function(c: f64, y: f64) -> Result<BalanceValue> {
    let eps = check_c(c)?;
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::Domain(format!("balance function needs y > 0, got {y}")));
    }
    let inv = inverse_c_pair(c, eps)?;
    let (_, und) = unduloid_pair(y, eps)?;
    let a = y + eps;
    Ok(BalanceValue {
        f: a * und.big_e - quarter_length_from(c, eps, &inv),
        dfdc: und.big_k + inv.big_k - inv.big_e,
        dfdy: (1.0 + eps / y) * und.big_e - eps / y * und.big_k,
    })
}

/// Solved balance system for one value of `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceState {
    pub c: f64,
    pub eps: f64,
    pub y: f64,
    /// Unduloid semi-major axis `y + ε`.
    pub a: f64,
    /// Unduloid period `4a E(y/a)`.
    pub period_length: f64,
    /// Nodoid period `4 L(c)`.
    pub nodoid_period_length: f64,
    pub residual: f64,
    /// Sign changes of `F(c, ·)` seen on the coarse scan of the bracket.
    pub sign_changes: usize,
    pub iterations: usize,
}

impl BalanceState {
    pub fn is_unique(&self) -> bool {
        self.sign_changes == 1
    }

    pub fn nodoid(&self) -> Result<NodoidParams> {
        NodoidParams::from_focal(1.0, self.c)
    }

    pub fn unduloid(&self) -> Result<UnduloidParams> {
        UnduloidParams::from_neck(self.eps, self.y)
    }
}

fn count_sign_changes(c: f64) -> Result<usize> {
    let (lo, hi) = BRACKET;
    let ratio = (hi / lo).ln();
    let mut prev: Option<f64> = None;
    let mut changes = 0;
    for i in 0..=SCAN_POINTS {
        let y = lo * (ratio * i as f64 / SCAN_POINTS as f64).exp();
        let f = balance_function(c, y)?.f;
        if let Some(p) = prev {
            if p.signum() != f.signum() {
                changes += 1;
            }
        }
        prev = Some(f);
    }
    Ok(changes)
}

/// Solves `F(c, y) = 0` by Newton's method from `y = 1`, falling back to
/// bisection whenever a step leaves the current sign-change bracket.
pub fn solve_balance(c: f64) -> Result<BalanceState> {
    let eps = check_c(c)?;
    let (mut lo, mut hi) = BRACKET;
    let f_lo = balance_function(c, lo)?.f;
    let f_hi = balance_function(c, hi)?.f;
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoBracket { c, lo, hi });
    }
    let increasing = f_hi > 0.0;
    let sign_changes = count_sign_changes(c)?;

    let mut y = 1.0;
    for iteration in 1..=MAX_NEWTON {
        let v = balance_function(c, y)?;
        if (v.f > 0.0) == increasing {
            hi = y;
        } else {
            lo = y;
        }
        let newton = y - v.f / v.dfdy;
        let next = if newton > lo && newton < hi && v.dfdy.is_finite() { newton } else { 0.5 * (lo + hi) };
        let step = (next - y).abs();
        y = next;
        if v.f.abs() <= SOLVER_TOL && step <= SOLVER_TOL * y.max(1.0) {
            let residual = balance_function(c, y)?.f;
            return finish(c, eps, y, residual, sign_changes, iteration);
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            let residual = balance_function(c, y)?.f;
            if residual.abs() <= SOLVER_TOL {
                return finish(c, eps, y, residual, sign_changes, iteration);
            }
            break;
        }
    }
    Err(Error::NonConvergence(format!("balance solver for c = {c} stalled at y = {y}")))
}

fn finish(c: f64, eps: f64, y: f64, residual: f64, sign_changes: usize, iterations: usize) -> Result<BalanceState> {
    let a = y + eps;
    let (_, und) = unduloid_pair(y, eps)?;
    let inv = inverse_c_pair(c, eps)?;
    Ok(BalanceState {
        c,
        eps,
        y,
        a,
        period_length: 4.0 * a * und.big_e,
        nodoid_period_length: 4.0 * quarter_length_from(c, eps, &inv),
        residual,
        sign_changes,
        iterations,
    })
}

/// `dy/dc` along the solution branch.
pub fn solution_derivative(state: &BalanceState) -> Result<f64> {
    let (c, eps, y) = (state.c, state.eps, state.y);
    let inv = inverse_c_pair(c, eps)?;
    let (_, und) = unduloid_pair(y, eps)?;
    let denom = (y + eps) * und.big_e - eps * und.big_k;
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::Degenerate(format!("vanishing denominator in dy/dc at c = {c}")));
    }
    Ok((inv.big_e - inv.big_k - und.big_k) / denom * y)
}

/// `W_nod(c) = 2π (1 + c) E(2√c/(1 + c))`.
pub fn nodoid_energy(c: f64) -> Result<f64> {
    let eps = check_c(c)?;
    let m = EllipticModulus::from_complement(eps / (2.0 + eps))?;
    Ok(2.0 * PI * (1.0 + c) * m.complete_e()?)
}

/// `W_und(y, ε) = 2π (1 + y/(y + ε)) E(2√(y(y + ε))/(2y + ε))`.
pub fn unduloid_energy(y: f64, eps: f64) -> Result<f64> {
    if !(y > 0.0 && eps > 0.0) {
        return Err(Error::Domain(format!("unduloid energy needs y, ε > 0, got {y}, {eps}")));
    }
    let m = EllipticModulus::from_complement(eps / (2.0 * y + eps))?;
    Ok(2.0 * PI * (1.0 + y / (y + eps)) * m.complete_e()?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusEnergy {
    pub w_nod: f64,
    pub w_und: f64,
    pub w_total: f64,
    pub dw_dc: f64,
}

impl TorusEnergy {
    /// `8π − W`, positive below the embeddedness threshold.
    pub fn margin(&self) -> f64 {
        8.0 * PI - self.w_total
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParts {
    pub dw_nod_dc: f64,
    pub dw_und_dy: f64,
    pub dw_und_deps: f64,
}

/// The three partial derivatives whose chain-rule sum is `dW/dc`; the
/// `ε`-derivative uses the balance equation to replace `(y + ε) E(y/(y + ε))`
/// by `L(c)`.
pub fn energy_derivative_parts(state: &BalanceState) -> Result<EnergyParts> {
    let (c, eps, y) = (state.c, state.eps, state.y);
    let a = y + eps;
    let inv = inverse_c_pair(c, eps)?;
    let (m, und) = unduloid_pair(y, eps)?;
    let k = m.k();
    let tail = eps * (1.0 + k) * und.big_k;
    Ok(EnergyParts {
        dw_nod_dc: 2.0 * PI * inv.big_e,
        dw_und_dy: 2.0 * PI * eps / (y * a * a) * (a * und.big_e - tail),
        dw_und_deps: -2.0 * PI / (a * a) * (quarter_length_from(c, eps, &inv) - tail),
    })
}

pub fn torus_energy(state: &BalanceState) -> Result<TorusEnergy> {
    let (c, eps, y) = (state.c, state.eps, state.y);
    let a = y + eps;
    let w_nod = nodoid_energy(c)?;
    let w_und = unduloid_energy(y, eps)?;
    let inv = inverse_c_pair(c, eps)?;
    let (_, und) = unduloid_pair(y, eps)?;
    let z = solution_derivative(state)? / y;
    let a1 = inv.big_e;
    let a2 = 1.0 / (c * a * a);
    let a3 = y * (1.0 - eps * z) / (a * a * a);
    let dw_dc = 2.0 * PI * (a1 * (1.0 - 1.0 / (a * a)) + a2 * eps * inv.big_k + a3 * eps * und.big_k);
    Ok(TorusEnergy { w_nod, w_und, w_total: w_nod + w_und, dw_dc })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitDiagnostics {
    /// `[εK(1/c) + εK(y/(y + ε))] / [1 − 1/(y + ε)²]`, tending to `−1/2`.
    pub ratio: f64,
    pub eps_k1: f64,
    pub eps_k2: f64,
    /// `L(c)`, tending to `1`.
    pub quarter_length: f64,
}

pub fn limit_diagnostics(c: f64) -> Result<LimitDiagnostics> {
    let state = solve_balance(c)?;
    limit_diagnostics_for(&state)
}

pub fn limit_diagnostics_for(state: &BalanceState) -> Result<LimitDiagnostics> {
    let (c, eps, y) = (state.c, state.eps, state.y);
    let a = y + eps;
    let inv = inverse_c_pair(c, eps)?;
    let (_, und) = unduloid_pair(y, eps)?;
    let eps_k1 = eps * inv.big_k;
    let eps_k2 = eps * und.big_k;
    // 1 − 1/a² = (a − 1)(a + 1)/a²
    let denom = (a - 1.0) * (a + 1.0) / (a * a);
    Ok(LimitDiagnostics {
        ratio: (eps_k1 + eps_k2) / denom,
        eps_k1,
        eps_k2,
        quarter_length: quarter_length_from(c, eps, &inv),
    })
}

/// Closed meridian of the torus, traversed counterclockwise: from the common
/// neck up along the nodoid period, then back down along the unduloid.
pub fn assemble_torus_profile(state: &BalanceState) -> Result<ProfileCurve> {
    let nod = state.nodoid()?;
    let und = state.unduloid()?;
    let plus = Shape::Nodoid(nod, Branch::Plus);
    let minus = Shape::Nodoid(nod, Branch::Minus);
    let pieces = vec![
        (plus.clone(), 0.0, -FRAC_PI_2),
        (minus, FRAC_PI_2, -FRAC_PI_2),
        (plus, FRAC_PI_2, 0.0),
        (Shape::Unduloid(und), 2.0 * PI, 0.0),
    ];
    let curve = ProfileCurve::chain(pieces, 0.0, true)?;
    check_joins(&curve)?;
    Ok(curve)
}

pub(crate) fn check_joins(curve: &ProfileCurve) -> Result<()> {
    for gap in curve.join_gaps()? {
        if gap.position > JOIN_POSITION_TOL || gap.tangent_angle > JOIN_TANGENT_TOL {
            return Err(Error::PatchMismatch(format!(
                "join after segment {}: position gap {:e}, tangent gap {:e}",
                gap.after, gap.position, gap.tangent_angle
            )));
        }
    }
    Ok(())
}

/// Result of scanning `c` for solvable, unique balance systems.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainScan {
    /// Largest scanned `c` below which every grid point solved uniquely.
    pub c_max: f64,
    pub points: Vec<(f64, bool)>,
}

/// Walks `c` linearly over `[c_lo, c_hi]` and reports the validated prefix:
/// each point must solve with a single sign change and `∂_y F > 0`.
pub fn validated_domain(c_lo: f64, c_hi: f64, steps: usize) -> Result<DomainScan> {
    check_c(c_lo)?;
    if !(c_hi > c_lo) || steps < 2 {
        return Err(Error::Domain(format!("invalid scan [{c_lo}, {c_hi}] with {steps} steps")));
    }
    let mut points = Vec::with_capacity(steps);
    let mut c_max = f64::NAN;
    let mut intact = true;
    for i in 0..steps {
        let c = c_lo + (c_hi - c_lo) * i as f64 / (steps - 1) as f64;
        let ok = match solve_balance(c) {
            Ok(s) => s.is_unique() && balance_function(c, s.y).map(|v| v.dfdy > 0.0).unwrap_or(false),
            Err(_) => false,
        };
        if ok && intact {
            c_max = c;
        }
        intact &= ok;
        points.push((c, ok));
    }
    if c_max.is_nan() {
        return Err(Error::NoBracket { c: c_lo, lo: BRACKET.0, hi: BRACKET.1 });
    }
    Ok(DomainScan { c_max, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rejects_small_c() {
        assert!(matches!(solve_balance(1.0), Err(Error::Range(_))));
        assert!(matches!(solve_balance(1.0 + 1e-7), Err(Error::Range(_))));
        assert!(solve_balance(f64::NAN).is_err());
    }

    #[test]
    fn solved_state_is_consistent() {
        let s = solve_balance(1.1).unwrap();
        assert!(s.residual.abs() <= SOLVER_TOL);
        assert!(((s.a - s.y) - (s.c - 1.0)).abs() <= 2.0 * f64::EPSILON);
        assert_relative_eq!(s.period_length, s.nodoid_period_length, max_relative = 1e-11);
        assert!(s.is_unique());
    }

    #[test]
    fn reference_solutions() {
        // 40-digit references
        for (c, y) in [(1.001, 0.99101680395988696), (1.05, 0.75156847692317399), (1.1, 0.58001443023508674)] {
            assert_relative_eq!(solve_balance(c).unwrap().y, y, max_relative = 1e-11);
        }
    }

    #[test]
    fn reference_energies() {
        let s = solve_balance(1.01).unwrap();
        let e = torus_energy(&s).unwrap();
        assert_relative_eq!(e.w_nod, 12.630169898429699, max_relative = 1e-13);
        assert_relative_eq!(e.w_und, 12.500858059236819, max_relative = 1e-11);
        assert_relative_eq!(e.dw_dc, -0.316420473726, max_relative = 1e-9);
        assert_relative_eq!(solution_derivative(&s).unwrap(), -5.63181785163, max_relative = 1e-9);
    }

    #[test]
    fn no_solution_beyond_domain() {
        assert!(matches!(solve_balance(1.5), Err(Error::NoBracket { .. })));
    }

    #[test]
    fn torus_profile_closes() {
        let s = solve_balance(1.1).unwrap();
        let curve = assemble_torus_profile(&s).unwrap();
        assert!(curve.closure_gap().unwrap() < 1e-10);
        let start = curve.start_point().unwrap();
        assert_relative_eq!(start.f, 0.1, max_relative = 1e-12);
    }
}
