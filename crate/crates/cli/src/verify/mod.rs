//! The verification suite: one check per acceptance criterion, each
//! recording the measured quantity, its bound and the margin between them.

mod oracle;

use std::f64::consts::PI;
use std::time::Instant;

use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;

use delaunay_core::assembly::{
    energy_derivative_parts, limit_diagnostics, nodoid_energy, unduloid_energy, validated_domain, MIN_C,
};
use delaunay_core::cmc::{nodoid_area, nodoid_length, nodoid_point, unduloid_area, unduloid_length, unduloid_point};
use delaunay_core::elliptic::{gauss_transform, EllipticModulus};
use delaunay_core::metrics::helfrich_expansion;
use delaunay_core::{
    assemble_sphere_profile, assemble_torus_profile, balance_function, compute_metrics, ellip_e, ellip_k,
    fundamental_forms, solution_derivative, solve_balance, sphere_energy, torus_energy, Branch, DelaunaySphereSpec,
    NodoidParams, UnduloidParams,
};

pub use oracle::balance_root;

/// Focal distances at which the torus family is checked.
pub const TORUS_GRID: [f64; 6] = [1.0005, 1.001, 1.005, 1.01, 1.05, 1.1];
pub const FULL_RUN_BUDGET_S: f64 = 300.0;
const METRIC_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measurement {
    pub label: String,
    pub value: f64,
    pub bound: String,
    /// Distance to the bound, positive when satisfied.
    pub margin: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub elapsed_s: f64,
    pub measurements: Vec<Measurement>,
    pub error: Option<String>,
}

impl CheckReport {
    /// One human-readable line: status, id, name and the tightest margin.
    pub fn summary(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!("{status} criterion {:>2}: {}", self.id, self.name);
        if let Some(m) = self.measurements.iter().filter(|m| !m.passed).chain(self.measurements.iter()).next() {
            line.push_str(&format!(" | {} = {:e} ({}, margin {:e})", m.label, m.value, m.bound, m.margin));
        }
        if let Some(e) = &self.error {
            line.push_str(&format!(" | error: {e}"));
        }
        line
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub level: Level,
    pub passed: bool,
    pub failures: Vec<u8>,
    pub elapsed_s: f64,
    pub checks: Vec<CheckReport>,
}

#[derive(Default)]
struct Recorder(Vec<Measurement>);

impl Recorder {
    fn push(&mut self, label: impl Into<String>, value: f64, bound: String, margin: f64, passed: bool) {
        self.0.push(Measurement { label: label.into(), value, bound, margin, passed });
    }

    fn at_most(&mut self, label: impl Into<String>, value: f64, limit: f64) {
        self.push(label, value, format!("<= {limit:e}"), limit - value, value <= limit);
    }

    fn at_least(&mut self, label: impl Into<String>, value: f64, limit: f64) {
        self.push(label, value, format!(">= {limit:e}"), value - limit, value >= limit);
    }

    fn between(&mut self, label: impl Into<String>, value: f64, lo: f64, hi: f64) {
        let margin = (value - lo).min(hi - value);
        self.push(label, value, format!("in ({lo}, {hi})"), margin, value > lo && value < hi);
    }

    fn holds(&mut self, label: impl Into<String>, ok: bool) {
        self.push(label, f64::from(u8::from(ok)), "true".into(), if ok { 1.0 } else { -1.0 }, ok);
    }
}

type CheckFn = fn(Level, &mut Recorder) -> Result<()>;

const CHECKS: [(u8, &str, CheckFn); 11] = [
    (1, "elliptic identities and quadrature agreement", check_elliptic),
    (2, "logarithmic growth of K", check_asymptotics),
    (3, "constant mean curvature of unduloids and nodoids", check_cmc),
    (4, "closed-form areas and lengths against quadrature", check_closed_forms),
    (5, "balance solver against bisection", check_balance),
    (6, "analytic derivatives against central differences", check_derivatives),
    (7, "torus energy below 8 pi", check_eight_pi),
    (8, "L'Hopital ratio near c = 1", check_lhopital),
    (9, "sphere energy identity", check_sphere),
    (10, "varifold limit proxies", check_varifold),
    (11, "Helfrich expansion", check_helfrich),
];

pub fn check_ids() -> Vec<u8> {
    let mut ids: Vec<u8> = CHECKS.iter().map(|c| c.0).collect();
    ids.push(12);
    ids
}

pub fn run_check(id: u8, level: Level) -> CheckReport {
    let (_, name, check) = *CHECKS.iter().find(|c| c.0 == id).unwrap_or_else(|| panic!("no check with id {id}"));
    let start = Instant::now();
    let mut rec = Recorder::default();
    let outcome = check(level, &mut rec);
    let error = outcome.err().map(|e| format!("{e:#}"));
    CheckReport {
        id,
        name,
        passed: error.is_none() && !rec.0.is_empty() && rec.0.iter().all(|m| m.passed),
        elapsed_s: start.elapsed().as_secs_f64(),
        measurements: rec.0,
        error,
    }
}

/// Runs checks 1 to 11 in parallel. At the full level a twelfth entry
/// records the wall-clock budget and the failure count of the others.
pub fn run_all(level: Level) -> VerifyReport {
    let start = Instant::now();
    let mut checks: Vec<CheckReport> = CHECKS.par_iter().map(|c| run_check(c.0, level)).collect();
    let elapsed_s = start.elapsed().as_secs_f64();
    if level == Level::Full {
        let failed = checks.iter().filter(|c| !c.passed).count();
        let mut rec = Recorder::default();
        rec.at_most("elapsed_s", elapsed_s, FULL_RUN_BUDGET_S);
        rec.at_most("failed_checks", failed as f64, 0.0);
        checks.push(CheckReport {
            id: 12,
            name: "full verification within budget and without failures",
            passed: rec.0.iter().all(|m| m.passed),
            elapsed_s,
            measurements: rec.0,
            error: None,
        });
    }
    let failures: Vec<u8> = checks.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    VerifyReport { level, passed: failures.is_empty(), failures, elapsed_s, checks }
}

fn rel(x: f64, reference: f64) -> f64 {
    (x - reference).abs() / reference.abs()
}

fn validated_grid() -> Result<Vec<f64>> {
    let scan = validated_domain(MIN_C, 1.5, 100)?;
    Ok(TORUS_GRID.iter().copied().filter(|&c| c <= scan.c_max).collect())
}

fn check_elliptic(_: Level, rec: &mut Recorder) -> Result<()> {
    let start = Instant::now();
    let (mut k_res, mut e_res, mut k_quad, mut e_quad) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 1..=99 {
        let k = i as f64 / 100.0;
        let g = gauss_transform(&EllipticModulus::new(k)?)?;
        k_res = k_res.max(g.k_residual());
        e_res = e_res.max(g.e_residual());
        k_quad = k_quad.max(rel(ellip_k(k)?, oracle::ellip_k(k)));
        e_quad = e_quad.max(rel(ellip_e(k)?, oracle::ellip_e(k)));
    }
    rec.at_most("max |K(k) - (1 + k1) K(k1)|", k_res, 1e-11);
    rec.at_most("max |E(k) - E-identity|", e_res, 1e-11);
    rec.at_most("max rel |K - quadrature|", k_quad, 1e-11);
    rec.at_most("max rel |E - quadrature|", e_quad, 1e-11);
    rec.at_most("runtime_s", start.elapsed().as_secs_f64(), 1.0);
    Ok(())
}

fn check_asymptotics(_: Level, rec: &mut Recorder) -> Result<()> {
    let gaps = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&kp| Ok((EllipticModulus::from_complement(kp)?.complete_k()? - (4.0 / kp).ln()).abs()))
        .collect::<Result<Vec<f64>>>()?;
    rec.at_most("|K - log(4/k')| at k' = 1e-3", gaps[1], 5e-3);
    rec.holds("decreasing over k' = 1e-2, 1e-3, 1e-4", gaps[0] > gaps[1] && gaps[1] > gaps[2]);
    Ok(())
}

fn check_cmc(_: Level, rec: &mut Recorder) -> Result<()> {
    let (mut und, mut nod) = (0.0f64, 0.0f64);
    for i in 0..5 {
        let a = 0.5 + 0.5 * i as f64;
        for j in 0..5 {
            let u = UnduloidParams::new(a, a * (0.1 + 0.2 * j as f64))?;
            for s in 0..1024 {
                let t = 2.0 * PI * s as f64 / 1024.0;
                let h = fundamental_forms(&unduloid_point(&u, t)?)?.h;
                und = und.max((h - 0.5 / a).abs());
            }
            let n = NodoidParams::new(a, 0.3 + 0.5 * j as f64)?;
            for s in 0..1024 {
                let branch = if s % 2 == 0 { Branch::Plus } else { Branch::Minus };
                let t = -PI / 2.0 + PI * (s / 2) as f64 / 511.0;
                let h = fundamental_forms(&nodoid_point(&n, branch, t)?)?.h;
                nod = nod.max((h + 0.5 / a).abs());
            }
        }
    }
    rec.at_most("max |H - 1/(2a)| on unduloids", und, 1e-9);
    rec.at_most("max |H + 1/(2a)| on nodoids", nod, 1e-9);
    Ok(())
}

fn check_closed_forms(level: Level, rec: &mut Recorder) -> Result<()> {
    let start = Instant::now();
    let n = match level {
        Level::Full => 10,
        Level::Fast => 3,
    };
    let step = 9.0 / (n - 1) as f64;
    let (mut ua, mut ul, mut na, mut nl) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..n {
        let x = (i as f64 * step).round();
        for j in 0..n {
            let y = (j as f64 * step).round();
            let (a, b) = (0.5 + 0.25 * x, (0.5 + 0.25 * x) * (0.05 + 0.1 * y));
            let p = UnduloidParams::new(a, b)?;
            ua = ua.max(rel(unduloid_area(&p)?, oracle::unduloid_area(a, b)));
            ul = ul.max(rel(unduloid_length(&p)?, oracle::unduloid_length(a, b)));
            let (a, b) = (0.3 + 0.3 * x, 0.3 + 0.3 * y);
            let p = NodoidParams::new(a, b)?;
            na = na.max(rel(nodoid_area(&p)?, oracle::nodoid_area(a, b)));
            nl = nl.max(rel(nodoid_length(&p)?, oracle::nodoid_length(a, b)));
        }
    }
    rec.at_most(format!("max rel error, unduloid area ({n}x{n})"), ua, 1e-8);
    rec.at_most(format!("max rel error, unduloid length ({n}x{n})"), ul, 1e-8);
    rec.at_most(format!("max rel error, nodoid area ({n}x{n})"), na, 1e-8);
    rec.at_most(format!("max rel error, nodoid length ({n}x{n})"), nl, 1e-8);
    rec.at_most("runtime_s", start.elapsed().as_secs_f64(), 30.0);
    Ok(())
}

fn check_balance(_: Level, rec: &mut Recorder) -> Result<()> {
    let (mut residual, mut gap) = (0.0f64, 0.0f64);
    let grid = validated_grid()?;
    for &c in &grid {
        let s = solve_balance(c)?;
        residual = residual.max(balance_function(c, s.y)?.f.abs());
        gap = gap.max((s.y - balance_root(c)?).abs());
    }
    rec.at_least("validated grid points", grid.len() as f64, 1.0);
    rec.at_most("max |F(c, y)|", residual, 1e-12);
    rec.at_most("max |y_newton - y_bisection|", gap, 1e-10);
    rec.between("y(1 + 1e-5)", solve_balance(1.0 + 1e-5)?.y, 0.99, 1.01);
    Ok(())
}

fn check_derivatives(_: Level, rec: &mut Recorder) -> Result<()> {
    let h = 1e-5;
    let tol = 1e-4;
    let total = |c: f64| -> Result<f64> { Ok(torus_energy(&solve_balance(c)?)?.w_total) };
    for c in [1.01, 1.05] {
        let s = solve_balance(c)?;
        let (y, eps) = (s.y, s.eps);
        let v = balance_function(c, y)?;
        let fd = oracle::central_difference(|x| Ok(balance_function(c, x)?.f), y, h)?;
        rec.at_most(format!("dF/dy rel error at c = {c}"), rel(v.dfdy, fd), tol);
        let fd = oracle::central_difference(|x| Ok(balance_function(x, y)?.f), c, h)?;
        rec.at_most(format!("dF/dc rel error at c = {c}"), rel(v.dfdc, fd), tol);
        let fd = oracle::central_difference(|x| Ok(solve_balance(x)?.y), c, h)?;
        rec.at_most(format!("y' rel error at c = {c}"), rel(solution_derivative(&s)?, fd), tol);
        let parts = energy_derivative_parts(&s)?;
        let fd = oracle::central_difference(|x| Ok(nodoid_energy(x)?), c, h)?;
        rec.at_most(format!("dW_nod/dc rel error at c = {c}"), rel(parts.dw_nod_dc, fd), tol);
        let fd = oracle::central_difference(|x| Ok(unduloid_energy(x, eps)?), y, h)?;
        rec.at_most(format!("dW_und/dy rel error at c = {c}"), rel(parts.dw_und_dy, fd), tol);
        let fd = oracle::central_difference(|x| Ok(unduloid_energy(y, x)?), eps, h)?;
        rec.at_most(format!("dW_und/deps rel error at c = {c}"), rel(parts.dw_und_deps, fd), tol);
        let fd = oracle::central_difference(total, c, h)?;
        rec.at_most(format!("dW/dc rel error at c = {c}"), rel(torus_energy(&s)?.dw_dc, fd), tol);
    }
    Ok(())
}

fn check_eight_pi(_: Level, rec: &mut Recorder) -> Result<()> {
    let eight_pi = 8.0 * PI;
    let mut min_margin = f64::INFINITY;
    let mut max_slope = f64::NEG_INFINITY;
    for c in validated_grid()? {
        let e = torus_energy(&solve_balance(c)?)?;
        min_margin = min_margin.min(e.margin());
        if c <= 1.01 {
            max_slope = max_slope.max(e.dw_dc);
        }
    }
    rec.push("min 8 pi - W over validated grid", min_margin, "> 0".into(), min_margin, min_margin > 0.0);
    let near = torus_energy(&solve_balance(1.0 + 1e-4)?)?.w_total;
    rec.between("W(1 + 1e-4)", near, eight_pi - 0.05, eight_pi);
    rec.push("max dW/dc for c <= 1.01", max_slope, "< 0".into(), -max_slope, max_slope < 0.0);
    Ok(())
}

fn check_lhopital(_: Level, rec: &mut Recorder) -> Result<()> {
    let r = limit_diagnostics(1.0 + 1e-4)?.ratio;
    rec.at_most(format!("|ratio + 1/2| at c = 1 + 1e-4 (ratio {r})"), (r + 0.5).abs(), 0.05);
    let r = limit_diagnostics(1.0 + 1e-6)?.ratio;
    rec.at_most(format!("|ratio + 1/2| at c = 1 + 1e-6 (ratio {r})"), (r + 0.5).abs(), 0.01);
    Ok(())
}

fn check_sphere(_: Level, rec: &mut Recorder) -> Result<()> {
    let grid = validated_grid()?;
    for c in [1.01, 1.05, 1.1].into_iter().filter(|c| grid.contains(c)) {
        let spec = DelaunaySphereSpec::new(solve_balance(c)?)?;
        let quad = compute_metrics(&assemble_sphere_profile(&spec)?, 0.0, METRIC_REL_TOL)?.willmore;
        let closed = 4.0 * PI + torus_energy(&spec.balance)?.w_total / 2.0;
        rec.at_most(format!("|W_quad(S) - (4 pi + W(T)/2)| at c = {c}"), (quad - closed).abs(), 1e-6 * 8.0 * PI);
        rec.at_most(format!("|sphereEnergy - (4 pi + W(T)/2)| at c = {c}"), (sphere_energy(&spec)? - closed).abs(), 1e-12);
    }
    Ok(())
}

fn check_varifold(_: Level, rec: &mut Recorder) -> Result<()> {
    let s = solve_balance(1.001)?;
    let area = compute_metrics(&assemble_torus_profile(&s)?, 0.0, METRIC_REL_TOL)?.area;
    rec.at_most("rel |area - 32 pi| at c = 1.001", rel(area, 32.0 * PI), 0.02);
    let spec = DelaunaySphereSpec::new(s)?;
    rec.at_most("rel |a + y - 2| at c = 1.001", rel(spec.r_inner, 2.0), 0.02);
    rec.at_most("rel |c + 1 - 2| at c = 1.001", rel(spec.r_outer, 2.0), 0.02);
    let isos = [1.1, 1.05, 1.01, 1.005, 1.001]
        .iter()
        .map(|&c| Ok(compute_metrics(&assemble_torus_profile(&solve_balance(c)?)?, 0.0, METRIC_REL_TOL)?.iso_ratio))
        .collect::<Result<Vec<f64>>>()?;
    let min_step = isos.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    rec.push("min iso increase as c decreases", min_step, "> 0".into(), min_step, min_step > 0.0);
    Ok(())
}

fn check_helfrich(_: Level, rec: &mut Recorder) -> Result<()> {
    let curve = assemble_torus_profile(&solve_balance(1.05)?)?;
    let m = compute_metrics(&curve, 0.0, METRIC_REL_TOL)?;
    rec.at_most("|H_0 - W|", (m.helfrich - m.willmore).abs(), 1e-12);
    for c0 in [-0.1, 0.1] {
        let direct = compute_metrics(&curve, c0, 1e-11)?.helfrich;
        let expansion = helfrich_expansion(&curve, c0)?.sum();
        rec.at_most(format!("rel |expansion - H_c0| at c0 = {c0}"), rel(expansion, direct), 1e-8);
    }
    Ok(())
}
