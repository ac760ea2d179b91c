use std::io::Write;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use delaunay_core::assembly::{limit_diagnostics_for, MIN_C};
use delaunay_core::cmc::{patched_nodoid_curve, unduloid_curve, NodoidSpan};
use delaunay_core::elliptic::{ellip_derivatives, EllipticModulus, K_MAX_MODULUS};
use delaunay_core::mesh::revolve;
use delaunay_core::metrics::REL_TOL_RANGE;
use delaunay_core::{
    assemble_sphere_profile, assemble_torus_profile, compute_metrics, solve_balance, torus_energy, DelaunaySphereSpec,
    NodoidParams, ProfileCurve, SampledProfile,
};

use crate::format::{csv_field, num};

pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const SWEEP_HEADER: &str = "c,eps,y,a,L,w_nod,w_und,w_total,dw_dc,area,volume,iso,ratio_lhopital,error";

pub fn check_rel_tol(rel_tol: f64) -> Result<()> {
    let (lo, hi) = REL_TOL_RANGE;
    if !(lo..=hi).contains(&rel_tol) {
        bail!("relative tolerance {rel_tol} outside [{lo}, {hi}]");
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolveReport {
    pub c: f64,
    pub eps: f64,
    pub y: f64,
    pub a: f64,
    #[serde(rename = "L")]
    pub period_length: f64,
    pub w_nod: f64,
    pub w_und: f64,
    pub w_total: f64,
    pub dw_dc: f64,
    pub area: f64,
    pub volume: f64,
    pub iso: f64,
    pub eight_pi_margin: f64,
    pub ratio_lhopital: f64,
}

pub fn solve(c: f64, rel_tol: f64) -> Result<SolveReport> {
    check_rel_tol(rel_tol)?;
    let state = solve_balance(c)?;
    let energy = torus_energy(&state)?;
    let metrics = compute_metrics(&assemble_torus_profile(&state)?, 0.0, rel_tol)?;
    Ok(SolveReport {
        c,
        eps: state.eps,
        y: state.y,
        a: state.a,
        period_length: state.period_length,
        w_nod: energy.w_nod,
        w_und: energy.w_und,
        w_total: energy.w_total,
        dw_dc: energy.dw_dc,
        area: metrics.area,
        volume: metrics.volume,
        iso: metrics.iso_ratio,
        eight_pi_margin: energy.margin(),
        ratio_lhopital: limit_diagnostics_for(&state)?.ratio,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Spacing {
    Linear,
    LogEps,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub c_min: f64,
    pub c_max: f64,
    pub steps: usize,
    pub spacing: Spacing,
    pub rel_tol: f64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c_min >= MIN_C) {
            bail!("c-min = {} is below the admissible minimum 1 + 1e-6", self.c_min);
        }
        if !(self.c_max > self.c_min && self.c_max.is_finite()) {
            bail!("c-max = {} must exceed c-min = {}", self.c_max, self.c_min);
        }
        if self.steps < 2 {
            bail!("steps = {} must be at least 2", self.steps);
        }
        check_rel_tol(self.rel_tol)
    }

    pub fn grid(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                let x = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.c_min + (self.c_max - self.c_min) * x,
                    Spacing::LogEps => {
                        let (lo, hi) = ((self.c_min - 1.0).ln(), (self.c_max - 1.0).ln());
                        1.0 + (lo + (hi - lo) * x).exp()
                    }
                }
            })
            .collect()
    }
}

/// One sweep row: the report, or the error that stopped it.
pub type SweepRow = (f64, std::result::Result<SolveReport, String>);

pub fn sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    Ok(config
        .grid()
        .into_par_iter()
        .map(|c| (c, solve(c, config.rel_tol).map_err(|e| format!("{e:#}"))))
        .collect())
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for (c, row) in rows {
        match row {
            Ok(r) => writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},",
                num(r.c),
                num(r.eps),
                num(r.y),
                num(r.a),
                num(r.period_length),
                num(r.w_nod),
                num(r.w_und),
                num(r.w_total),
                num(r.dw_dc),
                num(r.area),
                num(r.volume),
                num(r.iso),
                num(r.ratio_lhopital),
            )?,
            Err(e) => writeln!(out, "{},{},,,,,,,,,,,,{}", num(*c), num(c - 1.0), csv_field(e))?,
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Torus,
    Sphere,
    Unduloid,
    Nodoid,
}

/// Periods drawn for the single-family profiles.
pub const FAMILY_PERIODS: usize = 2;

/// The meridian for `which` at focal distance `c`. The unduloid is the one
/// balancing the torus at `c`; the nodoid has `a = 1` and focal distance `c`.
pub fn profile_curve(c: f64, which: Which) -> Result<ProfileCurve> {
    Ok(match which {
        Which::Torus => assemble_torus_profile(&solve_balance(c)?)?,
        Which::Sphere => assemble_sphere_profile(&DelaunaySphereSpec::new(solve_balance(c)?)?)?,
        Which::Unduloid => unduloid_curve(&solve_balance(c)?.unduloid()?, FAMILY_PERIODS)?,
        Which::Nodoid => {
            if !(c > 1.0) {
                bail!("nodoid focal distance c = {c} must exceed 1");
            }
            patched_nodoid_curve(&NodoidParams::from_focal(1.0, c)?, NodoidSpan::Periods(FAMILY_PERIODS))?
        }
    })
}

pub fn profile(c: f64, which: Which, samples: usize) -> Result<SampledProfile> {
    if samples < 16 {
        bail!("samples = {samples} must be at least 16");
    }
    Ok(profile_curve(c, which)?.sample(samples)?)
}

pub fn write_profile_csv<W: Write>(profile: &SampledProfile, mut out: W) -> Result<()> {
    writeln!(out, "t,f,g,segment,patch")?;
    for ((p, tag), patch) in profile.samples.iter().zip(&profile.tags).zip(&profile.patch) {
        writeln!(out, "{},{},{},{},{}", num(p.t), num(p.f), num(p.g), tag.as_str(), u8::from(*patch))?;
    }
    Ok(())
}

pub fn mesh<W: Write>(c: f64, which: Which, u: usize, v: usize, out: W) -> Result<()> {
    if !matches!(which, Which::Torus | Which::Sphere) {
        bail!("meshes are available for the torus and the sphere only");
    }
    if u < 8 || v < 8 {
        bail!("mesh resolution {u} x {v} is below the minimum 8 x 8");
    }
    let profile = profile_curve(c, which)?.sample(u)?;
    revolve(&profile, v)?.write_obj(out).context("writing OBJ output")?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticReport {
    pub k: f64,
    pub k_prime: f64,
    pub k1: f64,
    #[serde(rename = "K")]
    pub big_k: Option<f64>,
    #[serde(rename = "E")]
    pub big_e: f64,
    #[serde(rename = "dK_dk")]
    pub dk: Option<f64>,
    #[serde(rename = "dE_dk")]
    pub de: Option<f64>,
}

pub fn elliptic(k: f64) -> Result<EllipticReport> {
    let m = EllipticModulus::new(k)?;
    let big_e = m.complete_e()?;
    let big_k = if k <= K_MAX_MODULUS { Some(m.complete_k()?) } else { None };
    let derivs = if k > 0.0 && k <= K_MAX_MODULUS { Some(ellip_derivatives(&m)?) } else { None };
    Ok(EllipticReport {
        k,
        k_prime: m.k_prime(),
        k1: m.k1(),
        big_k,
        big_e,
        dk: derivs.map(|d| d.0),
        de: derivs.map(|d| d.1),
    })
}
