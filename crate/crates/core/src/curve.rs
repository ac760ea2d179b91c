//! Piecewise-analytic meridians.
//!
//! A [`ProfileCurve`] is a chain of [`Segment`]s, each a parameter interval of
//! one generating [`Shape`]. The global parameter runs through the segments in
//! order, advancing by `|t_to − t_from|` per segment, so a segment traversed
//! backwards simply flips its first derivatives.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

use crate::cmc::{Branch, NodoidParams, UnduloidParams};
use crate::error::{Error, Result};
use crate::revolution::{Jet, ProfilePoint, SampledProfile, SegmentTag};

/// Step of the five-point stencils used for generic curves.
pub const STENCIL_STEP: f64 = 4e-3;

/// Largest start-to-end distance tolerated on a closed curve.
pub const CLOSURE_TOL: f64 = 1e-10;

type PlanarFn = dyn Fn(f64) -> (f64, f64) + Send + Sync;

/// Generator of one piece of a meridian.
#[derive(Clone)]
pub enum Shape {
    Unduloid(UnduloidParams),
    Nodoid(NodoidParams, Branch),
    /// `f = r cos θ`, `g = center + r sin θ`.
    Arc { radius: f64, center: f64 },
    /// Any smooth `t ↦ (f, g)`; derivatives by finite differences.
    Generic(Arc<PlanarFn>),
}

impl fmt::Debug for Shape {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Unduloid(p) => fmt.debug_tuple("Unduloid").field(p).finish(),
            Shape::Nodoid(p, b) => fmt.debug_tuple("Nodoid").field(p).field(b).finish(),
            Shape::Arc { radius, center } => {
                fmt.debug_struct("Arc").field("radius", radius).field("center", center).finish()
            }
            Shape::Generic(_) => fmt.write_str("Generic(..)"),
        }
    }
}

impl Shape {
    pub fn generic(f: impl Fn(f64) -> (f64, f64) + Send + Sync + 'static) -> Self {
        Shape::Generic(Arc::new(f))
    }

    pub fn tag(&self) -> SegmentTag {
        match self {
            Shape::Unduloid(_) => SegmentTag::Unduloid,
            Shape::Nodoid(_, Branch::Plus) => SegmentTag::NodoidPlus,
            Shape::Nodoid(_, Branch::Minus) => SegmentTag::NodoidMinus,
            Shape::Arc { .. } => SegmentTag::CircularArc,
            Shape::Generic(_) => SegmentTag::Generic,
        }
    }

    pub fn jet(&self, t: f64) -> Jet {
        match self {
            Shape::Unduloid(p) => p.jet(t),
            Shape::Nodoid(p, b) => p.jet(*b, t),
            Shape::Arc { radius, .. } => {
                let (sin, cos) = t.sin_cos();
                let f = if (t.abs() - FRAC_PI_2).abs() <= 4.0 * f64::EPSILON { 0.0 } else { radius * cos };
                Jet { f, df: -radius * sin, dg: radius * cos, ddf: -radius * cos, ddg: -radius * sin }
            }
            Shape::Generic(c) => stencil_jet(c.as_ref(), t),
        }
    }

    pub fn height(&self, t: f64) -> Result<f64> {
        match self {
            Shape::Unduloid(p) => p.height(t),
            Shape::Nodoid(p, b) => p.height(*b, t),
            Shape::Arc { radius, center } => Ok(center + radius * t.sin()),
            Shape::Generic(c) => Ok(c(t).1),
        }
    }

    /// `height(t1) − height(t0)` without forming either absolute height.
    pub fn height_step(&self, t0: f64, t1: f64) -> Result<f64> {
        match self {
            Shape::Unduloid(p) => p.height_step(t0, t1),
            Shape::Nodoid(p, b) => p.height_step(*b, t0, t1),
            Shape::Arc { radius, .. } => Ok(radius * (t1.sin() - t0.sin())),
            Shape::Generic(c) => Ok(c(t1).1 - c(t0).1),
        }
    }
}

fn stencil_jet(c: &PlanarFn, t: f64) -> Jet {
    let h = STENCIL_STEP;
    let (m2, m1, z, p1, p2) = (c(t - 2.0 * h), c(t - h), c(t), c(t + h), c(t + 2.0 * h));
    let d1 = |a: f64, b: f64, d: f64, e: f64| (a - 8.0 * b + 8.0 * d - e) / (12.0 * h);
    let d2 = |a: f64, b: f64, m: f64, d: f64, e: f64| (-a + 16.0 * b - 30.0 * m + 16.0 * d - e) / (12.0 * h * h);
    Jet {
        f: z.0,
        df: d1(m2.0, m1.0, p1.0, p2.0),
        dg: d1(m2.1, m1.1, p1.1, p2.1),
        ddf: d2(m2.0, m1.0, z.0, p1.0, p2.0),
        ddg: d2(m2.1, m1.1, z.1, p1.1, p2.1),
    }
}

/// A shape traversed from `t_from` to `t_to`, translated so its height at
/// `t_from` is `g_start`.
#[derive(Debug, Clone)]
pub struct Segment {
    pub shape: Shape,
    pub t_from: f64,
    pub t_to: f64,
    pub g_start: f64,
    pub g_end: f64,
}

impl Segment {
    pub fn new(shape: Shape, t_from: f64, t_to: f64, g_start: f64) -> Result<Self> {
        if !(t_from.is_finite() && t_to.is_finite()) || t_from == t_to {
            return Err(Error::Domain(format!("empty segment [{t_from}, {t_to}]")));
        }
        let g_end = g_start + shape.height_step(t_from, t_to)?;
        Ok(Self { shape, t_from, t_to, g_start, g_end })
    }

    /// Length of the segment in the global parameter.
    pub fn span(&self) -> f64 {
        (self.t_to - self.t_from).abs()
    }

    fn direction(&self) -> f64 {
        if self.t_to > self.t_from {
            1.0
        } else {
            -1.0
        }
    }

    /// Shape parameter at local parameter `u ∈ [0, span]`.
    pub fn shape_parameter(&self, u: f64) -> f64 {
        if u >= self.span() {
            self.t_to
        } else {
            self.t_from + self.direction() * u
        }
    }

    /// Jet with respect to the local parameter `u`.
    pub fn jet(&self, u: f64) -> Jet {
        let jet = self.shape.jet(self.shape_parameter(u));
        if self.direction() < 0.0 {
            jet.reversed()
        } else {
            jet
        }
    }

    pub fn height(&self, u: f64) -> Result<f64> {
        if u >= self.span() {
            return Ok(self.g_end);
        }
        Ok(self.g_start + self.shape.height_step(self.t_from, self.shape_parameter(u))?)
    }

    pub fn tag(&self) -> SegmentTag {
        self.shape.tag()
    }
}

/// Position and tangent mismatch where one segment hands over to the next.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JoinGap {
    /// Index of the segment that ends at this join.
    pub after: usize,
    pub position: f64,
    /// Angle between the unit tangents, in radians.
    pub tangent_angle: f64,
}

#[derive(Debug, Clone)]
pub struct ProfileCurve {
    segments: Vec<Segment>,
    closed: bool,
}

impl ProfileCurve {
    /// Chains `(shape, t_from, t_to)` pieces end to end, translating each
    /// along the axis so heights are continuous. The first piece starts at
    /// height `g0`.
    pub fn chain(pieces: Vec<(Shape, f64, f64)>, g0: f64, closed: bool) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Domain("a profile curve needs at least one segment".into()));
        }
        let mut segments = Vec::with_capacity(pieces.len());
        let mut g = g0;
        for (shape, t_from, t_to) in pieces {
            let seg = Segment::new(shape, t_from, t_to, g)?;
            g = seg.g_end;
            segments.push(seg);
        }
        Ok(Self { segments, closed })
    }

    pub fn from_segments(segments: Vec<Segment>, closed: bool) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Domain("a profile curve needs at least one segment".into()));
        }
        Ok(Self { segments, closed })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn parameter_length(&self) -> f64 {
        self.segments.iter().map(Segment::span).sum()
    }

    /// Global parameter values of segment boundaries, first and last included.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        let mut s = 0.0;
        out.push(s);
        for seg in &self.segments {
            s += seg.span();
            out.push(s);
        }
        out
    }

    /// Segment index and local parameter of the global parameter `s`.
    pub fn locate(&self, s: f64) -> Result<(usize, f64)> {
        let total = self.parameter_length();
        if !(0.0..=total).contains(&s) {
            return Err(Error::Domain(format!("parameter {s} outside [0, {total}]")));
        }
        let mut start = 0.0;
        for (i, seg) in self.segments.iter().enumerate() {
            let end = start + seg.span();
            if s <= end || i + 1 == self.segments.len() {
                return Ok((i, (s - start).clamp(0.0, seg.span())));
            }
            start = end;
        }
        unreachable!("non-empty segment list")
    }

    pub fn jet(&self, s: f64) -> Result<Jet> {
        let (i, u) = self.locate(s)?;
        Ok(self.segments[i].jet(u))
    }

    pub fn point(&self, s: f64) -> Result<ProfilePoint> {
        let (i, u) = self.locate(s)?;
        let seg = &self.segments[i];
        Ok(ProfilePoint::from_jet(s, seg.height(u)?, seg.jet(u)))
    }

    pub fn start_point(&self) -> Result<ProfilePoint> {
        let seg = &self.segments[0];
        Ok(ProfilePoint::from_jet(0.0, seg.g_start, seg.jet(0.0)))
    }

    pub fn end_point(&self) -> Result<ProfilePoint> {
        let seg = self.segments.last().expect("non-empty segment list");
        Ok(ProfilePoint::from_jet(self.parameter_length(), seg.g_end, seg.jet(seg.span())))
    }

    /// Mismatch at every interior join, plus the closing join for closed curves.
    pub fn join_gaps(&self) -> Result<Vec<JoinGap>> {
        let mut out = Vec::new();
        for (i, pair) in self.segments.windows(2).enumerate() {
            out.push(gap(i, &pair[0], &pair[1]));
        }
        if self.closed {
            let last = self.segments.len() - 1;
            out.push(gap(last, &self.segments[last], &self.segments[0]));
        }
        Ok(out)
    }

    /// Distance between the first and last point.
    pub fn closure_gap(&self) -> Result<f64> {
        let (a, b) = (self.start_point()?, self.end_point()?);
        Ok((a.f - b.f).hypot(a.g - b.g))
    }

    /// Both endpoints lie on the rotation axis.
    pub fn ends_on_axis(&self) -> Result<bool> {
        let scale = self
            .segments
            .iter()
            .map(|s| s.jet(0.0).f.abs().max(s.jet(s.span()).f.abs()))
            .fold(1.0, f64::max);
        let tol = 1e-12 * scale;
        Ok(self.start_point()?.f.abs() <= tol && self.end_point()?.f.abs() <= tol)
    }

    /// Samples the curve with roughly `samples` points in total, each segment
    /// receiving a share proportional to its parameter length. Nodoid
    /// segments are cosine spaced so their junctions are resolved more
    /// finely. Heights accumulate step integrals between neighbouring samples.
    /// On a closed curve the last sample repeats the position of the first.
    pub fn sample(&self, samples: usize) -> Result<SampledProfile> {
        if samples < 2 {
            return Err(Error::Domain("at least two samples are required".into()));
        }
        let total = self.parameter_length();
        let mut out = SampledProfile {
            samples: Vec::with_capacity(samples + self.segments.len()),
            tags: Vec::new(),
            patch: Vec::new(),
            t_range: (0.0, total),
            closed: self.closed,
        };
        let mut offset = 0.0;
        let last_index = self.segments.len() - 1;
        for (i, seg) in self.segments.iter().enumerate() {
            let share = ((samples as f64) * seg.span() / total).round() as usize;
            let intervals = share.max(2);
            let cosine = matches!(seg.shape, Shape::Nodoid(..));
            let local = |j: usize| {
                let x = j as f64 / intervals as f64;
                let x = if cosine { 0.5 * (1.0 - (std::f64::consts::PI * x).cos()) } else { x };
                if j == intervals {
                    seg.span()
                } else {
                    x * seg.span()
                }
            };
            let first = if i == 0 { 0 } else { 1 };
            let mut g = seg.g_start;
            let mut prev_t = seg.t_from;
            for j in first..=intervals {
                let u = local(j);
                let t = seg.shape_parameter(u);
                if j == intervals {
                    g = seg.g_end;
                } else if j > 0 {
                    g += seg.shape.height_step(prev_t, t)?;
                }
                prev_t = t;
                out.samples.push(ProfilePoint::from_jet(offset + u, g, seg.jet(u)));
                out.tags.push(seg.tag());
                let join = (j == 0 && (i > 0 || self.closed)) || (j == intervals && (i < last_index || self.closed));
                out.patch.push(join);
            }
            offset += seg.span();
        }
        if self.closed {
            let first = out.samples[0];
            let last = out.samples.last_mut().expect("at least two samples");
            let gap = (last.f - first.f).hypot(last.g - first.g);
            if gap > CLOSURE_TOL {
                return Err(Error::PatchMismatch(format!("closed curve ends {gap:e} away from its start")));
            }
            last.f = first.f;
            last.g = first.g;
        }
        Ok(out)
    }
}

fn gap(index: usize, a: &Segment, b: &Segment) -> JoinGap {
    let end = a.jet(a.span());
    let start = b.jet(0.0);
    let position = (end.f - start.f).hypot(a.g_end - b.g_start);
    let cross = end.df * start.dg - end.dg * start.df;
    let dot = end.df * start.df + end.dg * start.dg;
    JoinGap { after: index, position, tangent_angle: cross.atan2(dot).abs() }
}
