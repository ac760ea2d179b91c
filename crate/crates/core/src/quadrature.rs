//! Globally adaptive Gauss–Kronrod (7, 15) quadrature.
//!
//! The integrand may be vector valued (`[f64; N]`), so several densities over
//! the same curve share one subdivision. Each panel carries the embedded
//! `|K15 − G7|` error estimate, which is conservative for smooth integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// Kronrod abscissae (positive half, descending) and weights; the Gauss
// 7-point rule uses the odd-indexed abscissae.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Stopping rule for [`integrate`] and friends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_panels: usize,
}

impl Tolerance {
    pub fn relative(rel: f64) -> Self {
        Self { rel, abs: 0.0, max_panels: 20_000 }
    }

    pub fn with_abs(mut self, abs: f64) -> Self {
        self.abs = abs;
        self
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::relative(1e-10).with_abs(1e-14)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<const N: usize> {
    pub value: [f64; N],
    pub error: [f64; N],
    pub panels: usize,
}

/// One Gauss–Kronrod (7, 15) panel: returns the Kronrod value and `|K15 − G7|`.
pub fn gk15<const N: usize, F>(f: &mut F, a: f64, b: f64) -> ([f64; N], [f64; N])
where
    F: FnMut(f64) -> [f64; N],
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = [0.0; N];
    let mut gauss = [0.0; N];
    let mid = f(center);
    for i in 0..N {
        kronrod[i] = WGK[7] * mid[i];
        gauss[i] = WG[3] * mid[i];
    }
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let lo = f(center - dx);
        let hi = f(center + dx);
        for i in 0..N {
            let s = lo[i] + hi[i];
            kronrod[i] += w * s;
            if j % 2 == 1 {
                gauss[i] += WG[j / 2] * s;
            }
        }
    }
    let mut err = [0.0; N];
    for i in 0..N {
        kronrod[i] *= half;
        gauss[i] *= half;
        err[i] = (kronrod[i] - gauss[i]).abs();
    }
    (kronrod, err)
}

struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: [f64; N],
    priority: f64,
}

impl<const N: usize> PartialEq for Panel<N> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<const N: usize> Eq for Panel<N> {}
impl<const N: usize> PartialOrd for Panel<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const N: usize> Ord for Panel<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        // ties broken by position so the subdivision order is reproducible
        self.priority
            .total_cmp(&other.priority)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Integrates a vector-valued function over `[breaks[0], breaks[last]]`,
/// never placing a panel across an interior breakpoint.
///
/// Converges when every component satisfies
/// `error ≤ max(tol.abs, tol.rel · |value|)`.
pub fn integrate_vec_with_breaks<const N: usize, F>(
    mut f: F,
    breaks: &[f64],
    tol: Tolerance,
) -> Result<Estimate<N>>
where
    F: FnMut(f64) -> [f64; N],
{
    if breaks.len() < 2 {
        return Err(Error::Domain("quadrature needs at least one interval".into()));
    }
    let mut initial = Vec::with_capacity(breaks.len() - 1);
    for w in breaks.windows(2) {
        let (value, error) = gk15(&mut f, w[0], w[1]);
        initial.push((w[0], w[1], value, error));
    }
    let mut scale = [0.0_f64; N];
    for (_, _, v, _) in &initial {
        for i in 0..N {
            scale[i] += v[i].abs();
        }
    }
    let floor = tol.abs.max(f64::MIN_POSITIVE);
    let priority = |err: &[f64; N]| -> f64 {
        (0..N).map(|i| err[i] / (tol.rel * scale[i]).max(floor)).fold(0.0, f64::max)
    };

    let mut heap = BinaryHeap::new();
    let mut done: Vec<Panel<N>> = Vec::new();
    for (a, b, value, error) in initial {
        heap.push(Panel { a, b, value, error, priority: priority(&error) });
    }

    loop {
        let (value, error) = totals(heap.iter().chain(done.iter()));
        let converged = (0..N).all(|i| error[i] <= tol.abs.max(tol.rel * value[i].abs()));
        if converged || heap.is_empty() {
            let panels = heap.len() + done.len();
            if !converged {
                return Err(Error::NonConvergence(format!(
                    "quadrature reached the resolution floor with error {error:?} for value {value:?}"
                )));
            }
            return Ok(Estimate { value, error, panels });
        }
        if heap.len() + done.len() >= tol.max_panels {
            return Err(Error::NonConvergence(format!(
                "quadrature exceeded {} panels (value {value:?}, error {error:?})",
                tol.max_panels
            )));
        }
        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if (worst.b - worst.a) <= 64.0 * f64::EPSILON * worst.a.abs().max(worst.b.abs()).max(1.0) {
            done.push(worst);
            continue;
        }
        for (a, b) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = gk15(&mut f, a, b);
            heap.push(Panel { a, b, value, error, priority: priority(&error) });
        }
    }
}

/// Sums panel values in position order with pairwise summation.
fn totals<'a, const N: usize>(panels: impl Iterator<Item = &'a Panel<N>>) -> ([f64; N], [f64; N]) {
    let mut list: Vec<&Panel<N>> = panels.collect();
    list.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut value = [0.0; N];
    let mut error = [0.0; N];
    for i in 0..N {
        value[i] = pairwise(&list.iter().map(|p| p.value[i]).collect::<Vec<_>>());
        error[i] = pairwise(&list.iter().map(|p| p.error[i]).collect::<Vec<_>>());
    }
    (value, error)
}

pub(crate) fn pairwise(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n if n <= 8 => xs.iter().sum(),
        n => pairwise(&xs[..n / 2]) + pairwise(&xs[n / 2..]),
    }
}

pub fn integrate_vec<const N: usize, F>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Estimate<N>>
where
    F: FnMut(f64) -> [f64; N],
{
    integrate_vec_with_breaks(f, &[a, b], tol)
}

/// Scalar adaptive quadrature; returns `(value, error estimate)`.
pub fn integrate<F>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    if a == b {
        return Ok((0.0, 0.0));
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let est = integrate_vec(|x| [f(x)], lo, hi, tol)?;
    Ok((sign * est.value[0], est.error[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn kronrod_weights_sum_to_two() {
        let s: f64 = WGK[7] + 2.0 * WGK[..7].iter().sum::<f64>();
        assert!((s - 2.0).abs() < 1e-15);
        let g: f64 = WG[3] + 2.0 * WG[..3].iter().sum::<f64>();
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn single_panel_is_exact_for_polynomials() {
        // K15 integrates degree 22 exactly, G7 degree 13
        for deg in 0..=22 {
            let (v, _) = gk15(&mut |x: f64| [x.powi(deg)], -1.0, 1.0);
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((v[0] - exact).abs() < 1e-14, "degree {deg}");
        }
        let (_, e) = gk15(&mut |x: f64| [x.powi(12)], 0.0, 1.0);
        assert!(e[0] < 1e-15);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        let (v, err) = integrate(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, Tolerance::relative(1e-12)).unwrap();
        let exact = 2.0 * (1.0 / 1e-2) * (1.0f64 / 1e-2).atan();
        assert_relative_eq!(v, exact, max_relative = 1e-12);
        assert!(err <= 1e-12 * v);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let (v, _) = integrate(|x| x.sin(), PI, 0.0, Tolerance::default()).unwrap();
        assert_relative_eq!(v, -2.0, max_relative = 1e-13);
    }

    #[test]
    fn breakpoints_are_respected() {
        // kink at 0.3: exact only if no panel straddles it
        let est = integrate_vec_with_breaks(|x| [(x - 0.3).abs()], &[0.0, 0.3, 1.0], Tolerance::relative(1e-14))
            .unwrap();
        assert_relative_eq!(est.value[0], 0.5 * 0.09 + 0.5 * 0.49, max_relative = 1e-15);
        assert_eq!(est.panels, 2);
    }

    #[test]
    fn panel_cap_is_an_error() {
        let tol = Tolerance { rel: 1e-15, abs: 0.0, max_panels: 4 };
        assert!(integrate(|x| (1.0 / (x + 1e-9)).sqrt(), 0.0, 1.0, tol).is_err());
    }
}
