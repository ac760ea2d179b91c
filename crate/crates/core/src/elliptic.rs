//! Complete elliptic integrals of the first and second kind.
//!
//! Both integrals use the modulus convention
//!
//! ```text
//! K(k) = ∫₀^{π/2} dθ / √(1 − k² sin²θ)
//! E(k) = ∫₀^{π/2} √(1 − k² sin²θ) dθ
//! ```
//!
//! and are evaluated by the arithmetic–geometric mean. The AGM is seeded with
//! the complementary modulus `k′`, so callers that know `k′` more accurately
//! than `k` (every modulus near 1 in the torus construction) should build the
//! modulus with [`EllipticModulus::from_complement`].

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Largest modulus accepted by [`EllipticModulus::complete_k`].
pub const K_MAX_MODULUS: f64 = 1.0 - 1e-12;

const AGM_MAX_ITER: usize = 64;
const AGM_REL_TOL: f64 = 1e-16;

/// A validated elliptic modulus `k ∈ [0, 1]` with its complementary modulus
/// `k′ = √(1 − k²)` and the Gauss-transformed modulus `k₁ = (1 − k′)/(1 + k′)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticModulus {
    k: f64,
    k_prime: f64,
}

impl EllipticModulus {
    pub fn new(k: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) {
            return Err(Error::Domain(format!("elliptic modulus k = {k} outside [0, 1]")));
        }
        Ok(Self { k, k_prime: ((1.0 - k) * (1.0 + k)).sqrt() })
    }

    /// Builds the modulus from `k′`; `k` is derived as `√((1 − k′)(1 + k′))`.
    pub fn from_complement(k_prime: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k_prime) {
            return Err(Error::Domain(format!(
                "complementary modulus k' = {k_prime} outside [0, 1]"
            )));
        }
        Ok(Self { k: ((1.0 - k_prime) * (1.0 + k_prime)).sqrt(), k_prime })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn k_prime(&self) -> f64 {
        self.k_prime
    }

    /// Gauss-transformed modulus, written as `k²/(1 + k′)²` to avoid the
    /// cancellation in `1 − k′` for small `k`.
    pub fn k1(&self) -> f64 {
        let d = 1.0 + self.k_prime;
        self.k * self.k / (d * d)
    }

    pub fn complete_k(&self) -> Result<f64> {
        self.check_k_domain()?;
        Ok(agm(self.k, self.k_prime)?.big_k)
    }

    pub fn complete_e(&self) -> Result<f64> {
        if self.k_prime == 0.0 {
            return Ok(1.0);
        }
        Ok(agm(self.k, self.k_prime)?.big_e)
    }

    /// `K(k)` and `E(k)` from one AGM pass.
    pub fn pair(&self) -> Result<EllipticPair> {
        self.check_k_domain()?;
        agm(self.k, self.k_prime)
    }

    fn check_k_domain(&self) -> Result<()> {
        if self.k > K_MAX_MODULUS {
            return Err(Error::Domain(format!(
                "K(k) requested at k = {} beyond the supported limit 1 - 1e-12",
                self.k
            )));
        }
        Ok(())
    }
}

/// Values of `K(k)` and `E(k)` at the same modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticPair {
    pub big_k: f64,
    pub big_e: f64,
}

/// AGM of `(1, k′)`; `E` comes from the side sum `Σ 2^{n−1} cₙ²` with `c₀ = k`.
fn agm(k: f64, k_prime: f64) -> Result<EllipticPair> {
    let mut a = 1.0_f64;
    let mut b = k_prime;
    let mut weight = 0.5;
    let mut side_sum = weight * k * k;
    for _ in 0..AGM_MAX_ITER {
        let gap = a - b;
        // f64 cannot always resolve 1e-16 relative; one ulp of agreement is the floor.
        if gap.abs() <= AGM_REL_TOL * a || gap.abs() <= f64::EPSILON * a {
            let big_k = FRAC_PI_2 / a;
            return Ok(EllipticPair { big_k, big_e: big_k * (1.0 - side_sum) });
        }
        let c = 0.5 * gap;
        let next_a = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next_a;
        weight *= 2.0;
        side_sum += weight * c * c;
    }
    Err(Error::NonConvergence(format!(
        "AGM did not converge in {AGM_MAX_ITER} iterations for k = {k}"
    )))
}

/// `K(k)` for `0 ≤ k ≤ 1 − 1e-12`.
pub fn ellip_k(k: f64) -> Result<f64> {
    EllipticModulus::new(k)?.complete_k()
}

/// `E(k)` for `0 ≤ k ≤ 1`.
pub fn ellip_e(k: f64) -> Result<f64> {
    EllipticModulus::new(k)?.complete_e()
}

/// `(dK/dk, dE/dk)` from the closed forms
/// `dK/dk = E/(k k′²) − K/k` and `dE/dk = (E − K)/k`.
///
/// Undefined at `k = 0`, where both formulas divide by `k`; the caller owns
/// that limit.
pub fn ellip_derivatives(m: &EllipticModulus) -> Result<(f64, f64)> {
    if m.k() == 0.0 {
        return Err(Error::Domain("elliptic derivatives are not evaluated at k = 0".into()));
    }
    let EllipticPair { big_k, big_e } = m.pair()?;
    let k = m.k();
    let kp2 = m.k_prime() * m.k_prime();
    Ok((big_e / (k * kp2) - big_k / k, (big_e - big_k) / k))
}

/// Both sides of the Gauss transformation identities, for testing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussTransform {
    pub k_lhs: f64,
    pub k_rhs: f64,
    pub e_lhs: f64,
    pub e_rhs: f64,
}

impl GaussTransform {
    pub fn k_residual(&self) -> f64 {
        (self.k_lhs - self.k_rhs).abs()
    }

    pub fn e_residual(&self) -> f64 {
        (self.e_lhs - self.e_rhs).abs()
    }
}

/// `K(k) = (1 + k₁)K(k₁)` and `E(k) = (1 + k′)E(k₁) − k′(1 + k₁)K(k₁)`.
pub fn gauss_transform(m: &EllipticModulus) -> Result<GaussTransform> {
    if m.k() == 0.0 {
        return Err(Error::Domain("Gauss transformation needs k > 0".into()));
    }
    let lhs = m.pair()?;
    let k1 = m.k1();
    let rhs = EllipticModulus::new(k1)?.pair()?;
    let kp = m.k_prime();
    Ok(GaussTransform {
        k_lhs: lhs.big_k,
        k_rhs: (1.0 + k1) * rhs.big_k,
        e_lhs: lhs.big_e,
        e_rhs: (1.0 + kp) * rhs.big_e - kp * (1.0 + k1) * rhs.big_k,
    })
}
