//! SU(2) coherent states `|j, Ω⟩`, their overlaps with `|j, m⟩`, the Husimi
//! Q function and a sphere quadrature that integrates Q exactly.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::special::{gauss_legendre, ln_binomial, ln_pow};
use crate::spin::{check_hermitian, check_square, CMatrix, CVector, Direction, HalfInteger, KetState, SpinJ, C64};

/// A point `Ω = (θ, φ)` on the unit sphere, `θ ∈ [0, π]`, `φ ∈ (−π, π]`.
///
/// `φ = −π` is folded onto `π`, and at the poles `φ` is set to zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereDirection {
    theta: f64,
    phi: f64,
}

impl SphereDirection {
    pub const NORTH: SphereDirection = SphereDirection { theta: 0.0, phi: 0.0 };
    pub const SOUTH: SphereDirection = SphereDirection { theta: PI, phi: 0.0 };

    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::AngleOutOfRange(format!("theta = {theta} not in [0, π]")));
        }
        if !(-PI..=PI).contains(&phi) {
            return Err(Error::AngleOutOfRange(format!("phi = {phi} not in (−π, π]")));
        }
        let phi = if theta == 0.0 || theta == PI {
            0.0
        } else if phi == -PI {
            PI
        } else {
            phi
        };
        Ok(SphereDirection { theta, phi })
    }

    /// Like [`SphereDirection::new`] but wraps `φ` into `(−π, π]` and clamps `θ`.
    pub fn wrapped(theta: f64, phi: f64) -> Self {
        let theta = theta.clamp(0.0, PI);
        let mut phi = phi.rem_euclid(2.0 * PI);
        if phi > PI {
            phi -= 2.0 * PI;
        }
        SphereDirection::new(theta, phi).expect("wrapped angles are in range")
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn unit_vector(&self) -> Direction {
        Direction::from_angles(self.theta, self.phi)
    }
}

/// `|c_m|` of the coherent state at polar angle `θ`, indexed by `m` ascending.
pub(crate) fn coherent_magnitudes(j: SpinJ, theta: f64) -> Vec<f64> {
    let tj = j.twice() as u64;
    let (s, c) = ((theta / 2.0).sin().abs(), (theta / 2.0).cos().abs());
    (0..=tj)
        .map(|k| {
            // k = j + m, tj − k = j − m
            let ln = 0.5 * ln_binomial(tj, k) + ln_pow(s, (tj - k) as f64) + ln_pow(c, k as f64);
            ln.exp()
        })
        .collect()
}

/// `|j, Ω⟩ = Σ_m √C(2j, j+m) sin^{j−m}(θ/2) cos^{j+m}(θ/2) e^{−i(j+m)φ} |j, m⟩`.
pub fn coherent_state(j: SpinJ, omega: SphereDirection) -> KetState {
    let mags = coherent_magnitudes(j, omega.theta);
    let amps = CVector::from_iterator(
        j.dim(),
        mags.iter()
            .enumerate()
            .map(|(k, &r)| C64::from_polar(r, -(k as f64) * omega.phi)),
    );
    KetState::new(j, amps).expect("coherent amplitudes are normalized")
}

/// `|⟨j, m|j, Ω⟩|² = C(2j, m+j) sin^{2(j−m)}(θ/2) cos^{2(j+m)}(θ/2)`.
pub fn overlap_prob(j: SpinJ, m: HalfInteger, theta: f64) -> Result<f64> {
    let idx = j.index_of(m)?;
    let tj = j.twice() as u64;
    let k = idx as u64;
    let (s, c) = ((theta / 2.0).sin().abs(), (theta / 2.0).cos().abs());
    let ln = ln_binomial(tj, k) + ln_pow(s, 2.0 * (tj - k) as f64) + ln_pow(c, 2.0 * k as f64);
    Ok(ln.exp())
}

/// `Q(Ω) = (2j+1)/(4π) ⟨j, Ω|A|j, Ω⟩` for Hermitian `A`.
pub fn husimi_q(a: &CMatrix, j: SpinJ, omega: SphereDirection) -> Result<f64> {
    check_square(j, a)?;
    check_hermitian(a)?;
    Ok(husimi_prefactor(j) * coherent_expectation(a, j, omega))
}

pub fn husimi_prefactor(j: SpinJ) -> f64 {
    j.dim() as f64 / (4.0 * PI)
}

/// `⟨j, Ω|A|j, Ω⟩` (real part) without validation.
pub(crate) fn coherent_expectation(a: &CMatrix, j: SpinJ, omega: SphereDirection) -> f64 {
    let psi = coherent_state(j, omega);
    let v = psi.amplitudes();
    v.dotc(&(a * v)).re
}

/// Product rule on the sphere: Gauss–Legendre in `cos θ` of order `2j + 2`
/// times `4j + 4` equally spaced `φ`. Weights sum to `4π`.
///
/// Integrands `⟨j, Ω|A|j, Ω⟩` are polynomials of degree `≤ 2j` in `cos θ`
/// times trigonometric polynomials of degree `≤ 2j` in `φ`, so the rule is
/// exact for them.
pub fn sphere_quadrature(j: SpinJ) -> Vec<(SphereDirection, f64)> {
    let n_theta = j.twice() as usize + 2;
    let n_phi = 2 * j.twice() as usize + 4;
    let (xs, ws) = gauss_legendre(n_theta);
    let dphi = 2.0 * PI / n_phi as f64;
    let mut rule = Vec::with_capacity(n_theta * n_phi);
    for (x, w) in xs.iter().zip(&ws) {
        let theta = x.clamp(-1.0, 1.0).acos();
        for k in 0..n_phi {
            let phi = -PI + dphi * (k + 1) as f64;
            rule.push((SphereDirection::wrapped(theta, phi), w * dphi));
        }
    }
    rule
}

/// `∫ d²Ω Q(Ω)` evaluated with [`sphere_quadrature`].
pub fn integrate_husimi(a: &CMatrix, j: SpinJ) -> Result<f64> {
    check_square(j, a)?;
    check_hermitian(a)?;
    let pref = husimi_prefactor(j);
    Ok(sphere_quadrature(j)
        .iter()
        .map(|(omega, w)| w * pref * coherent_expectation(a, j, *omega))
        .sum())
}
