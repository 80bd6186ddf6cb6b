//! SU(2) squeezing criteria and the coherent-state second-moment identity.
//!
//! All three criteria compare the smallest variance of a spin component
//! orthogonal to the mean spin `⟨j⟩` against a reference level:
//!
//! | criterion        | squeezed when                    |
//! |------------------|----------------------------------|
//! | coherent (i)     | `(Δj_⊥)² < j/2`                  |
//! | interferometric (ii) | `(Δj_⊥)² / |⟨j⟩|² < 1/(2j)`  |
//! | uncertainty (iii)| `(Δj_⊥)² < |⟨j⟩|/2`              |
//!
//! Since `|⟨j⟩| ≤ j` the variance thresholds are ordered
//! `|⟨j⟩|²/2j ≤ |⟨j⟩|/2 ≤ j/2`, hence (ii) ⇒ (iii) ⇒ (i).

use crate::coherent::{coherent_state, SphereDirection};
use crate::error::{Error, Result};
use crate::spin::{
    clamp_nonnegative, component_matrix, expectation, norm3, spin_matrices, variance, CMatrix, DensityOperator,
    Direction, SpinJ, C64,
};

/// `|⟨j⟩|` below this counts as zero mean spin.
pub const DEFAULT_TOL_MEAN: f64 = 1e-9;
/// Margin by which a variance must undercut a threshold to count as squeezed.
pub const SQUEEZING_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Criterion {
    /// Left-hand side as the criterion is usually written.
    pub value: f64,
    /// Right-hand side in the same units as `value`.
    pub threshold: f64,
    pub satisfied: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Criteria {
    pub min_perp_variance: f64,
    pub min_perp_direction: Direction,
    /// Variance along the transverse direction orthogonal to `min_perp_direction`.
    pub max_perp_variance: f64,
    /// (i) `(Δj_⊥)² < j/2`.
    pub coherent: Criterion,
    /// (ii) `(Δj_⊥)²/|⟨j⟩|² < 1/(2j)`.
    pub interferometric: Criterion,
    /// (iii) `(Δj_⊥)² < |⟨j⟩|/2`.
    pub uncertainty: Criterion,
}

impl Criteria {
    /// Checks (ii) ⇒ (iii) ⇒ (i).
    pub fn implications_hold(&self) -> bool {
        (!self.interferometric.satisfied || self.uncertainty.satisfied)
            && (!self.uncertainty.satisfied || self.coherent.satisfied)
    }

    pub fn any_satisfied(&self) -> bool {
        self.coherent.satisfied || self.interferometric.satisfied || self.uncertainty.satisfied
    }

    pub fn all_satisfied(&self) -> bool {
        self.coherent.satisfied && self.interferometric.satisfied && self.uncertainty.satisfied
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SqueezingStatus {
    /// `|⟨j⟩|` vanished; no transverse plane exists.
    Undefined,
    Defined(Criteria),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezingVerdict {
    pub j: SpinJ,
    pub mean_spin: [f64; 3],
    pub mean_length: f64,
    /// Variances of `j₁`, `j₂`, `j₃`, reported in every case.
    pub axis_variances: [f64; 3],
    pub status: SqueezingStatus,
}

impl SqueezingVerdict {
    pub fn criteria(&self) -> Option<&Criteria> {
        match &self.status {
            SqueezingStatus::Defined(c) => Some(c),
            SqueezingStatus::Undefined => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self.status, SqueezingStatus::Defined(_))
    }
}

/// `⟨j⟩ = (⟨j₁⟩, ⟨j₂⟩, ⟨j₃⟩)`.
pub fn mean_spin(rho: &DensityOperator) -> [f64; 3] {
    let s = spin_matrices(rho.j());
    let mut out = [0.0; 3];
    for (o, a) in out.iter_mut().zip(s.axes()) {
        *o = expectation(rho, a).expect("dimensions match");
    }
    out
}

pub fn axis_variances(rho: &DensityOperator) -> Result<[f64; 3]> {
    let s = spin_matrices(rho.j());
    Ok([variance(rho, &s.j1)?, variance(rho, &s.j2)?, variance(rho, &s.j3)?])
}

/// Orthonormal `e₁, e₂` spanning the plane orthogonal to `n`.
fn transverse_frame(n: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let helper = if n[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let e1 = cross(n, helper);
    let len = norm3(e1);
    let e1 = [e1[0] / len, e1[1] / len, e1[2] / len];
    (e1, cross(n, e1))
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Symmetrized transverse covariance `½⟨{j_a, j_b}⟩ − ⟨j_a⟩⟨j_b⟩`, returned as
/// its eigen-decomposition `(λ_min, direction_min, λ_max)`.
fn transverse_covariance(rho: &DensityOperator, mean: [f64; 3]) -> Result<(f64, Direction, f64)> {
    let len = norm3(mean);
    let n = [mean[0] / len, mean[1] / len, mean[2] / len];
    let (e1, e2) = transverse_frame(n);
    let j = rho.j();
    let a1 = component_matrix(j, &Direction::new(e1)?);
    let a2 = component_matrix(j, &Direction::new(e2)?);
    let m1 = expectation(rho, &a1)?;
    let m2 = expectation(rho, &a2)?;
    let c11 = expectation(rho, &(&a1 * &a1))? - m1 * m1;
    let c22 = expectation(rho, &(&a2 * &a2))? - m2 * m2;
    let anti: CMatrix = (&a1 * &a2 + &a2 * &a1) * C64::new(0.5, 0.0);
    let c12 = expectation(rho, &anti)? - m1 * m2;

    let mid = 0.5 * (c11 + c22);
    let rad = (0.25 * (c11 - c22) * (c11 - c22) + c12 * c12).sqrt();
    let (lo, hi) = (mid - rad, mid + rad);
    // eigenvector of the smaller eigenvalue, taking the better-conditioned form
    let (v1, v2) = {
        let p = (c12, lo - c11);
        let q = (lo - c22, c12);
        let (a, b) = if p.0.hypot(p.1) >= q.0.hypot(q.1) { p } else { q };
        let l = a.hypot(b);
        if l < 1e-300 {
            if c11 <= c22 {
                (1.0, 0.0)
            } else {
                (0.0, 1.0)
            }
        } else {
            (a / l, b / l)
        }
    };
    let dir = Direction::normalize([
        v1 * e1[0] + v2 * e2[0],
        v1 * e1[1] + v2 * e2[1],
        v1 * e1[2] + v2 * e2[2],
    ])?;
    Ok((
        clamp_nonnegative(lo, "variance")?,
        dir,
        clamp_nonnegative(hi, "variance")?,
    ))
}

/// Smallest variance of a component orthogonal to `⟨j⟩`, and its direction.
pub fn min_perp_variance(rho: &DensityOperator) -> Result<(f64, Direction)> {
    min_perp_variance_with(rho, DEFAULT_TOL_MEAN)
}

pub fn min_perp_variance_with(rho: &DensityOperator, tol_mean: f64) -> Result<(f64, Direction)> {
    let mean = mean_spin(rho);
    if norm3(mean) < tol_mean {
        return Err(Error::UndefinedMeanSpin);
    }
    let (v, d, _) = transverse_covariance(rho, mean)?;
    Ok((v, d))
}

pub fn evaluate_criteria(rho: &DensityOperator) -> Result<SqueezingVerdict> {
    evaluate_criteria_with(rho, DEFAULT_TOL_MEAN)
}

pub fn evaluate_criteria_with(rho: &DensityOperator, tol_mean: f64) -> Result<SqueezingVerdict> {
    let j = rho.j();
    let mean = mean_spin(rho);
    let len = norm3(mean);
    let axis_variances = axis_variances(rho)?;
    let status = if len < tol_mean {
        SqueezingStatus::Undefined
    } else {
        let (v, dir, v_max) = transverse_covariance(rho, mean)?;
        let jv = j.j();
        let thresh_i = jv / 2.0;
        let thresh_ii = len * len / (2.0 * jv);
        let thresh_iii = len / 2.0;
        SqueezingStatus::Defined(Criteria {
            min_perp_variance: v,
            min_perp_direction: dir,
            max_perp_variance: v_max,
            coherent: Criterion {
                value: v,
                threshold: thresh_i,
                satisfied: v < thresh_i - SQUEEZING_TOL,
            },
            interferometric: Criterion {
                value: v / (len * len),
                threshold: 1.0 / (2.0 * jv),
                satisfied: v < thresh_ii - SQUEEZING_TOL,
            },
            uncertainty: Criterion {
                value: v,
                threshold: thresh_iii,
                satisfied: v < thresh_iii - SQUEEZING_TOL,
            },
        })
    };
    Ok(SqueezingVerdict {
        j,
        mean_spin: mean,
        mean_length: len,
        axis_variances,
        status,
    })
}

/// `|⟨j,Ω|j_u²|j,Ω⟩ − j/2 − (2j−1)/(2j) ⟨j,Ω|j_u|j,Ω⟩²|`, which vanishes for
/// every coherent state and component.
pub fn coherent_identity_check(j: SpinJ, u: &Direction, omega: SphereDirection) -> f64 {
    let psi = coherent_state(j, omega);
    let a = component_matrix(j, u);
    let first = psi.matrix_element(&a).expect("dimensions match").re;
    let second = psi.matrix_element(&(&a * &a)).expect("dimensions match").re;
    if j.twice() == 0 {
        return second.abs();
    }
    let jv = j.j();
    (second - jv / 2.0 - (2.0 * jv - 1.0) / (2.0 * jv) * first * first).abs()
}
