//! State families with known nonclassical (or classical) behavior:
//! phase-averaged coherent states, NOON/cat states, the `|j,j⟩ + |j,0⟩`
//! superposition and SU(2) intelligent states.

use std::f64::consts::PI;

use nalgebra::SVD;

use crate::error::{Error, Result};
use crate::special::{ln_binomial, scaled_symmetric_jacobi};
use crate::spin::{rotation, spin_matrices, CMatrix, CVector, DensityOperator, Direction, KetState, SpinJ, C64};

/// `(2π)⁻¹ ∫ dφ |j, π/2, φ⟩⟨j, π/2, φ|`, i.e. `diag(C(2j, j+m) / 2^{2j})`.
pub fn phase_averaged_equatorial(j: SpinJ) -> DensityOperator {
    let tj = j.twice() as u64;
    let diag = CVector::from_iterator(
        j.dim(),
        (0..=tj).map(|k| C64::new((ln_binomial(tj, k) - tj as f64 * std::f64::consts::LN_2).exp(), 0.0)),
    );
    DensityOperator::new(j, CMatrix::from_diagonal(&diag)).expect("binomial weights form a density operator")
}

/// NOON state `(|j, j⟩ + |j, −j⟩)/√2`.
pub fn cat_state(j: SpinJ) -> Result<KetState> {
    if j.twice() == 0 {
        return Err(Error::Domain("cat state needs j > 0".into()));
    }
    let mut amps = CVector::zeros(j.dim());
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[0] = h;
    amps[j.dim() - 1] = h;
    KetState::new(j, amps)
}

/// `α|j, j⟩ + β|j, 0⟩` for integer `j ≥ 1` and `|α|² + |β|² = 1`.
pub fn partial_superposition(j: SpinJ, alpha: C64, beta: C64) -> Result<KetState> {
    if !j.is_integer() || j.twice() == 0 {
        return Err(Error::Domain(format!("superposition needs integer j >= 1, got {j}")));
    }
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized(norm));
    }
    let mut amps = CVector::zeros(j.dim());
    amps[j.dim() - 1] = alpha;
    amps[j.dim() / 2] = beta;
    KetState::new(j, amps)
}

/// Solution of `(η j₂ + i j₁)|ψ⟩ = 0` with its diagnostics.
#[derive(Clone, Debug)]
pub struct IntelligentStateResult {
    /// State in the `j₃` basis.
    pub state: KetState,
    /// Amplitudes over the `j₁` eigenbasis (columns of `exp(−iπ/2 j₂)`), `m` ascending.
    pub j1_coefficients: CVector,
    pub eta: f64,
    /// `‖(η j₂ + i j₁)ψ‖`.
    pub residual: f64,
    /// Max deviation between `j1_coefficients` and the normalized Jacobi closed form.
    pub jacobi_agreement: f64,
}

impl IntelligentStateResult {
    pub fn density(&self) -> DensityOperator {
        self.state.to_density()
    }
}

/// `U` whose columns are the `j₁` eigenvectors `exp(−iπ/2 j₂)|j, m⟩`.
pub fn j1_basis(j: SpinJ) -> CMatrix {
    rotation(j, &Direction::Y, PI / 2.0)
}

/// Builds the intelligent state as the smallest right singular vector of
/// `η j₂ + i j₁`, fixes the phase so the largest `j₁`-basis amplitude is real
/// positive, and cross-checks against [`jacobi_closed_form`].
///
/// Only `η ∈ (0, 1]` is accepted. For half-integer `j` and `η < 1` the
/// operator is nonsingular and no solution exists.
pub fn intelligent_state(j: SpinJ, eta: f64) -> Result<IntelligentStateResult> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::Domain(format!("eta must lie in (0, 1], got {eta}")));
    }
    if !j.is_integer() && eta < 1.0 {
        return Err(Error::Domain(format!(
            "no intelligent state with eta < 1 exists for half-integer j = {j}"
        )));
    }
    let s = spin_matrices(j);
    let op = &s.j2 * C64::new(eta, 0.0) + &s.j1 * C64::new(0.0, 1.0);

    let svd = SVD::new(op.clone(), false, true);
    let v_t = svd
        .v_t
        .as_ref()
        .ok_or_else(|| Error::Internal("SVD did not return V".into()))?;
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .ok_or_else(|| Error::Internal("empty singular value list".into()))?;
    let null: CVector = v_t.row(idx).adjoint();
    let mut psi = KetState::normalized(j, null)?;

    let basis = j1_basis(j);
    let mut coeffs = basis.adjoint() * psi.amplitudes();
    let (lead, _) = coeffs
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .expect("non-empty state");
    let phase = coeffs[lead].conj() / coeffs[lead].norm();
    coeffs *= phase;
    psi = KetState::new(j, psi.amplitudes() * phase)?;

    let residual = (&op * psi.amplitudes()).norm();
    let closed = jacobi_closed_form(j, eta)?;
    let jacobi_agreement = coeffs
        .iter()
        .zip(&closed)
        .map(|(c, f)| (c - C64::new(*f, 0.0)).norm())
        .fold(0.0, f64::max);

    Ok(IntelligentStateResult {
        state: psi,
        j1_coefficients: coeffs,
        eta,
        residual,
        jacobi_agreement,
    })
}

/// Normalized `j₁`-basis amplitudes
/// `∝ C(2j, j+m)^{−1/2} [4(1−η²)/η²]^{(j+m)/2} P_{j+m}^{(−m,−m)}(1/√(1−η²))`.
///
/// Evaluated through `P_{j+m}^{(−m,−m)}(x) = ((x²−1)/4)^m P_{j−m}^{(m,m)}(x)`
/// for `m > 0`, which turns every amplitude into
/// `C(2j, j+m)^{−1/2} (2/η)^{j−|m|} s^{n} P_{n}^{(|m|,|m|)}(1/s)` with
/// `n = j − |m|`, `s = √(1−η²)`. That form has positive parameters and is
/// finite at `η = 1`.
pub fn jacobi_closed_form(j: SpinJ, eta: f64) -> Result<Vec<f64>> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::Domain(format!("eta must lie in (0, 1], got {eta}")));
    }
    let tj = j.twice() as u64;
    if eta == 1.0 {
        // |j, −j⟩ seen from the j₁ axis: binomial weights, valid for any j
        let half_ln = -(tj as f64) * std::f64::consts::LN_2 / 2.0;
        return Ok((0..=tj).map(|k| (0.5 * ln_binomial(tj, k) + half_ln).exp()).collect());
    }
    if !j.is_integer() {
        return Err(Error::Domain(format!("closed form needs integer j, got {j}")));
    }
    let jj = tj / 2;
    let s = (1.0 - eta * eta).max(0.0).sqrt();
    let ln_two_over_eta = (2.0 / eta).ln();
    let logs: Vec<f64> = (0..=tj)
        .map(|k| {
            let abs_m = (k as i64 - jj as i64).unsigned_abs();
            let n = jj - abs_m;
            let q = scaled_symmetric_jacobi(abs_m as u32, n as u32, s);
            -0.5 * ln_binomial(tj, k) + n as f64 * ln_two_over_eta + q.ln()
        })
        .collect();
    let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let raw: Vec<f64> = logs.iter().map(|l| (l - max).exp()).collect();
    let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok(raw.into_iter().map(|x| x / norm).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::{coherent_state, SphereDirection};
    use crate::spin::{max_abs_diff, measurement_statistics, HalfInteger};
    use approx::assert_abs_diff_eq;

    #[test]
    fn phase_averaged_spin_one() {
        let rho = phase_averaged_equatorial(SpinJ::from_int(1));
        let m = rho.matrix();
        assert_abs_diff_eq!(m[(0, 0)].re, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(1, 1)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(2, 2)].re, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn phase_average_by_quadrature() {
        // trapezoid in φ is exact for the band-limited coherent projectors
        for tj in [1u32, 4, 7, 20] {
            let j = SpinJ::from_twice(tj);
            let n = 2 * tj as usize + 4;
            let d = j.dim();
            let mut acc = CMatrix::zeros(d, d);
            for k in 0..n {
                let phi = -PI + 2.0 * PI * (k + 1) as f64 / n as f64;
                let v = coherent_state(j, SphereDirection::new(PI / 2.0, phi).unwrap())
                    .amplitudes()
                    .clone();
                acc += &v * v.adjoint() / C64::new(n as f64, 0.0);
            }
            assert!(max_abs_diff(&acc, phase_averaged_equatorial(j).matrix()) < 1e-10);
        }
    }

    #[test]
    fn spin_half_cat_is_coherent() {
        let j = SpinJ::from_twice(1);
        let cat = cat_state(j).unwrap();
        let coh = coherent_state(j, SphereDirection::new(PI / 2.0, 0.0).unwrap());
        assert_abs_diff_eq!(cat.inner(&coh).unwrap().norm(), 1.0, epsilon = 1e-14);
        assert!(cat_state(SpinJ::from_twice(0)).is_err());
    }

    #[test]
    fn cat_statistics_double_coherent_values() {
        let j = SpinJ::from_int(10);
        let p = measurement_statistics(&cat_state(j).unwrap().to_density(), &Direction::X).unwrap();
        let top = KetState::basis(j, HalfInteger::from_int(10)).unwrap().to_density();
        let q = measurement_statistics(&top, &Direction::X).unwrap();
        for (k, (pk, qk)) in p.iter().zip(&q).enumerate() {
            if k % 2 == 1 {
                assert!(*pk < 1e-12);
            } else {
                assert_abs_diff_eq!(*pk, 2.0 * qk, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn superposition_validation() {
        let a = C64::new(0.6, 0.0);
        let b = C64::new(0.0, 0.8);
        assert!(partial_superposition(SpinJ::from_int(4), a, b).is_ok());
        assert!(partial_superposition(SpinJ::from_twice(5), a, b).is_err());
        assert!(partial_superposition(SpinJ::from_int(0), a, b).is_err());
        assert!(partial_superposition(SpinJ::from_int(4), a, a).is_err());
        let top = partial_superposition(SpinJ::from_int(3), C64::new(1.0, 0.0), C64::new(0.0, 0.0)).unwrap();
        assert_eq!(
            top,
            KetState::basis(SpinJ::from_int(3), HalfInteger::from_int(3)).unwrap()
        );
    }

    #[test]
    fn intelligent_state_domain() {
        assert!(intelligent_state(SpinJ::from_int(3), 0.0).is_err());
        assert!(intelligent_state(SpinJ::from_int(3), 1.5).is_err());
        assert!(intelligent_state(SpinJ::from_int(3), -0.2).is_err());
        assert!(intelligent_state(SpinJ::from_twice(5), 0.5).is_err());
        assert!(intelligent_state(SpinJ::from_twice(5), 1.0).is_ok());
    }

    #[test]
    fn intelligent_state_residual_and_closed_form() {
        for jj in [1u32, 2, 5, 10, 20] {
            for eta in [0.1, 0.3, 0.5, 0.8, 0.95, 1.0] {
                let r = intelligent_state(SpinJ::from_int(jj), eta).unwrap();
                assert!(r.residual < 1e-9, "j={jj} eta={eta} residual={}", r.residual);
                assert!(
                    r.jacobi_agreement < 1e-7,
                    "j={jj} eta={eta} agreement={}",
                    r.jacobi_agreement
                );
            }
        }
    }

    #[test]
    fn intelligent_state_at_eta_one_is_lowest_weight() {
        for tj in [1u32, 2, 5, 8] {
            let j = SpinJ::from_twice(tj);
            let r = intelligent_state(j, 1.0).unwrap();
            let bottom = KetState::basis(j, HalfInteger::from_twice(-(tj as i32))).unwrap();
            assert_abs_diff_eq!(r.state.inner(&bottom).unwrap().norm(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn j1_basis_diagonalizes_j1() {
        let j = SpinJ::from_twice(9);
        let u = j1_basis(j);
        let d = u.adjoint() * spin_matrices(j).j1 * &u;
        let expected = CMatrix::from_diagonal(&CVector::from_iterator(
            j.dim(),
            j.ms().map(|m| C64::new(m.value(), 0.0)),
        ));
        assert!(max_abs_diff(&d, &expected) < 1e-12);
    }

    /// `P_n^{(α,β)}(x)` from the explicit finite sum with generalized
    /// binomials, valid for negative integer parameters.
    fn jacobi_explicit(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
        let gbinom = |top: f64, k: u32| -> f64 { (0..k).fold(1.0, |acc, i| acc * (top - i as f64) / (i + 1) as f64) };
        (0..=n)
            .map(|s| {
                gbinom(n as f64 + alpha, n - s)
                    * gbinom(n as f64 + beta, s)
                    * ((x - 1.0) / 2.0).powi(s as i32)
                    * ((x + 1.0) / 2.0).powi((n - s) as i32)
            })
            .sum()
    }

    #[test]
    fn closed_form_matches_negative_parameter_sum() {
        // evaluate the amplitudes with (−m, −m) directly and compare
        for jj in [2u32, 4, 6] {
            for eta in [0.3f64, 0.6, 0.9] {
                let j = SpinJ::from_int(jj);
                let x = 1.0 / (1.0 - eta * eta).sqrt();
                let raw: Vec<f64> = j
                    .ms()
                    .map(|m| {
                        let mv = m.value();
                        let n = (jj as f64 + mv) as u32;
                        let c = crate::special::binomial(2 * jj as u64, n as u64);
                        c.powf(-0.5)
                            * (4.0 * (1.0 - eta * eta) / (eta * eta)).powf(n as f64 / 2.0)
                            * jacobi_explicit(n, -mv, -mv, x)
                    })
                    .collect();
                let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
                let closed = jacobi_closed_form(j, eta).unwrap();
                for (r, c) in raw.iter().zip(&closed) {
                    assert_abs_diff_eq!(r / norm, *c, epsilon = 1e-10);
                }
            }
        }
    }
}
