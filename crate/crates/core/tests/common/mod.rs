#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use su2w_core::{CMatrix, CVector, DensityOperator, Direction, KetState, SphereDirection, SpinJ, C64};

pub fn random_spin(rng: &mut ChaCha8Rng, max_twice: u32) -> SpinJ {
    SpinJ::from_twice(rng.random_range(1..=max_twice))
}

pub fn random_ket(rng: &mut ChaCha8Rng, j: SpinJ) -> KetState {
    let amps = CVector::from_fn(j.dim(), |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    KetState::normalized(j, amps).unwrap()
}

pub fn random_direction(rng: &mut ChaCha8Rng) -> Direction {
    loop {
        let v = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let n = v.iter().map(|x: &f64| x * x).sum::<f64>();
        if n > 1e-3 && n <= 1.0 {
            return Direction::normalize(v).unwrap();
        }
    }
}

pub fn random_omega(rng: &mut ChaCha8Rng) -> SphereDirection {
    let cos_t: f64 = rng.random_range(-1.0..1.0);
    SphereDirection::wrapped(
        cos_t.acos(),
        rng.random_range(-std::f64::consts::PI..std::f64::consts::PI),
    )
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, j: SpinJ) -> CMatrix {
    let d = j.dim();
    let a = CMatrix::from_fn(d, d, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    (&a + a.adjoint()) * C64::new(0.5, 0.0)
}

/// Convex combination of `terms` coherent states with random weights.
pub fn random_coherent_mixture(rng: &mut ChaCha8Rng, j: SpinJ, terms: usize) -> DensityOperator {
    let parts: Vec<(f64, KetState)> = (0..terms)
        .map(|_| {
            (
                rng.random_range(0.05..1.0),
                su2w_core::coherent_state(j, random_omega(rng)),
            )
        })
        .collect();
    DensityOperator::mixture(j, &parts).unwrap()
}
