//! Self-check suite behind `su2w check`. Every section prints one
//! `PASS`/`FAIL` line; randomized sections draw from a seeded ChaCha stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use su2w_core::bounds::{classical_measurement_bound, classical_state_bounds, qmax, violation_report, QmaxConfig};
use su2w_core::spin::max_abs_diff;
use su2w_core::squeezing::evaluate_criteria;
use su2w_core::{
    classical_state_bound, coherent_identity_check, coherent_state, integrate_husimi, intelligent_state,
    measurement_statistics, spin_matrices, CMatrix, DensityOperator, Direction, KetState, SphereDirection, SpinJ, C64,
};

use crate::format::fmt_num;

struct Section {
    name: &'static str,
    ok: bool,
    detail: String,
}

/// Runs every section; returns the report and whether all passed.
pub fn run_checks(seed: u64) -> (String, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sections = [
        commutators(),
        husimi_normalization(&mut rng),
        coherent_identity(&mut rng),
        bound_identities(),
        intelligent_states(),
        coherent_mixtures(&mut rng),
    ];
    let mut text = String::new();
    for s in &sections {
        let tag = if s.ok { "PASS" } else { "FAIL" };
        text.push_str(&format!("{tag} {}: {}\n", s.name, s.detail));
    }
    let ok = sections.iter().all(|s| s.ok);
    text.push_str(if ok {
        "all checks passed\n"
    } else {
        "some checks failed\n"
    });
    (text, ok)
}

fn commutators() -> Section {
    let mut worst = 0.0f64;
    for tj in 0..=100 {
        let s = spin_matrices(SpinJ::from_twice(tj));
        let i = C64::new(0.0, 1.0);
        let comm = |a: &CMatrix, b: &CMatrix| a * b - b * a;
        worst = worst
            .max(max_abs_diff(&comm(&s.j1, &s.j2), &(&s.j3 * i)))
            .max(max_abs_diff(&comm(&s.j2, &s.j3), &(&s.j1 * i)))
            .max(max_abs_diff(&comm(&s.j3, &s.j1), &(&s.j2 * i)));
        let d = s.j1.nrows();
        let cas = CMatrix::identity(d, d) * C64::new(SpinJ::from_twice(tj).casimir(), 0.0);
        worst = worst.max(max_abs_diff(&s.casimir(), &cas));
    }
    Section {
        name: "commutators",
        ok: worst < 1e-12,
        detail: format!("max residual {} for j <= 50", fmt_num(worst)),
    }
}

fn random_hermitian(rng: &mut ChaCha8Rng, d: usize) -> CMatrix {
    let a = CMatrix::from_fn(d, d, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    (&a + a.adjoint()) * C64::new(0.5, 0.0)
}

fn random_direction(rng: &mut ChaCha8Rng) -> Direction {
    loop {
        let v: [f64; 3] = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-3 && n2 <= 1.0 {
            return Direction::normalize(v).expect("nonzero vector");
        }
    }
}

fn random_omega(rng: &mut ChaCha8Rng) -> SphereDirection {
    let c: f64 = rng.random_range(-1.0..1.0);
    SphereDirection::wrapped(c.acos(), rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
}

fn husimi_normalization(rng: &mut ChaCha8Rng) -> Section {
    let mut worst = 0.0f64;
    for tj in [6u32, 20, 30] {
        let j = SpinJ::from_twice(tj);
        for _ in 0..20 {
            let a = random_hermitian(rng, j.dim());
            let trace: f64 = a.diagonal().iter().map(|z| z.re).sum();
            match integrate_husimi(&a, j) {
                Ok(v) => worst = worst.max((v - trace).abs()),
                Err(_) => worst = f64::INFINITY,
            }
        }
    }
    Section {
        name: "husimi normalization",
        ok: worst < 1e-9,
        detail: format!(
            "max |integral Q - tr A| {} over 60 random A, j in {{3, 10, 15}}",
            fmt_num(worst)
        ),
    }
}

fn coherent_identity(rng: &mut ChaCha8Rng) -> Section {
    let mut worst = 0.0f64;
    for tj in 0..=20 {
        for _ in 0..10 {
            worst = worst.max(coherent_identity_check(
                SpinJ::from_twice(tj),
                &random_direction(rng),
                random_omega(rng),
            ));
        }
    }
    Section {
        name: "coherent second moments",
        ok: worst < 1e-10,
        detail: format!("max residual {} for j <= 10", fmt_num(worst)),
    }
}

fn bound_identities() -> Section {
    let cfg = QmaxConfig::default();
    let (mut value_err, mut loc_err) = (0.0f64, 0.0f64);
    for tj in 1..=20u32 {
        let j = SpinJ::from_twice(tj);
        for m in j.ms() {
            let rho = KetState::basis(j, m).expect("m enumerated from j").to_density();
            let state_bound = classical_state_bound(j, m).expect("m enumerated from j");
            match classical_measurement_bound(&rho, 1.0, &cfg) {
                Ok(b) => value_err = value_err.max((b - state_bound).abs()),
                Err(_) => value_err = f64::INFINITY,
            }
            if m.twice().unsigned_abs() < tj {
                let t = (qmax(&rho, &cfg).location.theta() / 2.0).tan().powi(2);
                let want = (j.j() - m.value()) / (j.j() + m.value());
                loc_err = loc_err.max((t - want).abs() / (1.0 + want));
            }
        }
    }
    Section {
        name: "bound identities",
        ok: value_err < 1e-10 && loc_err < 1e-6,
        detail: format!(
            "state vs measurement bound {}, maximizer location {} for j <= 10",
            fmt_num(value_err),
            fmt_num(loc_err)
        ),
    }
}

fn intelligent_states() -> Section {
    let (mut residual, mut agreement) = (0.0f64, 0.0f64);
    for jj in [1u32, 2, 5, 10] {
        for k in 1..=10 {
            match intelligent_state(SpinJ::from_int(jj), k as f64 / 10.0) {
                Ok(r) => {
                    residual = residual.max(r.residual);
                    agreement = agreement.max(r.jacobi_agreement);
                }
                Err(_) => residual = f64::INFINITY,
            }
        }
    }
    Section {
        name: "intelligent states",
        ok: residual < 1e-9 && agreement < 1e-7,
        detail: format!(
            "max residual {}, closed-form deviation {}",
            fmt_num(residual),
            fmt_num(agreement)
        ),
    }
}

fn coherent_mixtures(rng: &mut ChaCha8Rng) -> Section {
    let mut violations = 0usize;
    let mut squeezed = 0usize;
    for _ in 0..200 {
        let j = SpinJ::from_twice(rng.random_range(1..=20));
        let terms = rng.random_range(1..=5);
        let parts: Vec<(f64, KetState)> = (0..terms)
            .map(|_| (rng.random_range(0.05..1.0), coherent_state(j, random_omega(rng))))
            .collect();
        let u = random_direction(rng);
        let Ok(rho) = DensityOperator::mixture(j, &parts) else {
            violations += 1;
            continue;
        };
        let bad = measurement_statistics(&rho, &u)
            .and_then(|p| violation_report(j, &p, &classical_state_bounds(j), 1e-10))
            .map_or(true, |r| r.iter().any(|x| x.violated));
        violations += bad as usize;
        if let Ok(v) = evaluate_criteria(&rho) {
            if let Some(c) = v.criteria() {
                squeezed += (c.any_satisfied() || c.min_perp_variance < j.j() / 2.0 - 1e-9) as usize;
            }
        }
    }
    Section {
        name: "coherent mixtures",
        ok: violations == 0 && squeezed == 0,
        detail: format!("{violations} bound violations and {squeezed} squeezed among 200 random mixtures, j <= 10"),
    }
}
