//! Scalar special functions: log-space binomials, Gauss–Legendre nodes and
//! Jacobi polynomials.

use statrs::function::factorial;

/// `ln n!`.
pub fn ln_factorial(n: u64) -> f64 {
    factorial::ln_factorial(n)
}

/// `ln C(n, k)`; `-∞` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    factorial::ln_binomial(n, k.min(n - k))
}

pub fn binomial(n: u64, k: u64) -> f64 {
    ln_binomial(n, k).exp()
}

/// `exponent · ln(base)` with the convention `0⁰ = 1`.
pub fn ln_pow(base: f64, exponent: f64) -> f64 {
    if exponent == 0.0 {
        0.0
    } else {
        exponent * base.ln()
    }
}

/// Gauss–Legendre rule of order `n` on `[-1, 1]`, nodes ascending.
///
/// Exact for polynomials of degree `≤ 2n − 1`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the (i+1)-th largest root
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` from the Bonnet recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

/// Jacobi polynomial `P_n^{(α,β)}(x)` from the standard three-term
/// recurrence. Returns `None` if a leading recurrence coefficient vanishes,
/// which can only happen for negative integer parameter combinations.
pub fn jacobi_p(n: usize, alpha: f64, beta: f64, x: f64) -> Option<f64> {
    let ab = alpha + beta;
    let mut p0 = 1.0;
    if n == 0 {
        return Some(p0);
    }
    let mut p1 = (alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let k = k as f64;
        let a = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0);
        if a == 0.0 {
            return None;
        }
        let b = (2.0 * k + ab - 1.0) * ((2.0 * k + ab) * (2.0 * k + ab - 2.0) * x + alpha * alpha - beta * beta);
        let c = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + ab);
        let p2 = (b * p1 - c * p0) / a;
        p0 = p1;
        p1 = p2;
    }
    Some(p1)
}

/// `s^n · P_n^{(k,k)}(1/s)` for integer `k ≥ 0`.
///
/// This homogenized form stays finite as `s → 0`, where the argument
/// `1/s` diverges but `s^n P_n(1/s)` tends to the leading coefficient.
pub fn scaled_symmetric_jacobi(k: u32, n: u32, s: f64) -> f64 {
    let k = k as f64;
    let mut q0 = 1.0;
    if n == 0 {
        return q0;
    }
    let mut q1 = k + 1.0;
    for m in 2..=n {
        let m = m as f64;
        let q2 =
            ((2.0 * m + 2.0 * k - 1.0) * (m + k) * q1 - (m + k - 1.0) * (m + k) * s * s * q0) / (m * (m + 2.0 * k));
        q0 = q1;
        q1 = q2;
    }
    q1
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Exact binomial in u128 for small arguments.
    fn exact_binomial(n: u64, k: u64) -> u128 {
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc
    }

    #[test]
    fn binomials_match_integers() {
        for n in 0..=60u64 {
            for k in 0..=n {
                let exact = exact_binomial(n, k) as f64;
                assert_relative_eq!(binomial(n, k), exact, max_relative = 1e-12);
            }
        }
        assert_eq!(ln_binomial(3, 5), f64::NEG_INFINITY);
    }

    #[test]
    fn ln_pow_zero_to_zero() {
        assert_eq!(ln_pow(0.0, 0.0), 0.0);
        assert_eq!(ln_pow(0.0, 2.0), f64::NEG_INFINITY);
        assert_relative_eq!(ln_pow(0.5, 3.0), (0.125f64).ln());
    }

    #[test]
    fn gauss_legendre_weights_and_exactness() {
        for n in 1..=60 {
            let (x, w) = gauss_legendre(n);
            let total: f64 = w.iter().sum();
            assert_relative_eq!(total, 2.0, epsilon = 1e-13);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            // ∫ x^{2k} dx = 2/(2k+1), exact for 2k ≤ 2n − 1
            for k in 0..n {
                let integral: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(2 * k as i32)).sum();
                assert_relative_eq!(integral, 2.0 / (2 * k + 1) as f64, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn jacobi_low_degree_closed_forms() {
        let (a, b, x) = (1.5, 0.5, 0.3);
        assert_eq!(jacobi_p(0, a, b, x), Some(1.0));
        assert_relative_eq!(
            jacobi_p(1, a, b, x).unwrap(),
            (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
        );
        // α = β = 0 reduces to Legendre
        let p5 = jacobi_p(5, 0.0, 0.0, x).unwrap();
        assert_relative_eq!(p5, legendre_with_derivative(5, x).0, epsilon = 1e-14);
    }

    #[test]
    fn scaled_form_matches_plain_recurrence() {
        for k in 0..6u32 {
            for n in 0..12u32 {
                for s in [0.2, 0.5, 0.866, 0.99] {
                    let plain = jacobi_p(n as usize, k as f64, k as f64, 1.0 / s).unwrap();
                    let scaled = scaled_symmetric_jacobi(k, n, s);
                    assert_relative_eq!(scaled, s.powi(n as i32) * plain, max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn scaled_form_at_zero_is_leading_coefficient() {
        // leading coefficient of P_n^{(k,k)} is Γ(2n+2k+1) / (2^n n! Γ(n+2k+1))
        for k in 0..4u32 {
            for n in 0..8u32 {
                let lead = (ln_factorial((2 * n + 2 * k) as u64)
                    - (n as f64) * std::f64::consts::LN_2
                    - ln_factorial(n as u64)
                    - ln_factorial((n + 2 * k) as u64))
                .exp();
                assert_relative_eq!(scaled_symmetric_jacobi(k, n, 0.0), lead, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn direct_recurrence_breaks_for_negative_parameters() {
        // n = 2m makes the leading coefficient vanish for (α,β) = (−m,−m)
        assert_eq!(jacobi_p(4, -2.0, -2.0, 1.5), None);
    }
}
