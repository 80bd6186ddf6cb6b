//! Classical upper bounds on outcome probabilities.
//!
//! Two families of bounds are provided. The *state* bound caps what any
//! classical state (non-negative, non-singular P function) can assign to an
//! outcome. The *measurement* bound caps what a classical measurement can
//! assign when applied to a given state. A probability above either bound
//! certifies nonclassicality of the state or of the measurement,
//! respectively. Both reduce to maximizing a Husimi function over the
//! sphere, which [`husimi_max`] does numerically.

use std::f64::consts::PI;

use crate::coherent::SphereDirection;
use crate::error::{Error, Result};
use crate::special::{ln_binomial, ln_factorial, ln_pow};
use crate::spin::{check_len, check_square, CMatrix, DensityOperator, HalfInteger, MeasurementElement, SpinJ, C64};

/// Default margin a probability must exceed a bound by to count as a violation.
pub const DEFAULT_TOL_REPORT: f64 = 1e-10;

/// Comparison of one outcome probability with its classical bound.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub m: HalfInteger,
    pub probability: f64,
    pub bound: f64,
    pub violated: bool,
    /// `probability / bound`; `+∞` when the bound is zero and the probability is not.
    pub violation_ratio: f64,
}

/// Settings for [`husimi_max`] and [`qmax`].
#[derive(Clone, Debug, PartialEq)]
pub struct QmaxConfig {
    pub theta_points: usize,
    pub phi_points: usize,
    /// Shift applied to every azimuthal grid node.
    pub phi_offset: f64,
    /// Refinement stops once a full sweep improves the value by less than this.
    pub value_tol: f64,
    pub max_evaluations: usize,
    /// Use the one-dimensional θ search when the matrix is diagonal in `|j, m⟩`.
    pub detect_diagonal: bool,
    pub diagonal_tol: f64,
}

impl Default for QmaxConfig {
    fn default() -> Self {
        QmaxConfig {
            theta_points: 181,
            phi_points: 360,
            phi_offset: 0.0,
            value_tol: 1e-12,
            max_evaluations: 20_000_000,
            detect_diagonal: true,
            diagonal_tol: 1e-14,
        }
    }
}

/// Maximum of `⟨j, Ω|A|j, Ω⟩` over the sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct QmaxResult {
    /// `⟨j, Ω|A|j, Ω⟩` at `location`, without the `(2j+1)/4π` Husimi prefactor.
    pub value: f64,
    pub location: SphereDirection,
    pub evaluations: usize,
    /// Set when the search stopped at `max_evaluations`.
    pub capped: bool,
}

/// `⟨j, Ω|A|j, Ω⟩` as a function of `(θ, φ)`.
///
/// For fixed θ the coherent amplitudes are `a_k(θ) e^{−ikφ}` with `k = j + m`,
/// so the surface is `Σ_k G_k(θ) e^{ikφ}` with `G_k = Σ_{r−c=k} a_r a_c A_rc`.
/// Caching `G` for the current θ makes each φ probe `O(2j)`.
struct HusimiSurface<'a> {
    matrix: &'a CMatrix,
    half_ln_binom: Vec<f64>,
    twice_j: usize,
    theta: f64,
    fourier: Vec<C64>,
    evaluations: usize,
}

impl<'a> HusimiSurface<'a> {
    fn new(matrix: &'a CMatrix, j: SpinJ) -> Self {
        let tj = j.twice() as u64;
        HusimiSurface {
            matrix,
            half_ln_binom: (0..=tj).map(|k| 0.5 * ln_binomial(tj, k)).collect(),
            twice_j: tj as usize,
            theta: f64::NAN,
            fourier: vec![C64::new(0.0, 0.0); tj as usize + 1],
            evaluations: 0,
        }
    }

    fn magnitudes(&self, theta: f64) -> Vec<f64> {
        let tj = self.twice_j;
        let (s, c) = ((theta / 2.0).sin().abs(), (theta / 2.0).cos().abs());
        (0..=tj)
            .map(|k| (self.half_ln_binom[k] + ln_pow(s, (tj - k) as f64) + ln_pow(c, k as f64)).exp())
            .collect()
    }

    fn set_theta(&mut self, theta: f64) {
        if theta == self.theta {
            return;
        }
        let a = self.magnitudes(theta);
        let d = self.twice_j + 1;
        for g in self.fourier.iter_mut() {
            *g = C64::new(0.0, 0.0);
        }
        for r in 0..d {
            for c in 0..=r {
                self.fourier[r - c] += self.matrix[(r, c)] * (a[r] * a[c]);
            }
        }
        self.theta = theta;
    }

    fn at_phi(&mut self, phi: f64) -> f64 {
        self.evaluations += 1;
        let mut acc = self.fourier[0].re;
        for (k, g) in self.fourier.iter().enumerate().skip(1) {
            acc += 2.0 * (g * C64::from_polar(1.0, k as f64 * phi)).re;
        }
        acc
    }

    fn at(&mut self, theta: f64, phi: f64) -> f64 {
        self.set_theta(theta);
        self.at_phi(phi)
    }

    /// `Σ_k A_kk a_k(θ)²`, exact for matrices diagonal in `|j, m⟩`.
    fn diagonal_at(&mut self, theta: f64) -> f64 {
        self.evaluations += 1;
        self.magnitudes(theta)
            .iter()
            .enumerate()
            .map(|(k, a)| self.matrix[(k, k)].re * a * a)
            .sum()
    }
}

const INV_GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization of `f` on `[lo, hi]`; returns `(x, f(x))`.
fn golden_max(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, width: f64) -> (f64, f64) {
    let mut c = hi - INV_GOLDEN * (hi - lo);
    let mut d = lo + INV_GOLDEN * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > width {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_GOLDEN * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_GOLDEN * (hi - lo);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

const BRACKET_WIDTH: f64 = 1e-11;

/// Maximizes `⟨j, Ω|A|j, Ω⟩` for a Hermitian `A`: a coarse `θ × φ` grid
/// followed by alternating golden-section refinement in θ and φ.
///
/// Grid ties resolve to the smaller θ, then the smaller φ.
pub fn husimi_max(matrix: &CMatrix, j: SpinJ, config: &QmaxConfig) -> Result<QmaxResult> {
    check_square(j, matrix)?;
    let n_theta = config.theta_points.max(3);
    let dtheta = PI / (n_theta - 1) as f64;
    let mut surface = HusimiSurface::new(matrix, j);
    let diagonal = config.detect_diagonal && max_off_diagonal(matrix) < config.diagonal_tol;

    if diagonal || j.twice() == 0 {
        let mut best = (0.0, f64::NEG_INFINITY);
        for i in 0..n_theta {
            let t = dtheta * i as f64;
            let v = surface.diagonal_at(t);
            if v > best.1 {
                best = (t, v);
            }
        }
        let (lo, hi) = ((best.0 - dtheta).max(0.0), (best.0 + dtheta).min(PI));
        let refined = golden_max(|t| surface.diagonal_at(t), lo, hi, BRACKET_WIDTH);
        if refined.1 > best.1 {
            best = refined;
        }
        return Ok(QmaxResult {
            value: best.1,
            location: SphereDirection::wrapped(best.0, 0.0),
            evaluations: surface.evaluations,
            capped: false,
        });
    }

    let n_phi = config.phi_points.max(4);
    let dphi = 2.0 * PI / n_phi as f64;
    let mut best = (0.0, 0.0, f64::NEG_INFINITY);
    let mut capped = false;
    'grid: for i in 0..n_theta {
        let t = dtheta * i as f64;
        surface.set_theta(t);
        // a pole is a single point, one probe suffices
        let probes = if i == 0 || i == n_theta - 1 { 1 } else { n_phi };
        for k in 0..probes {
            if surface.evaluations >= config.max_evaluations {
                capped = true;
                break 'grid;
            }
            let p = -PI + config.phi_offset + dphi * k as f64;
            let v = surface.at_phi(p);
            if v > best.2 {
                best = (t, p, v);
            }
        }
    }

    let (mut theta, mut phi, mut value) = best;
    let mut theta_span = dtheta;
    let mut phi_span = dphi;
    for _ in 0..200 {
        if capped || surface.evaluations >= config.max_evaluations {
            capped = true;
            break;
        }
        let start = value;
        let (lo, hi) = ((theta - theta_span).max(0.0), (theta + theta_span).min(PI));
        let (t, v) = golden_max(|t| surface.at(t, phi), lo, hi, BRACKET_WIDTH);
        if v > value {
            theta = t;
            value = v;
        }
        surface.set_theta(theta);
        let (p, v) = golden_max(|p| surface.at_phi(p), phi - phi_span, phi + phi_span, BRACKET_WIDTH);
        if v > value {
            phi = p;
            value = v;
        }
        if value - start < config.value_tol {
            break;
        }
        // later sweeps only need to follow the ridge locally
        theta_span = (theta_span * 0.5).max(1e-6);
        phi_span = (phi_span * 0.5).max(1e-6);
    }

    Ok(QmaxResult {
        value,
        location: SphereDirection::wrapped(theta, phi),
        evaluations: surface.evaluations,
        capped,
    })
}

fn max_off_diagonal(a: &CMatrix) -> f64 {
    let d = a.nrows();
    let mut max = 0.0f64;
    for r in 0..d {
        for c in 0..d {
            if r != c {
                max = max.max(a[(r, c)].norm());
            }
        }
    }
    max
}

/// `max_Ω ⟨j, Ω|ρ|j, Ω⟩`.
pub fn qmax(rho: &DensityOperator, config: &QmaxConfig) -> QmaxResult {
    husimi_max(rho.matrix(), rho.j(), config).expect("density operator has matching dimensions")
}

/// `max_Ω ⟨j, Ω|ρ|j, Ω⟩ · tr Δ`: no classical measurement element of trace
/// `tr Δ` can give `ρ` a larger probability.
pub fn classical_measurement_bound(rho: &DensityOperator, trace_delta: f64, config: &QmaxConfig) -> Result<f64> {
    if !trace_delta.is_finite() || trace_delta < 0.0 {
        return Err(Error::Domain(format!(
            "trace of the measurement element must be >= 0, got {trace_delta}"
        )));
    }
    Ok(qmax(rho, config).value * trace_delta)
}

/// `max_Ω ⟨j, Ω|Δ|j, Ω⟩`: no classical state can give outcome `Δ` a larger
/// probability.
pub fn element_state_bound(element: &MeasurementElement, config: &QmaxConfig) -> QmaxResult {
    husimi_max(element.matrix(), element.j(), config).expect("element has matching dimensions")
}

/// Classical state bound for outcome `m` of a spin component,
/// `C(2j, j+m) ((j−m)/2j)^{j−m} ((j+m)/2j)^{j+m}`, with `0⁰ = 1`.
pub fn classical_state_bound(j: SpinJ, m: HalfInteger) -> Result<f64> {
    let k = j.index_of(m)? as u64;
    let tj = j.twice() as u64;
    if k == 0 || k == tj {
        return Ok(1.0);
    }
    let (minus, plus) = ((tj - k) as f64, k as f64);
    let two_j = tj as f64;
    let ln = ln_binomial(tj, k) + ln_pow(minus / two_j, minus) + ln_pow(plus / two_j, plus);
    Ok(ln.exp())
}

/// [`classical_state_bound`] for every `m`, ascending.
pub fn classical_state_bounds(j: SpinJ) -> Vec<f64> {
    j.ms()
        .map(|m| classical_state_bound(j, m).expect("m enumerated from j"))
        .collect()
}

/// Bound on the same outcome derived from the quadrature (bosonic) phase
/// space: `(j+m)^{j+m} (j−m)^{j−m} e^{−2j} / ((j+m)! (j−m)!)`.
pub fn quadrature_bound(j: SpinJ, m: HalfInteger) -> Result<f64> {
    let k = j.index_of(m)? as u64;
    let tj = j.twice() as u64;
    let (plus, minus) = (k, tj - k);
    let ln = ln_pow(plus as f64, plus as f64) + ln_pow(minus as f64, minus as f64)
        - tj as f64
        - ln_factorial(plus)
        - ln_factorial(minus);
    Ok(ln.exp())
}

/// Large-`j` limit `√(2/π)` of the classical bound on the rescaled density.
pub fn bright_limit_bound() -> f64 {
    (2.0 / PI).sqrt()
}

/// Maps `p_m` onto the continuous variable `x = m/√(2j)` with density
/// `√(2j) p_m`, so `Σ density · Δx = 1` for `Δx = 1/√(2j)`.
pub fn scaled_statistics(probs: &[f64], j: SpinJ) -> Result<Vec<(f64, f64)>> {
    check_len(j, probs.len())?;
    if j.twice() == 0 {
        return Err(Error::Domain("scaled statistics need j > 0".into()));
    }
    let scale = (2.0 * j.j()).sqrt();
    Ok(j.ms().zip(probs).map(|(m, p)| (m.value() / scale, scale * p)).collect())
}

/// One [`BoundReport`] per outcome, `m` ascending.
pub fn violation_report(j: SpinJ, probs: &[f64], bounds: &[f64], tol_report: f64) -> Result<Vec<BoundReport>> {
    check_len(j, probs.len())?;
    check_len(j, bounds.len())?;
    Ok(j.ms()
        .zip(probs.iter().zip(bounds))
        .map(|(m, (&p, &b))| BoundReport {
            m,
            probability: p,
            bound: b,
            violated: p > b + tol_report,
            violation_ratio: violation_ratio(p, b),
        })
        .collect())
}

fn violation_ratio(p: f64, b: f64) -> f64 {
    if b > 0.0 {
        p / b
    } else if p > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}
