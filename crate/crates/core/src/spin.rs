//! Finite-dimensional angular momentum: spin labels, states, the operators
//! `j1, j2, j3, j±` in the `|j, m⟩` basis and exact component statistics.
//!
//! Every matrix and vector is indexed by `m` ascending, so row `0` is
//! `m = -j` and row `2j` is `m = j`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Squared-norm and trace tolerance for states.
pub const NORM_TOL: f64 = 1e-12;
/// Element-wise Hermiticity tolerance.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues down to this are treated as round-off of zero.
pub const PSD_TOL: f64 = 1e-10;
/// Negative variances and probabilities above this are clamped to zero.
pub const CLAMP_TOL: f64 = 1e-10;
/// Allowed deviation of consecutive component eigenvalues from unit spacing.
pub const SPACING_TOL: f64 = 1e-8;

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInteger(i32);

impl HalfInteger {
    pub const fn from_twice(twice: i32) -> Self {
        HalfInteger(twice)
    }

    pub const fn from_int(value: i32) -> Self {
        HalfInteger(2 * value)
    }

    /// Returns `None` unless `2x` is an integer.
    pub fn from_f64(x: f64) -> Option<Self> {
        let twice = 2.0 * x;
        if !twice.is_finite() || (twice - twice.round()).abs() > 1e-9 || twice.abs() > i32::MAX as f64 {
            return None;
        }
        Some(HalfInteger(twice.round() as i32))
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            let sign = if self.0 < 0 { "-" } else { "" };
            write!(f, "{}{}.5", sign, self.0.abs() / 2)
        }
    }
}

/// Total angular momentum quantum number `j`, stored as `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinJ {
    twice_j: u32,
}

impl SpinJ {
    pub const fn from_twice(twice_j: u32) -> Self {
        SpinJ { twice_j }
    }

    pub const fn from_int(j: u32) -> Self {
        SpinJ { twice_j: 2 * j }
    }

    pub fn from_f64(j: f64) -> Result<Self> {
        match HalfInteger::from_f64(j) {
            Some(h) if h.twice() >= 0 => Ok(SpinJ {
                twice_j: h.twice() as u32,
            }),
            _ => Err(Error::InvalidSpin(j.to_string())),
        }
    }

    pub const fn twice(self) -> u32 {
        self.twice_j
    }

    pub fn j(self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    /// Hilbert space dimension `2j + 1`.
    pub const fn dim(self) -> usize {
        self.twice_j as usize + 1
    }

    pub const fn is_integer(self) -> bool {
        self.twice_j.is_multiple_of(2)
    }

    /// Eigenvalue `j(j+1)` of the Casimir operator.
    pub fn casimir(self) -> f64 {
        let j = self.j();
        j * (j + 1.0)
    }

    /// `m = -j, -j+1, …, j`.
    pub fn ms(self) -> impl DoubleEndedIterator<Item = HalfInteger> + ExactSizeIterator {
        let tj = self.twice_j as i32;
        (0..self.twice_j as i32 + 1).map(move |i| HalfInteger::from_twice(2 * i - tj))
    }

    pub fn m_at(self, index: usize) -> HalfInteger {
        HalfInteger::from_twice(2 * index as i32 - self.twice_j as i32)
    }

    pub fn index_of(self, m: HalfInteger) -> Result<usize> {
        let tj = self.twice_j as i32;
        let shifted = m.twice() + tj;
        if m.twice().abs() > tj || shifted % 2 != 0 {
            return Err(Error::MOutOfRange {
                m: m.to_string(),
                j: self.to_string(),
            });
        }
        Ok((shifted / 2) as usize)
    }
}

impl fmt::Display for SpinJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", HalfInteger::from_twice(self.twice_j as i32))
    }
}

/// Accepts a decimal (`10`, `2.5`) or a fraction over two (`21/2`).
impl FromStr for SpinJ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return Err(Error::InvalidSpin(s.to_string()));
            }
            let twice = num
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidSpin(s.to_string()))?;
            return Ok(SpinJ::from_twice(twice));
        }
        let j = s.parse::<f64>().map_err(|_| Error::InvalidSpin(s.to_string()))?;
        SpinJ::from_f64(j).map_err(|_| Error::InvalidSpin(s.to_string()))
    }
}

/// Unit vector selecting the component `j_u = u · j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction([f64; 3]);

impl Direction {
    pub const X: Direction = Direction([1.0, 0.0, 0.0]);
    pub const Y: Direction = Direction([0.0, 1.0, 0.0]);
    pub const Z: Direction = Direction([0.0, 0.0, 1.0]);

    pub fn new(u: [f64; 3]) -> Result<Self> {
        let norm = norm3(u);
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NonUnitDirection(norm));
        }
        Ok(Direction(u))
    }

    /// Rescales any non-zero vector to unit length.
    pub fn normalize(u: [f64; 3]) -> Result<Self> {
        let norm = norm3(u);
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NonUnitDirection(norm));
        }
        Ok(Direction([u[0] / norm, u[1] / norm, u[2] / norm]))
    }

    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Direction([theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()])
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    /// Active rotation by `angle` about `axis` (Rodrigues).
    pub fn rotated(&self, axis: &Direction, angle: f64) -> Direction {
        let [kx, ky, kz] = axis.0;
        let [vx, vy, vz] = self.0;
        let (s, c) = angle.sin_cos();
        let kdotv = kx * vx + ky * vy + kz * vz;
        let cross = [ky * vz - kz * vy, kz * vx - kx * vz, kx * vy - ky * vx];
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = self.0[i] * c + cross[i] * s + axis.0[i] * kdotv * (1.0 - c);
        }
        Direction(out)
    }
}

pub(crate) fn norm3(u: [f64; 3]) -> f64 {
    (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt()
}

/// Pure state as amplitudes over `|j, m⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct KetState {
    j: SpinJ,
    amplitudes: CVector,
}

impl KetState {
    pub fn new(j: SpinJ, amplitudes: CVector) -> Result<Self> {
        check_len(j, amplitudes.len())?;
        let norm_sq = amplitudes.norm_squared();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sq));
        }
        Ok(KetState { j, amplitudes })
    }

    /// Normalizes `amplitudes` first; only the zero vector is rejected.
    pub fn normalized(j: SpinJ, amplitudes: CVector) -> Result<Self> {
        check_len(j, amplitudes.len())?;
        let norm = amplitudes.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NotNormalized(norm * norm));
        }
        Ok(KetState {
            j,
            amplitudes: amplitudes / C64::new(norm, 0.0),
        })
    }

    /// The basis vector `|j, m⟩`.
    pub fn basis(j: SpinJ, m: HalfInteger) -> Result<Self> {
        let idx = j.index_of(m)?;
        let mut amplitudes = CVector::zeros(j.dim());
        amplitudes[idx] = C64::new(1.0, 0.0);
        Ok(KetState { j, amplitudes })
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn amplitude(&self, m: HalfInteger) -> Result<C64> {
        Ok(self.amplitudes[self.j.index_of(m)?])
    }

    pub fn inner(&self, other: &KetState) -> Result<C64> {
        check_len(self.j, other.amplitudes.len())?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `⟨ψ|A|ψ⟩` for a square matrix of matching size.
    pub fn matrix_element(&self, a: &CMatrix) -> Result<C64> {
        check_square(self.j, a)?;
        Ok(self.amplitudes.dotc(&(a * &self.amplitudes)))
    }

    pub fn apply(&self, u: &CMatrix) -> Result<KetState> {
        check_square(self.j, u)?;
        KetState::normalized(self.j, u * &self.amplitudes)
    }

    pub fn to_density(&self) -> DensityOperator {
        let matrix = &self.amplitudes * self.amplitudes.adjoint();
        DensityOperator { j: self.j, matrix }
    }
}

/// Hermitian, positive semidefinite, unit-trace operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    j: SpinJ,
    matrix: CMatrix,
}

impl DensityOperator {
    pub fn new(j: SpinJ, matrix: CMatrix) -> Result<Self> {
        check_square(j, &matrix)?;
        check_hermitian(&matrix)?;
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > NORM_TOL {
            return Err(Error::BadTrace(trace));
        }
        check_psd(&matrix)?;
        Ok(DensityOperator { j, matrix })
    }

    pub fn maximally_mixed(j: SpinJ) -> Self {
        let d = j.dim();
        DensityOperator {
            j,
            matrix: CMatrix::identity(d, d) / C64::new(d as f64, 0.0),
        }
    }

    /// Convex combination `Σ w_k |ψ_k⟩⟨ψ_k|`; weights are renormalized to sum to one.
    pub fn mixture(j: SpinJ, terms: &[(f64, KetState)]) -> Result<Self> {
        let total: f64 = terms.iter().map(|(w, _)| *w).sum();
        if terms.is_empty() || terms.iter().any(|(w, _)| *w < 0.0 || !w.is_finite()) || total <= 0.0 {
            return Err(Error::Domain(
                "mixture weights must be non-negative with positive sum".into(),
            ));
        }
        let d = j.dim();
        let mut matrix = CMatrix::zeros(d, d);
        for (w, ket) in terms {
            check_len(j, ket.amplitudes.len())?;
            let a = &ket.amplitudes;
            matrix += a * a.adjoint() * C64::new(*w / total, 0.0);
        }
        DensityOperator::new(j, hermitize(matrix))
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `U ρ U†`.
    pub fn transformed(&self, u: &CMatrix) -> Result<DensityOperator> {
        check_square(self.j, u)?;
        let matrix = hermitize(u * &self.matrix * u.adjoint());
        DensityOperator::new(self.j, matrix)
    }

    /// Largest modulus among off-diagonal elements.
    pub fn max_off_diagonal(&self) -> f64 {
        let d = self.matrix.nrows();
        let mut max = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                if r != c {
                    max = max.max(self.matrix[(r, c)].norm());
                }
            }
        }
        max
    }
}

impl From<&KetState> for DensityOperator {
    fn from(ket: &KetState) -> Self {
        ket.to_density()
    }
}

/// A POVM element `Δ`: Hermitian and positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementElement {
    j: SpinJ,
    matrix: CMatrix,
}

impl MeasurementElement {
    pub fn new(j: SpinJ, matrix: CMatrix) -> Result<Self> {
        check_square(j, &matrix)?;
        check_hermitian(&matrix)?;
        check_psd(&matrix)?;
        Ok(MeasurementElement { j, matrix })
    }

    /// Rank-one projector `|ψ⟩⟨ψ|`.
    pub fn projector(ket: &KetState) -> Self {
        MeasurementElement {
            j: ket.j,
            matrix: ket.to_density().matrix,
        }
    }

    pub fn j(&self) -> SpinJ {
        self.j
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `tr(Δ ρ)`.
    pub fn probability(&self, rho: &DensityOperator) -> Result<f64> {
        expectation(rho, &self.matrix)
    }
}

/// The angular momentum matrices for one `j`.
#[derive(Clone, Debug)]
pub struct SpinMatrices {
    pub j: SpinJ,
    pub j1: CMatrix,
    pub j2: CMatrix,
    pub j3: CMatrix,
    pub jplus: CMatrix,
    pub jminus: CMatrix,
}

impl SpinMatrices {
    /// `u₁ j₁ + u₂ j₂ + u₃ j₃`.
    pub fn component(&self, u: &Direction) -> CMatrix {
        let [x, y, z] = u.as_array();
        &self.j1 * C64::new(x, 0.0) + &self.j2 * C64::new(y, 0.0) + &self.j3 * C64::new(z, 0.0)
    }

    /// `j₁² + j₂² + j₃²`.
    pub fn casimir(&self) -> CMatrix {
        &self.j1 * &self.j1 + &self.j2 * &self.j2 + &self.j3 * &self.j3
    }

    pub fn axes(&self) -> [&CMatrix; 3] {
        [&self.j1, &self.j2, &self.j3]
    }
}

/// Builds `j₃ = diag(m)` and `j±` from the ladder coefficients
/// `√(j(j+1) − m(m±1))`, then `j₁ = (j⁺ + j⁻)/2`, `j₂ = (j⁺ − j⁻)/(2i)`.
pub fn spin_matrices(j: SpinJ) -> SpinMatrices {
    let d = j.dim();
    let casimir = j.casimir();
    let mut j3 = CMatrix::zeros(d, d);
    let mut jplus = CMatrix::zeros(d, d);
    for (i, m) in j.ms().enumerate() {
        let m = m.value();
        j3[(i, i)] = C64::new(m, 0.0);
        if i + 1 < d {
            jplus[(i + 1, i)] = C64::new((casimir - m * (m + 1.0)).max(0.0).sqrt(), 0.0);
        }
    }
    let jminus = jplus.adjoint();
    let j1 = (&jplus + &jminus) * C64::new(0.5, 0.0);
    let j2 = (&jplus - &jminus) * C64::new(0.0, -0.5);
    SpinMatrices {
        j,
        j1,
        j2,
        j3,
        jplus,
        jminus,
    }
}

pub fn component_matrix(j: SpinJ, u: &Direction) -> CMatrix {
    spin_matrices(j).component(u)
}

/// `tr(ρ A)`.
pub fn expectation(rho: &DensityOperator, a: &CMatrix) -> Result<f64> {
    check_square(rho.j, a)?;
    let d = a.nrows();
    let mut acc = C64::new(0.0, 0.0);
    for r in 0..d {
        for c in 0..d {
            acc += rho.matrix[(r, c)] * a[(c, r)];
        }
    }
    Ok(acc.re)
}

/// `tr(ρ A²) − tr(ρ A)²`, with round-off negatives clamped to zero.
pub fn variance(rho: &DensityOperator, a: &CMatrix) -> Result<f64> {
    let mean = expectation(rho, a)?;
    let second = expectation(rho, &(a * a))?;
    clamp_nonnegative(second - mean * mean, "variance")
}

pub(crate) fn clamp_nonnegative(value: f64, what: &'static str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -CLAMP_TOL {
        Ok(0.0)
    } else {
        Err(Error::NegativeBeyondRoundoff { what, value })
    }
}

/// Eigenbasis of `j_u`: eigenvalues ascending (`−j..j`) and matching
/// eigenvectors as columns. Fails if the spectrum is not unit-spaced.
pub fn component_eigenbasis(j: SpinJ, u: &Direction) -> Result<(Vec<f64>, CMatrix)> {
    let eig = SymmetricEigen::new(component_matrix(j, u));
    let d = j.dim();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    for w in values.windows(2) {
        if ((w[1] - w[0]) - 1.0).abs() > SPACING_TOL {
            return Err(Error::Internal(format!(
                "component spectrum spacing {} deviates from 1",
                w[1] - w[0]
            )));
        }
    }
    if (values[0] + j.j()).abs() > SPACING_TOL * d as f64 {
        return Err(Error::Internal(format!(
            "lowest component eigenvalue {} is not -j",
            values[0]
        )));
    }
    let mut vectors = CMatrix::zeros(d, d);
    for (col, &k) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(k));
    }
    Ok((values, vectors))
}

/// Outcome probabilities `p_m = ⟨e_m|ρ|e_m⟩` of measuring `j_u`, indexed by
/// `m` ascending.
pub fn measurement_statistics(rho: &DensityOperator, u: &Direction) -> Result<Vec<f64>> {
    let (_, vectors) = component_eigenbasis(rho.j, u)?;
    let d = rho.j.dim();
    let mut probs = Vec::with_capacity(d);
    for k in 0..d {
        let e = vectors.column(k);
        let p = e.dotc(&(&rho.matrix * e)).re;
        let p = clamp_nonnegative(p, "probability")?;
        if p > 1.0 + CLAMP_TOL {
            return Err(Error::Internal(format!("probability {p} exceeds one")));
        }
        probs.push(p.min(1.0));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::Internal(format!("probabilities sum to {total}")));
    }
    Ok(probs)
}

/// `exp(−i·angle·(axis · j))`.
pub fn rotation(j: SpinJ, axis: &Direction, angle: f64) -> CMatrix {
    let eig = SymmetricEigen::new(component_matrix(j, axis));
    let phases = eig.eigenvalues.map(|l| C64::from_polar(1.0, -angle * l));
    let v = &eig.eigenvectors;
    v * CMatrix::from_diagonal(&phases) * v.adjoint()
}

/// `(A + A†)/2`, removing round-off anti-Hermitian parts.
pub(crate) fn hermitize(a: CMatrix) -> CMatrix {
    let adj = a.adjoint();
    (a + adj) * C64::new(0.5, 0.0)
}

pub(crate) fn check_len(j: SpinJ, len: usize) -> Result<()> {
    if len != j.dim() {
        return Err(Error::DimensionMismatch {
            expected: j.dim(),
            found: len,
        });
    }
    Ok(())
}

pub(crate) fn check_square(j: SpinJ, a: &CMatrix) -> Result<()> {
    check_len(j, a.nrows())?;
    check_len(j, a.ncols())
}

pub(crate) fn max_hermitian_deviation(a: &CMatrix) -> f64 {
    let d = a.nrows();
    let mut dev = 0.0f64;
    for r in 0..d {
        for c in r..d {
            dev = dev.max((a[(r, c)] - a[(c, r)].conj()).norm());
        }
    }
    dev
}

pub(crate) fn check_hermitian(a: &CMatrix) -> Result<()> {
    let dev = max_hermitian_deviation(a);
    if dev.is_nan() || dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

fn check_psd(a: &CMatrix) -> Result<()> {
    let eig = SymmetricEigen::new(a.clone());
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min < -PSD_TOL {
        return Err(Error::NotPositive(min));
    }
    Ok(())
}

/// Largest element-wise modulus of `a − b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
