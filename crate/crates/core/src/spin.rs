//! Spin as left multiplication by `(@/2)n`, spin eigenstates and the two spin
//! subspaces, the null-state criterion for a spin direction, and the U(1) and
//! quaternionic gauge transformations.
//!
//! In the 2×2 matrix picture left multiplication acts on each column
//! separately. The first spin subspace `span{1+@k, @i+j}` is the set of
//! matrices with a vanishing second column, the second subspace
//! `span{i+@j, −@−k}` those with a vanishing first column, and null states are
//! the rank-one matrices.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, Matrix2, Matrix3, Vector3};
use num_complex::Complex64;
use rand::Rng;

use crate::cq::{ComplexScalar, Cq, Matrix2C};
use crate::error::{Error, Result};
use crate::lagrangian::PotentialField;
use crate::sampling;
use crate::wave::{
    real_rank, rest_frame_solution, LinearScalarFunction, PlaneWaveSpinorField, ScalarFunction,
    Species, SpinorField,
};

/// Number of directions in the exhaustive eigendirection search.
pub const DIRECTION_GRID: usize = 10_000;
/// Per-axis resolution of the `n` grid in the no-escape search.
pub const GAUGE_AXIS_GRID: usize = 32;
/// Number of `β` samples in the no-escape search.
pub const GAUGE_ANGLE_GRID: usize = 64;

fn c(re: f64, im: f64) -> ComplexScalar {
    Complex64::new(re, im)
}

/// `e⃗·S⃗ = (@/2)(in_x + jn_y + kn_z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinOperator {
    direction: [f64; 3],
}

impl SpinOperator {
    pub fn new(direction: [f64; 3]) -> Result<Self> {
        let norm_sq: f64 = direction.iter().map(|v| v * v).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::BadDirection(format!("|e|² = {norm_sq}")));
        }
        Ok(SpinOperator { direction })
    }

    pub fn x() -> Self {
        SpinOperator {
            direction: [1.0, 0.0, 0.0],
        }
    }

    pub fn y() -> Self {
        SpinOperator {
            direction: [0.0, 1.0, 0.0],
        }
    }

    pub fn z() -> Self {
        SpinOperator {
            direction: [0.0, 0.0, 1.0],
        }
    }

    pub fn direction(&self) -> [f64; 3] {
        self.direction
    }

    /// The CQ `(@/2)n` that multiplies from the left.
    pub fn generator(&self) -> Cq {
        let [x, y, z] = self.direction;
        Cq::IMAG * Cq::quaternion(0.0, x, y, z) * 0.5
    }

    pub fn apply(&self, psi: &Cq) -> Cq {
        self.generator() * *psi
    }
}

/// `Ψ = (ψ, ±ψ)ᵀ e^{∓@mt}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RestFrameState {
    pub psi: Cq,
    pub species: Species,
    pub mass: f64,
}

impl RestFrameState {
    pub fn new(psi: Cq, species: Species, mass: f64) -> Self {
        RestFrameState { psi, species, mass }
    }

    /// `Ψ₀ = (1, 1)ᵀ e^{−@mt}`.
    pub fn psi0(mass: f64) -> Self {
        RestFrameState::new(Cq::ONE, Species::Particle, mass)
    }

    pub fn with_psi(&self, psi: Cq) -> Self {
        RestFrameState { psi, ..*self }
    }

    pub fn to_plane_wave(&self) -> PlaneWaveSpinorField {
        rest_frame_solution(self.psi, self.mass, self.species)
    }
}

pub fn apply_spin(op: &SpinOperator, state: &RestFrameState) -> RestFrameState {
    state.with_psi(op.apply(&state.psi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ladder {
    Raise,
    Lower,
}

/// `S± = S_x ± @S_y`.
pub fn ladder_generator(sign: Ladder) -> Cq {
    let s = match sign {
        Ladder::Raise => 1.0,
        Ladder::Lower => -1.0,
    };
    SpinOperator::x().generator() + Cq::IMAG * SpinOperator::y().generator() * s
}

pub fn ladder(sign: Ladder, state: &RestFrameState) -> RestFrameState {
    state.with_psi(ladder_generator(sign) * state.psi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subspace {
    /// `span{1+@k, @i+j}`
    First,
    /// `span{i+@j, −@−k}`
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinBasisState {
    pub label: &'static str,
    pub amplitude: Cq,
    pub m_z: f64,
    pub subspace: Subspace,
}

/// The four `S_z` eigen-amplitudes, ordered `1+@k, i+@j, @i+j, −@−k`.
pub fn spin_basis() -> [SpinBasisState; 4] {
    let (one, im, i, j, k) = (Cq::ONE, Cq::IMAG, Cq::I, Cq::J, Cq::K);
    [
        SpinBasisState {
            label: "1+@k",
            amplitude: one + im * k,
            m_z: 0.5,
            subspace: Subspace::First,
        },
        SpinBasisState {
            label: "i+@j",
            amplitude: i + im * j,
            m_z: 0.5,
            subspace: Subspace::Second,
        },
        SpinBasisState {
            label: "@i+j",
            amplitude: im * i + j,
            m_z: -0.5,
            subspace: Subspace::First,
        },
        SpinBasisState {
            label: "-@-k",
            amplitude: -im - k,
            m_z: -0.5,
            subspace: Subspace::Second,
        },
    ]
}

/// Complex coefficients of `ψ` over [`spin_basis`] order.
pub fn decompose_psi0(psi: &Cq) -> [ComplexScalar; 4] {
    // first column: (2c₁, 2c₂); second column: (−2𝕚c₃, −2𝕚c₄)
    let m = psi.to_matrix();
    let half_i = c(0.0, 0.5);
    [m.m11 * 0.5, m.m12 * half_i, m.m21 * 0.5, m.m22 * half_i]
}

pub fn recompose(coeffs: &[ComplexScalar; 4]) -> Cq {
    spin_basis()
        .iter()
        .zip(coeffs)
        .fold(Cq::ZERO, |acc, (b, c)| acc + b.amplitude * *c)
}

/// Fraction of `|ψ|` lying outside each subspace, `[first, second]`.
pub fn subspace_residuals(psi: &Cq) -> [f64; 2] {
    let m = psi.to_matrix();
    let total = m.norm();
    if total == 0.0 {
        return [0.0, 0.0];
    }
    let col_norm = |n: usize| m.column(n).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    [col_norm(1) / total, col_norm(0) / total]
}

/// `(e⃗·S⃗)ψ = ½ψ` for `direction = e⃗`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinDirection {
    pub direction: [f64; 3],
    pub eigenvalue: f64,
}

impl SpinDirection {
    /// The same statement read along `−e⃗`.
    pub fn flipped(&self) -> Self {
        SpinDirection {
            direction: self.direction.map(|v| -v),
            eigenvalue: -self.eigenvalue,
        }
    }
}

/// `|(@/2)nψ − λψ| / |ψ|`.
pub fn eigen_residual(psi: &Cq, direction: [f64; 3], eigenvalue: f64) -> f64 {
    let [x, y, z] = direction;
    let lhs = Cq::IMAG * Cq::quaternion(0.0, x, y, z) * *psi * 0.5;
    (lhs - *psi * eigenvalue).norm() / psi.norm()
}

/// Finds `e⃗` with `(e⃗·S⃗)ψ = ½ψ` if one exists, which is the case exactly
/// when `ψ` is null. The direction solves the real least-squares system
/// `n_x(iψ) + n_y(jψ) + n_z(kψ) = −@ψ`. The returned eigenvalue is always
/// `+½`; [`SpinDirection::flipped`] gives the equivalent `−½` reading.
pub fn has_spin_direction(psi: &Cq) -> Result<Option<SpinDirection>> {
    if psi.norm_sqr() == 0.0 {
        return Err(Error::ZeroState);
    }
    if !psi.is_null() {
        return Ok(None);
    }
    let cols = [Cq::I * *psi, Cq::J * *psi, Cq::K * *psi].map(|v| v.to_array());
    let rhs = (-(Cq::IMAG * *psi)).to_array();
    let dot = |a: &[f64; 8], b: &[f64; 8]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let gram = Matrix3::from_fn(|r, c| dot(&cols[r], &cols[c]));
    let proj = Vector3::from_fn(|r, _| dot(&cols[r], &rhs));
    let Some(n) = gram.lu().solve(&proj) else {
        return Ok(None);
    };
    let norm = n.norm();
    if norm == 0.0 {
        return Ok(None);
    }
    let direction = [n[0] / norm, n[1] / norm, n[2] / norm];
    if eigen_residual(psi, direction, 0.5) > 1e-6 {
        return Ok(None);
    }
    Ok(Some(SpinDirection {
        direction,
        eigenvalue: 0.5,
    }))
}

/// `N` nearly uniform directions on the unit sphere (Fibonacci lattice).
pub fn fibonacci_sphere(count: usize) -> Vec<[f64; 3]> {
    let golden = PI * (3.0 - 5.0_f64.sqrt());
    (0..count)
        .map(|n| {
            let z = 1.0 - (2.0 * n as f64 + 1.0) / count as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * n as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// Smallest eigen-relation residual over `directions` and both eigenvalues.
pub fn grid_min_eigen_residual(psi: &Cq, directions: &[[f64; 3]]) -> f64 {
    // (@/2)nψ is linear in n: combine the three precomputed images.
    let images = [Cq::I, Cq::J, Cq::K].map(|u| (Cq::IMAG * u * *psi * 0.5).to_array());
    let base = psi.to_array();
    let norm = psi.norm();
    let mut best = f64::INFINITY;
    for d in directions {
        let lhs: [f64; 8] = std::array::from_fn(|c| {
            d[0] * images[0][c] + d[1] * images[1][c] + d[2] * images[2][c]
        });
        for lambda in [0.5, -0.5] {
            let r: f64 = lhs
                .iter()
                .zip(&base)
                .map(|(a, b)| (a - lambda * b).powi(2))
                .sum();
            best = best.min(r.sqrt() / norm);
        }
    }
    best
}

/// Right multiplication by a constant CQ.
pub trait RightMultiply: Sized {
    fn right_multiply(&self, g: &Cq) -> Self;
}

impl RightMultiply for Cq {
    fn right_multiply(&self, g: &Cq) -> Self {
        *self * *g
    }
}

impl RightMultiply for RestFrameState {
    fn right_multiply(&self, g: &Cq) -> Self {
        self.with_psi(self.psi * *g)
    }
}

impl RightMultiply for PlaneWaveSpinorField {
    fn right_multiply(&self, g: &Cq) -> Self {
        PlaneWaveSpinorField {
            psi1: self.psi1 * *g,
            psi2: self.psi2 * *g,
            ..*self
        }
    }
}

impl RightMultiply for SpinorField {
    fn right_multiply(&self, g: &Cq) -> Self {
        self.right_mul(*g)
    }
}

/// `Ψ ↦ Ψe^{−nβ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuaternionGauge {
    pub direction: [f64; 3],
    pub beta: f64,
}

impl QuaternionGauge {
    pub fn new(direction: [f64; 3], beta: f64) -> Result<Self> {
        SpinOperator::new(direction)?;
        Ok(QuaternionGauge { direction, beta })
    }

    /// Reads a real unit quaternion `g` as `e^{−nβ}` with `β ∈ [0, π]`.
    pub fn from_unit_quaternion(g: &Cq) -> Result<Self> {
        let (re, im) = g.split();
        let norm_sq: f64 = re.iter().map(|v| v * v).sum();
        if im.iter().any(|v| v.abs() > 1e-12) || (norm_sq - 1.0).abs() > 1e-10 {
            return Err(Error::BadDirection(format!(
                "{g} is not a real unit quaternion"
            )));
        }
        let beta = re[0].clamp(-1.0, 1.0).acos();
        let s = beta.sin();
        let v = (re[1] * re[1] + re[2] * re[2] + re[3] * re[3]).sqrt();
        let direction = if v < 1e-15 {
            [0.0, 0.0, 1.0]
        } else {
            [-re[1] / v, -re[2] / v, -re[3] / v]
        };
        debug_assert!((v - s.abs()).abs() < 1e-9);
        Ok(QuaternionGauge { direction, beta })
    }

    /// `e^{−nβ} = cos β − n sin β`.
    pub fn factor(&self) -> Cq {
        let (s, c) = self.beta.sin_cos();
        let [x, y, z] = self.direction;
        Cq::quaternion(c, -x * s, -y * s, -z * s)
    }

    pub fn apply<T: RightMultiply>(&self, psi: &T) -> T {
        psi.right_multiply(&self.factor())
    }
}

pub fn apply_quaternion_gauge<T: RightMultiply>(gauge: &QuaternionGauge, psi: &T) -> T {
    gauge.apply(psi)
}

/// `Ψ ↦ Ψe^{−@eα(q)}` together with `A ↦ A + Dα`.
#[derive(Clone, Debug)]
pub struct U1Gauge {
    pub charge: f64,
    pub alpha: ScalarFunction,
}

impl U1Gauge {
    pub fn linear(charge: f64, alpha: LinearScalarFunction) -> Self {
        U1Gauge {
            charge,
            alpha: ScalarFunction::Linear(alpha),
        }
    }
}

/// Gauge-transforms a plane-wave spinor and its potential. The momentum
/// shifts to `p − s·e·a` for `α = ⟨a,q⟩ + c` and phase sign `s`.
pub fn apply_u1_gauge(
    gauge: &U1Gauge,
    psi: &PlaneWaveSpinorField,
    potential: &PotentialField,
) -> Result<(PlaneWaveSpinorField, PotentialField)> {
    let alpha = gauge.alpha.as_linear()?;
    let e = gauge.charge;
    let global = crate::wave::phase(crate::wave::PhaseSign::Negative, e * alpha.offset);
    let shifted = PlaneWaveSpinorField {
        psi1: psi.psi1 * global,
        psi2: psi.psi2 * global,
        momentum: psi.momentum - alpha.gradient * (psi.sign.value() * e),
        ..*psi
    };
    Ok((shifted, potential.gauge_shift(alpha)?))
}

/// As [`apply_u1_gauge`] for a general superposition.
pub fn apply_u1_gauge_field(
    gauge: &U1Gauge,
    psi: &SpinorField,
    potential: &PotentialField,
) -> Result<(SpinorField, PotentialField)> {
    let alpha = gauge.alpha.as_linear()?;
    let e = gauge.charge;
    let shifted = SpinorField::new(
        psi.psi1.with_u1_phase(e, alpha)?,
        psi.psi2.with_u1_phase(e, alpha)?,
    );
    Ok((shifted, potential.gauge_shift(alpha)?))
}

/// Splits `Σ` with `ΣΣ̄* = 1` into `c·q`, `|c| = 1`, `q` a real unit
/// quaternion whose first nonzero coefficient (order `1, i, j, k`) is positive.
pub fn decompose_normal(sigma: &Cq) -> Result<(ComplexScalar, Cq)> {
    let prod = *sigma * sigma.quat_conj().complex_conj();
    let residual = prod.max_abs_diff(&Cq::ONE);
    if residual > 1e-10 {
        return Err(Error::NotNormal { residual });
    }
    let (x, y) = sigma.split();
    let norm = |v: &[f64; 4]| v.iter().map(|a| a * a).sum::<f64>().sqrt();
    let base = if norm(&x) >= norm(&y) { x } else { y };
    let mut q = base.map(|v| v / norm(&base));
    if q.iter().find(|v| v.abs() > 1e-12).is_some_and(|v| *v < 0.0) {
        q = q.map(|v| -v);
    }
    let dot = |a: &[f64; 4]| a.iter().zip(&q).map(|(u, v)| u * v).sum::<f64>();
    Ok((c(dot(&x), dot(&y)), Cq::quaternion(q[0], q[1], q[2], q[3])))
}

/// Right quaternionic gauge moving a null spinor into the first subspace.
/// Both components must be rank-one with a common row space, as for every
/// solution built from a null upper amplitude.
pub fn gauge_fix(psi1: &Cq, psi2: &Cq) -> Result<(QuaternionGauge, Cq, Cq)> {
    let (m1, m2) = (psi1.to_matrix(), psi2.to_matrix());
    let rows = [m1.row(0), m1.row(1), m2.row(0), m2.row(1)];
    let row_norm = |r: &[ComplexScalar; 2]| (r[0].norm_sqr() + r[1].norm_sqr()).sqrt();
    let v = *rows
        .iter()
        .max_by(|a, b| row_norm(a).total_cmp(&row_norm(b)))
        .unwrap();
    let vn = row_norm(&v);
    if vn == 0.0 {
        return Err(Error::ZeroState);
    }
    // every row must be parallel to v
    let total: f64 = rows.iter().map(|r| row_norm(r).powi(2)).sum::<f64>().sqrt();
    let cross = rows
        .iter()
        .map(|r| (r[0] * v[1] - r[1] * v[0]).norm() / vn)
        .fold(0.0, f64::max);
    if cross > 1e-9 * total {
        return Err(Error::NotInSubspace {
            residual: cross / total,
        });
    }
    let alpha = v[0].conj() / vn;
    let beta = v[1].conj() / vn;
    let u = Matrix2C::new(alpha, -beta.conj(), beta, alpha.conj());
    let g = Cq::from_matrix(&u);
    let gauge = QuaternionGauge::from_unit_quaternion(&g)?;
    let g = gauge.factor();
    Ok((gauge, *psi1 * g, *psi2 * g))
}

/// The `B′` required by `B′ψ = −iψn`, solved in the matrix picture by least
/// squares (minimum norm for null `ψ`).
pub fn compensating_field(psi: &Cq, n: [f64; 3]) -> Cq {
    let [x, y, z] = n;
    let target = -(Cq::I * *psi * Cq::quaternion(0.0, x, y, z));
    let to_na = |m: Matrix2C| Matrix2::new(m.m11, m.m12, m.m21, m.m22);
    let m = to_na(psi.to_matrix());
    let r = to_na(target.to_matrix());
    let pinv = m
        .pseudo_inverse(1e-13)
        .expect("pseudo-inverse with positive eps");
    let b = r * pinv;
    Cq::from_matrix(&Matrix2C::new(b[(0, 0)], b[(0, 1)], b[(1, 0)], b[(1, 1)]))
}

/// Difference between the compensating fields demanded by two states,
/// relative to the larger of the two.
pub fn obstruction_mismatch(psi_a: &Cq, psi_b: &Cq, n: [f64; 3]) -> f64 {
    let (a, b) = (compensating_field(psi_a, n), compensating_field(psi_b, n));
    let scale = a.max_abs().max(b.max_abs());
    if scale == 0.0 {
        return 0.0;
    }
    a.max_abs_diff(&b) / scale
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionRow {
    pub label: String,
    pub mismatch: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionReport {
    pub direction: [f64; 3],
    /// Control pairs that must agree: identical states, complex rescaling.
    pub controls: Vec<ObstructionRow>,
    pub generic: Vec<ObstructionRow>,
    pub floor: f64,
}

impl ObstructionReport {
    pub fn fraction_above_floor(&self) -> f64 {
        if self.generic.is_empty() {
            return 0.0;
        }
        let hits = self
            .generic
            .iter()
            .filter(|r| r.mismatch > self.floor)
            .count();
        hits as f64 / self.generic.len() as f64
    }

    pub fn max_control_mismatch(&self) -> f64 {
        self.controls.iter().map(|r| r.mismatch).fold(0.0, f64::max)
    }
}

/// For `β(q) = x`, compares the compensating fields two rest-frame states
/// would need. Generic pairs disagree, so no state-independent `B′` exists.
pub fn local_gauge_obstruction_demo<R: Rng + ?Sized>(
    rng: &mut R,
    pairs: usize,
) -> ObstructionReport {
    let n = sampling::random_direction(rng);
    let base = sampling::random_cq(rng);
    let lambda = sampling::random_complex(rng);
    let controls = vec![
        ObstructionRow {
            label: "identical states".into(),
            mismatch: obstruction_mismatch(&base, &base, n),
        },
        ObstructionRow {
            label: format!("complex rescaling by {:.3}{:+.3}@", lambda.re, lambda.im),
            mismatch: obstruction_mismatch(&base, &(base * lambda), n),
        },
    ];
    let generic = (0..pairs)
        .map(|k| {
            let (a, b) = (sampling::random_cq(rng), sampling::random_cq(rng));
            ObstructionRow {
                label: format!("random pair {k}"),
                mismatch: obstruction_mismatch(&a, &b, n),
            }
        })
        .collect();
    ObstructionReport {
        direction: n,
        controls,
        generic,
        floor: 1e-3,
    }
}

/// Smallest out-of-subspace fraction of `ψe^{−nβ}` over the `(n, β)` grid:
/// `32³` axis points (normalised) times `64` angles in `[0, 2π)`.
pub fn no_escape_floor(psi: &Cq) -> f64 {
    let axis = |k: usize| -1.0 + (2.0 * k as f64 + 1.0) / GAUGE_AXIS_GRID as f64;
    let mut best = f64::INFINITY;
    for a in 0..GAUGE_AXIS_GRID {
        for b in 0..GAUGE_AXIS_GRID {
            for d in 0..GAUGE_AXIS_GRID {
                let v = [axis(a), axis(b), axis(d)];
                let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                let n = v.map(|x| x / norm);
                for s in 0..GAUGE_ANGLE_GRID {
                    let beta = TAU * s as f64 / GAUGE_ANGLE_GRID as f64;
                    let g = QuaternionGauge { direction: n, beta };
                    let [r1, r2] = subspace_residuals(&(*psi * g.factor()));
                    best = best.min(r1.min(r2));
                }
            }
        }
    }
    best
}

/// Complex dimension of the `S_z = m_z` eigenspace of amplitudes, optionally
/// restricted to the first subspace.
pub fn spin_eigenspace_dimension(m_z: f64, restricted: bool) -> usize {
    let sz = SpinOperator::z();
    let mut rows: Vec<[f64; 8]> = Vec::new();
    let images: Vec<Cq> = (0..8)
        .map(|n| {
            let mut e = [0.0; 8];
            e[n] = 1.0;
            let basis = Cq::from_array(e);
            sz.apply(&basis) - basis * m_z
        })
        .collect();
    for r in 0..8 {
        rows.push(std::array::from_fn(|c| images[c].to_array()[r]));
    }
    if restricted {
        let cols: Vec<[ComplexScalar; 2]> = (0..8)
            .map(|n| {
                let mut e = [0.0; 8];
                e[n] = 1.0;
                Cq::from_array(e).to_matrix().column(1)
            })
            .collect();
        for entry in [0, 1] {
            let column: [ComplexScalar; 8] = std::array::from_fn(|c| cols[c][entry]);
            rows.push(column.map(|z| z.re));
            rows.push(column.map(|z| z.im));
        }
    }
    let m = DMatrix::from_fn(rows.len(), 8, |r, c| rows[r][c]);
    (8 - real_rank(&m, 1e-12)) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn amp(label: &str) -> Cq {
        spin_basis()
            .into_iter()
            .find(|b| b.label == label)
            .unwrap()
            .amplitude
    }

    #[test]
    fn sz_eigenvalues() {
        let sz = SpinOperator::z();
        for b in spin_basis() {
            assert!(
                sz.apply(&b.amplitude)
                    .approx_eq(&(b.amplitude * b.m_z), 1e-15),
                "{}",
                b.label
            );
            assert_eq!(b.amplitude.quadric(), c(0.0, 0.0));
        }
    }

    #[test]
    fn casimir_is_three_quarters() {
        let psi = Cq::new(0.3, -1.0, 0.2, 0.8, -0.5, 0.1, 1.4, 0.0);
        let total = [SpinOperator::x(), SpinOperator::y(), SpinOperator::z()]
            .iter()
            .fold(Cq::ZERO, |acc, s| acc + s.apply(&s.apply(&psi)));
        assert!(total.approx_eq(&(psi * 0.75), 1e-15));
    }

    #[test]
    fn ladder_actions() {
        let up = RestFrameState::psi0(1.0).with_psi(amp("1+@k"));
        assert!(ladder(Ladder::Raise, &up).psi.max_abs() < 1e-15);
        let down = up.with_psi(amp("@i+j"));
        assert!(ladder(Ladder::Raise, &down)
            .psi
            .approx_eq(&amp("1+@k"), 1e-15));
        let raised_back = ladder(Ladder::Lower, &up).psi;
        let [r1, _] = subspace_residuals(&raised_back);
        assert!(r1 < 1e-15);
    }

    #[test]
    fn right_multiplication_relations() {
        assert_eq!(amp("1+@k") * Cq::I, amp("i+@j"));
        assert_eq!(amp("@i+j") * Cq::I, amp("-@-k"));
    }

    #[test]
    fn psi0_decomposition() {
        assert_eq!(
            decompose_psi0(&Cq::ONE),
            [c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.5)]
        );
        assert_eq!(
            decompose_psi0(&amp("1+@k")),
            [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
        );
        let psi = Cq::new(0.3, -1.0, 0.2, 0.8, -0.5, 0.1, 1.4, 0.0);
        assert!(recompose(&decompose_psi0(&psi)).approx_eq(&psi, 1e-15));
    }

    #[test]
    fn spin_direction_examples() {
        let d = has_spin_direction(&amp("1+@k")).unwrap().unwrap();
        assert!((d.direction[2] - 1.0).abs() < 1e-12 && d.eigenvalue == 0.5);
        assert_eq!(has_spin_direction(&Cq::ONE).unwrap(), None);
        assert_eq!(has_spin_direction(&Cq::ZERO), Err(Error::ZeroState));
        let down = has_spin_direction(&amp("@i+j")).unwrap().unwrap();
        assert!((down.direction[2] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn gauge_example_lands_in_second_subspace() {
        let g = QuaternionGauge::new([1.0, 0.0, 0.0], PI / 2.0).unwrap();
        let moved = g.apply(&amp("1+@k"));
        assert!(moved.approx_eq(&-amp("i+@j"), 1e-15));
        let [r1, r2] = subspace_residuals(&moved);
        assert!(r2 < 1e-15 && r1 > 0.99);
        let identity = QuaternionGauge::new([0.0, 1.0, 0.0], 0.0).unwrap();
        assert_eq!(identity.apply(&amp("1+@k")), amp("1+@k"));
    }

    #[test]
    fn superposition_example_via_gauge() {
        // (1+@k)e^{iπ/4} = (1/√2)(1+@k) + (1/√2)(i+@j)
        let g = QuaternionGauge::new([-1.0, 0.0, 0.0], PI / 4.0).unwrap();
        let lhs = g.apply(&amp("1+@k"));
        let rhs = (amp("1+@k") + amp("i+@j")) * std::f64::consts::FRAC_1_SQRT_2;
        assert!(lhs.approx_eq(&rhs, 1e-15));
    }

    #[test]
    fn normal_decomposition_examples() {
        let (c1, q1) = decompose_normal(&Cq::IMAG).unwrap();
        assert_eq!((c1, q1), (c(0.0, 1.0), Cq::ONE));
        let (c2, q2) = decompose_normal(&Cq::I).unwrap();
        assert_eq!((c2, q2), (c(1.0, 0.0), Cq::I));
        assert!(matches!(
            decompose_normal(&(Cq::ONE + Cq::IMAG * Cq::K)),
            Err(Error::NotNormal { .. })
        ));
    }

    #[test]
    fn unit_quaternion_round_trip() {
        let g = QuaternionGauge::new([0.0, 0.6, -0.8], 2.2).unwrap();
        let back = QuaternionGauge::from_unit_quaternion(&g.factor()).unwrap();
        assert!(back.factor().approx_eq(&g.factor(), 1e-14));
    }

    #[test]
    fn gauge_fix_moves_null_states_into_first_subspace() {
        let psi = amp("i+@j") * c(0.3, -0.4) + amp("-@-k");
        assert!(psi.is_null());
        let (_, fixed, _) = gauge_fix(&psi, &psi).unwrap();
        let [r1, _] = subspace_residuals(&fixed);
        assert!(r1 < 1e-14);
        assert!(gauge_fix(&Cq::ONE, &Cq::ONE).is_err());
    }

    #[test]
    fn compensating_field_solves_its_equation() {
        let psi = Cq::new(0.3, -1.0, 0.2, 0.8, -0.5, 0.1, 1.4, 0.0);
        let n = [0.0, 0.6, 0.8];
        let b = compensating_field(&psi, n);
        let lhs = b * psi;
        let rhs = -(Cq::I * psi * Cq::quaternion(0.0, 0.0, 0.6, 0.8));
        assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn obstruction_controls_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let report = local_gauge_obstruction_demo(&mut rng, 50);
        assert!(report.max_control_mismatch() < 1e-12);
        assert!(report.fraction_above_floor() >= 0.99);
    }

    #[test]
    fn eigenspace_dimensions() {
        assert_eq!(spin_eigenspace_dimension(0.5, false), 2);
        assert_eq!(spin_eigenspace_dimension(-0.5, false), 2);
        assert_eq!(spin_eigenspace_dimension(0.5, true), 1);
        assert_eq!(spin_eigenspace_dimension(-0.5, true), 1);
        assert_eq!(spin_eigenspace_dimension(0.0, false), 0);
    }
}
