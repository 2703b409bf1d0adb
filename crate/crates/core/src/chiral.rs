//! Ordinary 4-component Dirac spinors in the chiral (Weyl) representation and
//! the map from first-subspace CQ spinors onto them.

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;

use crate::cq::{ComplexScalar, Cq, Matrix2C};
use crate::error::{Error, Result};
use crate::wave::{real_rank, Species};

/// Relative out-of-subspace tolerance accepted by [`cq_to_chiral`].
pub const SUBSPACE_TOLERANCE: f64 = 1e-10;

pub type Matrix4C = Matrix4<Complex64>;

const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiralSpinor(pub [Complex64; 4]);

impl ChiralSpinor {
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    fn to_vector(self) -> nalgebra::Vector4<Complex64> {
        nalgebra::Vector4::from_column_slice(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaSet {
    pub gamma: [Matrix4C; 4],
}

impl GammaSet {
    /// `γ⁰ = [[0, 1], [1, 0]]`, `γᵏ = [[0, σₖ], [−σₖ, 0]]`.
    pub fn chiral() -> Self {
        let zero = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        let sigma = [
            [[zero, one], [one, zero]],
            [[zero, c(0.0, -1.0)], [c(0.0, 1.0), zero]],
            [[one, zero], [zero, -one]],
        ];
        let mut g0 = Matrix4C::zeros();
        for n in 0..2 {
            g0[(n, n + 2)] = one;
            g0[(n + 2, n)] = one;
        }
        let spatial = sigma.map(|s| {
            let mut g = Matrix4C::zeros();
            for r in 0..2 {
                for col in 0..2 {
                    g[(r, col + 2)] = s[r][col];
                    g[(r + 2, col)] = -s[r][col];
                }
            }
            g
        });
        GammaSet {
            gamma: [g0, spatial[0], spatial[1], spatial[2]],
        }
    }

    /// `γ^μ p_μ = γ⁰E − γ¹p_x − γ²p_y − γ³p_z`.
    pub fn slash(&self, p: [f64; 4]) -> Matrix4C {
        (0..4).fold(Matrix4C::zeros(), |acc, mu| {
            acc + self.gamma[mu] * c(METRIC[mu] * p[mu], 0.0)
        })
    }

    /// `|{γ^μ, γ^ν} − 2η^{μν}|` entrywise maximum for every pair.
    pub fn anticommutator_table(&self) -> [[f64; 4]; 4] {
        let mut table = [[0.0; 4]; 4];
        for (mu, row) in table.iter_mut().enumerate() {
            for (nu, cell) in row.iter_mut().enumerate() {
                let anti = self.gamma[mu] * self.gamma[nu] + self.gamma[nu] * self.gamma[mu];
                let eta = if mu == nu { 2.0 * METRIC[mu] } else { 0.0 };
                let target = Matrix4C::identity() * c(eta, 0.0);
                *cell = (anti - target).iter().map(|v| v.norm()).fold(0.0, f64::max);
            }
        }
        table
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaCheck {
    pub table: [[f64; 4]; 4],
    pub max_residual: f64,
}

pub fn gamma_algebra_check() -> GammaCheck {
    let table = GammaSet::chiral().anticommutator_table();
    let max_residual = table.iter().flatten().cloned().fold(0.0, f64::max);
    GammaCheck {
        table,
        max_residual,
    }
}

/// `(ψ₁, ψ₂)` in the first subspace to `(χ_L, χ_R)`. Each component's
/// first-column entries are halved: `c₁ = (a₀ − 𝕚a₃)/2`, `c₂ = (a₂ − 𝕚a₁)/2`.
pub fn cq_to_chiral(psi1: &Cq, psi2: &Cq) -> Result<ChiralSpinor> {
    let (m1, m2) = (psi1.to_matrix(), psi2.to_matrix());
    let out_norm = |m: &Matrix2C| m.column(1).iter().map(|v| v.norm_sqr()).sum::<f64>();
    let total = (m1.norm().powi(2) + m2.norm().powi(2)).sqrt();
    let outside = (out_norm(&m1) + out_norm(&m2)).sqrt();
    if outside > SUBSPACE_TOLERANCE * total.max(1.0) {
        return Err(Error::NotInSubspace {
            residual: outside / total,
        });
    }
    let [u0, u1] = m1.column(0);
    let [v0, v1] = m2.column(0);
    Ok(ChiralSpinor([u0 * 0.5, u1 * 0.5, v0 * 0.5, v1 * 0.5]))
}

pub fn chiral_to_cq(spinor: &ChiralSpinor) -> (Cq, Cq) {
    let zero = ComplexScalar::new(0.0, 0.0);
    let [a, b, x, y] = spinor.0;
    let lift = |u: ComplexScalar, v: ComplexScalar| {
        Cq::from_matrix(&Matrix2C::from_columns([u * 2.0, v * 2.0], [zero, zero]))
    };
    (lift(a, b), lift(x, y))
}

/// `(−s·γ^μp_μ − m)C` for phase `e^{s@⟨p,q⟩}`; for particles (`s = −1`) this
/// is `(p̸ − m)C`.
pub fn chiral_dirac_residual(
    spinor: &ChiralSpinor,
    p: [f64; 4],
    m: f64,
    species: Species,
) -> ChiralSpinor {
    let s = species.phase_sign().value();
    let op = GammaSet::chiral().slash(p) * c(-s, 0.0) - Matrix4C::identity() * c(m, 0.0);
    let r = op * spinor.to_vector();
    ChiralSpinor([r[0], r[1], r[2], r[3]])
}

/// `S_z` in the chiral basis, `diag(½, −½, ½, −½)`.
pub fn chiral_spin_z(spinor: &ChiralSpinor) -> ChiralSpinor {
    let [a, b, x, y] = spinor.0;
    ChiralSpinor([a * 0.5, b * -0.5, x * 0.5, y * -0.5])
}

/// Complex nullity of `p̸ − m` (or `−p̸ − m`) at rest.
pub fn chiral_rest_nullity(m: f64, species: Species) -> usize {
    let s = species.phase_sign().value();
    let op = GammaSet::chiral().slash([m, 0.0, 0.0, 0.0]) * c(-s, 0.0)
        - Matrix4C::identity() * c(m, 0.0);
    // real 8×8 embedding [[Re, −Im], [Im, Re]]
    let real = DMatrix::from_fn(8, 8, |r, col| {
        let v = op[(r % 4, col % 4)];
        match (r < 4, col < 4) {
            (true, true) | (false, false) => v.re,
            (true, false) => -v.im,
            (false, true) => v.im,
        }
    });
    (8 - real_rank(&real, 1e-12)) / 2
}
