//! Complex quaternions ℂ⊗ℍ.
//!
//! A [`Cq`] is stored as eight real coefficients
//! `(w + @wI) + (x + @xI)i + (y + @yI)j + (z + @zI)k`, where `@` is the
//! complex unit. `@` commutes with `i`, `j` and `k`, so every product is the
//! Hamilton product with complex coefficients.
//!
//! The algebra is isomorphic to the complex 2×2 matrices. The map used here
//! is `1 ↦ I`, `i ↦ −𝕚σ₁`, `j ↦ −𝕚σ₂`, `k ↦ −𝕚σ₃`, `@ ↦ 𝕚I`, under which the
//! determinant of the image equals [`Cq::quadric`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A complex number `re + @·im`; the image of [`Cq::trace`].
pub type ComplexScalar = Complex64;

/// Relative threshold below which `|quadric(a)| / |a|²` counts as null.
pub const NULL_THRESHOLD: f64 = 1e-10;

/// Default comparison tolerance for unit-scale values.
pub const TOLERANCE: f64 = 1e-12;

const C0: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Cq {
    pub w: f64,
    pub wi: f64,
    pub x: f64,
    pub xi: f64,
    pub y: f64,
    pub yi: f64,
    pub z: f64,
    pub zi: f64,
}

impl Cq {
    pub const ZERO: Cq = Cq::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    pub const ONE: Cq = Cq::new(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    /// The complex unit `@`.
    pub const IMAG: Cq = Cq::new(0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    pub const I: Cq = Cq::new(0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    pub const J: Cq = Cq::new(0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0);
    pub const K: Cq = Cq::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0);

    #[allow(clippy::too_many_arguments)]
    pub const fn new(w: f64, wi: f64, x: f64, xi: f64, y: f64, yi: f64, z: f64, zi: f64) -> Self {
        Cq {
            w,
            wi,
            x,
            xi,
            y,
            yi,
            z,
            zi,
        }
    }

    /// Builds `c₀ + c₁i + c₂j + c₃k` from complex coefficients.
    pub fn from_coeffs(c: [ComplexScalar; 4]) -> Self {
        Cq::new(
            c[0].re, c[0].im, c[1].re, c[1].im, c[2].re, c[2].im, c[3].re, c[3].im,
        )
    }

    /// The complex coefficients `(ψ₀, ψ₁, ψ₂, ψ₃)` of `ψ₀ + iψ₁ + jψ₂ + kψ₃`.
    pub fn coeffs(&self) -> [ComplexScalar; 4] {
        [
            Complex64::new(self.w, self.wi),
            Complex64::new(self.x, self.xi),
            Complex64::new(self.y, self.yi),
            Complex64::new(self.z, self.zi),
        ]
    }

    pub fn from_array(a: [f64; 8]) -> Self {
        Cq::new(a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7])
    }

    pub fn to_array(&self) -> [f64; 8] {
        [
            self.w, self.wi, self.x, self.xi, self.y, self.yi, self.z, self.zi,
        ]
    }

    /// A complex scalar embedded as `re + @im`.
    pub fn scalar(c: ComplexScalar) -> Self {
        Cq::from_coeffs([c, C0, C0, C0])
    }

    pub fn real(r: f64) -> Self {
        Cq { w: r, ..Cq::ZERO }
    }

    /// A real quaternion `w + xi + yj + zk`.
    pub fn quaternion(w: f64, x: f64, y: f64, z: f64) -> Self {
        Cq::new(w, 0.0, x, 0.0, y, 0.0, z, 0.0)
    }

    /// Splits `X + @Y` into the real quaternions `X` and `Y`, each as `[w, x, y, z]`.
    pub fn split(&self) -> ([f64; 4], [f64; 4]) {
        (
            [self.w, self.x, self.y, self.z],
            [self.wi, self.xi, self.yi, self.zi],
        )
    }

    /// `(o₁o₂)* = o₁*o₂*`: negates every `@` coefficient.
    pub fn complex_conj(&self) -> Self {
        Cq::new(
            self.w, -self.wi, self.x, -self.xi, self.y, -self.yi, self.z, -self.zi,
        )
    }

    /// Quaternionic conjugate: negates the `i`, `j`, `k` parts, reverses products.
    pub fn quat_conj(&self) -> Self {
        Cq::new(
            self.w, self.wi, -self.x, -self.xi, -self.y, -self.yi, -self.z, -self.zi,
        )
    }

    /// `½(q + q̄)`.
    pub fn trace(&self) -> ComplexScalar {
        Complex64::new(self.w, self.wi)
    }

    /// Scalar part of `a·ā`, i.e. `ψ₀² + ψ₁² + ψ₂² + ψ₃²`.
    pub fn quadric(&self) -> ComplexScalar {
        self.coeffs().iter().map(|c| c * c).sum()
    }

    /// The part with vanishing trace, `½(q − q̄)`.
    pub fn vector_part(&self) -> Self {
        Cq {
            w: 0.0,
            wi: 0.0,
            ..*self
        }
    }

    /// Euclidean norm of the eight real coefficients.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.to_array().iter().map(|v| v * v).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest coefficient difference; the comparison metric used throughout.
    pub fn max_abs_diff(&self, other: &Cq) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn approx_eq(&self, other: &Cq, tol: f64) -> bool {
        let scale = self.max_abs().max(other.max_abs()).max(1.0);
        self.max_abs_diff(other) <= tol * scale
    }

    /// True when `|quadric| ≤ NULL_THRESHOLD·|a|²`; such elements have no inverse.
    pub fn is_null(&self) -> bool {
        self.quadric().norm() <= NULL_THRESHOLD * self.norm_sqr()
    }

    /// `ā / quadric(a)`.
    pub fn invert(&self) -> Result<Self> {
        self.invert_with(NULL_THRESHOLD)
    }

    /// As [`Cq::invert`] with an explicit relative degeneracy threshold.
    pub fn invert_with(&self, threshold: f64) -> Result<Self> {
        let q = self.quadric();
        if q.norm() <= threshold * self.norm_sqr() {
            return Err(Error::NotInvertible { quadric: q.norm() });
        }
        Ok(self.quat_conj() * q.inv())
    }

    pub fn to_matrix(&self) -> Matrix2C {
        let [a0, a1, a2, a3] = self.coeffs();
        let im = Complex64::i();
        Matrix2C::new(a0 - im * a3, -im * a1 - a2, -im * a1 + a2, a0 + im * a3)
    }

    pub fn from_matrix(m: &Matrix2C) -> Self {
        let im = Complex64::i();
        let a0 = (m.m11 + m.m22) * 0.5;
        let a1 = im * (m.m12 + m.m21) * 0.5;
        let a2 = (m.m21 - m.m12) * 0.5;
        let a3 = im * (m.m11 - m.m22) * 0.5;
        Cq::from_coeffs([a0, a1, a2, a3])
    }

    fn zip(self, rhs: Cq, f: impl Fn(f64, f64) -> f64) -> Cq {
        let (a, b) = (self.to_array(), rhs.to_array());
        Cq::from_array(std::array::from_fn(|n| f(a[n], b[n])))
    }

    fn map(self, f: impl Fn(f64) -> f64) -> Cq {
        Cq::from_array(self.to_array().map(f))
    }
}

impl Add for Cq {
    type Output = Cq;
    fn add(self, rhs: Cq) -> Cq {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for Cq {
    type Output = Cq;
    fn sub(self, rhs: Cq) -> Cq {
        self.zip(rhs, |a, b| a - b)
    }
}

impl AddAssign for Cq {
    fn add_assign(&mut self, rhs: Cq) {
        *self = *self + rhs;
    }
}

impl SubAssign for Cq {
    fn sub_assign(&mut self, rhs: Cq) {
        *self = *self - rhs;
    }
}

impl Neg for Cq {
    type Output = Cq;
    fn neg(self) -> Cq {
        self.map(|a| -a)
    }
}

impl Mul for Cq {
    type Output = Cq;
    fn mul(self, rhs: Cq) -> Cq {
        let [a0, a1, a2, a3] = self.coeffs();
        let [b0, b1, b2, b3] = rhs.coeffs();
        Cq::from_coeffs([
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ])
    }
}

impl Mul<f64> for Cq {
    type Output = Cq;
    fn mul(self, rhs: f64) -> Cq {
        self.map(|a| a * rhs)
    }
}

impl Mul<Cq> for f64 {
    type Output = Cq;
    fn mul(self, rhs: Cq) -> Cq {
        rhs * self
    }
}

impl Mul<ComplexScalar> for Cq {
    type Output = Cq;
    fn mul(self, rhs: ComplexScalar) -> Cq {
        Cq::from_coeffs(self.coeffs().map(|c| c * rhs))
    }
}

impl Mul<Cq> for ComplexScalar {
    type Output = Cq;
    fn mul(self, rhs: Cq) -> Cq {
        rhs * self
    }
}

impl Div<f64> for Cq {
    type Output = Cq;
    fn div(self, rhs: f64) -> Cq {
        self.map(|a| a / rhs)
    }
}

impl From<ComplexScalar> for Cq {
    fn from(c: ComplexScalar) -> Self {
        Cq::scalar(c)
    }
}

impl From<f64> for Cq {
    fn from(r: f64) -> Self {
        Cq::real(r)
    }
}

/// Canonical text form `w+wI@+xi+xI@i+yj+yI@j+zk+zI@k` with zero terms
/// omitted and unit coefficients on non-scalar terms elided.
impl fmt::Display for Cq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNITS: [&str; 8] = ["", "@", "i", "@i", "j", "@j", "k", "@k"];
        let mut out = String::new();
        for (c, unit) in self.to_array().into_iter().zip(UNITS) {
            if c == 0.0 {
                continue;
            }
            let sign = if c < 0.0 {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if unit.is_empty() {
                out.push_str(&format!("{sign}{mag}"));
            } else if mag == 1.0 {
                out.push_str(&format!("{sign}{unit}"));
            } else {
                out.push_str(&format!("{sign}{mag}{unit}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// A complex 2×2 matrix `[[m11, m12], [m21, m22]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix2C {
    pub m11: ComplexScalar,
    pub m12: ComplexScalar,
    pub m21: ComplexScalar,
    pub m22: ComplexScalar,
}

impl Matrix2C {
    pub const fn new(
        m11: ComplexScalar,
        m12: ComplexScalar,
        m21: ComplexScalar,
        m22: ComplexScalar,
    ) -> Self {
        Matrix2C { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        Matrix2C::new(one, C0, C0, one)
    }

    pub fn det(&self) -> ComplexScalar {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        [self.m11, self.m12, self.m21, self.m22]
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn column(&self, n: usize) -> [ComplexScalar; 2] {
        match n {
            0 => [self.m11, self.m21],
            1 => [self.m12, self.m22],
            _ => panic!("a 2×2 matrix has no column {n}"),
        }
    }

    pub fn row(&self, n: usize) -> [ComplexScalar; 2] {
        match n {
            0 => [self.m11, self.m12],
            1 => [self.m21, self.m22],
            _ => panic!("a 2×2 matrix has no row {n}"),
        }
    }

    pub fn from_columns(c0: [ComplexScalar; 2], c1: [ComplexScalar; 2]) -> Self {
        Matrix2C::new(c0[0], c1[0], c0[1], c1[1])
    }
}

impl Mul for Matrix2C {
    type Output = Matrix2C;
    fn mul(self, r: Matrix2C) -> Matrix2C {
        Matrix2C::new(
            self.m11 * r.m11 + self.m12 * r.m21,
            self.m11 * r.m12 + self.m12 * r.m22,
            self.m21 * r.m11 + self.m22 * r.m21,
            self.m21 * r.m12 + self.m22 * r.m22,
        )
    }
}

impl Sub for Matrix2C {
    type Output = Matrix2C;
    fn sub(self, r: Matrix2C) -> Matrix2C {
        Matrix2C::new(
            self.m11 - r.m11,
            self.m12 - r.m12,
            self.m21 - r.m21,
            self.m22 - r.m22,
        )
    }
}
