//! Minkowski space as the purely imaginary complex quaternions, and Lorentz
//! transformations as rotor sandwich products `q ↦ ω q ω̄*`.

use std::f64::consts::PI;

use crate::cq::{Cq, TOLERANCE};
use crate::error::{Error, Result};

/// Relative tolerance on `ωω̄ = 1` for rotors accepted from outside.
pub const ROTOR_TOLERANCE: f64 = 1e-10;

/// An event or four-momentum `@t + ix + jy + kz` with real `t, x, y, z`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MinkowskiVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl MinkowskiVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        MinkowskiVector { t, x, y, z }
    }

    /// Four-momentum `@E + ip_x + jp_y + kp_z`.
    pub const fn momentum(energy: f64, px: f64, py: f64, pz: f64) -> Self {
        MinkowskiVector::new(energy, px, py, pz)
    }

    pub fn components(&self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    pub fn from_components(c: [f64; 4]) -> Self {
        MinkowskiVector::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_cq(&self) -> Cq {
        Cq::new(0.0, self.t, self.x, 0.0, self.y, 0.0, self.z, 0.0)
    }

    /// Reads a CQ as a Minkowski vector. Real-part noise below `1e-12` times
    /// the coefficient scale is clamped to zero; anything larger is rejected.
    pub fn from_cq(q: &Cq) -> Result<Self> {
        let scale = q.max_abs().max(1.0);
        let residual = [q.w, q.xi, q.yi, q.zi]
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()));
        if residual > TOLERANCE * scale {
            return Err(Error::NotMinkowski { residual });
        }
        Ok(MinkowskiVector::new(q.wi, q.x, q.y, q.z))
    }

    pub fn energy(&self) -> f64 {
        self.t
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn scale(&self) -> f64 {
        self.components()
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

impl std::ops::Add for MinkowskiVector {
    type Output = MinkowskiVector;
    fn add(self, r: MinkowskiVector) -> MinkowskiVector {
        MinkowskiVector::new(self.t + r.t, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl std::ops::Sub for MinkowskiVector {
    type Output = MinkowskiVector;
    fn sub(self, r: MinkowskiVector) -> MinkowskiVector {
        MinkowskiVector::new(self.t - r.t, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl std::ops::Mul<f64> for MinkowskiVector {
    type Output = MinkowskiVector;
    fn mul(self, s: f64) -> MinkowskiVector {
        MinkowskiVector::new(self.t * s, self.x * s, self.y * s, self.z * s)
    }
}

/// `⟨p,q⟩ = −½·tr(p̄q + q̄p) = Et − p_x x − p_y y − p_z z`.
pub fn scalar_product(p: &MinkowskiVector, q: &MinkowskiVector) -> f64 {
    let (p, q) = (p.to_cq(), q.to_cq());
    -0.5 * (p.quat_conj() * q + q.quat_conj() * p).trace().re
}

/// As [`scalar_product`] but for raw CQs, which must be purely imaginary.
pub fn scalar_product_cq(p: &Cq, q: &Cq) -> Result<f64> {
    Ok(scalar_product(
        &MinkowskiVector::from_cq(p)?,
        &MinkowskiVector::from_cq(q)?,
    ))
}

/// `−q̄q = t² − x² − y² − z²`.
pub fn proper_time_sq(q: &MinkowskiVector) -> f64 {
    let q = q.to_cq();
    -(q.quat_conj() * q).trace().re
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotorKind {
    Rotation,
    Boost,
    Composite,
}

/// Direction and angle (or rapidity) a rotor was generated from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotorGenerator {
    pub direction: [f64; 3],
    pub parameter: f64,
}

/// A unit CQ `ω` with `ωω̄ = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzRotor {
    omega: Cq,
    kind: RotorKind,
    generator: Option<RotorGenerator>,
}

fn check_direction(n: [f64; 3]) -> Result<()> {
    let norm_sq: f64 = n.iter().map(|v| v * v).sum();
    if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > 1e-12 {
        return Err(Error::BadDirection(format!("|n|² = {norm_sq}")));
    }
    Ok(())
}

fn unitality_residual(omega: &Cq) -> f64 {
    let scale = omega.norm_sqr().max(1.0);
    (*omega * omega.quat_conj()).max_abs_diff(&Cq::ONE) / scale
}

impl LorentzRotor {
    pub fn identity() -> Self {
        LorentzRotor {
            omega: Cq::ONE,
            kind: RotorKind::Composite,
            generator: None,
        }
    }

    /// `ω = cos(θ/2) + n sin(θ/2)`: rotation by `θ` about the unit axis `n`.
    pub fn rotation(n: [f64; 3], theta: f64) -> Result<Self> {
        check_direction(n)?;
        let (s, c) = (0.5 * theta).sin_cos();
        Ok(LorentzRotor {
            omega: Cq::quaternion(c, n[0] * s, n[1] * s, n[2] * s),
            kind: RotorKind::Rotation,
            generator: Some(RotorGenerator {
                direction: n,
                parameter: theta,
            }),
        })
    }

    /// `ω = cosh(Λ/2) + @n sinh(Λ/2)`: boost with rapidity `Λ` along `n`.
    pub fn boost(n: [f64; 3], rapidity: f64) -> Result<Self> {
        check_direction(n)?;
        let (s, c) = ((0.5 * rapidity).sinh(), (0.5 * rapidity).cosh());
        Ok(LorentzRotor {
            omega: Cq::new(c, 0.0, 0.0, n[0] * s, 0.0, n[1] * s, 0.0, n[2] * s),
            kind: RotorKind::Boost,
            generator: Some(RotorGenerator {
                direction: n,
                parameter: rapidity,
            }),
        })
    }

    /// Wraps an arbitrary unital CQ.
    pub fn from_omega(omega: Cq) -> Result<Self> {
        let residual = unitality_residual(&omega);
        if residual > ROTOR_TOLERANCE {
            return Err(Error::BadRotor { residual });
        }
        Ok(LorentzRotor {
            omega,
            kind: RotorKind::Composite,
            generator: None,
        })
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &LorentzRotor) -> Self {
        LorentzRotor {
            omega: self.omega * other.omega,
            kind: RotorKind::Composite,
            generator: None,
        }
    }

    pub fn omega(&self) -> Cq {
        self.omega
    }

    pub fn kind(&self) -> RotorKind {
        self.kind
    }

    pub fn generator(&self) -> Option<RotorGenerator> {
        self.generator
    }

    /// `ω̄*`, the right factor of the contravariant sandwich.
    pub fn right_factor(&self) -> Cq {
        self.omega.quat_conj().complex_conj()
    }

    pub fn unitality_residual(&self) -> f64 {
        unitality_residual(&self.omega)
    }
}

/// `q ↦ ω q ω̄*`.
pub fn apply_lorentz(rotor: &LorentzRotor, q: &MinkowskiVector) -> Result<MinkowskiVector> {
    let image = rotor.omega * q.to_cq() * rotor.right_factor();
    MinkowskiVector::from_cq(&image)
}

/// Covariant law `q̄ ↦ ω* q̄ ω̄`.
pub fn apply_covariant(rotor: &LorentzRotor, qbar: &Cq) -> Cq {
    rotor.omega.complex_conj() * *qbar * rotor.omega.quat_conj()
}

/// The rotor for a full turn, `ω(2π) = −1`.
pub fn full_turn(n: [f64; 3]) -> Result<LorentzRotor> {
    LorentzRotor::rotation(n, 2.0 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    const Z: [f64; 3] = [0.0, 0.0, 1.0];
    const X: [f64; 3] = [1.0, 0.0, 0.0];

    #[test]
    fn orthonormal_basis() {
        let e = [
            MinkowskiVector::new(1.0, 0.0, 0.0, 0.0),
            MinkowskiVector::new(0.0, 1.0, 0.0, 0.0),
            MinkowskiVector::new(0.0, 0.0, 1.0, 0.0),
            MinkowskiVector::new(0.0, 0.0, 0.0, 1.0),
        ];
        let eta = [1.0, -1.0, -1.0, -1.0];
        for a in 0..4 {
            for b in 0..4 {
                let expect = if a == b { eta[a] } else { 0.0 };
                assert_eq!(scalar_product(&e[a], &e[b]), expect);
            }
        }
    }

    #[test]
    fn proper_time_examples() {
        assert_eq!(
            proper_time_sq(&MinkowskiVector::new(1.0, 0.0, 0.0, 0.0)),
            1.0
        );
        assert_eq!(
            proper_time_sq(&MinkowskiVector::new(5.0, 3.0, 4.0, 0.0)),
            0.0
        );
        assert_eq!(
            proper_time_sq(&MinkowskiVector::new(0.0, 1.0, 0.0, 0.0)),
            -1.0
        );
    }

    #[test]
    fn rejects_non_minkowski() {
        assert!(matches!(
            MinkowskiVector::from_cq(&Cq::ONE),
            Err(Error::NotMinkowski { .. })
        ));
        assert!(scalar_product_cq(&Cq::I, &(Cq::IMAG * Cq::I)).is_err());
        let noisy = Cq::new(1e-14, 2.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        assert_eq!(
            MinkowskiVector::from_cq(&noisy).unwrap(),
            MinkowskiVector::new(2.0, 1.0, 0.0, 0.0)
        );
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(LorentzRotor::rotation(Z, 0.0).unwrap().omega(), Cq::ONE);
        let turn = full_turn(Z).unwrap().omega();
        assert!(turn.max_abs_diff(&-Cq::ONE) <= 1e-12);
        let quarter = LorentzRotor::rotation(Z, FRAC_PI_2).unwrap();
        let image = apply_lorentz(&quarter, &MinkowskiVector::new(0.0, 1.0, 0.0, 0.0)).unwrap();
        assert!((image.y - 1.0).abs() < 1e-15 && image.x.abs() < 1e-15);
    }

    #[test]
    fn rotors_satisfy_conjugation_invariants() {
        let n = [0.6, 0.0, 0.8];
        let r = LorentzRotor::rotation(n, 1.3).unwrap().omega();
        assert_eq!(r.complex_conj(), r);
        let b = LorentzRotor::boost(n, 0.7).unwrap().omega();
        assert!(b.quat_conj().complex_conj().approx_eq(&b, 1e-15));
    }

    #[test]
    fn bad_direction() {
        assert!(matches!(
            LorentzRotor::rotation([1.0, 1.0, 0.0], 0.3),
            Err(Error::BadDirection(_))
        ));
        assert!(LorentzRotor::boost([0.0, 0.0, 0.0], 0.3).is_err());
        assert!(matches!(
            LorentzRotor::from_omega(Cq::ONE * 2.0),
            Err(Error::BadRotor { .. })
        ));
    }

    #[test]
    fn boost_of_time_axis() {
        // ω @ ω̄* = @cosh Λ − i sinh Λ for a boost along i
        let lambda = 0.83;
        let b = LorentzRotor::boost(X, lambda).unwrap();
        let image = apply_lorentz(&b, &MinkowskiVector::new(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert!((image.t - lambda.cosh()).abs() < 1e-14);
        assert!((image.x + lambda.sinh()).abs() < 1e-14);
    }

    #[test]
    fn collinear_boosts_add_rapidities() {
        let (l1, l2) = (0.4, -1.1);
        let composed = LorentzRotor::boost(X, l1)
            .unwrap()
            .compose(&LorentzRotor::boost(X, l2).unwrap());
        let direct = LorentzRotor::boost(X, l1 + l2).unwrap();
        assert!(composed.omega().approx_eq(&direct.omega(), 1e-14));
    }

    #[test]
    fn covariant_law_matches_conjugated_contravariant() {
        let r = LorentzRotor::boost([0.0, 0.6, 0.8], 0.5)
            .unwrap()
            .compose(&LorentzRotor::rotation([1.0, 0.0, 0.0], 2.1).unwrap());
        let q = MinkowskiVector::new(0.3, -1.0, 2.0, 0.5);
        let lhs = apply_lorentz(&r, &q).unwrap().to_cq().quat_conj();
        let rhs = apply_covariant(&r, &q.to_cq().quat_conj());
        assert!(lhs.approx_eq(&rhs, 1e-13));
        let turn = full_turn(Z).unwrap();
        let qbar = q.to_cq().quat_conj();
        assert!(apply_covariant(&turn, &qbar).approx_eq(&qbar, 1e-13));
    }
}
