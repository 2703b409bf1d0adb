//! Pointwise Lagrangian densities of the CQ Dirac field coupled to an
//! electromagnetic potential, the field strength, and a periodic-box
//! discretisation of the free action.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::cq::{ComplexScalar, Cq};
use crate::error::{Error, Result};
use crate::relativity::MinkowskiVector;
use crate::wave::{apply_d, apply_dbar, Field, LinearScalarFunction, PhaseSign, SpinorField};

/// Windings `k·L/2π` closer than this to an integer count as periodic.
pub const WINDING_TOLERANCE: f64 = 1e-9;

/// The potential `A = @φ + iA_x + jA_y + kA_z`, a constant plus plane waves.
#[derive(Clone, Debug)]
pub struct PotentialField(Field);

impl PotentialField {
    pub fn zero() -> Self {
        PotentialField(Field::zero())
    }

    pub fn constant(a: Cq) -> Self {
        PotentialField(Field::Constant(a))
    }

    pub fn from_field(f: Field) -> Self {
        PotentialField(f)
    }

    /// `½(a e^{@⟨k,q⟩} − ā* e^{−@⟨k,q⟩})`, which satisfies `A* = −Ā` at every
    /// point for any CQ amplitude `a`.
    pub fn physical_wave(amplitude: Cq, k: MinkowskiVector) -> Self {
        let partner = -amplitude.quat_conj().complex_conj();
        PotentialField(Field::Sum(vec![
            Field::plane_wave(amplitude * 0.5, k, PhaseSign::Positive),
            Field::plane_wave(partner * 0.5, k, PhaseSign::Negative),
        ]))
    }

    pub fn field(&self) -> &Field {
        &self.0
    }

    pub fn eval(&self, q: &MinkowskiVector) -> Cq {
        self.0.eval(q)
    }

    pub fn plus(&self, other: &PotentialField) -> Self {
        PotentialField(self.0.clone() + other.0.clone())
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        PotentialField(self.0.clone().scaled(lambda))
    }

    /// `A ↦ A + Dα`.
    pub fn gauge_shift(&self, alpha: &LinearScalarFunction) -> Result<Self> {
        let d_alpha = apply_d(&Field::Linear(*alpha))?;
        Ok(PotentialField(self.0.clone() + d_alpha))
    }

    /// True when `A* = −Ā` at `q` to within `tol` times the value scale.
    pub fn is_physical_at(&self, q: &MinkowskiVector, tol: f64) -> bool {
        let a = self.eval(q);
        a.complex_conj().approx_eq(&-a.quat_conj(), tol)
    }
}

/// `F = ½(D̄A − conj(D̄A))` at a point; it has no scalar part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldStrength(pub Cq);

pub fn field_strength(a: &PotentialField, q: &MinkowskiVector) -> Result<FieldStrength> {
    let dbar_a = apply_dbar(a.field())?.eval(q);
    Ok(FieldStrength((dbar_a - dbar_a.quat_conj()) * 0.5))
}

/// `¼(F² + (F*)²)`, before discarding the (vanishing) imaginary part.
pub fn la_density_complex(a: &PotentialField, q: &MinkowskiVector) -> Result<ComplexScalar> {
    let FieldStrength(f) = field_strength(a, q)?;
    let fc = f.complex_conj();
    Ok((f * f + fc * fc).trace() * 0.25)
}

/// `L_A = ¼(F² + (F*)²)`.
pub fn la_density(a: &PotentialField, q: &MinkowskiVector) -> Result<f64> {
    Ok(la_density_complex(a, q)?.re)
}

/// `ψ̄*`, the conjugate used in the row vector of the Lagrangian.
fn adjoint(psi: &Cq) -> Cq {
    psi.quat_conj().complex_conj()
}

/// A spinor with its derivative fields built once, for repeated evaluation.
struct Prepared<'a> {
    psi: &'a SpinorField,
    dbar_psi1: Field,
    d_psi2: Field,
}

impl<'a> Prepared<'a> {
    fn new(psi: &'a SpinorField) -> Result<Self> {
        Ok(Prepared {
            psi,
            dbar_psi1: apply_dbar(&psi.psi1)?,
            d_psi2: apply_d(&psi.psi2)?,
        })
    }

    fn l0(&self, m: f64, q: &MinkowskiVector) -> ComplexScalar {
        let [p1, p2] = self.psi.eval(q);
        let (a1, a2) = (adjoint(&p1), adjoint(&p2));
        let kinetic = a1 * self.dbar_psi1.eval(q) + a2 * self.d_psi2.eval(q);
        let mass = (a1 * p2 + a2 * p1) * m;
        (kinetic - mass).trace()
    }
}

/// `L₀ = tr(ψ̄₁*D̄ψ₁ + ψ̄₂*Dψ₂ − mψ̄₁*ψ₂ − mψ̄₂*ψ₁)`.
pub fn l0_density(psi: &SpinorField, m: f64, q: &MinkowskiVector) -> Result<ComplexScalar> {
    Ok(Prepared::new(psi)?.l0(m, q))
}

/// `L_int = tr(@e ψ̄₁* Ā ψ₁ + @e ψ̄₂* A ψ₂)`.
pub fn l_int_density(
    psi: &SpinorField,
    a: &PotentialField,
    charge: f64,
    q: &MinkowskiVector,
) -> Result<ComplexScalar> {
    let [p1, p2] = psi.eval(q);
    let av = a.eval(q);
    let inner = adjoint(&p1) * av.quat_conj() * p1 + adjoint(&p2) * av * p2;
    Ok((Cq::IMAG * inner * charge).trace())
}

/// `L_QED = L₀ + L_int + L_A`.
pub fn lqed_density(
    psi: &SpinorField,
    a: &PotentialField,
    m: f64,
    charge: f64,
    q: &MinkowskiVector,
) -> Result<ComplexScalar> {
    let l0 = l0_density(psi, m, q)?;
    let lint = l_int_density(psi, a, charge, q)?;
    let la = la_density_complex(a, q)?;
    Ok(l0 + lint + la)
}

/// Whether right multiplication by `Σ` leaves `L₀` invariant: `ΣΣ̄* = 1`.
pub fn is_symmetry(sigma: &Cq, tol: f64) -> bool {
    let prod = *sigma * sigma.quat_conj().complex_conj();
    prod.max_abs_diff(&Cq::ONE) <= tol * sigma.norm_sqr().max(1.0)
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Riemann sum of `L₀` over the periodic box `[0,T)×[0,X)×[0,Y)×[0,Z)` with
/// `n` points per axis. Every plane-wave momentum must close over the box.
pub fn discrete_action(
    psi: &SpinorField,
    m: f64,
    extents: [f64; 4],
    n: usize,
) -> Result<ComplexScalar> {
    for p in psi.plane_wave_momenta()? {
        for (component, (k, len)) in p.components().iter().zip(extents).enumerate() {
            let winding = k * len / TAU;
            if (winding - winding.round()).abs() > WINDING_TOLERANCE {
                return Err(Error::IncommensurateMomenta { component, winding });
            }
        }
    }
    let prepared = Prepared::new(psi)?;
    let steps = extents.map(|l| l / n as f64);
    let (mut re, mut im) = (CompensatedSum::default(), CompensatedSum::default());
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let q = MinkowskiVector::new(
                        a as f64 * steps[0],
                        b as f64 * steps[1],
                        c as f64 * steps[2],
                        d as f64 * steps[3],
                    );
                    let v = prepared.l0(m, &q);
                    re.add(v.re);
                    im.add(v.im);
                }
            }
        }
    }
    let cell: f64 = steps.iter().product();
    Ok(Complex64::new(re.value(), im.value()) * cell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wave::{make_solution, rest_frame_solution, Species};

    fn at(t: f64, x: f64, y: f64, z: f64) -> MinkowskiVector {
        MinkowskiVector::new(t, x, y, z)
    }

    #[test]
    fn on_shell_density_vanishes() {
        let s = rest_frame_solution(
            Cq::new(0.3, 0.1, -0.2, 0.5, 1.0, 0.0, 0.2, -0.7),
            1.2,
            Species::Particle,
        );
        let field = SpinorField::from(s);
        for q in [at(0.0, 0.0, 0.0, 0.0), at(1.3, -0.2, 4.0, 0.1)] {
            assert!(l0_density(&field, 1.2, &q).unwrap().norm() < 1e-14);
        }
    }

    #[test]
    fn lower_component_zero_matches_hand_expansion() {
        let psi1 = Cq::new(0.3, 0.1, -0.2, 0.5, 1.0, 0.0, 0.2, -0.7);
        let p = at(0.9, 0.3, -0.4, 0.2);
        let f = SpinorField::new(
            Field::plane_wave(psi1, p, PhaseSign::Negative),
            Field::zero(),
        );
        let q = at(0.4, 1.0, -1.5, 0.25);
        let l0 = l0_density(&f, 2.0, &q).unwrap();
        let v = f.psi1.eval(&q);
        let dbar = Cq::IMAG * p.to_cq().quat_conj() * -1.0 * v;
        let expected = (v.quat_conj().complex_conj() * dbar).trace();
        assert!((l0 - expected).norm() < 1e-14);
    }

    #[test]
    fn constant_potential_has_no_field_strength() {
        let a = PotentialField::constant(at(1.0, 2.0, -3.0, 0.5).to_cq());
        let q = at(0.1, 0.2, 0.3, 0.4);
        assert_eq!(field_strength(&a, &q).unwrap().0, Cq::ZERO);
        assert_eq!(la_density(&a, &q).unwrap(), 0.0);
    }

    #[test]
    fn zero_coupling_terms() {
        let s = SpinorField::from(
            make_solution(&at(1.0, 0.0, 0.0, 0.0), 1.0, Species::Particle, Cq::J).unwrap(),
        );
        let a = PotentialField::physical_wave(
            Cq::new(0.2, 0.1, 0.0, 0.3, 0.5, 0.0, 0.1, 0.1),
            at(1.0, 1.0, 0.0, 0.0),
        );
        let q = at(0.3, 0.1, 0.0, 2.0);
        assert_eq!(
            l_int_density(&s, &a, 0.0, &q).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        assert_eq!(
            l_int_density(&s, &PotentialField::zero(), 1.5, &q).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn physical_wave_is_real_valued() {
        let a = PotentialField::physical_wave(
            Cq::new(0.2, 0.1, -1.0, 0.3, 0.5, 0.0, 0.1, 0.9),
            at(1.0, 0.5, 0.0, -2.0),
        );
        for q in [at(0.0, 0.0, 0.0, 0.0), at(1.0, -2.0, 0.5, 3.0)] {
            assert!(a.is_physical_at(&q, 1e-15));
            assert!(MinkowskiVector::from_cq(&a.eval(&q)).is_ok());
        }
    }

    #[test]
    fn symmetry_predicate() {
        assert!(is_symmetry(&Cq::IMAG, 1e-12));
        assert!(is_symmetry(&Cq::quaternion(0.6, 0.0, 0.8, 0.0), 1e-12));
        assert!(!is_symmetry(&(Cq::ONE + Cq::IMAG * Cq::K), 1e-12));
        assert!(!is_symmetry(&(Cq::ONE * 2.0), 1e-12));
    }

    #[test]
    fn incommensurate_box_is_rejected() {
        let s = SpinorField::from(
            make_solution(&at(1.0, 0.0, 0.0, 0.0), 1.0, Species::Particle, Cq::ONE).unwrap(),
        );
        let err = discrete_action(&s, 1.0, [1.0, TAU, TAU, TAU], 4).unwrap_err();
        assert!(matches!(
            err,
            Error::IncommensurateMomenta { component: 0, .. }
        ));
        let linear = SpinorField::new(Field::Coordinate, Field::zero());
        assert!(matches!(
            discrete_action(&linear, 1.0, [TAU; 4], 4),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn single_solution_has_zero_action() {
        let s = SpinorField::from(
            make_solution(&at(1.0, 0.0, 0.0, 0.0), 1.0, Species::Particle, Cq::K).unwrap(),
        );
        assert!(discrete_action(&s, 1.0, [TAU; 4], 6).unwrap().norm() < 1e-10);
    }
}
