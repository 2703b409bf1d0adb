//! The differentiation operator `D = @∂_t − i∂_x − j∂_y − k∂_z` on a closed
//! family of fields, and the Klein–Gordon and two-component Dirac equations.
//!
//! Fields are symbolic: constants, plane waves `a·e^{s@⟨p,q⟩}`, real linear
//! functions `⟨a,q⟩ + c`, the coordinate `q` itself, and finite complex
//! combinations of those. On a plane wave, `D` acts as left multiplication by
//! `s@p` and `D̄` as left multiplication by `s@p̄`, so derivatives are exact.
//! Arbitrary closures can be wrapped in [`Field::Opaque`] for evaluation, but
//! they cannot be differentiated.
//!
//! Phase convention: particles carry `e^{−@⟨p,q⟩}` with `E > 0`, antiparticles
//! `e^{+@⟨p,q⟩}`.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::cq::{ComplexScalar, Cq};
use crate::error::{Error, Result};
use crate::lagrangian::PotentialField;
use crate::relativity::{apply_lorentz, scalar_product, LorentzRotor, MinkowskiVector};

/// `|pp̄ + m²| ≤ ON_SHELL_TOLERANCE·max(1, E²)` counts as on shell.
pub const ON_SHELL_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhaseSign {
    /// `e^{+@⟨p,q⟩}`
    Positive,
    /// `e^{−@⟨p,q⟩}`
    Negative,
}

impl PhaseSign {
    pub fn value(self) -> f64 {
        match self {
            PhaseSign::Positive => 1.0,
            PhaseSign::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            PhaseSign::Positive => PhaseSign::Negative,
            PhaseSign::Negative => PhaseSign::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Species {
    Particle,
    Antiparticle,
}

impl Species {
    pub fn phase_sign(self) -> PhaseSign {
        match self {
            Species::Particle => PhaseSign::Negative,
            Species::Antiparticle => PhaseSign::Positive,
        }
    }

    /// `+1` for particles, `−1` for antiparticles: the `±` of `(ψ, ±ψ)ᵀe^{∓@mt}`.
    pub fn sign(self) -> f64 {
        match self {
            Species::Particle => 1.0,
            Species::Antiparticle => -1.0,
        }
    }
}

/// `e^{s@θ}` as a complex scalar.
pub fn phase(sign: PhaseSign, theta: f64) -> ComplexScalar {
    Complex64::from_polar(1.0, sign.value() * theta)
}

/// `amplitude·e^{s@⟨p,q⟩}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWaveScalarField {
    pub amplitude: ComplexScalar,
    pub momentum: MinkowskiVector,
    pub sign: PhaseSign,
}

impl PlaneWaveScalarField {
    pub fn eval(&self, q: &MinkowskiVector) -> ComplexScalar {
        self.amplitude * phase(self.sign, scalar_product(&self.momentum, q))
    }
}

/// `α(q) = ⟨a,q⟩ + offset`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LinearScalarFunction {
    pub gradient: MinkowskiVector,
    pub offset: f64,
}

impl LinearScalarFunction {
    pub fn new(gradient: MinkowskiVector, offset: f64) -> Self {
        LinearScalarFunction { gradient, offset }
    }

    pub fn constant(offset: f64) -> Self {
        LinearScalarFunction::new(MinkowskiVector::default(), offset)
    }

    pub fn eval(&self, q: &MinkowskiVector) -> f64 {
        scalar_product(&self.gradient, q) + self.offset
    }
}

type ScalarClosure = Arc<dyn Fn(&MinkowskiVector) -> f64 + Send + Sync>;
type CqClosure = Arc<dyn Fn(&MinkowskiVector) -> Cq + Send + Sync>;

/// A real scalar function of spacetime; only the linear case is differentiable.
#[derive(Clone)]
pub enum ScalarFunction {
    Linear(LinearScalarFunction),
    General(ScalarClosure),
}

impl ScalarFunction {
    pub fn general(f: impl Fn(&MinkowskiVector) -> f64 + Send + Sync + 'static) -> Self {
        ScalarFunction::General(Arc::new(f))
    }

    pub fn eval(&self, q: &MinkowskiVector) -> f64 {
        match self {
            ScalarFunction::Linear(l) => l.eval(q),
            ScalarFunction::General(f) => f(q),
        }
    }

    pub fn as_linear(&self) -> Result<&LinearScalarFunction> {
        match self {
            ScalarFunction::Linear(l) => Ok(l),
            ScalarFunction::General(_) => Err(Error::UnsupportedField(
                "gauge function is not linear in q".into(),
            )),
        }
    }
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarFunction::Linear(l) => f.debug_tuple("Linear").field(l).finish(),
            ScalarFunction::General(_) => f.write_str("General(<closure>)"),
        }
    }
}

impl From<LinearScalarFunction> for ScalarFunction {
    fn from(l: LinearScalarFunction) -> Self {
        ScalarFunction::Linear(l)
    }
}

/// A CQ-valued field.
#[derive(Clone)]
pub enum Field {
    Constant(Cq),
    PlaneWave {
        amplitude: Cq,
        momentum: MinkowskiVector,
        sign: PhaseSign,
    },
    /// A real linear function, read as a scalar CQ.
    Linear(LinearScalarFunction),
    /// The identity field `q ↦ q`.
    Coordinate,
    /// Multiplication by a (central) complex scalar.
    Scaled(ComplexScalar, Box<Field>),
    /// Right multiplication by a constant CQ, which commutes with `D`.
    RightMul(Box<Field>, Cq),
    Sum(Vec<Field>),
    /// Evaluable only.
    Opaque(CqClosure),
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Constant(c) => write!(f, "Constant({c})"),
            Field::PlaneWave {
                amplitude,
                momentum,
                sign,
            } => f
                .debug_struct("PlaneWave")
                .field("amplitude", &format_args!("{amplitude}"))
                .field("momentum", momentum)
                .field("sign", sign)
                .finish(),
            Field::Linear(l) => f.debug_tuple("Linear").field(l).finish(),
            Field::Coordinate => f.write_str("Coordinate"),
            Field::Scaled(c, inner) => f.debug_tuple("Scaled").field(c).field(inner).finish(),
            Field::RightMul(inner, g) => f
                .debug_tuple("RightMul")
                .field(inner)
                .field(&format_args!("{g}"))
                .finish(),
            Field::Sum(terms) => f.debug_tuple("Sum").field(terms).finish(),
            Field::Opaque(_) => f.write_str("Opaque(<closure>)"),
        }
    }
}

impl From<PlaneWaveScalarField> for Field {
    fn from(f: PlaneWaveScalarField) -> Self {
        Field::PlaneWave {
            amplitude: Cq::scalar(f.amplitude),
            momentum: f.momentum,
            sign: f.sign,
        }
    }
}

impl From<LinearScalarFunction> for Field {
    fn from(l: LinearScalarFunction) -> Self {
        Field::Linear(l)
    }
}

impl Field {
    pub fn zero() -> Self {
        Field::Constant(Cq::ZERO)
    }

    pub fn plane_wave(amplitude: Cq, momentum: MinkowskiVector, sign: PhaseSign) -> Self {
        Field::PlaneWave {
            amplitude,
            momentum,
            sign,
        }
    }

    pub fn opaque(f: impl Fn(&MinkowskiVector) -> Cq + Send + Sync + 'static) -> Self {
        Field::Opaque(Arc::new(f))
    }

    pub fn scaled(self, c: impl Into<ComplexScalar>) -> Self {
        Field::Scaled(c.into(), Box::new(self))
    }

    pub fn right_mul(self, g: Cq) -> Self {
        match self {
            Field::Constant(c) => Field::Constant(c * g),
            Field::PlaneWave {
                amplitude,
                momentum,
                sign,
            } => Field::PlaneWave {
                amplitude: amplitude * g,
                momentum,
                sign,
            },
            Field::Sum(terms) => Field::Sum(terms.into_iter().map(|t| t.right_mul(g)).collect()),
            other => Field::RightMul(Box::new(other), g),
        }
    }

    pub fn eval(&self, q: &MinkowskiVector) -> Cq {
        match self {
            Field::Constant(c) => *c,
            Field::PlaneWave {
                amplitude,
                momentum,
                sign,
            } => *amplitude * phase(*sign, scalar_product(momentum, q)),
            Field::Linear(l) => Cq::real(l.eval(q)),
            Field::Coordinate => q.to_cq(),
            Field::Scaled(c, inner) => inner.eval(q) * *c,
            Field::RightMul(inner, g) => inner.eval(q) * *g,
            Field::Sum(terms) => terms.iter().fold(Cq::ZERO, |acc, t| acc + t.eval(q)),
            Field::Opaque(f) => f(q),
        }
    }

    /// The value, if the field is structurally constant.
    pub fn constant_value(&self) -> Option<Cq> {
        match self {
            Field::Constant(c) => Some(*c),
            Field::Scaled(c, inner) => inner.constant_value().map(|v| v * *c),
            Field::RightMul(inner, g) => inner.constant_value().map(|v| v * *g),
            Field::Sum(terms) => terms
                .iter()
                .try_fold(Cq::ZERO, |acc, t| t.constant_value().map(|v| acc + v)),
            _ => None,
        }
    }

    fn derivative(&self, bar: bool) -> Result<Field> {
        Ok(match self {
            Field::Constant(_) => Field::zero(),
            Field::PlaneWave {
                amplitude,
                momentum,
                sign,
            } => {
                let p = momentum.to_cq();
                let p = if bar { p.quat_conj() } else { p };
                let symbol = Cq::IMAG * p * sign.value();
                Field::PlaneWave {
                    amplitude: symbol * *amplitude,
                    momentum: *momentum,
                    sign: *sign,
                }
            }
            Field::Linear(l) => {
                let a = l.gradient.to_cq();
                Field::Constant(if bar { a.quat_conj() } else { a })
            }
            // D q = @@ − ii − jj − kk, D̄ q = @@ + ii + jj + kk
            Field::Coordinate => Field::Constant(Cq::real(if bar { -4.0 } else { 2.0 })),
            Field::Scaled(c, inner) => Field::Scaled(*c, Box::new(inner.derivative(bar)?)),
            Field::RightMul(inner, g) => Field::RightMul(Box::new(inner.derivative(bar)?), *g),
            Field::Sum(terms) => Field::Sum(
                terms
                    .iter()
                    .map(|t| t.derivative(bar))
                    .collect::<Result<_>>()?,
            ),
            Field::Opaque(_) => {
                return Err(Error::UnsupportedField(
                    "opaque fields cannot be differentiated".into(),
                ))
            }
        })
    }

    /// Multiplies by `e^{−@eα(q)}` for linear `α`, keeping plane waves closed.
    pub fn with_u1_phase(&self, charge: f64, alpha: &LinearScalarFunction) -> Result<Field> {
        let global = phase(PhaseSign::Negative, charge * alpha.offset);
        Ok(match self {
            Field::Constant(c) => Field::PlaneWave {
                amplitude: *c * global,
                momentum: alpha.gradient * charge,
                sign: PhaseSign::Negative,
            },
            Field::PlaneWave {
                amplitude,
                momentum,
                sign,
            } => Field::PlaneWave {
                amplitude: *amplitude * global,
                momentum: *momentum - alpha.gradient * (sign.value() * charge),
                sign: *sign,
            },
            Field::Scaled(c, inner) => {
                Field::Scaled(*c, Box::new(inner.with_u1_phase(charge, alpha)?))
            }
            Field::RightMul(inner, g) => {
                Field::RightMul(Box::new(inner.with_u1_phase(charge, alpha)?), *g)
            }
            Field::Sum(terms) => Field::Sum(
                terms
                    .iter()
                    .map(|t| t.with_u1_phase(charge, alpha))
                    .collect::<Result<_>>()?,
            ),
            Field::Linear(_) | Field::Coordinate | Field::Opaque(_) => {
                return Err(Error::UnsupportedField(
                    "a U(1) phase on a non-exponential field leaves the family".into(),
                ))
            }
        })
    }

    /// Momenta of every plane-wave constituent. Fails for fields that are not
    /// finite sums of plane waves and constants.
    pub fn plane_wave_momenta(&self) -> Result<Vec<MinkowskiVector>> {
        let mut out = Vec::new();
        self.collect_momenta(&mut out)?;
        Ok(out)
    }

    fn collect_momenta(&self, out: &mut Vec<MinkowskiVector>) -> Result<()> {
        match self {
            Field::Constant(_) => Ok(()),
            Field::PlaneWave { momentum, .. } => {
                out.push(*momentum);
                Ok(())
            }
            Field::Scaled(_, inner) | Field::RightMul(inner, _) => inner.collect_momenta(out),
            Field::Sum(terms) => terms.iter().try_for_each(|t| t.collect_momenta(out)),
            Field::Linear(_) | Field::Coordinate | Field::Opaque(_) => Err(
                Error::UnsupportedField("field is not a superposition of plane waves".into()),
            ),
        }
    }
}

impl std::ops::Add for Field {
    type Output = Field;
    fn add(self, rhs: Field) -> Field {
        match (self, rhs) {
            (Field::Sum(mut a), Field::Sum(b)) => {
                a.extend(b);
                Field::Sum(a)
            }
            (Field::Sum(mut a), b) => {
                a.push(b);
                Field::Sum(a)
            }
            (a, b) => Field::Sum(vec![a, b]),
        }
    }
}

/// `D f`.
pub fn apply_d(f: &Field) -> Result<Field> {
    f.derivative(false)
}

/// `D̄ f` with `D̄ = @∂_t + i∂_x + j∂_y + k∂_z`.
pub fn apply_dbar(f: &Field) -> Result<Field> {
    f.derivative(true)
}

/// `(−D̄D + m²) f`.
pub fn klein_gordon_operator(f: &Field, m: f64) -> Result<Field> {
    let dbar_d = apply_dbar(&apply_d(f)?)?;
    Ok(dbar_d.scaled(-1.0) + f.clone().scaled(m * m))
}

/// `(−D̄D + m²)Φ` on a plane wave, with the phase factored out:
/// `amplitude·(pp̄ + m²)`.
pub fn klein_gordon_residual(f: &PlaneWaveScalarField, m: f64) -> ComplexScalar {
    let p = f.momentum.to_cq();
    f.amplitude * ((p * p.quat_conj()).trace() + m * m)
}

/// A two-component CQ spinor whose components are general [`Field`]s.
#[derive(Clone, Debug)]
pub struct SpinorField {
    pub psi1: Field,
    pub psi2: Field,
}

impl SpinorField {
    pub fn new(psi1: Field, psi2: Field) -> Self {
        SpinorField { psi1, psi2 }
    }

    pub fn superpose(parts: impl IntoIterator<Item = SpinorField>) -> Self {
        let (a, b): (Vec<_>, Vec<_>) = parts.into_iter().map(|s| (s.psi1, s.psi2)).unzip();
        SpinorField::new(Field::Sum(a), Field::Sum(b))
    }

    pub fn eval(&self, q: &MinkowskiVector) -> [Cq; 2] {
        [self.psi1.eval(q), self.psi2.eval(q)]
    }

    pub fn right_mul(&self, g: Cq) -> Self {
        SpinorField::new(
            self.psi1.clone().right_mul(g),
            self.psi2.clone().right_mul(g),
        )
    }

    pub fn plane_wave_momenta(&self) -> Result<Vec<MinkowskiVector>> {
        let mut m = self.psi1.plane_wave_momenta()?;
        m.extend(self.psi2.plane_wave_momenta()?);
        Ok(m)
    }
}

/// `(−m, D; D̄, −m)(ψ₁, ψ₂)ᵀ`. Passing `−m` gives the partner operator
/// `(m, D; D̄, m)` used when iterating.
pub fn dirac_operator(psi: &SpinorField, m: f64) -> Result<SpinorField> {
    Ok(SpinorField::new(
        psi.psi1.clone().scaled(-m) + apply_d(&psi.psi2)?,
        apply_dbar(&psi.psi1)? + psi.psi2.clone().scaled(-m),
    ))
}

/// `(φ, ξ)ᵀ e^{s@⟨p,q⟩}` with mass `m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWaveSpinorField {
    pub psi1: Cq,
    pub psi2: Cq,
    pub momentum: MinkowskiVector,
    pub sign: PhaseSign,
    pub mass: f64,
}

impl PlaneWaveSpinorField {
    pub fn eval(&self, q: &MinkowskiVector) -> [Cq; 2] {
        let ph = phase(self.sign, scalar_product(&self.momentum, q));
        [self.psi1 * ph, self.psi2 * ph]
    }

    pub fn component(&self, n: usize) -> Field {
        let amplitude = match n {
            0 => self.psi1,
            1 => self.psi2,
            _ => panic!("a two-component spinor has no component {n}"),
        };
        Field::plane_wave(amplitude, self.momentum, self.sign)
    }

    /// `pp̄ + m²`.
    pub fn mass_shell_residual(&self) -> f64 {
        mass_shell_residual(&self.momentum, self.mass)
    }

    pub fn is_on_shell(&self) -> bool {
        is_on_shell(&self.momentum, self.mass)
    }

    pub fn scale(&self) -> f64 {
        self.psi1.max_abs().max(self.psi2.max_abs())
    }
}

impl From<PlaneWaveSpinorField> for SpinorField {
    fn from(p: PlaneWaveSpinorField) -> Self {
        SpinorField::new(p.component(0), p.component(1))
    }
}

pub fn mass_shell_residual(p: &MinkowskiVector, m: f64) -> f64 {
    let p = p.to_cq();
    (p * p.quat_conj()).trace().re + m * m
}

pub fn is_on_shell(p: &MinkowskiVector, m: f64) -> bool {
    mass_shell_residual(p, m).abs() <= ON_SHELL_TOLERANCE * p.t.powi(2).max(1.0)
}

/// The rest-frame solution `(ψ, ±ψ)ᵀ e^{∓@mt}`.
pub fn rest_frame_solution(psi: Cq, m: f64, species: Species) -> PlaneWaveSpinorField {
    PlaneWaveSpinorField {
        psi1: psi,
        psi2: psi * species.sign(),
        momentum: MinkowskiVector::momentum(m, 0.0, 0.0, 0.0),
        sign: species.phase_sign(),
        mass: m,
    }
}

/// Residual of the (minimally coupled) Dirac equation with the common phase
/// factored out: `(−mψ₁ + D_Aψ₂, D̄_Aψ₁ − mψ₂)` where `D_A = D + @eA` and
/// `D̄_A = D̄ + @eĀ`. Only constant potentials keep the result in the family.
pub fn dirac_residual(
    psi: &PlaneWaveSpinorField,
    potential: Option<&PotentialField>,
    charge: f64,
) -> Result<[Cq; 2]> {
    let a = match potential {
        None => Cq::ZERO,
        Some(pot) => pot.field().constant_value().ok_or_else(|| {
            Error::UnsupportedField("only constant potentials couple to a plane-wave spinor".into())
        })?,
    };
    let s = psi.sign.value();
    let p = psi.momentum.to_cq();
    let d = Cq::IMAG * (p * s + a * charge);
    let dbar = Cq::IMAG * (p.quat_conj() * s + a.quat_conj() * charge);
    let m = psi.mass;
    Ok([d * psi.psi2 - psi.psi1 * m, dbar * psi.psi1 - psi.psi2 * m])
}

/// Largest coefficient of the free Dirac residual, relative to the field scale.
pub fn dirac_residual_norm(psi: &PlaneWaveSpinorField) -> f64 {
    let [r1, r2] = dirac_residual(psi, None, 0.0).expect("free residual is always defined");
    let scale = psi.scale().max(1.0) * psi.momentum.scale().max(psi.mass).max(1.0);
    r1.max_abs().max(r2.max_abs()) / scale
}

/// Solution with momentum `p` and upper amplitude `φ`:
/// `ξ = ∓(1/m)@p̄φ`, phase `e^{∓@⟨p,q⟩}` (upper sign for particles).
pub fn make_solution(
    p: &MinkowskiVector,
    m: f64,
    species: Species,
    phi: Cq,
) -> Result<PlaneWaveSpinorField> {
    if m <= 0.0 {
        return Err(Error::MasslessUnsupported { mass: m });
    }
    if !is_on_shell(p, m) {
        return Err(Error::OffShell {
            residual: mass_shell_residual(p, m).abs(),
        });
    }
    let sign = species.phase_sign();
    let xi = Cq::IMAG * p.to_cq().quat_conj() * phi * (sign.value() / m);
    Ok(PlaneWaveSpinorField {
        psi1: phi,
        psi2: xi,
        momentum: *p,
        sign,
        mass: m,
    })
}

/// `ψ₁ ↦ ωψ₁`, `ψ₂ ↦ ω*ψ₂`, `p ↦ ωpω̄*`.
pub fn transform_spinor(
    rotor: &LorentzRotor,
    psi: &PlaneWaveSpinorField,
) -> Result<PlaneWaveSpinorField> {
    let omega = rotor.omega();
    Ok(PlaneWaveSpinorField {
        psi1: omega * psi.psi1,
        psi2: omega.complex_conj() * psi.psi2,
        momentum: apply_lorentz(rotor, &psi.momentum)?,
        sign: psi.sign,
        mass: psi.mass,
    })
}

/// Numerical rank from singular values, relative to the largest one.
pub(crate) fn real_rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter()
        .filter(|s| **s > rel_tol * max.max(f64::MIN_POSITIVE))
        .count()
}

/// Real dimension of the space of amplitude pairs `(ψ₁, ψ₂)` solving the
/// Dirac equation at rest with the phase of `species`.
pub fn rest_frame_kernel_dimension(m: f64, species: Species) -> usize {
    let columns: Vec<[f64; 16]> = (0..16)
        .map(|n| {
            let mut amps = [0.0; 16];
            amps[n] = 1.0;
            let field = PlaneWaveSpinorField {
                psi1: Cq::from_array(amps[..8].try_into().unwrap()),
                psi2: Cq::from_array(amps[8..].try_into().unwrap()),
                momentum: MinkowskiVector::momentum(m, 0.0, 0.0, 0.0),
                sign: species.phase_sign(),
                mass: m,
            };
            let [r1, r2] = dirac_residual(&field, None, 0.0).unwrap();
            let mut out = [0.0; 16];
            out[..8].copy_from_slice(&r1.to_array());
            out[8..].copy_from_slice(&r2.to_array());
            out
        })
        .collect();
    let map = DMatrix::from_fn(16, 16, |r, c| columns[c][r]);
    16 - real_rank(&map, 1e-12)
}

/// Real rank of the amplitude pairs of `Ψ₀, iΨ₀, jΨ₀, kΨ₀` and their
/// `@`-multiples.
pub fn rest_frame_basis_rank(m: f64, species: Species) -> usize {
    let units = [Cq::ONE, Cq::I, Cq::J, Cq::K];
    let states: Vec<PlaneWaveSpinorField> = units
        .iter()
        .flat_map(|u| [*u, Cq::IMAG * *u])
        .map(|psi| rest_frame_solution(psi, m, species))
        .collect();
    let map = DMatrix::from_fn(16, states.len(), |r, c| {
        let s = &states[c];
        if r < 8 {
            s.psi1.to_array()[r]
        } else {
            s.psi2.to_array()[r - 8]
        }
    });
    real_rank(&map, 1e-12)
}
