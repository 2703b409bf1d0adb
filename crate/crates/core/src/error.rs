use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("element is null (|quadric| = {quadric:e}) and has no inverse")]
    NotInvertible { quadric: f64 },

    #[error("not a Minkowski vector: real-part residual {residual:e}")]
    NotMinkowski { residual: f64 },

    #[error("direction is not a real unit imaginary quaternion: {0}")]
    BadDirection(String),

    #[error("rotor is not unital: |ωω̄ − 1| = {residual:e}")]
    BadRotor { residual: f64 },

    #[error("field is outside the analytically differentiable family: {0}")]
    UnsupportedField(String),

    #[error("momentum is off shell: |pp̄ + m²| = {residual:e}")]
    OffShell { residual: f64 },

    #[error("massless solutions are not supported (m = {mass})")]
    MasslessUnsupported { mass: f64 },

    #[error("zero state has no spin direction")]
    ZeroState,

    #[error("Σ·Σ̄* differs from 1 by {residual:e}")]
    NotNormal { residual: f64 },

    #[error("spinor is not in the first spin subspace: residual {residual:e}")]
    NotInSubspace { residual: f64 },

    #[error(
        "momentum component {component} does not close over the periodic box (k·L/2π = {winding})"
    )]
    IncommensurateMomenta { component: usize, winding: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
