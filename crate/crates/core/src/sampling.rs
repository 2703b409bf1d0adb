//! Seeded random inputs for the check suites.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use std::f64::consts::TAU;

use crate::cq::{ComplexScalar, Cq, Matrix2C};
use crate::relativity::{LorentzRotor, MinkowskiVector};

/// Generator for suite `stream` under a user seed.
pub fn suite_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> ComplexScalar {
    Complex64::new(normal(rng), normal(rng))
}

/// Eight independent standard normals.
pub fn random_cq<R: Rng + ?Sized>(rng: &mut R) -> Cq {
    Cq::from_array(std::array::from_fn(|_| normal(rng)))
}

pub fn random_real_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Cq {
    Cq::quaternion(normal(rng), normal(rng), normal(rng), normal(rng))
}

pub fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| normal(rng));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-8 {
            return v.map(|x| x / n);
        }
    }
}

pub fn random_minkowski<R: Rng + ?Sized>(rng: &mut R) -> MinkowskiVector {
    MinkowskiVector::new(normal(rng), normal(rng), normal(rng), normal(rng))
}

/// On-shell momentum with `|p⃗| ≤ max_ratio·m` and positive energy.
pub fn random_on_shell<R: Rng + ?Sized>(rng: &mut R, m: f64, max_ratio: f64) -> MinkowskiVector {
    let [x, y, z] = random_direction(rng);
    let size = rng.random_range(0.0..=max_ratio) * m;
    let e = (size * size + m * m).sqrt();
    MinkowskiVector::momentum(e, x * size, y * size, z * size)
}

pub fn random_mass<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(0.1..3.0)
}

/// A single rotation or boost.
pub fn random_elementary_rotor<R: Rng + ?Sized>(rng: &mut R) -> LorentzRotor {
    let n = random_direction(rng);
    if rng.random_bool(0.5) {
        LorentzRotor::rotation(n, rng.random_range(0.0..TAU)).expect("unit direction")
    } else {
        LorentzRotor::boost(n, rng.random_range(-1.5..=1.5)).expect("unit direction")
    }
}

/// Product of one to `max_factors` rotations and boosts.
pub fn random_rotor<R: Rng + ?Sized>(rng: &mut R, max_factors: usize) -> LorentzRotor {
    let count = rng.random_range(1..=max_factors.max(1));
    (0..count).fold(LorentzRotor::identity(), |acc, _| {
        acc.compose(&random_elementary_rotor(rng))
    })
}

/// Rank-one matrix image `u vᵀ`.
pub fn random_null_cq<R: Rng + ?Sized>(rng: &mut R) -> Cq {
    let u = [random_complex(rng), random_complex(rng)];
    let v = [random_complex(rng), random_complex(rng)];
    Cq::from_matrix(&Matrix2C::new(
        u[0] * v[0],
        u[0] * v[1],
        u[1] * v[0],
        u[1] * v[1],
    ))
}

/// Random CQ with `|quadric| ≥ 10⁻³|ψ|²` (matrix norm).
pub fn random_non_null_cq<R: Rng + ?Sized>(rng: &mut R) -> Cq {
    loop {
        let psi = random_cq(rng);
        let m = psi.to_matrix();
        if m.det().norm() >= 1e-3 * m.norm().powi(2) {
            return psi;
        }
    }
}

/// Random element of the first spin subspace.
pub fn random_first_subspace<R: Rng + ?Sized>(rng: &mut R) -> Cq {
    let zero = Complex64::new(0.0, 0.0);
    Cq::from_matrix(&Matrix2C::from_columns(
        [random_complex(rng), random_complex(rng)],
        [zero, zero],
    ))
}

/// `ΣΣ̄* = 1` with a random phase and unit quaternion.
pub fn random_normal_element<R: Rng + ?Sized>(rng: &mut R) -> Cq {
    let q = random_real_quaternion(rng);
    let q = q / q.norm();
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..TAU));
    q * phase
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<f64> = (0..4).map(|_| normal(&mut suite_rng(5, 1))).collect();
        let b: Vec<f64> = (0..4).map(|_| normal(&mut suite_rng(5, 1))).collect();
        assert_eq!(a, b);
        assert_ne!(normal(&mut suite_rng(5, 1)), normal(&mut suite_rng(5, 2)));
    }

    #[test]
    fn null_and_normal_samples() {
        let mut rng = suite_rng(0, 0);
        for _ in 0..100 {
            let psi = random_null_cq(&mut rng);
            assert!(psi.quadric().norm() < 1e-12 * psi.norm_sqr().max(1.0));
            let sigma = random_normal_element(&mut rng);
            assert!((sigma * sigma.quat_conj().complex_conj()).approx_eq(&Cq::ONE, 1e-14));
            let p = random_on_shell(&mut rng, 1.7, 10.0);
            assert!(crate::wave::is_on_shell(&p, 1.7));
        }
    }
}
