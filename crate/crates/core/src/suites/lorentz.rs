use std::f64::consts::TAU;

use rand::Rng;

use super::oracle::{self, Matrix4};
use super::{SuiteContext, Worst};
use crate::cq::Cq;
use crate::relativity::{
    apply_covariant, apply_lorentz, full_turn, proper_time_sq, scalar_product, LorentzRotor,
};
use crate::sampling::{random_direction, random_minkowski};

/// Composite rotor with its 4×4 matrix built factor by factor.
fn composite(ctx: &mut SuiteContext) -> (LorentzRotor, Matrix4) {
    let count = ctx.rng.random_range(1..=4);
    let mut rotor = LorentzRotor::identity();
    let mut matrix = oracle::identity();
    for _ in 0..count {
        let n = random_direction(&mut ctx.rng);
        let (r, m) = if ctx.rng.random_bool(0.5) {
            let theta = ctx.rng.random_range(0.0..TAU);
            (LorentzRotor::rotation(n, theta), oracle::rotation(n, theta))
        } else {
            let rapidity = ctx.rng.random_range(-1.5..=1.5);
            (LorentzRotor::boost(n, rapidity), oracle::boost(n, rapidity))
        };
        rotor = rotor.compose(&r.expect("unit direction"));
        matrix = oracle::mat_mul(&matrix, &m);
    }
    (rotor, matrix)
}

pub(super) fn run(ctx: &mut SuiteContext) {
    let n = ctx.cases;
    let mut unital = Worst::default();
    let mut minkowski_failures = 0;
    let mut interval = Worst::default();
    let mut product = Worst::default();
    let mut matrix = Worst::default();
    let mut covariant = Worst::default();
    let mut composition = Worst::default();
    let mut turn = Worst::default();

    for _ in 0..n {
        let (rotor, lambda) = composite(ctx);
        let (p, q) = (
            random_minkowski(&mut ctx.rng),
            random_minkowski(&mut ctx.rng),
        );
        unital.add(rotor.unitality_residual() / rotor.omega().norm_sqr());

        let (Ok(p2), Ok(q2)) = (apply_lorentz(&rotor, &p), apply_lorentz(&rotor, &q)) else {
            minkowski_failures += 1;
            continue;
        };
        let scale = p2.scale().max(p.scale()) * q2.scale().max(q.scale());
        interval.add(
            (proper_time_sq(&q2) - proper_time_sq(&q)).abs() / q2.scale().max(q.scale()).powi(2),
        );
        product.add((scalar_product(&p2, &q2) - scalar_product(&p, &q)).abs() / scale);

        let reference = oracle::apply(&lambda, &q);
        let diff = (q2 - reference)
            .components()
            .iter()
            .map(|v| v.abs())
            .fold(0.0, f64::max);
        matrix.add(diff / reference.scale().max(1.0));

        let cov = apply_covariant(&rotor, &q.to_cq().quat_conj());
        covariant.add(cov.max_abs_diff(&q2.to_cq().quat_conj()) / q2.scale().max(1.0));

        let (second, _) = composite(ctx);
        let chained = apply_lorentz(&second, &q2);
        let direct = apply_lorentz(&second.compose(&rotor), &q);
        match (chained, direct) {
            (Ok(a), Ok(b)) => {
                let d = (a - b)
                    .components()
                    .iter()
                    .map(|v| v.abs())
                    .fold(0.0, f64::max);
                composition.add(d / a.scale().max(1.0));
            }
            _ => minkowski_failures += 1,
        }

        let axis = random_direction(&mut ctx.rng);
        let omega = full_turn(axis).expect("unit direction").omega();
        turn.add(omega.max_abs_diff(&-Cq::ONE));
    }

    ctx.ceiling("rotor unitality", n, unital.0, 1.0);
    ctx.failures("image stays Minkowski", n, minkowski_failures);
    ctx.ceiling("proper time invariant", n, interval.0, 1.0);
    ctx.ceiling("scalar product invariant", n, product.0, 1.0);
    ctx.ceiling("agrees with 4x4 matrix", n, matrix.0, 1.0);
    ctx.ceiling("covariant law matches conjugate", n, covariant.0, 1.0);
    ctx.ceiling("composition", n, composition.0, 1.0);
    ctx.ceiling("omega(2pi) = -1", n, turn.0, 1e-12 / 1e-10);
}
