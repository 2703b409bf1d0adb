use rand::Rng;
use std::f64::consts::TAU;

use super::{SuiteContext, Worst};
use crate::cq::Cq;
use crate::lagrangian::{is_symmetry, l0_density, lqed_density, PotentialField};
use crate::sampling::{
    random_cq, random_direction, random_mass, random_minkowski, random_normal_element,
};
use crate::spin::{
    apply_u1_gauge, apply_u1_gauge_field, decompose_normal, local_gauge_obstruction_demo,
    QuaternionGauge, U1Gauge,
};
use crate::wave::{
    dirac_residual, phase, LinearScalarFunction, PhaseSign, PlaneWaveSpinorField, SpinorField,
};

fn sign(ctx: &mut SuiteContext) -> PhaseSign {
    if ctx.rng.random_bool(0.5) {
        PhaseSign::Positive
    } else {
        PhaseSign::Negative
    }
}

/// An off-shell plane-wave spinor with unit-scale data.
fn plane_wave(ctx: &mut SuiteContext, m: f64) -> PlaneWaveSpinorField {
    PlaneWaveSpinorField {
        psi1: random_cq(&mut ctx.rng),
        psi2: random_cq(&mut ctx.rng),
        momentum: random_minkowski(&mut ctx.rng) * 0.7,
        sign: sign(ctx),
        mass: m,
    }
}

/// Two off-shell plane waves in each component, with `Σ|amplitude|²·(|p| + m)`.
fn superposition(ctx: &mut SuiteContext, m: f64) -> (SpinorField, f64) {
    let waves = [plane_wave(ctx, m), plane_wave(ctx, m)];
    let amp: f64 = waves.iter().map(|w| w.psi1.norm() + w.psi2.norm()).sum();
    let p = waves.iter().map(|w| w.momentum.scale()).fold(0.0, f64::max);
    (
        SpinorField::superpose(waves.map(SpinorField::from)),
        amp * amp * (p + m),
    )
}

fn physical_constant(ctx: &mut SuiteContext) -> Cq {
    (random_minkowski(&mut ctx.rng) * 0.5).to_cq()
}

pub(super) fn run(ctx: &mut SuiteContext) {
    let n = ctx.cases;
    let mut l0_quaternion = Worst::default();
    let mut l0_normal = Worst::default();
    let mut symmetry_failures = 0;
    let mut residual_quaternion = Worst::default();
    let mut residual_u1 = Worst::default();
    let mut density_u1 = Worst::default();
    let mut pointwise_u1 = Worst::default();
    let mut normal = Worst::default();

    for _ in 0..n {
        let m = random_mass(&mut ctx.rng);
        let (psi, scale) = superposition(ctx, m);
        let q = random_minkowski(&mut ctx.rng);
        let base = l0_density(&psi, m, &q).unwrap();

        let g = QuaternionGauge::new(
            random_direction(&mut ctx.rng),
            ctx.rng.random_range(0.0..TAU),
        )
        .unwrap();
        let gauged = g.apply(&psi);
        l0_quaternion.add((l0_density(&gauged, m, &q).unwrap() - base).norm() / scale);

        let sigma = random_normal_element(&mut ctx.rng);
        l0_normal.add((l0_density(&psi.right_mul(sigma), m, &q).unwrap() - base).norm() / scale);
        if !is_symmetry(&sigma, ctx.tol) || is_symmetry(&random_cq(&mut ctx.rng), ctx.tol) {
            symmetry_failures += 1;
        }

        let wave = plane_wave(ctx, m);
        let a = physical_constant(ctx);
        let potential = PotentialField::constant(a);
        let charge = ctx.rng.random_range(-2.0..2.0);
        let [r1, r2] = dirac_residual(&wave, Some(&potential), charge).unwrap();
        let factor = g.factor();
        let [s1, s2] = dirac_residual(&g.apply(&wave), Some(&potential), charge).unwrap();
        let wave_scale = wave.scale() * (wave.momentum.scale() + m + charge.abs() * a.norm());
        residual_quaternion.add(
            s1.max_abs_diff(&(r1 * factor))
                .max(s2.max_abs_diff(&(r2 * factor)))
                / wave_scale,
        );

        let alpha = LinearScalarFunction::new(
            random_minkowski(&mut ctx.rng) * 0.5,
            ctx.rng.random_range(-3.0..3.0),
        );
        let u1 = U1Gauge::linear(charge, alpha);
        let (wave2, potential2) = apply_u1_gauge(&u1, &wave, &potential).unwrap();
        let [t1, t2] = dirac_residual(&wave2, Some(&potential2), charge).unwrap();
        let global = phase(PhaseSign::Negative, charge * alpha.offset);
        residual_u1.add(
            t1.max_abs_diff(&(r1 * global))
                .max(t2.max_abs_diff(&(r2 * global)))
                / wave_scale,
        );

        let radiation = PotentialField::physical_wave(
            random_cq(&mut ctx.rng) * 0.5,
            random_minkowski(&mut ctx.rng) * 0.5,
        )
        .plus(&PotentialField::constant(a));
        let (psi2, radiation2) = apply_u1_gauge_field(&u1, &psi, &radiation).unwrap();
        let before = lqed_density(&psi, &radiation, m, charge, &q).unwrap();
        let after = lqed_density(&psi2, &radiation2, m, charge, &q).unwrap();
        let a_scale = radiation.eval(&q).norm() + radiation2.eval(&q).norm();
        density_u1.add(
            (after - before).norm() / (scale * (1.0 + charge.abs() * a_scale) + a_scale * a_scale),
        );

        let [p1, p2] = psi.eval(&q);
        let [g1, g2] = psi2.eval(&q);
        let local = phase(PhaseSign::Negative, charge * alpha.eval(&q));
        pointwise_u1.add(
            g1.max_abs_diff(&(p1 * local))
                .max(g2.max_abs_diff(&(p2 * local)))
                / scale,
        );

        let (c, unit) = decompose_normal(&sigma).unwrap();
        let mut err = (unit * c).max_abs_diff(&sigma);
        err = err
            .max((c.norm() - 1.0).abs())
            .max((unit.norm() - 1.0).abs());
        err = err.max(unit.split().1.iter().map(|v| v.abs()).fold(0.0, f64::max));
        normal.add(err);
    }

    ctx.ceiling(
        "L0 invariant under quaternionic gauge",
        n,
        l0_quaternion.0,
        1.0,
    );
    ctx.ceiling("L0 invariant under normal Sigma", n, l0_normal.0, 1.0);
    ctx.failures("is_symmetry classification", 2 * n, symmetry_failures);
    ctx.ceiling(
        "coupled residual under quaternionic gauge",
        n,
        residual_quaternion.0,
        1.0,
    );
    ctx.ceiling(
        "coupled residual under U(1), linear alpha",
        n,
        residual_u1.0,
        1.0,
    );
    ctx.ceiling(
        "L_QED invariant under U(1), linear alpha",
        n,
        density_u1.0,
        1.0,
    );
    ctx.ceiling("U(1) phase on superpositions", n, pointwise_u1.0, 1.0);
    ctx.ceiling("decompose_normal round trip", n, normal.0, 1.0);

    let demo = local_gauge_obstruction_demo(&mut ctx.rng, n);
    ctx.ceiling(
        "obstruction controls agree",
        demo.controls.len(),
        demo.max_control_mismatch(),
        100.0,
    );
    ctx.floor(
        "obstruction: generic pairs above 1e-3",
        n,
        demo.fraction_above_floor(),
        0.99,
    );
}
