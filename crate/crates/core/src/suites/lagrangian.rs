use rand::Rng;
use std::f64::consts::TAU;

use super::oracle::finite_difference_d;
use super::{SuiteContext, Worst};
use crate::error::Error;
use crate::lagrangian::{
    discrete_action, field_strength, l0_density, l_int_density, la_density, la_density_complex,
    PotentialField,
};
use crate::relativity::{apply_lorentz, MinkowskiVector};
use crate::sampling::{random_cq, random_mass, random_minkowski, random_on_shell, random_rotor};
use crate::wave::{
    make_solution, rest_frame_solution, transform_spinor, LinearScalarFunction, PhaseSign,
    PlaneWaveSpinorField, Species, SpinorField,
};

const BOX: [f64; 4] = [TAU; 4];

fn sign(ctx: &mut SuiteContext) -> PhaseSign {
    if ctx.rng.random_bool(0.5) {
        PhaseSign::Positive
    } else {
        PhaseSign::Negative
    }
}

fn wave(ctx: &mut SuiteContext, momentum: MinkowskiVector, m: f64) -> PlaneWaveSpinorField {
    PlaneWaveSpinorField {
        psi1: random_cq(&mut ctx.rng),
        psi2: random_cq(&mut ctx.rng),
        momentum,
        sign: sign(ctx),
        mass: m,
    }
}

fn off_shell_wave(ctx: &mut SuiteContext, m: f64) -> PlaneWaveSpinorField {
    let k = random_minkowski(&mut ctx.rng) * 0.7;
    wave(ctx, k, m)
}

fn integer_momentum(ctx: &mut SuiteContext, max: i32) -> MinkowskiVector {
    MinkowskiVector::from_components(std::array::from_fn(|_| {
        ctx.rng.random_range(-max..=max) as f64
    }))
}

fn amp_scale(w: &PlaneWaveSpinorField) -> f64 {
    (w.psi1.norm() + w.psi2.norm()).powi(2)
}

fn physical_potential(ctx: &mut SuiteContext) -> (PotentialField, f64) {
    let amplitude = random_cq(&mut ctx.rng) * 0.5;
    let k = random_minkowski(&mut ctx.rng) * 0.5;
    let constant = (random_minkowski(&mut ctx.rng) * 0.5).to_cq();
    let a = PotentialField::physical_wave(amplitude, k).plus(&PotentialField::constant(constant));
    (a, (amplitude.norm() + constant.norm()) * k.scale().max(1.0))
}

pub(super) fn run(ctx: &mut SuiteContext) {
    let n = ctx.cases;
    let mut lint_real = Worst::default();
    let mut la_real = Worst::default();
    let mut f_constant = Worst::default();
    let mut f_scalar = Worst::default();
    let mut f_oracle = Worst::default();
    let mut f_gauge = Worst::default();
    let mut la_scaling = Worst::default();
    let mut on_shell = Worst::default();
    let mut lorentz = Worst::default();

    for _ in 0..n {
        let m = random_mass(&mut ctx.rng);
        let q = random_minkowski(&mut ctx.rng);
        let (a, a_scale) = physical_potential(ctx);
        let charge = ctx.rng.random_range(-2.0..2.0);
        let w1 = off_shell_wave(ctx, m);
        let w2 = off_shell_wave(ctx, m);
        let psi_scale = amp_scale(&w1) + amp_scale(&w2);
        let psi = SpinorField::superpose([w1.into(), w2.into()]);

        let lint = l_int_density(&psi, &a, charge, &q).unwrap();
        lint_real.add(lint.im.abs() / (psi_scale * a_scale));
        let la = la_density_complex(&a, &q).unwrap();
        la_real.add(la.im.abs() / (a_scale * a_scale));

        let constant = PotentialField::constant(random_cq(&mut ctx.rng));
        f_constant.add(field_strength(&constant, &q).unwrap().0.max_abs());

        let f = field_strength(&a, &q).unwrap().0;
        f_scalar.add(f.trace().norm() / a_scale);
        let eval = |x: &MinkowskiVector| a.eval(x);
        let x = finite_difference_d(&eval, &q, 1e-5, true);
        let reference = (x - x.quat_conj()) * 0.5;
        f_oracle.add(f.max_abs_diff(&reference) / a_scale);

        let alpha = LinearScalarFunction::new(
            random_minkowski(&mut ctx.rng),
            ctx.rng.random_range(-1.0..1.0),
        );
        let shifted = a.gauge_shift(&alpha).unwrap();
        f_gauge.add(field_strength(&shifted, &q).unwrap().0.max_abs_diff(&f) / a_scale);

        let lambda = ctx.rng.random_range(-3.0..3.0);
        let base = la_density(&a, &q).unwrap();
        let scaled = la_density(&a.scaled(lambda), &q).unwrap();
        la_scaling.add(
            (scaled - lambda * lambda * base).abs()
                / (lambda * lambda * a_scale * a_scale).max(1e-300),
        );

        let p = random_on_shell(&mut ctx.rng, m, 10.0);
        let species = if ctx.rng.random_bool(0.5) {
            Species::Particle
        } else {
            Species::Antiparticle
        };
        let sol = make_solution(&p, m, species, random_cq(&mut ctx.rng)).unwrap();
        let l0 = l0_density(&sol.into(), m, &q).unwrap();
        on_shell.add(l0.norm() / (amp_scale(&sol) * p.t));

        let rotor = random_rotor(&mut ctx.rng, 2);
        let off = off_shell_wave(ctx, m);
        let moved = transform_spinor(&rotor, &off).unwrap();
        let q2 = apply_lorentz(&rotor, &q).unwrap();
        let before = l0_density(&off.into(), m, &q).unwrap();
        let after = l0_density(&moved.into(), m, &q2).unwrap();
        let scale = amp_scale(&moved).max(amp_scale(&off)) * (moved.momentum.scale() + m);
        lorentz.add((after - before).norm() / scale);
    }

    ctx.ceiling("L_int real for physical A", n, lint_real.0, 1.0);
    ctx.ceiling("L_A real", n, la_real.0, 1.0);
    ctx.ceiling("F = 0 for constant A", n, f_constant.0, 1.0);
    ctx.ceiling("F has no scalar part", n, f_scalar.0, 1.0);
    ctx.ceiling("F vs finite differences", n, f_oracle.0, 1000.0);
    ctx.ceiling("F unchanged by A -> A + D alpha", n, f_gauge.0, 1.0);
    ctx.ceiling("L_A scales quadratically", n, la_scaling.0, 1.0);
    ctx.ceiling("L0 vanishes on solutions", n, on_shell.0, 1.0);
    ctx.ceiling("L0 is a Lorentz scalar", n, lorentz.0, 10.0);

    // periodic boxes of side 2pi with integer momenta
    let boxes = n.clamp(1, 3);
    let mut imaginary = Worst::default();
    let mut doubling = Worst::default();
    for _ in 0..boxes {
        let m = random_mass(&mut ctx.rng);
        let (k1, k2) = (integer_momentum(ctx, 2), integer_momentum(ctx, 2));
        let psi = SpinorField::superpose([wave(ctx, k1, m).into(), wave(ctx, k2, m).into()]);
        let s = discrete_action(&psi, m, BOX, 16).unwrap();
        imaginary.add(1e-10 * s.im.abs() / (1e-10 * s.re.abs() + 1e-12));

        let (k1, k2) = (integer_momentum(ctx, 1), integer_momentum(ctx, 1));
        let psi = SpinorField::superpose([wave(ctx, k1, m).into(), wave(ctx, k2, m).into()]);
        let coarse = discrete_action(&psi, m, BOX, 8).unwrap();
        let fine = discrete_action(&psi, m, BOX, 16).unwrap();
        doubling.add((fine - coarse).norm() / fine.norm().max(1.0));
    }
    ctx.ceiling("discrete S0 real (n = 16)", boxes, imaginary.0, 10.0);
    ctx.ceiling(
        "discrete S0 stable under grid doubling",
        boxes,
        doubling.0,
        10.0,
    );

    let rest = rest_frame_solution(random_cq(&mut ctx.rng), 1.0, Species::Particle);
    let s = discrete_action(&rest.into(), 1.0, BOX, 8).unwrap();
    ctx.ceiling(
        "discrete S0 of a solution",
        1,
        s.norm() / (amp_scale(&rest) * TAU.powi(4)),
        1.0,
    );

    let skew = SpinorField::from(wave(ctx, MinkowskiVector::new(0.5, 1.0, 0.0, 0.0), 1.0));
    let rejected = matches!(
        discrete_action(&skew, 1.0, BOX, 4),
        Err(Error::IncommensurateMomenta { .. })
    );
    ctx.failures("incommensurate box rejected", 1, usize::from(!rejected));
}
