use rand::Rng;

use super::oracle::finite_difference_d;
use super::{Least, SuiteContext, Worst};
use crate::cq::Cq;
use crate::relativity::{full_turn, MinkowskiVector};
use crate::sampling::{
    random_complex, random_cq, random_direction, random_mass, random_minkowski, random_on_shell,
    random_rotor,
};
use crate::wave::{
    apply_d, apply_dbar, dirac_operator, dirac_residual_norm, klein_gordon_operator,
    klein_gordon_residual, make_solution, rest_frame_solution, transform_spinor, Field, PhaseSign,
    PlaneWaveScalarField, Species, SpinorField,
};

fn species(ctx: &mut SuiteContext) -> Species {
    if ctx.rng.random_bool(0.5) {
        Species::Particle
    } else {
        Species::Antiparticle
    }
}

fn phase_sign(ctx: &mut SuiteContext) -> PhaseSign {
    if ctx.rng.random_bool(0.5) {
        PhaseSign::Positive
    } else {
        PhaseSign::Negative
    }
}

/// Momentum with components of order one, generally off shell.
fn unit_momentum(ctx: &mut SuiteContext) -> MinkowskiVector {
    random_minkowski(&mut ctx.rng) * 0.7
}

pub(super) fn run(ctx: &mut SuiteContext) {
    let n = ctx.cases;

    // the coordinate field, at a few points
    let mut coordinate = Worst::default();
    let d_q = apply_d(&Field::Coordinate).unwrap();
    let dbar_q = apply_dbar(&Field::Coordinate).unwrap();
    for _ in 0..8 {
        let q = random_minkowski(&mut ctx.rng);
        coordinate.add(d_q.eval(&q).max_abs_diff(&Cq::real(2.0)));
        coordinate.add(dbar_q.eval(&q).max_abs_diff(&Cq::real(-4.0)));
    }
    ctx.ceiling("Dq = 2 and -Dbar q = 4", 8, coordinate.0, 1.0);

    let mut kg_on = Worst::default();
    let mut kg_off = Least::default();
    let mut solution = Worst::default();
    let mut rest = Worst::default();
    let mut covariance = Worst::default();
    let mut flip = Worst::default();
    let mut iteration = Worst::default();
    let mut finite_diff = Worst::default();

    for _ in 0..n {
        let m = random_mass(&mut ctx.rng);
        let sp = species(ctx);
        let p = random_on_shell(&mut ctx.rng, m, 10.0);
        let amp = random_cq(&mut ctx.rng);
        let e2 = p.t * p.t;

        let on = PlaneWaveScalarField {
            amplitude: random_complex(&mut ctx.rng),
            momentum: p,
            sign: sp.phase_sign(),
        };
        kg_on.add(klein_gordon_residual(&on, m).norm() / (on.amplitude.norm() * e2));
        let shift = ctx.rng.random_range(0.05..1.0) * m;
        let off = PlaneWaveScalarField {
            momentum: MinkowskiVector {
                t: p.t + shift,
                ..p
            },
            ..on
        };
        kg_off.add(
            klein_gordon_residual(&off, m).norm() / (off.amplitude.norm() * (p.t + shift).powi(2)),
        );

        let sol = make_solution(&p, m, sp, amp).expect("on-shell by construction");
        solution.add(dirac_residual_norm(&sol));
        rest.add(dirac_residual_norm(&rest_frame_solution(amp, m, sp)));

        let rotor = random_rotor(&mut ctx.rng, 2);
        let moved = transform_spinor(&rotor, &sol).expect("rotor maps Minkowski vectors");
        covariance.add(dirac_residual_norm(&moved));

        let turned =
            transform_spinor(&full_turn(random_direction(&mut ctx.rng)).unwrap(), &sol).unwrap();
        let flipped = turned
            .psi1
            .max_abs_diff(&-sol.psi1)
            .max(turned.psi2.max_abs_diff(&-sol.psi2));
        flip.add(flipped / sol.scale());

        // (m, D; Dbar, m)(-m, D; Dbar, -m) = diag(D Dbar - m^2, Dbar D - m^2)
        let (k1, k2) = (unit_momentum(ctx), unit_momentum(ctx));
        let (s1, s2) = (phase_sign(ctx), phase_sign(ctx));
        let amps = [
            random_cq(&mut ctx.rng),
            random_cq(&mut ctx.rng),
            random_cq(&mut ctx.rng),
        ];
        let field = SpinorField::new(
            Field::plane_wave(amps[0], k1, s1) + Field::plane_wave(amps[1], k2, s2),
            Field::plane_wave(amps[2], k2, s2),
        );
        let twice = dirac_operator(&dirac_operator(&field, m).unwrap(), -m).unwrap();
        let kg1 = klein_gordon_operator(&field.psi1, m).unwrap();
        let kg2 = klein_gordon_operator(&field.psi2, m).unwrap();
        let q = random_minkowski(&mut ctx.rng);
        let [t1, t2] = twice.eval(&q);
        let scale =
            amps.iter().map(Cq::norm).sum::<f64>() * (k1.scale().max(k2.scale()).powi(2) + m * m);
        iteration.add(
            (t1 + kg1.eval(&q))
                .max_abs()
                .max((t2 + kg2.eval(&q)).max_abs())
                / scale,
        );

        let wave = Field::plane_wave(random_cq(&mut ctx.rng), k1, s1);
        let f = |x: &MinkowskiVector| wave.eval(x);
        for bar in [false, true] {
            let analytic = if bar {
                apply_dbar(&wave)
            } else {
                apply_d(&wave)
            }
            .unwrap()
            .eval(&q);
            let numeric = finite_difference_d(&f, &q, 1e-5, bar);
            finite_diff.add(analytic.max_abs_diff(&numeric) / wave.eval(&q).norm().max(1.0));
        }
    }

    ctx.ceiling("Klein-Gordon residual on shell", n, kg_on.0, 1.0);
    ctx.floor("Klein-Gordon residual off shell", n, kg_off.0, 1e-6);
    ctx.ceiling("constructed solutions, |p| <= 10m", n, solution.0, 1.0);
    ctx.ceiling("rest-frame solutions", n, rest.0, 1.0);
    ctx.ceiling("Lorentz-transformed solutions", n, covariance.0, 1.0);
    ctx.ceiling("2pi rotation flips the spinor", n, flip.0, 1.0);
    ctx.ceiling("iterated operator = Klein-Gordon", n, iteration.0, 1.0);
    ctx.ceiling(
        "D and Dbar vs finite differences",
        2 * n,
        finite_diff.0,
        100.0,
    );
}
