use num_complex::Complex64;
use rand::Rng;

use super::{Least, SuiteContext, Worst};
use crate::chiral::{
    chiral_dirac_residual, chiral_spin_z, chiral_to_cq, cq_to_chiral, gamma_algebra_check,
    ChiralSpinor,
};
use crate::relativity::MinkowskiVector;
use crate::sampling::{
    random_complex, random_first_subspace, random_mass, random_minkowski, random_null_cq,
    random_on_shell,
};
use crate::spin::{gauge_fix, SpinOperator};
use crate::wave::{
    dirac_residual, dirac_residual_norm, make_solution, PlaneWaveSpinorField, Species,
};

fn species(ctx: &mut SuiteContext) -> Species {
    if ctx.rng.random_bool(0.5) {
        Species::Particle
    } else {
        Species::Antiparticle
    }
}

/// `(E + σ·p)χ` with explicit Pauli matrices.
fn e_plus_sigma_p(p: &MinkowskiVector, chi: [Complex64; 2]) -> [Complex64; 2] {
    let i = Complex64::i();
    let (e, x, y, z) = (p.t, p.x, p.y, p.z);
    [
        chi[0] * (e + z) + chi[1] * (x - i * y),
        chi[0] * (x + i * y) + chi[1] * (e - z),
    ]
}

/// A chiral spinor solving `(−s·γ^μp_μ − m)C = 0`: `χ_R = −s(E + σ·p)χ_L/m`.
fn chiral_solution(
    ctx: &mut SuiteContext,
    p: &MinkowskiVector,
    m: f64,
    sp: Species,
) -> ChiralSpinor {
    let left = [random_complex(&mut ctx.rng), random_complex(&mut ctx.rng)];
    let s = sp.phase_sign().value();
    let right = e_plus_sigma_p(p, left).map(|v| v * (-s / m));
    ChiralSpinor([left[0], left[1], right[0], right[1]])
}

pub(super) fn run(ctx: &mut SuiteContext) {
    let n = ctx.cases;
    ctx.ceiling(
        "gamma anticommutators",
        10,
        gamma_algebra_check().max_residual,
        1.0,
    );

    let mut forward = Worst::default();
    let mut gauged = Worst::default();
    let mut converse = Worst::default();
    let mut commutes = Worst::default();
    let mut off_shell = Least::default();
    let mut spin = Worst::default();
    let mut round_trip = Worst::default();
    let mut failures = 0;
    let sz = SpinOperator::z();

    for _ in 0..n {
        let m = random_mass(&mut ctx.rng);
        let sp = species(ctx);
        let p = random_on_shell(&mut ctx.rng, m, 10.0);
        let pc = p.components();
        let energy_scale = p.t + m;

        let sol = make_solution(&p, m, sp, random_null_cq(&mut ctx.rng)).unwrap();
        match gauge_fix(&sol.psi1, &sol.psi2)
            .and_then(|(_, a, b)| Ok((a, b, cq_to_chiral(&a, &b)?)))
        {
            Ok((a, b, c)) => {
                let r = chiral_dirac_residual(&c, pc, m, sp);
                forward.add(r.max_abs() / (c.norm() * energy_scale));
                gauged.add(dirac_residual_norm(&PlaneWaveSpinorField {
                    psi1: a,
                    psi2: b,
                    ..sol
                }));
            }
            Err(_) => failures += 1,
        }

        let c = chiral_solution(ctx, &p, m, sp);
        let (a, b) = chiral_to_cq(&c);
        let back = PlaneWaveSpinorField {
            psi1: a,
            psi2: b,
            momentum: p,
            sign: sp.phase_sign(),
            mass: m,
        };
        converse.add(dirac_residual_norm(&back));

        // off shell: the residual maps commute with cq_to_chiral
        let k = random_minkowski(&mut ctx.rng);
        let (a, b) = (
            random_first_subspace(&mut ctx.rng),
            random_first_subspace(&mut ctx.rng),
        );
        let field = PlaneWaveSpinorField {
            psi1: a,
            psi2: b,
            momentum: k,
            sign: sp.phase_sign(),
            mass: m,
        };
        let [r1, r2] = dirac_residual(&field, None, 0.0).unwrap();
        let c = cq_to_chiral(&a, &b).unwrap();
        let mapped = cq_to_chiral(&r1, &r2).unwrap();
        let direct = chiral_dirac_residual(&c, k.components(), m, sp);
        let diff = ChiralSpinor(std::array::from_fn(|i| mapped.0[i] - direct.0[i]));
        commutes.add(diff.max_abs() / (c.norm() * (k.scale() + m)));
        off_shell.add(direct.norm() / (c.norm() * (k.scale() + m)));

        let s = cq_to_chiral(&sz.apply(&a), &sz.apply(&b)).unwrap();
        let t = chiral_spin_z(&c);
        spin.add(
            s.0.iter()
                .zip(&t.0)
                .map(|(u, v)| (u - v).norm())
                .fold(0.0, f64::max)
                / c.norm(),
        );

        let (a2, b2) = chiral_to_cq(&c);
        round_trip.add(a2.max_abs_diff(&a).max(b2.max_abs_diff(&b)) / c.norm());
    }

    ctx.failures("gauge fixing and mapping succeed", n, failures);
    ctx.ceiling(
        "mapped CQ solutions solve the chiral equation",
        n,
        forward.0,
        1.0,
    );
    ctx.ceiling("gauge-fixed solutions stay solutions", n, gauged.0, 1.0);
    ctx.ceiling("chiral solutions map to CQ solutions", n, converse.0, 1.0);
    ctx.ceiling("residual commutes with the map", n, commutes.0, 1.0);
    ctx.floor("off-shell chiral residual nonzero", n, off_shell.0, 1e-6);
    ctx.ceiling(
        "S_z intertwines with diag(1/2,-1/2,1/2,-1/2)",
        n,
        spin.0,
        1.0,
    );
    ctx.ceiling("chiral_to_cq inverts cq_to_chiral", n, round_trip.0, 1.0);
}
