use rand::Rng;
use std::f64::consts::TAU;

use super::{Least, SuiteContext, Worst};
use crate::chiral::chiral_rest_nullity;
use crate::cq::Cq;
use crate::sampling::{random_cq, random_direction, random_non_null_cq, random_null_cq};
use crate::spin::{
    decompose_psi0, eigen_residual, fibonacci_sphere, gauge_fix, grid_min_eigen_residual,
    has_spin_direction, ladder_generator, no_escape_floor, recompose, spin_basis,
    spin_eigenspace_dimension, subspace_residuals, Ladder, QuaternionGauge, SpinOperator,
    DIRECTION_GRID,
};
use crate::wave::{rest_frame_basis_rank, rest_frame_kernel_dimension, Species};

pub(super) fn run(ctx: &mut SuiteContext) {
    let n = ctx.cases;
    let basis = spin_basis();
    let sz = SpinOperator::z();
    let (sx, sy) = (SpinOperator::x(), SpinOperator::y());

    let mut eigen = Worst::default();
    for b in &basis {
        eigen.add(sz.apply(&b.amplitude).max_abs_diff(&(b.amplitude * b.m_z)));
        eigen.add(b.amplitude.quadric().norm());
    }
    ctx.ceiling("S_z eigenstates, m_z = +-1/2", 4, eigen.0, 1.0);

    let up = basis[0].amplitude;
    let down = basis[2].amplitude;
    let mut ladder = Worst::default();
    ladder.add((ladder_generator(Ladder::Raise) * up).max_abs());
    ladder.add((ladder_generator(Ladder::Raise) * down).max_abs_diff(&up));
    ladder.add(
        (ladder_generator(Ladder::Lower) * basis[1].amplitude).max_abs_diff(&basis[3].amplitude),
    );
    ctx.ceiling("ladder operators", 3, ladder.0, 1.0);

    // (1+@k)i = i+@j, (@i+j)i = -@-k; j and k give complex multiples of basis states
    let mut right = Worst::default();
    right.add((up * Cq::I).max_abs_diff(&basis[1].amplitude));
    right.add((down * Cq::I).max_abs_diff(&basis[3].amplitude));
    for b in &basis {
        for g in [Cq::J, Cq::K] {
            let image = b.amplitude * g;
            let coeffs = decompose_psi0(&image);
            let nonzero = coeffs.iter().filter(|c| c.norm() > 1e-12).count();
            right.add(if nonzero == 1 { 0.0 } else { 1.0 });
            right.add(recompose(&coeffs).max_abs_diff(&image));
        }
    }
    ctx.ceiling("right multiplication relations", 10, right.0, 1.0);

    let mut casimir = Worst::default();
    let mut commutator = Worst::default();
    let mut decomposition = Worst::default();
    let mut quadric_gauge = Worst::default();
    let mut preserved = Worst::default();
    let ops = [sx, sy, sz];
    for _ in 0..n {
        let psi = random_cq(&mut ctx.rng);
        let scale = psi.norm();
        let total = ops
            .iter()
            .fold(Cq::ZERO, |acc, s| acc + s.apply(&s.apply(&psi)));
        casimir.add(total.max_abs_diff(&(psi * 0.75)) / scale);
        for a in 0..3 {
            let (b, c) = ((a + 1) % 3, (a + 2) % 3);
            let comm = ops[a].apply(&ops[b].apply(&psi)) - ops[b].apply(&ops[a].apply(&psi));
            commutator.add(comm.max_abs_diff(&(Cq::IMAG * ops[c].apply(&psi))) / scale);
        }
        decomposition.add(recompose(&decompose_psi0(&psi)).max_abs_diff(&psi) / scale);

        let g = QuaternionGauge::new(
            random_direction(&mut ctx.rng),
            ctx.rng.random_range(0.0..TAU),
        )
        .unwrap();
        quadric_gauge.add((g.apply(&psi).quadric() - psi.quadric()).norm() / (scale * scale));
        let b = &basis[ctx.rng.random_range(0..4)];
        let moved = g.apply(&b.amplitude);
        preserved.add(sz.apply(&moved).max_abs_diff(&(moved * b.m_z)));
    }
    ctx.ceiling("S^2 = 3/4", n, casimir.0, 1.0);
    ctx.ceiling("[S_a, S_b] = @ S_c", n, commutator.0, 1.0);
    ctx.ceiling("basis decomposition round trip", n, decomposition.0, 1.0);
    ctx.ceiling(
        "quadric invariant under quaternionic gauge",
        n,
        quadric_gauge.0,
        1.0,
    );
    ctx.ceiling("gauge preserves S_z eigenvalue", n, preserved.0, 1.0);

    // null <=> a spin direction exists, both arrows
    let directions = fibonacci_sphere(DIRECTION_GRID);
    let mut disagreements = 0;
    let mut null_eigen = Worst::default();
    let mut grid_floor = Least::default();
    let mut fixed = Worst::default();
    for _ in 0..n {
        let psi = random_null_cq(&mut ctx.rng);
        match has_spin_direction(&psi) {
            Ok(Some(d)) => null_eigen.add(eigen_residual(&psi, d.direction, d.eigenvalue)),
            _ => disagreements += 1,
        }
        match gauge_fix(&psi, &psi) {
            Ok((_, a, _)) => fixed.add(subspace_residuals(&a)[0]),
            Err(_) => disagreements += 1,
        }

        let psi = random_non_null_cq(&mut ctx.rng);
        if !matches!(has_spin_direction(&psi), Ok(None)) {
            disagreements += 1;
        }
        grid_floor.add(grid_min_eigen_residual(&psi, &directions));
    }
    ctx.failures("null/non-null classification", 2 * n, disagreements);
    ctx.ceiling("eigen-relation on null states", n, null_eigen.0, 100.0);
    ctx.ceiling("gauge fixing null states", n, fixed.0, 100.0);
    ctx.floor(
        "non-null grid search (10^4 directions)",
        n,
        grid_floor.0,
        1e-6,
    );
    ctx.floor(
        "no gauge moves 1 into one subspace",
        1,
        no_escape_floor(&Cq::ONE),
        1e-3,
    );

    let mut counting = 0;
    counting += rest_frame_kernel_dimension(1.0, Species::Particle).abs_diff(8);
    counting += rest_frame_basis_rank(1.0, Species::Particle).abs_diff(8);
    for m_z in [0.5, -0.5] {
        counting += spin_eigenspace_dimension(m_z, false).abs_diff(2);
        counting += spin_eigenspace_dimension(m_z, true).abs_diff(1);
    }
    counting += chiral_rest_nullity(1.0, Species::Particle).abs_diff(2);
    ctx.failures("solution counting", 7, counting);
}
