use super::{SuiteContext, Worst};
use crate::cq::Cq;
use crate::sampling::{random_cq, random_non_null_cq};

pub(super) fn run(ctx: &mut SuiteContext) {
    let n = ctx.cases;
    let mut assoc = Worst::default();
    let mut distrib = Worst::default();
    let mut quat_conj = Worst::default();
    let mut complex_conj = Worst::default();
    let mut central = Worst::default();
    let mut cyclic = Worst::default();
    let mut det = Worst::default();
    let mut homomorphism = Worst::default();
    let mut multiplicative = Worst::default();
    let mut round_trip = Worst::default();
    let mut inverse = Worst::default();

    for _ in 0..n {
        let (a, b, c) = (
            random_cq(&mut ctx.rng),
            random_cq(&mut ctx.rng),
            random_cq(&mut ctx.rng),
        );
        let (na, nb, nc) = (a.norm(), b.norm(), c.norm());
        let ab = a * b;

        assoc.add((ab * c).max_abs_diff(&(a * (b * c))) / (na * nb * nc));
        distrib.add((a * (b + c)).max_abs_diff(&(a * b + a * c)) / (na * (nb + nc)));
        quat_conj.add(
            ab.quat_conj()
                .max_abs_diff(&(b.quat_conj() * a.quat_conj()))
                / (na * nb),
        );
        complex_conj.add(
            ab.complex_conj()
                .max_abs_diff(&(a.complex_conj() * b.complex_conj()))
                / (na * nb),
        );
        central.add((Cq::IMAG * a).max_abs_diff(&(a * Cq::IMAG)) / na);
        cyclic.add((ab.trace() - (b * a).trace()).norm() / (na * nb));
        det.add((a.to_matrix().det() - a.quadric()).norm() / (na * na));
        homomorphism.add((ab.to_matrix() - a.to_matrix() * b.to_matrix()).norm() / (na * nb));
        multiplicative.add((ab.quadric() - a.quadric() * b.quadric()).norm() / (na * na * nb * nb));
        round_trip.add(Cq::from_matrix(&a.to_matrix()).max_abs_diff(&a) / na);

        let g = random_non_null_cq(&mut ctx.rng);
        let inv = g.invert().expect("sampled away from the null cone");
        inverse.add(
            (g * inv)
                .max_abs_diff(&Cq::ONE)
                .max((inv * g).max_abs_diff(&Cq::ONE)),
        );
    }

    ctx.ceiling("associativity", n, assoc.0, 1.0);
    ctx.ceiling("distributivity", n, distrib.0, 1.0);
    ctx.ceiling(
        "quaternionic conjugate reverses products",
        n,
        quat_conj.0,
        1.0,
    );
    ctx.ceiling(
        "complex conjugate preserves products",
        n,
        complex_conj.0,
        1.0,
    );
    ctx.ceiling("@ is central", n, central.0, 1.0);
    ctx.ceiling("trace cyclicity", n, cyclic.0, 1.0);
    ctx.ceiling("det(to_matrix) = quadric", n, det.0, 1.0);
    ctx.ceiling("to_matrix is multiplicative", n, homomorphism.0, 1.0);
    ctx.ceiling("quadric is multiplicative", n, multiplicative.0, 1.0);
    ctx.ceiling("from_matrix(to_matrix) round trip", n, round_trip.0, 1.0);
    ctx.ceiling("inverse (|det| >= 1e-3 |M|^2)", n, inverse.0, 100.0);
}
