use cqdirac::chiral::{chiral_dirac_residual, chiral_to_cq, cq_to_chiral};
use cqdirac::cq::{Cq, Matrix2C};
use cqdirac::lagrangian::{is_symmetry, l0_density};
use cqdirac::relativity::{apply_lorentz, scalar_product, LorentzRotor, MinkowskiVector};
use cqdirac::spin::{
    decompose_normal, eigen_residual, gauge_fix, has_spin_direction, QuaternionGauge,
};
use cqdirac::wave::{
    dirac_residual_norm, make_solution, PhaseSign, PlaneWaveSpinorField, Species, SpinorField,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = f64> {
    -2.0..2.0f64
}

fn cq() -> impl Strategy<Value = Cq> {
    prop::array::uniform8(coeff()).prop_map(Cq::from_array)
}

fn complex() -> impl Strategy<Value = Complex64> {
    (coeff(), coeff()).prop_map(|(a, b)| Complex64::new(a, b))
}

fn direction() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0..1.0f64)
        .prop_filter("away from zero", |v| {
            v.iter().map(|x| x * x).sum::<f64>() > 1e-2
        })
        .prop_map(|v| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.map(|x| x / n)
        })
}

fn minkowski() -> impl Strategy<Value = MinkowskiVector> {
    prop::array::uniform4(coeff()).prop_map(MinkowskiVector::from_components)
}

fn rotor() -> impl Strategy<Value = LorentzRotor> {
    prop::collection::vec((direction(), any::<bool>(), -1.5..1.5f64), 1..4).prop_map(|factors| {
        factors
            .into_iter()
            .fold(LorentzRotor::identity(), |acc, (n, boost, x)| {
                let r = if boost {
                    LorentzRotor::boost(n, x)
                } else {
                    LorentzRotor::rotation(n, 2.0 * x)
                };
                acc.compose(&r.unwrap())
            })
    })
}

fn species() -> impl Strategy<Value = Species> {
    prop_oneof![Just(Species::Particle), Just(Species::Antiparticle)]
}

fn on_shell() -> impl Strategy<Value = (MinkowskiVector, f64)> {
    (direction(), 0.0..10.0f64, 0.1..3.0f64).prop_map(|(n, ratio, m)| {
        let size = ratio * m;
        let e = (size * size + m * m).sqrt();
        (
            MinkowskiVector::momentum(e, n[0] * size, n[1] * size, n[2] * size),
            m,
        )
    })
}

fn null_cq() -> impl Strategy<Value = Cq> {
    (complex(), complex(), complex(), complex())
        .prop_filter("nonzero", |(a, b, c, d)| {
            (a.norm() + b.norm()) * (c.norm() + d.norm()) > 1e-2
        })
        .prop_map(|(u0, u1, v0, v1)| {
            Cq::from_matrix(&Matrix2C::new(u0 * v0, u0 * v1, u1 * v0, u1 * v1))
        })
}

proptest! {
    #[test]
    fn product_is_associative(a in cq(), b in cq(), c in cq()) {
        prop_assert!(((a * b) * c).approx_eq(&(a * (b * c)), 1e-12));
    }

    #[test]
    fn conjugations_act_on_products(a in cq(), b in cq()) {
        prop_assert!((a * b).quat_conj().approx_eq(&(b.quat_conj() * a.quat_conj()), 1e-12));
        prop_assert!((a * b).complex_conj().approx_eq(&(a.complex_conj() * b.complex_conj()), 1e-12));
    }

    #[test]
    fn trace_is_cyclic(a in cq(), b in cq()) {
        prop_assert!(((a * b).trace() - (b * a).trace()).norm() < 1e-12);
    }

    #[test]
    fn determinant_is_quadric(a in cq()) {
        prop_assert!((a.to_matrix().det() - a.quadric()).norm() < 1e-12);
        prop_assert!(Cq::from_matrix(&a.to_matrix()).approx_eq(&a, 1e-14));
    }

    #[test]
    fn rotors_preserve_scalar_products(r in rotor(), p in minkowski(), q in minkowski()) {
        let (p2, q2) = (apply_lorentz(&r, &p).unwrap(), apply_lorentz(&r, &q).unwrap());
        let scale = p2.scale().max(1.0) * q2.scale().max(1.0);
        prop_assert!((scalar_product(&p2, &q2) - scalar_product(&p, &q)).abs() < 1e-12 * scale);
    }

    #[test]
    fn constructed_solutions_solve(shell in on_shell(), sp in species(), phi in cq()) {
        let (p, m) = shell;
        let sol = make_solution(&p, m, sp, phi).unwrap();
        prop_assert!(dirac_residual_norm(&sol) < 1e-12);
    }

    #[test]
    fn null_states_have_spin_directions(psi in null_cq()) {
        let d = has_spin_direction(&psi).unwrap().unwrap();
        prop_assert!(eigen_residual(&psi, d.direction, d.eigenvalue) < 1e-10);
        let flipped = d.flipped();
        prop_assert!(eigen_residual(&psi, flipped.direction, flipped.eigenvalue) < 1e-10);
    }

    #[test]
    fn non_null_states_have_none(psi in cq()) {
        let m = psi.to_matrix();
        prop_assume!(m.det().norm() > 1e-3 * m.norm().powi(2));
        prop_assert_eq!(has_spin_direction(&psi).unwrap(), None);
    }

    #[test]
    fn normal_elements_decompose(n in direction(), beta in -3.0..3.0f64, theta in -3.0..3.0f64) {
        let g = QuaternionGauge::new(n, beta).unwrap().factor();
        let phase = Complex64::from_polar(1.0, theta);
        let sigma = g * phase;
        prop_assert!(is_symmetry(&sigma, 1e-12));
        let (c, q) = decompose_normal(&sigma).unwrap();
        prop_assert!((q * c).approx_eq(&sigma, 1e-12));
        prop_assert!((c.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn l0_is_invariant_under_right_unit_quaternions(
        a in cq(), b in cq(), k in minkowski(), q in minkowski(), n in direction(), beta in -3.0..3.0f64
    ) {
        let wave = PlaneWaveSpinorField { psi1: a, psi2: b, momentum: k, sign: PhaseSign::Negative, mass: 1.1 };
        let psi = SpinorField::from(wave);
        let g = QuaternionGauge::new(n, beta).unwrap();
        let before = l0_density(&psi, 1.1, &q).unwrap();
        let after = l0_density(&g.apply(&psi), 1.1, &q).unwrap();
        let scale = (a.norm() + b.norm()).powi(2) * (k.scale() + 1.1);
        prop_assert!((after - before).norm() < 1e-12 * scale);
    }

    #[test]
    fn gauge_fixed_solutions_map_to_chiral_solutions(shell in on_shell(), sp in species(), phi in null_cq()) {
        let (p, m) = shell;
        let sol = make_solution(&p, m, sp, phi).unwrap();
        let (_, a, b) = gauge_fix(&sol.psi1, &sol.psi2).unwrap();
        let spinor = cq_to_chiral(&a, &b).unwrap();
        let r = chiral_dirac_residual(&spinor, p.components(), m, sp);
        prop_assert!(r.max_abs() < 1e-11 * spinor.norm() * (p.t + m));
        let (a2, b2) = chiral_to_cq(&spinor);
        prop_assert!(a2.approx_eq(&a, 1e-12) && b2.approx_eq(&b, 1e-12));
    }
}
