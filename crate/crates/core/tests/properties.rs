use proptest::prelude::*;

use prelie2::categorical::{functor_s, functor_t, hom_s, hom_t};
use prelie2::fixtures;
use prelie2::format::{Structure, StructureFile};
use prelie2::graded::TwoTermComplex;
use prelie2::lie2::{from_prelie2, Lie2Algebra};
use prelie2::o_operator::OOperator;
use prelie2::prelie::{coboundary, Cochain, PreLieAlgebra, PreLieRep};
use prelie2::prelie2::{build_skeletal, PreLie2Algebra};
use prelie2::scalar::{format_rational, frac, parse_rational};
use prelie2::ybe::{solution_from_o_operator, Tensor2};
use prelie2::{MultiMap, Rational, Space};

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=5).prop_map(|(p, q)| frac(p, q))
}

fn filled(inputs: Vec<Space>, output: Space, values: &[Rational]) -> MultiMap {
    let mut m = MultiMap::zeros(inputs, output);
    for (c, v) in m.coeffs_mut().iter_mut().zip(values.iter().cycle()) {
        *c = v.clone();
    }
    m
}

fn values() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), 1..40)
}

fn base_algebra(pick: bool) -> PreLieAlgebra {
    if pick {
        fixtures::fix_a()
    } else {
        fixtures::fix_omega_algebra()
    }
}

fn base_rep(a: &PreLieAlgebra, pick: u8) -> PreLieRep {
    match pick % 3 {
        0 => a.left_rep(),
        1 => a.dual_rep(),
        _ => PreLieRep::zero(a, Space::new("V", 2)),
    }
}

fn random_structure(kind: u8, n0: usize, n1: usize, v: &[Rational]) -> Structure {
    let s0 = Space::new("X", n0);
    let s1 = Space::new("Y", n1);
    let m = |ins: Vec<&Space>, out: &Space, shift: usize| {
        let rotated: Vec<Rational> = v.iter().cycle().skip(shift % v.len()).take(v.len()).cloned().collect();
        filled(ins.into_iter().cloned().collect(), out.clone(), &rotated)
    };
    match kind % 6 {
        0 => Structure::PreLie(PreLieAlgebra::new(s0.clone(), m(vec![&s0, &s0], &s0, 0)).unwrap()),
        1 => Structure::PreLie2(
            PreLie2Algebra::new(
                s0.clone(),
                s1.clone(),
                m(vec![&s1], &s0, 1),
                m(vec![&s0, &s0], &s0, 2),
                m(vec![&s0, &s1], &s1, 3),
                m(vec![&s1, &s0], &s1, 4),
                m(vec![&s0, &s0, &s0], &s1, 5),
            )
            .unwrap(),
        ),
        2 => Structure::Lie2(
            Lie2Algebra::new(
                s0.clone(),
                s1.clone(),
                m(vec![&s1], &s0, 1),
                m(vec![&s0, &s0], &s0, 2),
                m(vec![&s0, &s1], &s1, 3),
                m(vec![&s0, &s0, &s0], &s1, 4),
            )
            .unwrap(),
        ),
        3 => Structure::Complex(TwoTermComplex::new(s0.clone(), s1.clone(), m(vec![&s1], &s0, 0)).unwrap()),
        4 => {
            let a = PreLieAlgebra::new(s0.clone(), m(vec![&s0, &s0], &s0, 0)).unwrap();
            let rep = PreLieRep::new(&a, s1.clone(), m(vec![&s0, &s1], &s1, 1), m(vec![&s0, &s1], &s1, 2)).unwrap();
            Structure::Cochain { cochain: Cochain::new(m(vec![&s0, &s0], &s1, 3)), algebra: a, rep }
        }
        _ => {
            let algebra = Lie2Algebra::zero(s0.clone(), s1.clone());
            let n = n0 + n1;
            let coeffs = (0..n).map(|i| (0..n).map(|j| v[(i * n + j) % v.len()].clone()).collect()).collect();
            let frkr = (0..n1).map(|i| (0..n1).map(|j| v[(i + 2 * j) % v.len()].clone()).collect()).collect();
            let r = Tensor2::graded(algebra.g0.direct_sum(&algebra.g1), n0, coeffs).unwrap();
            Structure::RMatrix { algebra, r, frkr }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_round_trip(x in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn structure_files_round_trip(kind in 0u8..6, n0 in 0usize..4, n1 in 0usize..3, v in values()) {
        let f = StructureFile::new(random_structure(kind, n0, n1, &v)).with("label", "random");
        let text = f.to_canonical_string();
        let back = StructureFile::parse(&text).unwrap();
        prop_assert_eq!(back.to_canonical_string(), text);
        prop_assert_eq!(back, f);
    }

    #[test]
    fn coboundary_squares_to_zero(pick in any::<bool>(), r in 0u8..3, n in 1usize..4, v in values()) {
        let a = base_algebra(pick);
        let rep = base_rep(&a, r);
        let w = Cochain::alternate(&filled(vec![a.space.clone(); n], rep.space.clone(), &v));
        let dw = coboundary(&w, &a, &rep).unwrap();
        prop_assert!(coboundary(&dw, &a, &rep).unwrap().map.is_zero());
    }

    #[test]
    fn skeletal_from_coboundaries(pick in any::<bool>(), r in 0u8..3, v in values()) {
        // l3 = dθ for a random 2-cochain θ is a 3-cocycle
        let a = base_algebra(pick);
        let rep = base_rep(&a, r);
        let theta = Cochain::new(filled(vec![a.space.clone(); 2], rep.space.clone(), &v));
        let l3 = coboundary(&theta, &a, &rep).unwrap();
        let s = build_skeletal(&a, &rep, &l3).unwrap();
        prop_assert!(s.validate().ok());
        let (g, lrep) = from_prelie2(&s).unwrap();
        prop_assert!(g.validate().ok());
        prop_assert!(lrep.validate(&g).unwrap().ok());
        prop_assert_eq!(functor_s(&functor_t(&s).unwrap()).unwrap(), s.clone());
        let o = OOperator::identity(&s).unwrap();
        prop_assert!(o.validate().unwrap().ok());
        prop_assert_eq!(o.induced_prelie2().unwrap(), s);
    }

    #[test]
    fn homs_round_trip_through_t(seed in any::<u64>()) {
        let o = fixtures::fix_omega();
        let c = functor_t(&o).unwrap();
        for f in fixtures::fix_omega_endomorphisms(2, seed) {
            let phi = hom_t(&f, &o, &o).unwrap();
            prop_assert_eq!(hom_s(&phi, &c, &c).unwrap(), f);
        }
    }

    #[test]
    fn graded_solution_iff_o_operator(v in prop::collection::vec(-2i64..=2, 5)) {
        let base = OOperator::identity(&fixtures::fix_b()).unwrap();
        let mut x = base.clone();
        let q = |i: usize| frac(v[i], 1);
        x.t0 = MultiMap::from_rows(&base.rep.complex.v0, &base.g.g0, &[vec![q(0), q(1)], vec![q(2), q(3)]]);
        x.t1 = MultiMap::from_rows(&base.rep.complex.v1, &base.g.g1, &[vec![q(4)]]);
        let s = solution_from_o_operator(&x.t0, &x.t1, &x.g, &x.rep).unwrap();
        prop_assert_eq!(s.check().unwrap().ok(), x.validate().unwrap().ok());
    }
}
