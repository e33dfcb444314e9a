mod common;

use algebroid::algebroid::bracket_sections;
use algebroid::cochain::{differential, wedge};
use algebroid::library;
use algebroid::poisson::{self, examples as pe};
use algebroid::poly::{coords, rat, Coords, Exponent};
use algebroid::sparse::SparseRationalMatrix;
use algebroid::vanest::{cup_product, groupoid_differential, GroupoidChart, GroupoidCochain};
use algebroid::{LieAlgebroid, Polynomial};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn xyz() -> Coords {
    coords(&["x", "y", "z"]).unwrap()
}

fn poly_on(c: Coords, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    let n = c.len();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -5i64..=5), 0..5).prop_map(move |terms| {
        Polynomial::from_terms(&c, terms.into_iter().map(|(e, k)| (Exponent(e), rat(k))))
    })
}

fn pool() -> Vec<LieAlgebroid> {
    vec![
        library::so3().validated().unwrap(),
        library::aff1().validated().unwrap(),
        library::gl_real(2).validated().unwrap(),
        library::tangent(&["x", "y"]).validated().unwrap(),
        poisson::cotangent_algebroid(&pe::so3_linear().validated().unwrap()).unwrap(),
        poisson::cotangent_algebroid(&pe::aff1_linear().validated().unwrap()).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_ring_laws(p in poly_on(xyz(), 3), q in poly_on(xyz(), 3), r in poly_on(xyz(), 2)) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn parse_print_round_trip(p in poly_on(xyz(), 4)) {
        let c = xyz();
        prop_assert_eq!(Polynomial::parse(&p.to_string(), &c).unwrap(), p);
    }

    #[test]
    fn partial_derivatives_commute_and_obey_leibniz(p in poly_on(xyz(), 3), q in poly_on(xyz(), 3)) {
        prop_assert_eq!(p.partial_index(0).partial_index(2), p.partial_index(2).partial_index(0));
        prop_assert_eq!((&p * &q).partial_index(1), &(&p.partial_index(1) * &q) + &(&p * &q.partial_index(1)));
    }

    #[test]
    fn differential_squares_to_zero(seed in any::<u64>(), which in 0usize..6, p in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = &pool()[which];
        let p = p.min(a.rank());
        let w = common::random_cochain(&mut rng, a, p, 3);
        prop_assert!(differential(a, None, &differential(a, None, &w).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn differential_is_a_derivation(seed in any::<u64>(), which in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = &pool()[which];
        let u = common::random_cochain(&mut rng, a, 1, 2);
        let v = common::random_cochain(&mut rng, a, 1, 2);
        let lhs = differential(a, None, &wedge(&u, &v).unwrap()).unwrap();
        let rhs = wedge(&differential(a, None, &u).unwrap(), &v)
            .unwrap()
            .sub(&wedge(&u, &differential(a, None, &v).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn anchor_is_a_morphism(seed in any::<u64>(), which in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = &pool()[which];
        let x = common::random_section(&mut rng, a, 2);
        let y = common::random_section(&mut rng, a, 2);
        let f = common::random_poly(&mut rng, a.coords(), 2, 3);
        let xy = bracket_sections(a, &x, &y).unwrap();
        let lhs = a.section_apply(&xy, &f);
        let rhs = &a.section_apply(&x, &a.section_apply(&y, &f)) - &a.section_apply(&y, &a.section_apply(&x, &f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn poisson_bracket_is_lie(f in poly_on(coords(&["x1", "x2", "x3"]).unwrap(), 2),
                              g in poly_on(coords(&["x1", "x2", "x3"]).unwrap(), 2),
                              h in poly_on(coords(&["x1", "x2", "x3"]).unwrap(), 2)) {
        let pi = pe::so3_linear().validated().unwrap();
        let br = |a: &Polynomial, b: &Polynomial| poisson::poisson_bracket(&pi, a, b).unwrap();
        let jac = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        prop_assert!(jac.is_zero());
        prop_assert_eq!(br(&f, &g), -&br(&g, &f));
    }

    #[test]
    fn anchor_of_df_is_hamiltonian(f in poly_on(coords(&["x", "y"]).unwrap(), 3)) {
        let pi = pe::aff1_linear().validated().unwrap();
        let a = poisson::cotangent_algebroid(&pi).unwrap();
        let df = algebroid::Section((0..2).map(|i| f.partial_index(i)).collect());
        prop_assert_eq!(a.anchor_of(&df), poisson::hamiltonian_vf(&pi, &f).unwrap());
    }

    #[test]
    fn groupoid_complex(f in poly_on(coords(&["x_0", "x_1", "x_2"]).unwrap(), 2),
                        g in poly_on(coords(&["x_0", "x_1"]).unwrap(), 2)) {
        let chart = GroupoidChart::pair(&["x"]).unwrap();
        let c2 = GroupoidCochain::new(&chart, 2, &f).unwrap();
        let c1 = GroupoidCochain::new(&chart, 1, &g).unwrap();
        let dd = groupoid_differential(&chart, &groupoid_differential(&chart, &c2).unwrap()).unwrap();
        prop_assert!(dd.value.is_zero());
        // d(c1 u c2) = dc1 u c2 - c1 u dc2
        let lhs = groupoid_differential(&chart, &cup_product(&chart, &c1, &c2).unwrap()).unwrap();
        let r1 = cup_product(&chart, &groupoid_differential(&chart, &c1).unwrap(), &c2).unwrap();
        let r2 = cup_product(&chart, &c1, &groupoid_differential(&chart, &c2).unwrap()).unwrap();
        prop_assert_eq!(lhs.value, &r1.value - &r2.value);
    }

    #[test]
    fn rank_plus_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..6)) {
        let m = SparseRationalMatrix::from_dense(
            &rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect::<Vec<_>>(),
        );
        let null = m.nullspace();
        prop_assert_eq!(m.rank() + null.len(), 5);
        for v in null {
            prop_assert!(m.mul_vec(&v).iter().all(|x| *x == rat(0)));
        }
    }
}
