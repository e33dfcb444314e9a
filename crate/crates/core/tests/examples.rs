use std::collections::BTreeMap;

use algebroid::algebroid::{
    bott_quotient, bracket_sections, canonical_line_bundle, dual_representation, extension_class,
    pullback_algebroid, semidirect_product, validate_algebroid, Metric,
};
use algebroid::charclass::{frame_change_check, g_chern, intrinsic_class, modular_class, u1, u_odd};
use algebroid::cochain::{differential, interior_product, lie_derivative, pullback_cochain, wedge, Cochain};
use algebroid::cohomology::{betti, find_primitive, relative_basic_cohomology, Exactness, Grading};
use algebroid::library;
use algebroid::matrix::{CMatrix, PolyMatrix};
use algebroid::poisson::{self, examples as pe};
use algebroid::poly::coords;
use algebroid::{LieAlgebroid, Polynomial, Representation, Section};

fn v(a: LieAlgebroid) -> LieAlgebroid {
    a.validated().unwrap()
}

fn p(s: &str, a: &LieAlgebroid) -> Polynomial {
    Polynomial::parse(s, a.coords()).unwrap()
}

fn one(a: &LieAlgebroid) -> Polynomial {
    Polynomial::one(a.coords())
}

#[test]
fn vector_field_commutator() {
    let a = v(library::tangent(&["x", "y"]));
    let x = Section(vec![a.zero_poly(), p("x", &a)]);
    let y = Section(vec![p("y", &a), a.zero_poly()]);
    let b = bracket_sections(&a, &x, &y).unwrap();
    assert_eq!(b.0, vec![p("x", &a), p("-y", &a)]);
}

#[test]
fn anchor_morphism_failure_is_reported() {
    let c = coords(&["x", "y"]).unwrap();
    let id = |i: usize| (0..2).map(|b| Polynomial::int(&c, i64::from(i == b))).collect::<Vec<_>>();
    let mut br = BTreeMap::new();
    br.insert((0, 1), vec![Polynomial::one(&c), Polynomial::zero(&c)]);
    let a = LieAlgebroid::new(&c, vec!["dx".into(), "dy".into()], vec![id(0), id(1)], br).unwrap();
    let rep = validate_algebroid(&a);
    assert!(!rep.is_valid());
    assert!(rep.failures.iter().any(|f| f.starts_with("anchor(dx,dy)")));
}

#[test]
fn noncommuting_connection_is_not_flat() {
    let a = v(library::abelian(2));
    let c = a.coords().clone();
    let w1 = PolyMatrix::from_ints(&c, &[&[1, 0], &[0, 0]]);
    let w2 = PolyMatrix::from_ints(&c, &[&[0, 1], &[0, 0]]);
    assert!(Representation::real(&a, vec![w1, w2]).unwrap().validated(&a).is_err());
}

#[test]
fn dual_of_a_line() {
    let a = v(library::aff1());
    let e = library::line_connection(&a, &[Polynomial::int(a.coords(), 3), a.zero_poly()])
        .validated(&a)
        .unwrap();
    assert_eq!(dual_representation(&e).unwrap().omega(0).re.get(0, 0), &Polynomial::int(a.coords(), -3));
}

#[test]
fn heisenberg_from_twist() {
    let a = v(library::abelian(2));
    let e = Representation::trivial(&a, 1).validated(&a).unwrap();
    let tau = Cochain::basis(&a, &[0, 1], one(&a));
    let h = v(semidirect_product(&a, &e, &tau).unwrap());
    assert!(h.same_structure(&library::heisenberg()));
    let untwisted = semidirect_product(&a, &e, &Cochain::zero_on(&a, 2, 1)).unwrap();
    assert!(untwisted.validated().is_ok());
}

#[test]
fn split_extension_has_zero_class() {
    let h = v(library::aff1_plus_line());
    let ext = extension_class(&h, &[2], &PolyMatrix::zeros(h.coords(), 2, 1)).unwrap();
    assert!(ext.tau.is_zero());
}

#[test]
fn pullbacks() {
    let t = v(library::tangent(&["x"]));
    let pb = v(pullback_algebroid(&t, 1).unwrap());
    assert_eq!(pb.rank(), 2);
    assert!(pb.same_structure(&library::tangent(&["x", "u1"])));
    let s = v(library::so3());
    let ps = v(pullback_algebroid(&s, 1).unwrap());
    assert_eq!(ps.rank(), 4);
    let vol = Cochain::basis(&s, &[0, 1, 2], one(&s));
    let pulled = pullback_cochain(&ps, &vol).unwrap();
    assert!(!pulled.is_zero());
    assert!(differential(&ps, None, &pulled).unwrap().is_zero());
    let e1 = Cochain::basis(&s, &[0], one(&s));
    assert_eq!(
        differential(&ps, None, &pullback_cochain(&ps, &e1).unwrap()).unwrap(),
        pullback_cochain(&ps, &differential(&s, None, &e1).unwrap()).unwrap()
    );
}

#[test]
fn bott_quotients() {
    let s = v(library::so3());
    let (_, rep) = bott_quotient(&s, &[0]).unwrap();
    assert_eq!(rep.omega(0).re, PolyMatrix::from_ints(s.coords(), &[&[0, -1], &[1, 0]]));
    assert!(bott_quotient(&s, &[0, 1]).is_err());
    let t = v(library::tangent(&["x", "y"]));
    let (_, rep) = bott_quotient(&t, &[1]).unwrap();
    assert!(rep.omega(0).is_zero());
}

#[test]
fn canonical_line_bundles() {
    let a = v(library::aff1());
    let q = canonical_line_bundle(&a).unwrap();
    assert_eq!(q.omega(0).re.get(0, 0), &one(&a));
    assert!(q.omega(1).is_zero());
    for z in [v(library::so3()), v(library::tangent(&["x", "y"]))] {
        assert!(modular_class(&z).unwrap().cocycle.is_zero());
    }
}

#[test]
fn differential_and_cartan_examples() {
    let t = v(library::tangent(&["x"]));
    let df = differential(&t, None, &Cochain::function(&t, p("x", &t))).unwrap();
    assert_eq!(df.eval_frame(&[0])[0], Polynomial::int(t.coords(), -1));

    let s = v(library::so3());
    let e = |i: usize| Cochain::basis(&s, &[i], one(&s));
    assert_eq!(differential(&s, None, &e(0)).unwrap(), Cochain::basis(&s, &[1, 2], one(&s)));
    let e12 = wedge(&e(0), &e(1)).unwrap();
    assert_eq!(e12.eval_frame(&[0, 1])[0], one(&s));
    assert_eq!(e12.eval_frame(&[1, 0])[0], -&one(&s));
    assert_eq!(wedge(&e(1), &e(0)).unwrap(), e12.neg());
    let x1 = s.frame_section(0);
    // Under the adopted signs i_X w = -w(X, ...) and L_X is the standard Lie derivative.
    assert_eq!(interior_product(&x1, &e12).unwrap(), e(1).neg());
    assert_eq!(lie_derivative(&s, None, &x1, &e(1)).unwrap(), e(2));
}

#[test]
fn trace_of_a_flat_connection_is_closed() {
    let g = v(library::gl_real(2));
    let e = library::gl_real_standard(&g, 2).validated(&g).unwrap();
    let u = u1(&g, &e).unwrap();
    assert!(u.closed);
    assert!(!u.cocycle.is_zero());
}

#[test]
fn primitives() {
    let s = v(library::so3());
    let g0 = Grading::cap(&s, 0);
    let z = Cochain::basis(&s, &[1, 2], one(&s));
    match find_primitive(&s, None, &z, &g0).unwrap() {
        Exactness::Exact(w) => assert_eq!(w, Cochain::basis(&s, &[0], one(&s))),
        other => panic!("{other:?}"),
    }
    let vol = Cochain::basis(&s, &[0, 1, 2], one(&s));
    assert!(!find_primitive(&s, None, &vol, &g0).unwrap().is_exact());
    let t = v(library::tangent(&["x"]));
    let dx = Cochain::basis(&t, &[0], one(&t));
    match find_primitive(&t, None, &dx, &Grading::cap(&t, 2)).unwrap() {
        Exactness::Exact(w) => assert_eq!(w, Cochain::function(&t, p("-x", &t))),
        other => panic!("{other:?}"),
    }
}

#[test]
fn relative_with_empty_subalgebra_is_absolute() {
    let g = v(library::gl_real(2));
    assert_eq!(relative_basic_cohomology(&g, &[]).unwrap().betti(), vec![1, 1, 0, 1, 1]);
}

#[test]
fn zero_poisson_structure_has_zero_differential() {
    let pi = pe::zero(&["x", "y"]).validated().unwrap();
    // 6 monomials of degree <= 2 in two variables
    assert_eq!(poisson::poisson_cohomology(&pi, 2, 2).unwrap().betti(), vec![6, 12, 6]);
}

#[test]
fn linear_poisson_cohomology_is_graded() {
    let pi = pe::so3_linear().validated().unwrap();
    let r = poisson::poisson_cohomology(&pi, 3, 2).unwrap();
    assert!(r.graded);
    assert!(r.betti()[0] >= 2);
}

#[test]
fn poisson_examples() {
    let pi = pe::aff1_linear().validated().unwrap();
    let c = pi.coords().clone();
    let x = Polynomial::var(&c, "x").unwrap();
    let y = Polynomial::var(&c, "y").unwrap();
    assert_eq!(poisson::poisson_bracket(&pi, &x, &y).unwrap(), y);
    let sym = pe::symplectic_plane().validated().unwrap();
    let hx = poisson::hamiltonian_vf(&sym, &Polynomial::var(sym.coords(), "x").unwrap()).unwrap();
    assert_eq!(hx, vec![Polynomial::zero(sym.coords()), Polynomial::one(sym.coords())]);
    let a = poisson::cotangent_algebroid(&sym).unwrap();
    assert_eq!(a.anchor(0)[1], Polynomial::one(a.coords()));
    assert_eq!(a.anchor(1)[0], Polynomial::int(a.coords(), -1));
    assert!(poisson::cotangent_algebroid(&pe::non_poisson()).is_err());
    let cc = poisson::modular_cross_check(&sym, 2).unwrap();
    assert_eq!(cc.relation, poisson::ModularRelation::BothExact);
    let cc = poisson::modular_cross_check(&pe::so3_linear().validated().unwrap(), 2).unwrap();
    assert_eq!(cc.relation, poisson::ModularRelation::BothExact);
}

#[test]
fn u1_examples() {
    let a = v(library::aff1());
    let m = modular_class(&a).unwrap().with_exactness(&a, &Grading::cap(&a, 0)).unwrap();
    assert_eq!(m.cocycle, Cochain::basis(&a, &[0], one(&a)));
    assert!(!m.exactness.unwrap().is_exact());
    let e = library::adjoint(&a).validated(&a).unwrap();
    assert_eq!(u_odd(&a, &e, &Metric::identity(&e), 1).unwrap().cocycle, u1(&a, &e).unwrap().cocycle);
    assert!(u_odd(&a, &e, &Metric::identity(&e), 3).is_err());
}

#[test]
fn frame_changes() {
    let t = v(library::tangent(&["x"]));
    let c = t.coords().clone();
    let e = Representation::trivial(&t, 2).validated(&t).unwrap();
    let id = PolyMatrix::identity(&c, 2);
    let shear = PolyMatrix::from_rows(&c, vec![vec![one(&t), p("x^2 + x", &t)], vec![t.zero_poly(), one(&t)]]);
    let diag = PolyMatrix::from_rows(&c, vec![vec![p("1 + x", &t), t.zero_poly()], vec![t.zero_poly(), one(&t)]]);
    for m in [id, shear, diag] {
        assert!(frame_change_check(&t, &e, &m).unwrap());
    }
    assert!(frame_change_check(&t, &e, &PolyMatrix::zeros(&c, 2, 2)).is_err());
}

#[test]
fn metric_independence() {
    let a = v(library::aff1());
    let e = library::adjoint(&a).validated(&a).unwrap();
    let h1 = Metric::real(&e, PolyMatrix::from_ints(a.coords(), &[&[2, 1], &[1, 3]])).unwrap();
    let u0 = u_odd(&a, &e, &Metric::identity(&e), 1).unwrap();
    let u1h = u_odd(&a, &e, &h1, 1).unwrap();
    let diff = u1h.cocycle.sub(&u0.cocycle);
    assert!(find_primitive(&a, None, &diff, &Grading::cap(&a, 0)).unwrap().is_exact());
    assert!(Metric::real(&e, PolyMatrix::from_ints(a.coords(), &[&[1, 2], &[0, 1]])).is_err());
}

#[test]
fn line_metric_with_varying_determinant() {
    let t = v(library::tangent(&["x"]));
    let e = library::line_connection(&t, &[p("x", &t)]).validated(&t).unwrap();
    let h = Metric::real(&e, PolyMatrix::from_rows(t.coords(), vec![vec![p("1 + x^2", &t)]])).unwrap();
    let u = u_odd(&t, &e, &h, 1).unwrap();
    assert!(u.closed);
    assert_eq!(u.denominator, p("1 + x^2", &t));
}

#[test]
fn chern_examples() {
    let a = v(library::coordinate_foliation(&["x", "y", "z"], 2));
    let c = a.coords().clone();
    let line = |s: &str| CMatrix::real(PolyMatrix::from_rows(&c, vec![vec![p(s, &a)]]));
    // R_12 = d_x(b) - d_y(a) for a = x*y, b = x^2 + z
    let ch = g_chern(&a, &[line("x*y"), line("x^2 + z")], 1).unwrap();
    assert!(ch.closed);
    assert_eq!(ch.cocycle, Cochain::basis(&a, &[0, 1], p("x", &a)));
    let e = library::line_connection(&a, &[p("z", &a), p("z^2", &a)]).validated(&a).unwrap();
    assert!(g_chern(&a, e.connection(), 1).unwrap().cocycle.is_zero());
}

#[test]
fn intrinsic_classes() {
    let t = v(library::tangent(&["x", "y"]));
    assert!(intrinsic_class(&t, &[], &[], 1).unwrap().cocycle.is_zero());
    let f = v(library::coordinate_foliation(&["x", "y"], 1));
    assert!(intrinsic_class(&f, &[], &[1], 1).unwrap().cocycle.is_zero());
    let a = v(library::aff1());
    let u = intrinsic_class(&a, &[0, 1], &[], 1).unwrap();
    assert_eq!(u.cocycle, Cochain::basis(&a, &[0], one(&a)));
    assert!(u.closed);
}

#[test]
fn truncated_betti_of_the_line_overflows_on_quadratic_anchor() {
    let a = v(library::vector_field_algebroid("x^2"));
    assert!(betti(&a, None, 1, &Grading::cap(&a, 2)).is_err());
}
